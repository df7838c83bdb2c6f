"""Kauffman bracket state sums and the framed Jones polynomial.

Conventions (used by every module):

* the 0-smoothing of ``X(a,b,c,d)`` joins ``a-b`` and ``c-d``, the
  1-smoothing joins ``a-d`` and ``b-c``;
* ``bracket(D) = sum over resolutions r of (-q)^|r| (q + q^-1)^#circles(r)``;
* ``jones_framed(D) = (-1)^n- q^(n+ - 2 n-) bracket(D)``.

With these choices the crossing-free unknot has value ``q + q^-1`` and
``jones_framed`` is the graded Euler characteristic of the Khovanov complex.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from .diagram import LinkDiagram, disjoint_union
from .errors import EnumerationCapError
from .laurent import LOOP, ONE, LaurentPoly

DEFAULT_CAP = 2 ** 20


def thread_count() -> int:
    """Worker threads, from ``KHCABLE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("KHCABLE_THREADS", "1")))
    except ValueError:
        return 1


def check_cap(n_crossings: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    needed = 2 ** n_crossings
    if needed > cap:
        raise EnumerationCapError(needed, cap)


def smoothing_pairs(x: tuple[int, int, int, int], bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b, c, d = x
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


# -- resolutions ---------------------------------------------------------------

def resolve(d: LinkDiagram, bits: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Circles of a resolution as sorted arc tuples, ordered by smallest arc.

    Free loops are appended as empty tuples.
    """
    parent = {a: a for a in d.arc_slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, bit in zip(d.crossings, bits):
        for u, v in smoothing_pairs(x, bit):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for a in sorted(parent):
        groups.setdefault(find(a), []).append(a)
    circles = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    return tuple(circles) + ((),) * d.free_loops


@dataclass(frozen=True)
class Resolution:
    """A 0/1 choice per crossing together with the circles it produces."""

    diagram: LinkDiagram
    bits: tuple[int, ...]

    @cached_property
    def circles(self) -> tuple[tuple[int, ...], ...]:
        return resolve(self.diagram, self.bits)

    @property
    def height(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class EnhancedState:
    """A resolution with a sign (+1 or -1) on each of its circles."""

    resolution: Resolution
    signs: tuple[int, ...]

    @property
    def i(self) -> int:
        return self.resolution.height - self.resolution.diagram.n_minus

    @property
    def j(self) -> int:
        d = self.resolution.diagram
        return sum(self.signs) + self.resolution.height + d.n_plus - 2 * d.n_minus


# -- bracket -------------------------------------------------------------------

def _crossing_order(d: LinkDiagram) -> list[int]:
    """Greedy order keeping the open boundary small."""
    n = d.n_crossings
    if n == 0:
        return []
    order = [0]
    placed = {0}
    open_arcs: dict[int, int] = {}
    for a in d.crossings[0]:
        open_arcs[a] = open_arcs.get(a, 0) + 1
    while len(order) < n:
        best = None
        for ci in range(n):
            if ci in placed:
                continue
            shared = sum(1 for a in d.crossings[ci] if open_arcs.get(a) == 1)
            key = (-shared, ci)
            if best is None or key < best:
                best = key
        ci = best[1]
        order.append(ci)
        placed.add(ci)
        for a in d.crossings[ci]:
            open_arcs[a] = open_arcs.get(a, 0) + 1
    return order


def _add_path(match: dict[int, int], x: int, y: int) -> int:
    """Join arc ends ``x`` and ``y`` through a smoothing; returns closed loops.

    ``match`` maps each arc with exactly one processed end to the arc at the
    other end of its partial strand.
    """
    if x == y:
        return 1
    px = match.pop(x, None)
    py = match.pop(y, None)
    if px is None and py is None:
        match[x] = y
        match[y] = x
        return 0
    if px is not None and py is not None:
        if px == y:
            return 1
        match[px] = py
        match[py] = px
        return 0
    if px is not None:
        match[px] = y
        match[y] = px
        return 0
    match[py] = x
    match[x] = py
    return 0


def bracket(d: LinkDiagram) -> LaurentPoly:
    """Kauffman bracket by planar contraction of the crossings.

    The open boundary is kept as a perfect matching of dangling arc ends;
    partial sums over resolutions are accumulated per matching.
    """
    states: dict[tuple, LaurentPoly] = {(): ONE}
    for ci in _crossing_order(d):
        x = d.crossings[ci]
        new: dict[tuple, LaurentPoly] = {}
        for key, poly in states.items():
            for bit in (0, 1):
                match = dict(key)
                loops = 0
                for u, v in smoothing_pairs(x, bit):
                    loops += _add_path(match, u, v)
                weight = poly * (LOOP ** loops)
                if bit:
                    weight = -weight.shift(1)
                k2 = tuple(sorted(match.items()))
                new[k2] = new[k2] + weight if k2 in new else weight
        states = {k: v for k, v in new.items() if not v.is_zero()}
    total = LaurentPoly()
    for key, poly in states.items():
        if key:
            raise RuntimeError("bracket contraction left open ends")
        total = total + poly
    return total * (LOOP ** d.free_loops)


def bracket_states(d: LinkDiagram, cap: int | None = None, threads: int | None = None) -> LaurentPoly:
    """Kauffman bracket by enumerating all ``2^n`` resolutions."""
    n = d.n_crossings
    check_cap(n, cap)
    threads = thread_count() if threads is None else threads
    total = 1 << n
    chunks = max(1, min(threads * 4, total))
    bounds = [(total * k // chunks, total * (k + 1) // chunks) for k in range(chunks)]

    def work(lo_hi):
        lo, hi = lo_hi
        acc: dict[tuple[int, int], int] = {}
        for r in range(lo, hi):
            bits = tuple((r >> (n - 1 - k)) & 1 for k in range(n))
            key = (sum(bits), len(resolve(d, bits)))
            acc[key] = acc.get(key, 0) + 1
        return acc

    if threads > 1 and chunks > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    counts: dict[tuple[int, int], int] = {}
    for part in parts:
        for key, v in part.items():
            counts[key] = counts.get(key, 0) + v
    result = LaurentPoly()
    for (h, c), mult in sorted(counts.items()):
        result = result + LaurentPoly.monomial(h, (-1) ** h * mult) * (LOOP ** c)
    return result


def framing_factor(d: LinkDiagram) -> LaurentPoly:
    return LaurentPoly.monomial(d.n_plus - 2 * d.n_minus, (-1) ** d.n_minus)


def jones_framed(d: LinkDiagram, cap: int | None = None) -> LaurentPoly:
    """Framed Jones polynomial ``(-1)^n- q^(n+ - 2n-) <D>``."""
    check_cap(d.n_crossings, cap)
    return framing_factor(d) * bracket(d)


def disjoint_union_check(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    return jones_framed(disjoint_union(d1, d2)) == jones_framed(d1) * jones_framed(d2)
