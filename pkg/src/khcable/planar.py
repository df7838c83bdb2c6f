"""Enhanced states of unoriented planar codes and elementary cobordism maps.

A planar code is a list of crossings ``(a, b, c, d)`` listed counterclockwise
from an under-strand end, plus free loops.  Smoothings do not depend on the
orientation, so the unnormalized Khovanov cube of a code is well defined even
when its strands carry no consistent orientation.  This is what the band
contraction maps of the bicomplex need: cutting a band between two parallel
strands reverses one of them.

States are pairs ``(r, signs)``: ``r`` has crossing 0 as its most
significant bit; ``signs`` holds ``+1``/``-1`` per circle, circles ordered by
smallest arc and free loops last.  Vectors are dicts ``state -> int``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable

from .kauffman import smoothing_pairs

State = tuple[int, tuple[int, ...]]
Vector = dict[State, int]


def add_to(vec: Vector, state: State, coef: int) -> None:
    v = vec.get(state, 0) + coef
    if v:
        vec[state] = v
    else:
        vec.pop(state, None)


@dataclass(frozen=True, eq=False)
class PlanarCode:
    """Crossings, free loop keys and the parent arcs behind every arc.

    ``members[a]`` is the set of arcs of the original diagram merged into
    arc ``a``; ``loop_members[k]`` does the same for free loop ``k``.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    loops: tuple[Hashable, ...] = ()
    members: dict[int, frozenset] = field(default_factory=dict)
    loop_members: dict[Hashable, frozenset] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.crossings)

    def slots(self, arc: int) -> list[tuple[int, int]]:
        return [(k, p) for k, x in enumerate(self.crossings) for p, a in enumerate(x) if a == arc]

    def bit(self, r: int, k: int) -> int:
        return (r >> (self.n - 1 - k)) & 1

    def circles(self, r: int) -> tuple[dict[int, int], int]:
        """Circle index of every arc, and the total circle count."""
        return _circles(self, r)

    def arc_members(self, arc: int) -> frozenset:
        return self.members.get(arc, frozenset({arc}))


@lru_cache(maxsize=1 << 16)
def _circles(code: PlanarCode, r: int) -> tuple[dict[int, int], int]:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, x in enumerate(code.crossings):
        for u, v in smoothing_pairs(x, code.bit(r, k)):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(a) for a in parent})
    index = {root: k for k, root in enumerate(roots)}
    return {a: index[find(a)] for a in parent}, len(roots) + len(code.loops)


def circle_arcs(code: PlanarCode, r: int) -> list[frozenset]:
    """Arc sets of the crossing circles of ``r`` (free loops excluded)."""
    of, count = code.circles(r)
    groups: list[set] = [set() for _ in range(count - len(code.loops))]
    for a, c in of.items():
        groups[c].add(a)
    return [frozenset(g) for g in groups]


def differential(code: PlanarCode, vec: Vector) -> Vector:
    """Unnormalized Khovanov differential with the usual crossing-order signs."""
    out: Vector = {}
    n = code.n
    for (r, signs), coef in vec.items():
        ones = 0
        for k in range(n):
            if code.bit(r, k):
                ones += 1
                continue
            sign = -1 if ones & 1 else 1
            for st, c in flip(code, r, signs, k):
                add_to(out, st, sign * c * coef)
    return out


def flip(code: PlanarCode, r: int, signs: tuple[int, ...], k: int) -> list[tuple[State, int]]:
    """Merge or split from changing crossing ``k`` from 0 to 1 (no edge sign)."""
    x = code.crossings[k]
    r2 = r | (1 << (code.n - 1 - k))
    of, _ = code.circles(r)
    of2, count2 = code.circles(r2)
    A, C = of[x[0]], of[x[2]]
    # circles away from the crossing keep their sign
    base = [0] * count2
    for a, c in of.items():
        if c != A and c != C:
            base[of2[a]] = signs[c]
    nl = len(code.loops)
    for t in range(nl):
        base[count2 - nl + t] = signs[len(signs) - nl + t]
    if A != C:
        m = of2[x[0]]
        sa, sc = signs[A], signs[C]
        if sa == -1 and sc == -1:
            return []
        base[m] = -1 if (sa == -1 or sc == -1) else 1
        return [((r2, tuple(base)), 1)]
    p, q = of2[x[0]], of2[x[2]]
    s = signs[A]
    out = []
    if s == 1:
        for sp, sq in ((1, -1), (-1, 1)):
            b = list(base)
            b[p], b[q] = sp, sq
            out.append(((r2, tuple(b)), 1))
    else:
        b = list(base)
        b[p], b[q] = -1, -1
        out.append(((r2, tuple(b)), 1))
    return out


def _transfer(src: PlanarCode, r: int, signs, dst: PlanarCode, r2: int, skip=()) -> list[int]:
    """Copy signs to circles of ``dst`` sharing an arc with circles of ``src``.

    Arcs of ``dst`` must be arcs of ``src`` or unions of them named by a
    member arc; circles listed in ``skip`` (source indices) are ignored.
    Unassigned target circles get 0.
    """
    of, _ = src.circles(r)
    of2, count2 = dst.circles(r2)
    out = [0] * count2
    for a, c in of2.items():
        if a in of and of[a] not in skip:
            out[c] = signs[of[a]]
    loop_index = {key: t for t, key in enumerate(src.loops)}
    n_src = len(signs) - len(src.loops)
    n_dst = count2 - len(dst.loops)
    for t, key in enumerate(dst.loops):
        if key in loop_index:
            out[n_dst + t] = signs[n_src + loop_index[key]]
        elif key[0] == "loop" and key[1] in of and of[key[1]] not in skip:
            # a loop freed by the last removal keeps its circle's sign
            out[n_dst + t] = signs[of[key[1]]]
    return out


# -- saddle ---------------------------------------------------------------------------

def cut(code: PlanarCode, a: int, b: int, tail_a, tail_b, new_low: int, new_high: int) -> PlanarCode:
    """Saddle across arcs ``a`` and ``b`` of two parallel strands.

    ``tail_a`` and ``tail_b`` are the slots where the arcs start; the two
    tails get joined by ``new_low`` and the two heads by ``new_high``.
    """
    xs = [list(x) for x in code.crossings]
    for arc, tail in ((a, tail_a), (b, tail_b)):
        for k, p in code.slots(arc):
            xs[k][p] = new_low if (k, p) == tail else new_high
    members = dict(code.members)
    members[new_low] = frozenset()
    members[new_high] = frozenset()
    return PlanarCode(tuple(tuple(x) for x in xs), code.loops, members, dict(code.loop_members))


def saddle_map(src: PlanarCode, dst: PlanarCode, a: int, b: int, low: int, high: int, vec: Vector) -> Vector:
    """Merge or split induced by :func:`cut`; resolutions are unchanged."""
    out: Vector = {}
    for (r, signs), coef in vec.items():
        of, _ = src.circles(r)
        ca, cb = of[a], of[b]
        of2, _ = dst.circles(r)
        base = _transfer(src, r, signs, dst, r, skip=(ca, cb))
        if ca != cb:
            sa, sb = signs[ca], signs[cb]
            if sa == -1 and sb == -1:
                continue
            base[of2[low]] = -1 if -1 in (sa, sb) else 1
            add_to(out, (r, tuple(base)), coef)
        else:
            p, q = of2[low], of2[high]
            if p == q:
                raise RuntimeError("saddle split did not produce two circles")
            choices = ((1, -1), (-1, 1)) if signs[ca] == 1 else ((-1, -1),)
            for sp, sq in choices:
                bb = list(base)
                bb[p], bb[q] = sp, sq
                add_to(out, (r, tuple(bb)), coef)
    return out


# -- Reidemeister II retraction ---------------------------------------------------------

@dataclass(frozen=True)
class Bigon:
    """Two crossings joined by arcs ``t`` and ``e``, removable by R2.

    ``low`` is the crossing whose 0-smoothing keeps the bigon arcs apart and
    ``high`` the one whose 1-smoothing does.
    """

    t: int
    e: int
    low: int
    high: int


def find_bigon(code: PlanarCode, t: int) -> Bigon:
    (x, p), (y, q) = code.slots(t)
    if x == y:
        raise ValueError(f"arc {t} is a curl, not a bigon side")
    for dp in (1, -1):
        e = code.crossings[x][(p + dp) % 4]
        if e == t:
            continue
        for k2, p2 in code.slots(e):
            if k2 == y and (p2 - q) % 4 in (1, 3):
                hx = _pairing_bit(p, (p + dp) % 4)
                hy = _pairing_bit(q, p2)
                if hx == hy:
                    continue
                # the "straight" smoothing is the non-pairing one at each end
                low, high = (x, y) if hx == 1 else (y, x)
                return Bigon(t, e, low, high)
    raise ValueError(f"no Reidemeister II bigon on arc {t}")


def _pairing_bit(p: int, p2: int) -> int:
    """Smoothing bit that joins adjacent slots ``p`` and ``p2``."""
    return 0 if {p, p2} in ({0, 1}, {2, 3}) else 1


def remove_bigon(code: PlanarCode, g: Bigon) -> tuple[PlanarCode, dict[int, int]]:
    """Delete the bigon crossings; strands merge along the straight smoothing.

    A merged arc inherits the parent arcs of its outer pieces only, so the
    identity of a strand does not leak through the bigon sides.
    """
    parent: dict[int, int] = {}

    def find(u):
        parent.setdefault(u, u)
        while parent[u] != u:
            u = parent[u]
        return u

    for k, bit in ((g.low, 0), (g.high, 1)):
        for u, v in smoothing_pairs(code.crossings[k], bit):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    rename = {u: find(u) for u in list(parent)}
    keep = [k for k in range(code.n) if k not in (g.low, g.high)]
    xs = tuple(tuple(rename.get(a, a) for a in code.crossings[k]) for k in keep)
    classes: dict[int, list[int]] = {}
    for u, root in rename.items():
        classes.setdefault(root, []).append(u)
    members = {a: code.arc_members(a) for x in xs for a in x if a not in rename}
    loops = list(code.loops)
    loop_members = dict(code.loop_members)
    used = {a for x in xs for a in x}
    for root, arcs in sorted(classes.items()):
        outer = [u for u in arcs if u not in (g.t, g.e)] or arcs
        merged = frozenset().union(*(code.arc_members(u) for u in outer))
        if root in used:
            members[root] = merged
        else:
            key = ("loop", root)
            loops.append(key)
            loop_members[key] = merged
    return PlanarCode(xs, tuple(loops), members, loop_members), rename


def r2_map(src: PlanarCode, g: Bigon, dst: PlanarCode, vec: Vector) -> Vector:
    """Chain homotopy equivalence that undoes the bigon.

    The straight smoothing maps identically; the smoothing with the bigon
    circle signed ``-`` maps to minus the saddle back to the straight one.
    Signs are those of moving the two crossings to the end of the order.
    """
    n = src.n
    low, high = g.low, g.high
    keep = [k for k in range(n) if k not in (low, high)]
    out: Vector = {}

    def ones_after(r, k):
        return sum(1 for c in keep if c > k and src.bit(r, c))

    def straight(r, signs, coef):
        r2 = 0
        for c in keep:
            r2 = (r2 << 1) | src.bit(r, c)
        add_to(out, (r2, tuple(_transfer(src, r, signs, dst, r2))), coef)

    for (r, signs), coef in vec.items():
        bl, bh = src.bit(r, low), src.bit(r, high)
        if (bl, bh) == (0, 1):
            theta = -1 if ones_after(r, high) & 1 else 1
            straight(r, signs, theta * coef)
        elif (bl, bh) == (1, 0):
            of, _ = src.circles(r)
            circ = of[g.t]
            if signs[circ] == 1:
                continue
            theta = -1 if ones_after(r, low) & 1 else 1
            r00 = r & ~(1 << (n - 1 - low))
            t_signs = tuple(_transfer(src, r, signs, src, r00, skip=(circ,)))
            for (r01, s01), c in flip(src, r00, t_signs, high):
                straight(r01, s01, -theta * c * coef)
    return out


# -- death --------------------------------------------------------------------------------

def cap_loop(code: PlanarCode, key, vec: Vector) -> tuple[PlanarCode, Vector]:
    """Counit on free loop ``key``: ``-`` gives 1, ``+`` gives 0."""
    t = code.loops.index(key)
    n_cross = None
    out: Vector = {}
    for (r, signs), coef in vec.items():
        if n_cross is None:
            n_cross = len(signs) - len(code.loops)
        pos = n_cross + t
        if signs[pos] == -1:
            add_to(out, (r, signs[:pos] + signs[pos + 1:]), coef)
    loops = tuple(k for k in code.loops if k != key)
    lm = {k: v for k, v in code.loop_members.items() if k != key}
    return PlanarCode(code.crossings, loops, code.members, lm), out
