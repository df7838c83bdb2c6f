"""Oriented link diagrams in planar-diagram (PD) form.

A crossing is a 4-tuple of arc labels ``(a, b, c, d)`` listed counterclockwise
starting from the incoming under-strand, so ``a -> c`` is the under-strand
and the over-strand runs ``d -> b`` (positive crossing) or ``b -> d``
(negative crossing).  Crossing-free unknotted components cannot be written as
quadruples and are carried as the counter ``free_loops``.

Components are stored explicitly as arc sequences in the direction of
orientation.  The first arc of each sequence is the component's base point;
Gauss codes start at the crossing this arc runs into.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ParseError

Slot = tuple[int, int]  # (crossing index, position 0..3)

OVER = "O"
UNDER = "U"


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    components: tuple[tuple[int, ...], ...]
    free_loops: int = 0

    def __post_init__(self):
        self._check()

    # -- structure --------------------------------------------------------

    @cached_property
    def arc_slots(self) -> dict[int, list[Slot]]:
        slots: dict[int, list[Slot]] = {}
        for ci, x in enumerate(self.crossings):
            for p, a in enumerate(x):
                slots.setdefault(a, []).append((ci, p))
        return slots

    @cached_property
    def _ends(self) -> tuple[dict[int, Slot], dict[int, Slot]]:
        """(tail slot, head slot) of every arc, from the component sequences."""
        pos = {a: (i, k) for i, comp in enumerate(self.components) for k, a in enumerate(comp)}

        def follows(x: int, y: int) -> bool:
            (i, k), (j, l) = pos[x], pos[y]
            return i == j and l == (k + 1) % len(self.components[i])

        is_in = _orient(self.crossings, follows)
        tails, heads = _ends_from(self.crossings, is_in)
        for comp in self.components:
            for k, arc in enumerate(comp):
                if _successor(self.crossings, heads, arc) != comp[(k + 1) % len(comp)]:
                    raise ParseError(f"component {comp} is not a closed strand")
        return tails, heads

    @property
    def tails(self) -> dict[int, Slot]:
        return self._ends[0]

    @property
    def heads(self) -> dict[int, Slot]:
        return self._ends[1]

    def _check(self):
        seen: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise ParseError(f"crossing {x} is not a quadruple")
            for a in x:
                seen[a] = seen.get(a, 0) + 1
        bad = sorted(a for a, k in seen.items() if k != 2)
        if bad:
            raise ParseError(f"arcs {bad} do not appear exactly twice")
        comp_arcs = [a for comp in self.components for a in comp]
        if sorted(comp_arcs) != sorted(seen):
            raise ParseError("components do not partition the arcs")
        if self.free_loops < 0:
            raise ParseError("negative free loop count")
        tails, heads = self._ends
        for ci in range(len(self.crossings)):
            ins = sorted(p for (c, p) in heads.values() if c == ci)
            if ins not in ([0, 1], [0, 3]):
                raise ParseError(f"crossing {ci} has inconsistent orientation")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        """Component count, crossing-free loops included."""
        return len(self.components) + self.free_loops

    @cached_property
    def arc_component(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    @cached_property
    def signs(self) -> tuple[int, ...]:
        out = []
        heads = self.heads
        in_slots = set(heads.values())
        for ci in range(len(self.crossings)):
            out.append(1 if (ci, 3) in in_slots else -1)
        return tuple(out)

    def over_in(self, ci: int) -> int:
        return 3 if self.signs[ci] == 1 else 1

    def over_out(self, ci: int) -> int:
        return 1 if self.signs[ci] == 1 else 3

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def crossing_components(self, ci: int) -> tuple[int, int]:
        """(over component, under component) of crossing ``ci``."""
        x = self.crossings[ci]
        comp = self.arc_component
        return comp[x[self.over_in(ci)]], comp[x[0]]

    # -- output -----------------------------------------------------------

    def to_pd_text(self) -> str:
        parts = [f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings]
        if self.free_loops:
            parts.append(f"U({self.free_loops})")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "components": [list(c) for c in self.components],
            "unknots": self.free_loops,
        }

    def __repr__(self) -> str:
        return f"LinkDiagram({self.to_pd_text() or 'empty'})"

    # -- canonical form ---------------------------------------------------

    def canonical(self) -> tuple:
        """Relabel arcs 1..N along the components; used for isomorphism tests."""
        label = {}
        for comp in self.components:
            for a in comp:
                label[a] = len(label) + 1
        xs = tuple(sorted(tuple(label[a] for a in x) for x in self.crossings))
        comps = tuple(tuple(label[a] for a in comp) for comp in self.components)
        return xs, comps, self.free_loops

    def relabeled(self) -> "LinkDiagram":
        label = {}
        for comp in self.components:
            for a in comp:
                label[a] = len(label) + 1
        return LinkDiagram(
            tuple(tuple(label[a] for a in x) for x in self.crossings),
            tuple(tuple(label[a] for a in comp) for comp in self.components),
            self.free_loops,
        )


def _orient(crossings, follows) -> dict[Slot, bool]:
    """Decide for every slot whether its arc enters the crossing there.

    Under-strands fix most slots; ``follows(x, y)`` breaks the tie for an
    over-strand ``x -> y`` whose direction is not forced.
    """
    slots: dict[int, list[Slot]] = {}
    for ci, x in enumerate(crossings):
        for p, a in enumerate(x):
            slots.setdefault(a, []).append((ci, p))
    is_in: dict[Slot, bool] = {}
    queue: list[Slot] = []

    def assign(slot: Slot, value: bool):
        if slot in is_in:
            if is_in[slot] != value:
                raise ParseError(f"orientation conflict at crossing {slot[0]}")
            return
        is_in[slot] = value
        queue.append(slot)

    def propagate():
        while queue:
            ci, p = queue.pop()
            v = is_in[(ci, p)]
            s0, s1 = slots[crossings[ci][p]]
            assign(s1 if s0 == (ci, p) else s0, not v)
            if p in (1, 3):
                assign((ci, 4 - p), not v)

    for ci in range(len(crossings)):
        assign((ci, 0), True)
        assign((ci, 2), False)
    propagate()
    for ci in range(len(crossings)):
        if (ci, 1) not in is_in:
            b, d = crossings[ci][1], crossings[ci][3]
            assign((ci, 3) if follows(b, d) else (ci, 1), True)
            propagate()
    return is_in


def _ends_from(crossings, is_in) -> tuple[dict[int, Slot], dict[int, Slot]]:
    tails: dict[int, Slot] = {}
    heads: dict[int, Slot] = {}
    for (ci, p), v in is_in.items():
        a = crossings[ci][p]
        target = heads if v else tails
        if a in target:
            raise ParseError(f"arc {a} has inconsistent orientation")
        target[a] = (ci, p)
    return tails, heads


def _successor(crossings, heads, arc: int) -> int:
    ci, p = heads[arc]
    return crossings[ci][2 if p == 0 else 4 - p]


EMPTY = LinkDiagram((), (), 0)


def unknot_diagram(count: int = 1) -> LinkDiagram:
    return LinkDiagram((), (), count)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"([XU])\s*[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d) ... U(n)`` text (square brackets also accepted).

    A leading ``PD[...]`` wrapper is ignored.  Orientation is deduced from the
    under-strands; a component that never passes under is oriented so that
    arc labels increase along it.
    """
    text = text.strip()
    if not text:
        return EMPTY
    body = re.sub(r"^\s*PD\s*[\[\(]", "", text)
    crossings = []
    loops = 0
    consumed = 0
    for m in _TOKEN.finditer(body):
        kind, inner = m.group(1), m.group(2)
        try:
            vals = [int(v) for v in inner.replace(" ", "").split(",") if v != ""]
        except ValueError as exc:
            raise ParseError(f"non-integer label in {m.group(0)!r}") from exc
        if kind == "X":
            if len(vals) != 4:
                raise ParseError(f"crossing {m.group(0)!r} needs four labels")
            crossings.append(tuple(vals))
        else:
            if len(vals) != 1 or vals[0] < 0:
                raise ParseError(f"bad unknot counter {m.group(0)!r}")
            loops += vals[0]
        consumed += 1
    leftover = _TOKEN.sub("", body)
    if re.search(r"[A-Za-z0-9]", leftover):
        raise ParseError(f"unrecognized PD text: {leftover.strip()!r}")
    return from_pd(crossings, loops)


def parse_pd_json(doc: dict | str) -> LinkDiagram:
    if isinstance(doc, str):
        doc = json.loads(doc)
    crossings = [tuple(x) for x in doc.get("crossings", [])]
    loops = int(doc.get("unknots", 0))
    if "components" in doc:
        return LinkDiagram(tuple(crossings), tuple(tuple(c) for c in doc["components"]), loops)
    return from_pd(crossings, loops)


def from_pd(crossings: Sequence[Sequence[int]], free_loops: int = 0) -> LinkDiagram:
    """Build a diagram from bare PD quadruples, deducing orientation."""
    crossings = tuple(tuple(int(a) for a in x) for x in crossings)
    slots: dict[int, list[Slot]] = {}
    for ci, x in enumerate(crossings):
        if len(x) != 4:
            raise ParseError(f"crossing {x} is not a quadruple")
        for p, a in enumerate(x):
            slots.setdefault(a, []).append((ci, p))
    bad = sorted(a for a, s in slots.items() if len(s) != 2)
    if bad:
        raise ParseError(f"arcs {bad} do not appear exactly twice")

    def follows(x: int, y: int) -> bool:
        # over-only strands: orient so labels increase
        return y == x + 1 or x > y + 1

    is_in = _orient(crossings, follows)
    tails, heads = _ends_from(crossings, is_in)

    remaining = set(slots)
    components = []
    while remaining:
        start = min(remaining)
        comp = [start]
        remaining.discard(start)
        arc = start
        while True:
            arc = _successor(crossings, heads, arc)
            if arc == start:
                break
            if arc not in remaining:
                raise ParseError("component tracing failed")
            comp.append(arc)
            remaining.discard(arc)
        components.append(tuple(comp))
    components.sort(key=min)
    return LinkDiagram(crossings, tuple(components), free_loops)


# -- basic invariants --------------------------------------------------------

def writhe(d: LinkDiagram) -> tuple[tuple[int, ...], int]:
    """Per-component self-writhe (free loops included, as 0) and total writhe."""
    per = [0] * d.n_components
    for ci, s in enumerate(d.signs):
        over, under = d.crossing_components(ci)
        if over == under:
            per[over] += s
    return tuple(per), sum(d.signs)


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    total = 0
    for ci, s in enumerate(d.signs):
        if set(d.crossing_components(ci)) == {i, j} and i != j:
            total += s
    return total // 2


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing."""
    out = []
    for ci, (a, b, c, x) in enumerate(d.crossings):
        if d.signs[ci] == 1:
            out.append((x, a, b, c))
        else:
            out.append((b, c, x, a))
    return LinkDiagram(tuple(out), d.components, d.free_loops)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = max((a for x in d1.crossings for a in x), default=0)
    xs = d1.crossings + tuple(tuple(a + shift for a in x) for x in d2.crossings)
    comps = d1.components + tuple(tuple(a + shift for a in c) for c in d2.components)
    return LinkDiagram(xs, comps, d1.free_loops + d2.free_loops)


# -- Gauss codes ---------------------------------------------------------------

@dataclass(frozen=True)
class GaussCode:
    """Per component, the visited crossings as ``(crossing id, 'O'|'U', sign)``.

    Crossing-free components appear as empty sequences (free loops last).
    """

    words: tuple[tuple[tuple[int, str, int], ...], ...]

    def __str__(self) -> str:
        return " | ".join(
            " ".join(f"{ou}{cid}{'+' if s > 0 else '-'}" for cid, ou, s in w) for w in self.words
        )


def gauss_code(d: LinkDiagram) -> GaussCode:
    words = []
    heads = d.heads
    for comp in d.components:
        w = []
        for arc in comp:
            ci, p = heads[arc]
            w.append((ci, UNDER if p == 0 else OVER, d.signs[ci]))
        words.append(tuple(w))
    words.extend(() for _ in range(d.free_loops))
    return GaussCode(tuple(words))


# -- strand deletion -------------------------------------------------------------

@dataclass(frozen=True)
class SubDiagram:
    """A diagram obtained by deleting components, with provenance maps.

    ``crossing_map[k]`` is the parent index of crossing ``k``; ``arc_map[a]``
    lists the parent arcs merged into arc ``a``; ``component_map`` gives the
    parent index of every kept component (crossing components first, then
    free loops, matching :attr:`LinkDiagram.n_components` order).
    """

    diagram: LinkDiagram
    crossing_map: tuple[int, ...]
    arc_map: dict[int, tuple[int, ...]] = field(compare=False)
    component_map: tuple[int, ...]


def delete_components(d: LinkDiagram, drop: Iterable[int]) -> SubDiagram:
    """Remove the given components (indices in ``n_components`` order)."""
    drop = set(drop)
    keep_x = []
    for ci in range(d.n_crossings):
        over, under = d.crossing_components(ci)
        if over not in drop and under not in drop:
            keep_x.append(ci)
    return _rebuild(d, keep_x, drop)


def remove_crossings(d: LinkDiagram, remove: Iterable[int]) -> SubDiagram:
    """Erase crossings, letting both strands run straight through."""
    remove = set(remove)
    return _rebuild(d, [ci for ci in range(d.n_crossings) if ci not in remove], set())


def _rebuild(d: LinkDiagram, keep_x: list[int], drop: set[int]) -> SubDiagram:
    keep_x_set = set(keep_x)
    heads = d.heads
    new_components = []
    crossing_free = []
    for idx, comp in enumerate(d.components):
        if idx in drop:
            continue
        if not any(heads[a][0] in keep_x_set for a in comp):
            crossing_free.append(idx)
            continue
        # a merged arc ends where a kept crossing is entered
        groups = []
        current = []
        for a in comp:
            current.append(a)
            if heads[a][0] in keep_x_set:
                groups.append(tuple(current))
                current = []
        if current:
            # the tail of the sequence wraps into the first merged arc
            groups[0] = tuple(current) + groups[0]
        new_components.append((idx, groups))
    label = {}
    arc_groups: list[tuple[int, ...]] = []
    comp_seqs = []
    comp_map = []
    for idx, groups in new_components:
        seq = []
        for g in groups:
            lab = len(arc_groups) + 1
            arc_groups.append(g)
            for a in g:
                label[a] = lab
            seq.append(lab)
        comp_seqs.append(tuple(seq))
        comp_map.append(idx)
    xs = [tuple(label[a] for a in d.crossings[ci]) for ci in keep_x]
    ncomp = len(d.components)
    free_kept = [i for i in range(ncomp, d.n_components) if i not in drop]
    comp_map.extend(crossing_free)
    comp_map.extend(free_kept)
    diagram = LinkDiagram(tuple(xs), tuple(comp_seqs), len(crossing_free) + len(free_kept))
    arc_map = {k + 1: g for k, g in enumerate(arc_groups)}
    return SubDiagram(diagram, tuple(keep_x), arc_map, tuple(comp_map))


# -- cabling -----------------------------------------------------------------------

@dataclass(frozen=True)
class Cable:
    """A cabled diagram together with the identity of its strands.

    ``strands[k] = (i, t)`` says component ``k`` of ``diagram`` (in
    ``n_components`` order) is copy ``t`` of component ``i`` of the original.
    """

    diagram: LinkDiagram
    strands: tuple[tuple[int, int], ...]
    arc_keys: dict[int, tuple] = field(default_factory=dict, compare=False)

    def arc_of(self, key: tuple) -> int:
        """Label of the arc with construction key, e.g. ``("ext", a, t)``."""
        for label, k in self.arc_keys.items():
            if k == key:
                return label
        raise KeyError(key)


def cable(d: LinkDiagram, m: Sequence[int]) -> Cable:
    """Blackboard-framed ``m``-cable with strand bookkeeping.

    Copies of a component are pushed off to the right of its direction of
    travel, copy ``t`` at distance ``t``.  A crossing of an over-component with
    ``p`` copies and an under-component with ``r`` copies becomes a ``p x r``
    grid of crossings of the same sign.
    """
    m = tuple(int(v) for v in m)
    if len(m) != d.n_components:
        raise ValueError(f"cable needs {d.n_components} multiplicities, got {len(m)}")
    if any(v < 0 for v in m):
        raise ValueError("cable multiplicities must be nonnegative")
    zero = [i for i, v in enumerate(m) if v == 0]
    if zero:
        sub = delete_components(d, zero)
        base = sub.diagram
        m_sub = tuple(m[i] for i in sub.component_map)
        inner = cable(base, m_sub)
        strands = tuple((sub.component_map[i], t) for i, t in inner.strands)
        # parent arcs merged into a kept arc: report the ones it starts with
        keys = {}
        for label, key in inner.arc_keys.items():
            if key[0] == "ext":
                key = ("ext", sub.arc_map[key[1]][0], key[2])
            keys[label] = key
        return Cable(inner.diagram, strands, keys)

    # arc label registry
    labels: dict[tuple, int] = {}

    def lab(key) -> int:
        v = labels.get(key)
        if v is None:
            v = len(labels) + 1
            labels[key] = v
        return v

    new_crossings = []
    new_signs = []
    for ci, x in enumerate(d.crossings):
        a, b, c, dd = x
        s = d.signs[ci]
        over_c, under_c = d.crossing_components(ci)
        mu, mo = m[under_c], m[over_c]
        over_in = dd if s == 1 else b
        over_out = b if s == 1 else dd
        # frame: under copy u runs north along x = u; over copy v runs east
        # along y = -v (positive crossing) or west along y = +v (negative)
        ys = {v: (-v if s == 1 else v) for v in range(mo)}
        by_y = sorted(range(mo), key=lambda v: ys[v])
        cell: dict[tuple[int, int], dict[str, int]] = {}
        for u in range(mu):
            seq = [lab(("ext", a, u))]
            seq += [lab(("int", ci, "U", u, k)) for k in range(mo - 1)]
            seq.append(lab(("ext", c, u)))
            for k, v in enumerate(by_y):
                cell[(u, v)] = {"south": seq[k], "north": seq[k + 1]}
        for v in range(mo):
            order = list(range(mu)) if s == 1 else list(reversed(range(mu)))
            seq = [lab(("ext", over_in, v))]
            seq += [lab(("int", ci, "O", v, k)) for k in range(mu - 1)]
            seq.append(lab(("ext", over_out, v)))
            for k, u in enumerate(order):
                before, after = seq[k], seq[k + 1]
                if s == 1:
                    cell[(u, v)]["west"], cell[(u, v)]["east"] = before, after
                else:
                    cell[(u, v)]["east"], cell[(u, v)]["west"] = before, after
        for u in range(mu):
            for v in by_y:
                g = cell[(u, v)]
                new_crossings.append((g["south"], g["east"], g["north"], g["west"]))
                new_signs.append(s)
    # head slot of every arc: under-in (0) or over-in (3 if positive else 1)
    head: dict[int, tuple[int, int]] = {}
    for k, xq in enumerate(new_crossings):
        head[xq[0]] = (k, 2)
        over_in_pos = 3 if new_signs[k] == 1 else 1
        head[xq[over_in_pos]] = (k, 4 - over_in_pos)
    comps = []
    strands = []
    for i, comp in enumerate(d.components):
        for t in range(m[i]):
            start = lab(("ext", comp[0], t))
            seq = [start]
            k, p = head[start]
            arc = new_crossings[k][p]
            while arc != start:
                seq.append(arc)
                k, p = head[arc]
                arc = new_crossings[k][p]
            comps.append(tuple(seq))
            strands.append((i, t))
    free = 0
    for i in range(len(d.components), d.n_components):
        for t in range(m[i]):
            strands.append((i, t))
            free += 1
    raw = LinkDiagram(tuple(new_crossings), tuple(comps), free)
    relabel = {}
    for comp in raw.components:
        for a in comp:
            relabel[a] = len(relabel) + 1
    keys = {relabel[v]: k for k, v in labels.items()}
    return Cable(raw.relabeled(), tuple(strands), keys)


def cable_diagram(d: LinkDiagram, m: Sequence[int]) -> LinkDiagram:
    return cable(d, m).diagram
