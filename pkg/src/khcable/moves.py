"""Reidemeister moves on PD diagrams: R2, R3 and framed R1 pairs.

Faces are found by walking corners: the corner ``(c, p)`` is the region at
crossing ``c`` between slots ``p`` and ``p + 1`` (counterclockwise).  Leaving
``c`` along the arc at slot ``p`` keeps that region on the left; arriving at
slot ``p'`` of the next crossing, the walk continues from corner
``(c', p' - 1)``.

Every move returns a new diagram whose face count is checked against
Euler's formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .diagram import LinkDiagram, remove_crossings
from .errors import IllegalMoveError

Corner = tuple[int, int]


@dataclass(frozen=True)
class Edge:
    """An arc as it appears on a face boundary, walked from ``start`` to ``end``."""

    arc: int
    start: tuple[int, int]
    end: tuple[int, int]


def faces(d: LinkDiagram) -> list[list[Edge]]:
    """Boundary walks of all faces, in a deterministic order."""
    slots = d.arc_slots
    seen: set[Corner] = set()
    out = []
    for ci in range(d.n_crossings):
        for p in range(4):
            if (ci, p) in seen:
                continue
            walk = []
            corner = (ci, p)
            while corner not in seen:
                seen.add(corner)
                c, q = corner
                arc = d.crossings[c][q]
                s0, s1 = slots[arc]
                other = s1 if s0 == (c, q) else s0
                walk.append(Edge(arc, (c, q), other))
                corner = (other[0], (other[1] - 1) % 4)
            out.append(walk)
    return out


def n_pieces(d: LinkDiagram) -> int:
    """Connected pieces of the diagram's projection that contain crossings."""
    parent = list(range(d.n_crossings))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c1, _), (c2, _) in d.arc_slots.values():
        r1, r2 = find(c1), find(c2)
        if r1 != r2:
            parent[r1] = r2
    return len({find(c) for c in range(d.n_crossings)})


def is_planar(d: LinkDiagram) -> bool:
    """Euler's formula: each connected piece with n crossings has n + 2 faces."""
    return len(faces(d)) == d.n_crossings + 2 * n_pieces(d)


def _checked(d: LinkDiagram) -> LinkDiagram:
    if not is_planar(d):
        raise IllegalMoveError("move produced a non-planar diagram")
    return d


def _fresh(d: LinkDiagram):
    nxt = max(d.arc_slots, default=0)

    def new():
        nonlocal nxt
        nxt += 1
        return nxt

    return new


def _orientation(d: LinkDiagram, e: Edge) -> int:
    """+1 when the face walk runs along the arc's orientation."""
    return 1 if d.tails[e.arc] == e.start else -1


def _replace_slots(crossings: list[list[int]], subs: dict[tuple[int, int], int]):
    for (c, p), a in subs.items():
        crossings[c][p] = a


def _split_in_components(components, arc: int, pieces: list[int]):
    out = []
    for comp in components:
        seq = []
        for a in comp:
            seq.extend(pieces if a == arc else [a])
        out.append(tuple(seq))
    return out


def _finger_crossings(x1, x2, x3, y1, y2, y3, o1, o2, first_over):
    """PD quadruples of the bigon made by pushing strand 1 across strand 2.

    In face-walk directions strand 1 runs ``x1 P x2 Q x3`` and strand 2 runs
    ``y1 Q y2 P y3``; around P the counterclockwise slots hold ``y3, x1, y2,
    x2`` and around Q ``y2, x3, y1, x2``.
    """
    ring_p = [("2", y3), ("1", x1), ("2", y2), ("1", x2)]
    ring_q = [("2", y2), ("1", x3), ("2", y1), ("1", x2)]
    under = "2" if first_over else "1"
    # incoming end of the under strand at P and at Q
    if under == "2":
        start_p = y2 if o2 == 1 else y3
        start_q = y1 if o2 == 1 else y2
    else:
        start_p = x1 if o1 == 1 else x2
        start_q = x2 if o1 == 1 else x3

    def rotate(ring, start):
        k = next(i for i, (s, a) in enumerate(ring) if s == under and a == start)
        return tuple(a for _, a in ring[k:] + ring[:k])

    return rotate(ring_p, start_p), rotate(ring_q, start_q)


# -- R2 -------------------------------------------------------------------------------------

@dataclass(frozen=True)
class R2Site:
    """Push the strand along ``first`` across ``second`` inside face ``face``.

    ``first``/``second`` index edges of ``faces(d)[face]``; ``-1`` stands for
    a free loop placed in that face.  With ``face = -1`` the move folds a free
    loop over itself.
    """

    face: int
    first: int
    second: int
    first_over: bool


def r2_sites(d: LinkDiagram) -> list[R2Site]:
    sites = []
    fs = faces(d)
    for fi, walk in enumerate(fs):
        for i, j in combinations(range(len(walk)), 2):
            for over in (True, False):
                sites.append(R2Site(fi, i, j, over))
        if d.free_loops:
            for j in range(len(walk)):
                for over in (True, False):
                    sites.append(R2Site(fi, -1, j, over))
    if d.free_loops:
        sites.append(R2Site(-1, -1, -1, True))
    return sites


def apply_r2(d: LinkDiagram, site: R2Site) -> LinkDiagram:
    new = _fresh(d)
    crossings = [list(x) for x in d.crossings]
    components = list(d.components)
    if site.face == -1:
        if not d.free_loops:
            raise IllegalMoveError("no free loop to fold")
        a, b, c, x = new(), new(), new(), new()
        crossings += [[b, x, c, c], [a, x, b, a]]
        components.append((a, b, c, x))
        return _checked(LinkDiagram(tuple(map(tuple, crossings)), tuple(components), d.free_loops - 1))
    fs = faces(d)
    if not 0 <= site.face < len(fs):
        raise IllegalMoveError(f"no face {site.face}")
    walk = fs[site.face]
    if site.first == site.second or not (-1 <= site.first < len(walk)) or not (0 <= site.second < len(walk)):
        raise IllegalMoveError("bad edge indices for R2")
    e2 = walk[site.second]
    o2 = _orientation(d, e2)
    y1, y2, y3 = new(), new(), new()
    if site.first == -1:
        if not d.free_loops:
            raise IllegalMoveError("no free loop to push")
        x2, x1 = new(), new()
        x3 = x1
        o1 = 1
        loops = d.free_loops - 1
    else:
        e1 = walk[site.first]
        o1 = _orientation(d, e1)
        x1, x2, x3 = new(), new(), new()
        loops = d.free_loops
        _replace_slots(crossings, {e1.start: x1, e1.end: x3})
        pieces = [x1, x2, x3] if o1 == 1 else [x3, x2, x1]
        components = _split_in_components(components, e1.arc, pieces)
    _replace_slots(crossings, {e2.start: y1, e2.end: y3})
    components = _split_in_components(components, e2.arc, [y1, y2, y3] if o2 == 1 else [y3, y2, y1])
    if site.first == -1:
        components.append((x1, x2))
    xp, xq = _finger_crossings(x1, x2, x3, y1, y2, y3, o1, o2, site.first_over)
    crossings += [list(xp), list(xq)]
    return _checked(LinkDiagram(tuple(map(tuple, crossings)), tuple(components), loops))


def r2_inverse_sites(d: LinkDiagram) -> list[tuple[int, int]]:
    """Bigons whose one strand passes over at both corners."""
    sites = []
    for walk in faces(d):
        if len(walk) != 2:
            continue
        c1, c2 = walk[0].start[0], walk[1].start[0]
        if c1 == c2:
            continue
        strands = []
        for e in walk:
            # the edge leaves one corner crossing and enters the other
            ends = [e.start, e.end]
            strands.append(tuple(p in (1, 3) for _, p in ends))
        if any(a != b for a, b in strands):
            continue
        if strands[0][0] == strands[1][0]:
            continue
        sites.append(tuple(sorted((c1, c2))))
    return sorted(set(sites))


def undo_r2(d: LinkDiagram, site: tuple[int, int]) -> LinkDiagram:
    if tuple(sorted(site)) not in r2_inverse_sites(d):
        raise IllegalMoveError(f"crossings {site} do not bound a removable bigon")
    return _checked(remove_crossings(d, site).diagram)


# -- framed R1 ----------------------------------------------------------------------------------

KINKS = {
    # (sign, under first) -> slot pattern over (in, loop, out)
    (1, True): ("in", "out", "loop", "loop"),
    (-1, True): ("in", "loop", "loop", "out"),
    (1, False): ("loop", "loop", "out", "in"),
    (-1, False): ("loop", "in", "out", "loop"),
}


@dataclass(frozen=True)
class R1Site:
    """Insert a positive and a negative kink in a row on ``arc``.

    ``first`` and ``second`` are ``(sign, under_first)`` kink types; the
    signs must be opposite so the writhe is unchanged.
    """

    arc: int
    first: tuple[int, bool]
    second: tuple[int, bool]


def r1_sites(d: LinkDiagram) -> list[R1Site]:
    out = []
    for arc in sorted(d.arc_slots):
        for k1 in sorted(KINKS):
            for k2 in sorted(KINKS):
                if k1[0] != k2[0]:
                    out.append(R1Site(arc, k1, k2))
    if d.free_loops:
        for k1 in sorted(KINKS):
            for k2 in sorted(KINKS):
                if k1[0] != k2[0]:
                    out.append(R1Site(0, k1, k2))
    return out


def apply_framed_r1(d: LinkDiagram, site: R1Site) -> LinkDiagram:
    if site.first not in KINKS or site.second not in KINKS or site.first[0] == site.second[0]:
        raise IllegalMoveError("framed R1 needs two kinks of opposite sign")
    new = _fresh(d)
    crossings = [list(x) for x in d.crossings]
    components = list(d.components)
    loops = d.free_loops
    a_in, l1, mid, l2, a_out = new(), new(), new(), new(), new()
    if site.arc == 0:
        if not d.free_loops:
            raise IllegalMoveError("no free loop for a kink pair")
        a_out = a_in
        loops -= 1
        components.append((a_in, l1, mid, l2))
    else:
        if site.arc not in d.arc_slots:
            raise IllegalMoveError(f"no arc {site.arc}")
        _replace_slots(crossings, {d.tails[site.arc]: a_in, d.heads[site.arc]: a_out})
        components = _split_in_components(components, site.arc, [a_in, l1, mid, l2, a_out])
    for kind, (e_in, loop, e_out) in ((site.first, (a_in, l1, mid)), (site.second, (mid, l2, a_out))):
        names = {"in": e_in, "loop": loop, "out": e_out}
        crossings.append([names[s] for s in KINKS[kind]])
    return _checked(LinkDiagram(tuple(map(tuple, crossings)), tuple(components), loops))


def kinks(d: LinkDiagram) -> list[int]:
    """Crossings that close a monogon."""
    out = []
    for ci, x in enumerate(d.crossings):
        if len(set(x)) < 4:
            out.append(ci)
    return out


def r1_inverse_sites(d: LinkDiagram) -> list[tuple[int, int]]:
    """Consecutive kinks of opposite sign along a strand."""
    ks = set(kinks(d))
    sites = []
    for c1 in sorted(ks):
        x = d.crossings[c1]
        out_arc = next(a for a in x if x.count(a) == 1 and d.tails[a][0] == c1)
        c2 = d.heads[out_arc][0]
        if c2 in ks and c2 != c1 and d.signs[c1] != d.signs[c2]:
            sites.append((c1, c2))
    return sites


def undo_framed_r1(d: LinkDiagram, site: tuple[int, int]) -> LinkDiagram:
    if tuple(site) not in r1_inverse_sites(d):
        raise IllegalMoveError(f"crossings {site} are not a kink pair")
    return _checked(remove_crossings(d, site).diagram)


# -- R3 ---------------------------------------------------------------------------------------------

def r3_sites(d: LinkDiagram) -> list[int]:
    """Indices into ``faces(d)`` of triangles admitting R3."""
    out = []
    for fi, walk in enumerate(faces(d)):
        if _r3_strands(d, walk) is not None:
            out.append(fi)
    return out


def _r3_strands(d: LinkDiagram, walk: list[Edge]):
    if len(walk) != 3:
        return None
    corners = {e.start[0] for e in walk}
    if len(corners) != 3:
        return None
    kinds = []
    for e in walk:
        ends = (e.start[1] in (1, 3), e.end[1] in (1, 3))
        kinds.append("top" if all(ends) else "bottom" if not any(ends) else "middle")
    if sorted(kinds) != ["bottom", "middle", "top"]:
        return None
    return kinds


def apply_r3(d: LinkDiagram, face: int) -> LinkDiagram:
    """Slide one strand across the crossing of the other two.

    Each strand's two triangle crossings swap order along it while every
    crossing keeps its counterclockwise arrangement.
    """
    fs = faces(d)
    if not 0 <= face < len(fs) or _r3_strands(d, fs[face]) is None:
        raise IllegalMoveError(f"face {face} is not an R3 triangle")
    new = _fresh(d)
    crossings = [list(x) for x in d.crossings]
    components = list(d.components)
    subs: dict[tuple[int, int], int] = {}
    for e in fs[face]:
        tail, head = (e.start, e.end) if d.tails[e.arc] == e.start else (e.end, e.start)
        (ct, pt), (ch, ph) = tail, head
        ext_in = d.crossings[ct][(pt + 2) % 4]
        ext_out = d.crossings[ch][(ph + 2) % 4]
        edge = new()
        # at the first crossing the strand now leaves into ext_out, at the second it arrives from ext_in
        subs[(ct, (pt + 2) % 4)] = edge
        subs[(ct, pt)] = ext_out
        subs[(ch, ph)] = ext_in
        subs[(ch, (ph + 2) % 4)] = edge
        components = _split_in_components(components, e.arc, [edge])
    _replace_slots(crossings, subs)
    return _checked(LinkDiagram(tuple(map(tuple, crossings)), tuple(components), d.free_loops))


# -- bookkeeping -------------------------------------------------------------------------------------

def all_moves(d: LinkDiagram):
    """Every move at every legal site, as ``(description, diagram)`` pairs."""
    for site in r2_sites(d):
        yield f"R2 {site}", apply_r2(d, site)
    for fi in r3_sites(d):
        yield f"R3 face {fi}", apply_r3(d, fi)
    for site in r1_sites(d):
        yield f"R1 {site}", apply_framed_r1(d, site)


def isomorphic(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    """Equal after relabeling arcs along components from their base points."""
    return d1.canonical() == d2.canonical()
