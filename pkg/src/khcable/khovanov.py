"""Khovanov chain complexes of link diagrams and their integer homology.

Generators are enhanced states: a resolution ``r`` (one bit per crossing,
crossing 0 most significant) and a sign on each circle, stored as a bit mask
with circle 0 most significant and bit value 1 meaning ``-``.  Circles are
ordered by their smallest arc label.  Basis elements of a chain group are
ordered by resolution, then mask, which is lexicographic order in
(resolution bits, circle signs) with ``+`` before ``-``.

Gradings: ``i = |r| - n-`` and ``j = #(+) - #(-) + |r| + n+ - 2 n-``.
The differential sums the Frobenius merge/split maps over all ``0 -> 1``
changes, with sign ``(-1)^(number of 1-bits before the changed crossing)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from .diagram import LinkDiagram
from .errors import DifferentialLawError
from .intmatrix import IntMatrix, homology_ranks
from .kauffman import EnhancedState, Resolution, check_cap, smoothing_pairs
from .laurent import LaurentPoly

Grade = tuple[int, int]


# -- resolutions of a whole cube ---------------------------------------------------

@dataclass(frozen=True)
class Cube:
    """Circle data for all ``2^n`` resolutions of a diagram.

    ``circle_of[r][a]`` is the circle index of arc number ``a`` (arcs are
    numbered by increasing label) in resolution ``r``; ``n_circles[r]``
    counts circles, free loops included, which come last.
    """

    diagram: LinkDiagram
    arcs: tuple[int, ...]
    circle_of: list[list[int]] = field(repr=False)
    n_circles: list[int] = field(repr=False)
    circle_min: list[list[int]] = field(repr=False)


def build_cube(d: LinkDiagram) -> Cube:
    n = d.n_crossings
    arcs = tuple(sorted(d.arc_slots))
    index = {a: k for k, a in enumerate(arcs)}
    pairs = [
        [tuple((index[u], index[v]) for u, v in smoothing_pairs(x, bit)) for bit in (0, 1)]
        for x in d.crossings
    ]
    na = len(arcs)
    circle_of = []
    n_circles = []
    circle_min = []
    for r in range(1 << n):
        parent = list(range(na))
        for k in range(n):
            for u, v in pairs[k][(r >> (n - 1 - k)) & 1]:
                while parent[u] != u:
                    u = parent[u]
                while parent[v] != v:
                    v = parent[v]
                if u != v:
                    if u < v:
                        parent[v] = u
                    else:
                        parent[u] = v
        labels = [0] * na
        roots = {}
        mins = []
        for a in range(na):
            root = a
            while parent[root] != root:
                root = parent[root]
            c = roots.get(root)
            if c is None:
                c = roots[root] = len(mins)
                mins.append(a)
            labels[a] = c
        circle_of.append(labels)
        n_circles.append(len(mins) + d.free_loops)
        circle_min.append(mins)
    return Cube(d, arcs, circle_of, n_circles, circle_min)


# -- mask tables for merge and split --------------------------------------------------

def _bit(c: int, t: int) -> int:
    return 1 << (c - 1 - t)


def _merge_table(c: int, p: int, q: int, m: int):
    """Source masks, target masks and coefficients for merging circles p, q."""
    masks = np.arange(1 << c, dtype=np.int64)
    bp = (masks >> (c - 1 - p)) & 1
    bq = (masks >> (c - 1 - q)) & 1
    others = _squeeze(masks, c, (p, q))
    keep = ~((bp == 1) & (bq == 1))
    merged = bp | bq
    tgt = _insert(others, c - 2, (m,), (merged,))
    return masks[keep], tgt[keep], np.ones(int(keep.sum()), dtype=np.int64)


def _split_table(c: int, p: int, s1: int, s2: int):
    """Split circle p into new circles s1 < s2: ``+ -> +- + -+``, ``- -> --``."""
    masks = np.arange(1 << c, dtype=np.int64)
    bp = (masks >> (c - 1 - p)) & 1
    others = _squeeze(masks, c, (p,))
    plus = bp == 0
    src = np.concatenate([masks[plus], masks[plus], masks[~plus]])
    o = np.concatenate([others[plus], others[plus], others[~plus]])
    k_plus = int(plus.sum())
    k_minus = len(masks) - k_plus
    first = np.concatenate([np.zeros(k_plus, np.int64), np.ones(k_plus, np.int64), np.ones(k_minus, np.int64)])
    second = np.concatenate([np.ones(k_plus, np.int64), np.zeros(k_plus, np.int64), np.ones(k_minus, np.int64)])
    tgt = _insert(o, c - 1, (s1, s2), (first, second))
    return src, tgt, np.ones(len(src), dtype=np.int64)


def _squeeze(masks, c: int, drop: tuple[int, ...]):
    """Delete the bits of the given circle positions (MSB-first)."""
    out = np.zeros_like(masks)
    k = 0
    for t in range(c - 1, -1, -1):
        if t in drop:
            continue
        out |= ((masks >> (c - 1 - t)) & 1) << k
        k += 1
    return out


def _insert(masks, c: int, positions: tuple[int, ...], values):
    """Insert bits at the given positions of a (c + len(positions))-bit mask."""
    total = c + len(positions)
    out = np.zeros_like(masks)
    k = 0
    vals = dict(zip(positions, values))
    for t in range(total - 1, -1, -1):
        if t in vals:
            out |= vals[t] << (total - 1 - t)
        else:
            out |= ((masks >> k) & 1) << (total - 1 - t)
            k += 1
    return out


# -- chain groups and complexes ---------------------------------------------------------

@dataclass
class ChainGroup:
    """Generators at a fixed bigrading, in basis order."""

    diagram: LinkDiagram
    i: int
    j: int
    resolutions: np.ndarray = field(repr=False)
    masks: np.ndarray = field(repr=False)
    circle_counts: np.ndarray = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.resolutions)

    @property
    def basis(self) -> list[EnhancedState]:
        n = self.diagram.n_crossings
        out = []
        for r, mask, c in zip(self.resolutions.tolist(), self.masks.tolist(), self.circle_counts.tolist()):
            bits = tuple((r >> (n - 1 - k)) & 1 for k in range(n))
            signs = tuple(-1 if (mask >> (c - 1 - t)) & 1 else 1 for t in range(c))
            out.append(EnhancedState(Resolution(self.diagram, bits), signs))
        return out


@dataclass
class KhComplex:
    """Khovanov complex: chain groups per (i, j) and differentials into (i+1, j).

    Differentials are stored as coordinate lists ``(rows, cols, vals)``;
    :meth:`differential` converts one to an :class:`IntMatrix`.
    """

    diagram: LinkDiagram
    groups: dict[Grade, ChainGroup]
    blocks: dict[Grade, tuple[np.ndarray, np.ndarray, np.ndarray]] = field(repr=False)

    def dim(self, i: int, j: int) -> int:
        g = self.groups.get((i, j))
        return g.dimension if g else 0

    def differential(self, i: int, j: int) -> IntMatrix:
        rows, cols, vals = self.blocks.get((i, j), ((), (), ()))
        return IntMatrix.from_entries(
            self.dim(i + 1, j), self.dim(i, j),
            zip(np.asarray(rows).tolist(), np.asarray(cols).tolist(), np.asarray(vals).tolist()),
        )

    def scipy_differential(self, i: int, j: int) -> sparse.csr_matrix:
        rows, cols, vals = self.blocks.get((i, j), (np.zeros(0, np.int64),) * 3)
        return sparse.csr_matrix(
            (np.asarray(vals, dtype=np.int64), (np.asarray(rows), np.asarray(cols))),
            shape=(self.dim(i + 1, j), self.dim(i, j)),
        )

    @property
    def gradings(self) -> list[Grade]:
        return sorted(self.groups)

    @cached_property
    def j_values(self) -> list[int]:
        return sorted({j for _, j in self.groups})

    def check_d_squared(self) -> None:
        for (i, j) in self.gradings:
            if (i + 1, j) not in self.groups or (i + 2, j) not in self.groups:
                continue
            prod = self.scipy_differential(i + 1, j) @ self.scipy_differential(i, j)
            if prod.count_nonzero():
                raise DifferentialLawError(f"d o d != 0 at (i, j) = ({i}, {j})", where=(i, j))


def build_complex(d: LinkDiagram, cap: int | None = None, check: bool = True) -> KhComplex:
    check_cap(d.n_crossings, cap)
    cube = build_cube(d)
    return complex_from_cube(cube, check=check)


def complex_from_cube(cube: Cube, check: bool = True) -> KhComplex:
    d = cube.diagram
    n = d.n_crossings
    n_plus, n_minus = d.n_plus, d.n_minus
    nres = 1 << n
    ncirc = np.array(cube.n_circles, dtype=np.int64)
    sizes = np.left_shift(1, ncirc)
    offsets = np.zeros(nres + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    total = int(offsets[-1])
    # per-state arrays
    res_of = np.repeat(np.arange(nres, dtype=np.int64), sizes)
    mask_of = np.arange(total, dtype=np.int64) - offsets[res_of]
    heights = np.array([bin(r).count("1") for r in range(nres)], dtype=np.int64)
    pop = _popcount(mask_of)
    c_of = ncirc[res_of]
    h_of = heights[res_of]
    i_of = h_of - n_minus
    j_of = c_of - 2 * pop + h_of + n_plus - 2 * n_minus
    # position of each state inside its (i, j) group, in global order
    order = np.lexsort((np.arange(total), j_of, i_of))
    si, sj = i_of[order], j_of[order]
    starts = np.ones(total, dtype=bool)
    starts[1:] = (si[1:] != si[:-1]) | (sj[1:] != sj[:-1])
    group_start = np.maximum.accumulate(np.where(starts, np.arange(total), 0))
    pos = np.empty(total, dtype=np.int64)
    pos[order] = np.arange(total) - group_start
    groups: dict[Grade, ChainGroup] = {}
    for s in np.flatnonzero(starts).tolist():
        key = (int(si[s]), int(sj[s]))
        e = s + 1
        while e < total and not starts[e]:
            e += 1
        idx = order[s:e]
        groups[key] = ChainGroup(d, key[0], key[1], res_of[idx], mask_of[idx], c_of[idx])

    # edges grouped by their merge/split signature
    edges: dict[tuple, list[tuple[int, int, int]]] = defaultdict(list)
    x_arcs = []
    index = {a: k for k, a in enumerate(cube.arcs)}
    for x in d.crossings:
        x_arcs.append((index[x[0]], index[x[2]]))
    for r in range(nres):
        circ = cube.circle_of[r]
        c = cube.n_circles[r]
        ones_before = 0
        for k in range(n):
            shift = n - 1 - k
            if (r >> shift) & 1:
                ones_before += 1
                continue
            r2 = r | (1 << shift)
            a, cc = x_arcs[k]
            A, C = circ[a], circ[cc]
            sign = -1 if ones_before & 1 else 1
            if A != C:
                p, q = (A, C) if A < C else (C, A)
                # merged circle keeps the smaller minimum arc, which is circle p's
                m = cube.circle_of[r2][cube.circle_min[r][p]]
                edges[("m", c, p, q, m)].append((int(offsets[r]), int(offsets[r2]), sign))
            else:
                circ2 = cube.circle_of[r2]
                s1, s2 = sorted((circ2[a], circ2[cc]))
                edges[("s", c, A, s1, s2)].append((int(offsets[r]), int(offsets[r2]), sign))
    src_all, tgt_all, val_all = [], [], []
    for sig, lst in edges.items():
        if sig[0] == "m":
            tsrc, ttgt, tval = _merge_table(*sig[1:])
        else:
            tsrc, ttgt, tval = _split_table(*sig[1:])
        arr = np.array(lst, dtype=np.int64)
        src_all.append((arr[:, 0:1] + tsrc[None, :]).ravel())
        tgt_all.append((arr[:, 1:2] + ttgt[None, :]).ravel())
        val_all.append((arr[:, 2:3] * tval[None, :]).ravel())
    if src_all:
        src = np.concatenate(src_all)
        tgt = np.concatenate(tgt_all)
        val = np.concatenate(val_all)
    else:
        src = tgt = val = np.zeros(0, dtype=np.int64)
    blocks: dict[Grade, tuple] = {}
    if len(src):
        gi, gj = i_of[src], j_of[src]
        if np.any(j_of[tgt] != gj) or np.any(i_of[tgt] != gi + 1):
            raise DifferentialLawError("differential does not have bidegree (1, 0)")
        korder = np.lexsort((pos[src], pos[tgt], gj, gi))
        gi, gj = gi[korder], gj[korder]
        rows, cols, vals = pos[tgt][korder], pos[src][korder], val[korder]
        cut = np.flatnonzero((gi[1:] != gi[:-1]) | (gj[1:] != gj[:-1])) + 1
        bounds = [0, *cut.tolist(), len(gi)]
        for s, e in zip(bounds[:-1], bounds[1:]):
            blocks[(int(gi[s]), int(gj[s]))] = (rows[s:e], cols[s:e], vals[s:e])
    cx = KhComplex(d, groups, blocks)
    if check:
        cx.check_d_squared()
    return cx


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    out = np.zeros_like(a)
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


# -- homology ----------------------------------------------------------------------------

HomologyTable = dict[Grade, tuple[int, tuple[int, ...]]]


def reduce_slice(cx: KhComplex, j: int):
    """Cancel unit entries of the j-slice; returns reduced matrices per i.

    Cancelling ``d(x) = u y + ...`` with ``u = +-1`` replaces the complex by a
    chain-homotopy-equivalent one without ``x`` and ``y``, so integer
    homology is unchanged.
    """
    levels = sorted(i for (i, jj) in cx.groups if jj == j)
    out: dict[tuple[int, int], dict[int, int]] = {}
    inn: dict[tuple[int, int], dict[int, int]] = {}
    for i in levels:
        for g in range(cx.dim(i, j)):
            out[(i, g)] = {}
            inn[(i, g)] = {}
    for i in levels:
        if (i, j) not in cx.blocks:
            continue
        rows, cols, vals = cx.blocks[(i, j)]
        for r, c, v in zip(rows.tolist(), cols.tolist(), vals.tolist()):
            out[(i, c)][r] = v
            inn[(i + 1, r)][c] = v
    for i in levels:
        # sweep sources at level i, cancelling unit entries
        for g in range(cx.dim(i, j)):
            x = (i, g)
            if x not in out:
                continue
            best = None
            for y, v in out[x].items():
                if v == 1 or v == -1:
                    cost = len(inn[(i + 1, y)])
                    if best is None or cost < best[0]:
                        best = (cost, y, v)
                        if cost == 1:
                            break
            if best is not None:
                _cancel(out, inn, x, (i + 1, best[1]), best[2])
    reduced = {}
    remaining: dict[int, list[int]] = defaultdict(list)
    for (i, g) in out:
        remaining[i].append(g)
    index = {i: {g: k for k, g in enumerate(sorted(gs))} for i, gs in remaining.items()}
    for i in levels:
        src = index.get(i, {})
        tgt = index.get(i + 1, {})
        entries = []
        for g, col in src.items():
            for y, v in out[(i, g)].items():
                entries.append((tgt[y], col, v))
        reduced[i] = IntMatrix.from_entries(len(tgt), len(src), entries)
    dims = {i: len(index.get(i, {})) for i in levels}
    return dims, reduced


def _cancel(out, inn, x, y, u):
    i = x[0]
    ox = out.pop(x)
    iy = inn.pop(y)
    del ox[y[1]]
    del iy[x[1]]
    # zig-zag update: d(x') -= d(x')_y * u * d(x) for every x' hitting y
    for xg, a in iy.items():
        xp = (i, xg)
        row = out[xp]
        del row[y[1]]
        f = a * u
        for yg, b in ox.items():
            nv = row.get(yg, 0) - f * b
            tgt_in = inn[(i + 1, yg)]
            if nv:
                row[yg] = nv
                tgt_in[xg] = nv
            else:
                row.pop(yg, None)
                tgt_in.pop(xg, None)
    for yg in ox:
        inn[(i + 1, yg)].pop(x[1], None)
    # x loses its incoming edges, y its outgoing ones
    for wg in inn.pop(x, {}):
        out[(i - 1, wg)].pop(x[1], None)
    for zg in out.pop(y, {}):
        inn[(i + 2, zg)].pop(y[1], None)


def homology(cx: KhComplex) -> HomologyTable:
    """Integer homology ``{(i, j): (free rank, torsion)}``; zero groups omitted."""
    table: HomologyTable = {}
    for j in cx.j_values:
        dims, mats = reduce_slice(cx, j)
        for i in sorted(dims):
            d_out = mats.get(i, IntMatrix.zeros(dims.get(i + 1, 0), dims[i]))
            d_in = mats.get(i - 1, IntMatrix.zeros(dims[i], dims.get(i - 1, 0)))
            free, torsion = homology_ranks(d_in, d_out)
            if free or torsion:
                table[(i, j)] = (free, torsion)
    return table


def graded_euler(cx: KhComplex) -> LaurentPoly:
    """Chain-level graded Euler characteristic ``sum (-1)^i q^j dim C^{i,j}``."""
    terms: dict[int, int] = {}
    for (i, j), g in cx.groups.items():
        terms[j] = terms.get(j, 0) + (-1 if i % 2 else 1) * g.dimension
    return LaurentPoly(terms)


def euler_from_table(table: HomologyTable) -> LaurentPoly:
    terms: dict[int, int] = {}
    for (i, j), (free, _) in table.items():
        terms[j] = terms.get(j, 0) + (-1 if i % 2 else 1) * free
    return LaurentPoly(terms)


def khovanov_homology(d: LinkDiagram, cap: int | None = None) -> HomologyTable:
    return homology(build_complex(d, cap))


def reflect(table: HomologyTable) -> dict[Grade, int]:
    """Free ranks under ``(i, j) -> (-i, -j)``."""
    return {(-i, -j): free for (i, j), (free, _) in table.items() if free}


def free_ranks(table: HomologyTable) -> dict[Grade, int]:
    return {k: free for k, (free, _) in table.items() if free}
