"""The triple-graded cabling bicomplex ``C^{k,i,j}_n(D)``.

Column ``k`` is the direct sum, over all ways ``s`` of contracting ``k``
disjoint pairs of adjacent parallel strands of the ``n``-cable, of the
Khovanov complex of ``D^s`` (the cable with those strands deleted).

``d''`` is ``(-1)^k`` times the blockwise Khovanov differential.  ``d'`` goes
from ``s`` to ``s`` plus one new pair ``p``; it is the grade-preserving part
of the band contraction map: cut a saddle between the two strands of ``p``,
retract the resulting finger through every crossing by inverse Reidemeister
II maps, then cap off the closed finger.  The component from ``s`` to
``s + p`` carries the sign ``(-1)^(number of pairs of s before p)``.

The contraction map of a pair of copies of component ``c`` is homogeneous of
bidegree ``(-2 lam, -6 lam)`` with
``lam = (m_c - 1) w_c + sum_{l != c} m_l lk(c, l)`` (``m`` the strand counts
of ``D^s``, ``w_c`` the writhe of ``c``), so ``d'`` vanishes on blocks with
``lam != 0``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .colored import as_multi_index, colored_jones
from .diagram import Cable, LinkDiagram, SubDiagram, cable, delete_components, linking_number, writhe
from .errors import DifferentialLawError
from .intmatrix import IntMatrix, matrix_rank
from .kauffman import check_cap, thread_count
from .khovanov import ChainGroup, KhComplex, build_complex, homology
from .laurent import LaurentPoly
from .planar import (
    PlanarCode,
    Vector,
    add_to,
    cap_loop,
    circle_arcs,
    cut,
    find_bigon,
    r2_map,
    remove_bigon,
    saddle_map,
)

KPairing = tuple[tuple[int, ...], ...]
Pair = tuple[int, int]
Grade3 = tuple[int, int, int]


# -- pairings ------------------------------------------------------------------------

def _component_pairings(n: int, k: int) -> list[tuple[int, ...]]:
    """Start indices of ``k`` disjoint pairs ``(t, t+1)`` among ``n`` strands."""
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for t in range(start, n - 1):
            if n - t < 2 * left:
                break
            rec(t + 2, left - 1, acc + [t])

    rec(0, k, [])
    return out


def enumerate_k_pairings(n: Sequence[int] | int, k: int) -> list[KPairing]:
    """All pairings of total weight ``k``, in lexicographic order.

    For a single component with ``n`` strands there are ``C(n - k, k)``.
    """
    n = as_multi_index(n)
    out = []
    for ks in itertools.product(*(range(v // 2 + 1) for v in n)):
        if sum(ks) != k:
            continue
        per = [_component_pairings(v, kv) for v, kv in zip(n, ks)]
        out.extend(itertools.product(*per))
    return sorted(out)


def pairing_weights(s: KPairing) -> tuple[int, ...]:
    return tuple(len(ts) for ts in s)


def pairs_of(s: KPairing) -> list[Pair]:
    """Pairs ``(component, t)`` in the global order."""
    return [(c, t) for c, ts in enumerate(s) for t in ts]


def validate_pairing(n: Sequence[int], s: KPairing) -> None:
    n = as_multi_index(n)
    if len(s) != len(n):
        raise ValueError(f"pairing has {len(s)} entries for {len(n)} components")
    for c, ts in enumerate(s):
        used = set()
        for t in ts:
            if not 0 <= t < n[c] - 1 or t in used or t + 1 in used:
                raise ValueError(f"invalid pair ({t}, {t + 1}) on component {c} with {n[c]} strands")
            used.update((t, t + 1))


def add_pair(s: KPairing, p: Pair) -> KPairing:
    c, t = p
    return tuple(tuple(sorted(ts + (t,))) if i == c else ts for i, ts in enumerate(s))


def new_pairs(n: Sequence[int], s: KPairing) -> list[Pair]:
    """Pairs disjoint from ``s``, in the global order."""
    out = []
    for c, ts in enumerate(s):
        used = {u for t in ts for u in (t, t + 1)}
        out.extend((c, t) for t in range(n[c] - 1) if t not in used and t + 1 not in used)
    return out


def koszul_sign(s: KPairing, p: Pair) -> int:
    """``(-1)^(number of pairs of s preceding p)``."""
    before = sum(1 for q in pairs_of(s) if q < p)
    return -1 if before & 1 else 1


# -- contracted diagrams -------------------------------------------------------------------

@dataclass(frozen=True)
class Contraction:
    """``D^s`` as a subdiagram of the full cable, with strand identities."""

    pairing: KPairing
    sub: SubDiagram
    strands: tuple[tuple[int, int], ...]

    @property
    def diagram(self) -> LinkDiagram:
        return self.sub.diagram


def contract(full: Cable, n: Sequence[int], s: KPairing) -> Contraction:
    validate_pairing(n, s)
    gone = {(c, u) for c, t in pairs_of(s) for u in (t, t + 1)}
    drop = [k for k, st in enumerate(full.strands) if st in gone]
    sub = delete_components(full.diagram, drop)
    strands = tuple(full.strands[k] for k in sub.component_map)
    return Contraction(s, sub, strands)


def contracted_diagram(d: LinkDiagram, n: Sequence[int], s: KPairing) -> LinkDiagram:
    """The ``n``-cable of ``d`` with the strands of every pair of ``s`` deleted."""
    n = as_multi_index(n)
    return contract(cable(d, n), n, s).diagram


def contraction_degree(c: Contraction, p: Pair) -> int:
    """``lam`` of the module docstring for pair ``p`` in ``D^s``."""
    comp, t = p
    d = c.diagram
    idx = {st: k for k, st in enumerate(c.strands)}
    a = idx[(comp, t)]
    if a >= len(d.components):
        return 0
    m: dict[int, int] = Counter(i for i, _ in c.strands)
    w = writhe(d)[0][a]
    lam = (m[comp] - 1) * w
    seen_base = set()
    for k, (i, _) in enumerate(c.strands):
        if i == comp or k >= len(d.components) or i in seen_base:
            continue
        seen_base.add(i)
        lam += m[i] * linking_number(d, a, k)
    return lam


# -- the contraction map ----------------------------------------------------------------------

def _code(c: Contraction, full: Cable) -> PlanarCode:
    d = c.diagram
    loops = tuple(("strand", c.sub.component_map[q]) for q in range(len(d.components), d.n_components))
    members = {a: frozenset(fs) for a, fs in c.sub.arc_map.items()}
    return PlanarCode(tuple(d.crossings), loops, members, {})


class _Target:
    """Circles of ``D^{s'}`` named by arcs of the full cable."""

    def __init__(self, c: Contraction, full: Cable):
        self.contraction = c
        self.code = _code(c, full)
        self.full_arc = {fa: a for a, fs in c.sub.arc_map.items() for fa in fs}
        self.full_component = full.diagram.arc_component
        self.loop_index = {key: t for t, key in enumerate(self.code.loops)}
        self._by_r: dict[int, tuple] = {}

    def circle_of_full(self, r: int):
        if r not in self._by_r:
            of, count = self.code.circles(r)
            self._by_r[r] = (of, count)
        return self._by_r[r]


def _identify(final: PlanarCode, target: _Target, r: int, signs) -> tuple[int, ...]:
    of_t, count_t = target.circle_of_full(r)
    n_cross_t = count_t - len(target.code.loops)
    out = [0] * count_t
    groups = circle_arcs(final, r)
    for ci, arcs in enumerate(groups):
        hits = {
            of_t[target.full_arc[fa]]
            for a in arcs
            for fa in final.arc_members(a)
            if fa in target.full_arc
        }
        if len(hits) != 1:
            raise RuntimeError(f"circle {ci} of the contracted state matches target circles {sorted(hits)}")
        (tc,) = hits
        if out[tc]:
            raise RuntimeError(f"target circle {tc} matched twice")
        out[tc] = signs[ci]
    n_cross_f = len(groups)
    for t, key in enumerate(final.loops):
        if key[0] == "strand":
            comp = key[1]
        else:
            members = final.loop_members.get(key, frozenset())
            comps = {target.full_component[fa] for fa in members}
            if len(comps) != 1:
                raise RuntimeError(f"freed loop {key} is not a single strand: {sorted(comps)}")
            (comp,) = comps
        tt = target.loop_index.get(("strand", comp))
        if tt is None:
            raise RuntimeError(f"loop of strand {comp} has no target loop")
        if out[n_cross_t + tt]:
            raise RuntimeError(f"target loop {comp} matched twice")
        out[n_cross_t + tt] = signs[n_cross_f + t]
    if 0 in out:
        raise RuntimeError("contracted state leaves target circles unsigned")
    return tuple(out)


class ContractionMap:
    """The band contraction map ``C(D^s) -> C(D^{s + p})`` on enhanced states."""

    def __init__(self, full: Cable, src: Contraction, dst: Contraction, p: Pair):
        self.full = full
        self.src = src
        self.dst = dst
        self.pair = p
        self.code = _code(src, full)
        self.target = _Target(dst, full)
        comp, t = p
        idx = {st: k for k, st in enumerate(src.strands)}
        self.a_comp, self.b_comp = idx[(comp, t)], idx[(comp, t + 1)]
        d = src.diagram
        self.free = self.a_comp >= len(d.components)
        if not self.free:
            self.cut_arcs = self._cut_arcs()

    def _cut_arcs(self) -> tuple[int, int]:
        comp, t = self.pair
        d = self.src.diagram
        ext = {(key[1], key[2]): fa for fa, key in self.full.arc_keys.items() if key[0] == "ext"}
        inv = {fa: a for a, fs in self.src.sub.arc_map.items() for fa in fs}
        owner = d.arc_component
        for (x, u), fa in sorted(ext.items()):
            if u != t or (x, t + 1) not in ext:
                continue
            a, b = inv.get(fa), inv.get(ext[(x, t + 1)])
            if a is not None and b is not None and owner[a] == self.a_comp and owner[b] == self.b_comp:
                return a, b
        raise RuntimeError(f"no parallel arcs found for pair {self.pair}")

    def __call__(self, r: int, signs: tuple[int, ...]) -> Vector:
        if self.free:
            return self._free_pair(r, signs)
        d = self.src.diagram
        a, b = self.cut_arcs
        arcs = {x for xs in d.crossings for x in xs}
        low, high = max(arcs) + 1, max(arcs) + 2
        code = cut(self.code, a, b, d.tails[a], d.tails[b], low, high)
        vec = saddle_map(self.code, code, a, b, low, high, {(r, signs): 1})
        tip = high
        while vec and code.slots(tip):
            g = find_bigon(code, tip)
            nxt, rename = remove_bigon(code, g)
            vec = r2_map(code, g, nxt, vec)
            code, tip = nxt, rename.get(g.e, g.e)
        if not vec:
            return {}
        code, vec = cap_loop(code, ("loop", tip), vec)
        out: Vector = {}
        for (r2, s2), coef in vec.items():
            add_to(out, (r2, _identify(code, self.target, r2, s2)), coef)
        return out

    def _free_pair(self, r: int, signs: tuple[int, ...]) -> Vector:
        # merge the two parallel loops, then the counit
        d = self.src.diagram
        nl = d.free_loops
        base = len(signs) - nl
        qa, qb = self.a_comp - len(d.components), self.b_comp - len(d.components)
        sa, sb = signs[base + qa], signs[base + qb]
        if sa == sb:
            return {}
        rest = [signs[base + q] for q in range(nl) if q not in (qa, qb)]
        code = PlanarCode(self.code.crossings, tuple(k for q, k in enumerate(self.code.loops) if q not in (qa, qb)),
                          self.code.members, {})
        s2 = tuple(signs[:base]) + tuple(rest)
        return {(r, _identify(code, self.target, r, s2)): 1}


# -- the bicomplex --------------------------------------------------------------------------

def _state_signs(g: ChainGroup, pos: int) -> tuple[int, tuple[int, ...]]:
    r = int(g.resolutions[pos])
    mask = int(g.masks[pos])
    c = int(g.circle_counts[pos])
    return r, tuple(-1 if (mask >> (c - 1 - t)) & 1 else 1 for t in range(c))


def _grade(d: LinkDiagram, r: int, signs) -> tuple[int, int]:
    h = bin(r).count("1")
    plus = sum(1 for x in signs if x == 1)
    return h - d.n_minus, plus - (len(signs) - plus) + h + d.n_plus - 2 * d.n_minus


@dataclass
class Block:
    """One summand ``C^{i,j}(D^s)`` of ``C^{k,i,j}``."""

    pairing: KPairing
    offset: int
    dim: int


@dataclass
class Bicomplex:
    """Chain groups ``C^{k,i,j}`` and the differentials ``d''`` and ``d'``.

    ``blocks[(k, i, j)]`` lists the summands in pairing order.  ``dsecond``
    maps ``(k,i,j) -> (k,i+1,j)`` and ``dprime`` maps ``(k,i,j) -> (k+1,i,j)``;
    both are scipy CSR matrices with exact small integer entries.
    """

    diagram: LinkDiagram
    n: tuple[int, ...]
    columns: dict[int, list[KPairing]]
    contractions: dict[KPairing, Contraction] = field(repr=False)
    complexes: dict[KPairing, KhComplex] = field(repr=False)
    blocks: dict[Grade3, list[Block]] = field(repr=False)
    dsecond: dict[Grade3, sparse.csr_matrix] = field(repr=False)
    dprime: dict[Grade3, sparse.csr_matrix] = field(repr=False)
    degrees: dict[tuple[KPairing, Pair], int] = field(repr=False)
    shifts: dict[tuple[KPairing, Pair], Counter] = field(default_factory=dict, repr=False)

    def dim(self, k: int, i: int, j: int) -> int:
        return sum(b.dim for b in self.blocks.get((k, i, j), ()))

    @property
    def gradings(self) -> list[Grade3]:
        return sorted(self.blocks)

    def describe(self, k: int, i: int, j: int, index: int) -> str:
        """Human-readable name of basis element ``index`` of ``C^{k,i,j}``."""
        for b in self.blocks[(k, i, j)]:
            if index < b.offset + b.dim:
                g = self.complexes[b.pairing].groups[(i, j)]
                r, signs = _state_signs(g, index - b.offset)
                n = self.contractions[b.pairing].diagram.n_crossings
                bits = "".join(str((r >> (n - 1 - q)) & 1) for q in range(n))
                sg = "".join("+" if x == 1 else "-" for x in signs)
                return f"s={list(map(list, b.pairing))} r={bits or '-'} signs={sg or '-'}"
        raise IndexError(index)

    def euler_chain(self) -> LaurentPoly:
        terms: dict[int, int] = {}
        for (k, i, j) in self.blocks:
            terms[j] = terms.get(j, 0) + (-1 if (i + k) % 2 else 1) * self.dim(k, i, j)
        return LaurentPoly(terms)

    def zero(self, src: Grade3, dst: Grade3) -> sparse.csr_matrix:
        return sparse.csr_matrix((self.dim(*dst), self.dim(*src)), dtype=np.int64)

    def d2(self, k, i, j) -> sparse.csr_matrix:
        return self.dsecond.get((k, i, j), self.zero((k, i, j), (k, i + 1, j)))

    def d1(self, k, i, j) -> sparse.csr_matrix:
        return self.dprime.get((k, i, j), self.zero((k, i, j), (k + 1, i, j)))


def build_bicomplex(
    d: LinkDiagram,
    n: Sequence[int] | int,
    cap: int | None = None,
    threads: int | None = None,
) -> Bicomplex:
    """Build ``C^{k,i,j}_n(d)`` with both differentials.

    Raises
    ------
    ValueError
        If ``n`` does not have one entry per component.
    EnumerationCapError
        If the full cable exceeds ``cap`` crossings.
    """
    n = as_multi_index(n)
    if len(n) != d.n_components:
        raise ValueError(f"diagram has {d.n_components} components, got {len(n)} colors")
    full = cable(d, n)
    check_cap(full.diagram.n_crossings, cap)
    kmax = sum(v // 2 for v in n)
    columns = {k: enumerate_k_pairings(n, k) for k in range(kmax + 1)}
    pairings = [s for k in range(kmax + 1) for s in columns[k]]
    contractions = {s: contract(full, n, s) for s in pairings}

    # one complex per isomorphism class of D^s
    canon: dict[tuple, KhComplex] = {}
    keys = {s: contractions[s].diagram for s in pairings}
    uniq = {}
    for s in pairings:
        uniq.setdefault(keys[s], s)
    threads = thread_count() if threads is None else threads
    work = list(uniq.values())
    if threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(threads) as pool:
            built = list(pool.map(lambda s: build_complex(keys[s], cap), work))
    else:
        built = [build_complex(keys[s], cap) for s in work]
    for s, cx in zip(work, built):
        canon[keys[s]] = cx
    complexes = {s: canon[keys[s]] for s in pairings}

    blocks: dict[Grade3, list[Block]] = {}
    for k in range(kmax + 1):
        for s in columns[k]:
            for (i, j), g in sorted(complexes[s].groups.items()):
                lst = blocks.setdefault((k, i, j), [])
                off = lst[-1].offset + lst[-1].dim if lst else 0
                lst.append(Block(s, off, g.dimension))

    b = Bicomplex(d, n, columns, contractions, complexes, blocks, {}, {}, {})

    # d'' = (-1)^k times the blockwise differential
    for (k, i, j), lst in blocks.items():
        if (k, i + 1, j) not in blocks:
            continue
        tgt_off = {bl.pairing: bl.offset for bl in blocks[(k, i + 1, j)]}
        rows, cols, vals = [], [], []
        sign = -1 if k & 1 else 1
        for bl in lst:
            cx = complexes[bl.pairing]
            if (i, j) not in cx.blocks:
                continue
            rr, cc, vv = cx.blocks[(i, j)]
            rows.append(np.asarray(rr) + tgt_off[bl.pairing])
            cols.append(np.asarray(cc) + bl.offset)
            vals.append(np.asarray(vv) * sign)
        if rows:
            b.dsecond[(k, i, j)] = _csr(rows, cols, vals, b.dim(k, i + 1, j), b.dim(k, i, j))

    # d' from s to s + p
    entries: dict[Grade3, tuple[list, list, list]] = {}
    for k in range(kmax):
        for s in columns[k]:
            for p in new_pairs(n, s):
                s2 = add_pair(s, p)
                src, dst = contractions[s], contractions[s2]
                lam = contraction_degree(src, p)
                b.degrees[(s, p)] = lam
                phi = ContractionMap(full, src, dst, p)
                sign = koszul_sign(s, p)
                seen = b.shifts.setdefault((s, p), Counter())
                dcx = complexes[s2]
                index = {key: _position_index(g) for key, g in dcx.groups.items()}
                for (i, j), g in sorted(complexes[s].groups.items()):
                    if (i, j) not in dcx.groups:
                        continue
                    src_off = _offset(blocks[(k, i, j)], s)
                    dst_off = _offset(blocks[(k + 1, i, j)], s2)
                    acc = entries.setdefault((k, i, j), ([], [], []))
                    for pos in range(g.dimension):
                        r, signs = _state_signs(g, pos)
                        for (r2, sg2), coef in phi(r, signs).items():
                            gi = _grade(dst.diagram, r2, sg2)
                            seen[(gi[0] - i, gi[1] - j)] += 1
                            if gi != (i, j):
                                continue
                            acc[0].append(dst_off + index[gi][(r2, _mask(sg2))])
                            acc[1].append(src_off + pos)
                            acc[2].append(sign * coef)
    for (k, i, j), (rows, cols, vals) in entries.items():
        if rows:
            m = _csr([np.array(rows)], [np.array(cols)], [np.array(vals)], b.dim(k + 1, i, j), b.dim(k, i, j))
            if m.count_nonzero():
                b.dprime[(k, i, j)] = m
    return b


def _csr(rows, cols, vals, nrows, ncols) -> sparse.csr_matrix:
    m = sparse.coo_matrix(
        (np.concatenate(vals).astype(np.int64), (np.concatenate(rows), np.concatenate(cols))),
        shape=(nrows, ncols),
    ).tocsr()
    m.sum_duplicates()
    m.eliminate_zeros()
    return m


def _mask(signs) -> int:
    m = 0
    for x in signs:
        m = (m << 1) | (1 if x == -1 else 0)
    return m


def _position_index(g: ChainGroup) -> dict[tuple[int, int], int]:
    return {(int(r), int(m)): p for p, (r, m) in enumerate(zip(g.resolutions.tolist(), g.masks.tolist()))}


def _offset(lst: list[Block], s: KPairing) -> int:
    for bl in lst:
        if bl.pairing == s:
            return bl.offset
    raise KeyError(s)


# -- laws ----------------------------------------------------------------------------------------

@dataclass
class LawReport:
    """Outcome of one differential law, with the first offending entries."""

    name: str
    ok: bool = True
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures}


def _record(rep: LawReport, b: Bicomplex, src: Grade3, dst: Grade3, m: sparse.csr_matrix, limit: int = 3):
    rep.checked += 1
    m = m.tocoo()
    nz = [(int(r), int(c), int(v)) for r, c, v in zip(m.row, m.col, m.data) if v]
    if not nz:
        return
    rep.ok = False
    for r, c, v in sorted(nz)[: max(0, limit - len(rep.failures))]:
        rep.failures.append({
            "source_grade": list(src),
            "target_grade": list(dst),
            "source": b.describe(*src, c),
            "target": b.describe(*dst, r),
            "coefficient": v,
        })


def check_laws(b: Bicomplex) -> dict[str, LawReport]:
    """Check ``d''^2 = 0``, ``d'^2 = 0``, anticommutation and j-preservation."""
    reps = {name: LawReport(name) for name in ("dsecond2", "dprime2", "anticommute", "jgrade")}
    for (k, i, j) in b.gradings:
        if (k, i + 2, j) in b.blocks:
            _record(reps["dsecond2"], b, (k, i, j), (k, i + 2, j), b.d2(k, i + 1, j) @ b.d2(k, i, j))
        if (k + 2, i, j) in b.blocks:
            _record(reps["dprime2"], b, (k, i, j), (k + 2, i, j), b.d1(k + 1, i, j) @ b.d1(k, i, j))
        if (k + 1, i + 1, j) in b.blocks:
            m = b.d2(k + 1, i, j) @ b.d1(k, i, j) + b.d1(k, i + 1, j) @ b.d2(k, i, j)
            _record(reps["anticommute"], b, (k, i, j), (k + 1, i + 1, j), m)
    # every contraction map must be homogeneous of degree (-2 lam, -6 lam)
    jg = reps["jgrade"]
    for key, shifts in sorted(b.shifts.items()):
        jg.checked += 1
        lam = b.degrees[key]
        bad = {sh: c for sh, c in shifts.items() if sh != (-2 * lam, -6 * lam)}
        if bad:
            jg.ok = False
            s, p = key
            jg.failures.append({"pairing": [list(t) for t in s], "pair": list(p), "lambda": lam,
                                "shifts": sorted([list(sh), c] for sh, c in bad.items())})
    return reps


def assert_laws(b: Bicomplex) -> None:
    for name, rep in check_laws(b).items():
        if not rep.ok:
            where = rep.failures[0] if rep.failures else None
            raise DifferentialLawError(f"{name} fails", where=where)


# -- iterated homology ---------------------------------------------------------------------------

def _column_homology(b: Bicomplex):
    """Free ranks and torsion of ``H(d'')`` and ranks of ``d''`` per grade."""
    per_diagram = {}
    for s, cx in b.complexes.items():
        key = id(cx)
        if key not in per_diagram:
            table = homology(cx)
            ranks: dict[tuple[int, int], int] = {}
            for (i, j) in sorted(cx.groups):
                free = table.get((i, j), (0, ()))[0]
                # dim C^i = rank d^i + free H^i + rank d^{i-1}
                ranks[(i, j)] = cx.dim(i, j) - free - ranks.get((i - 1, j), 0)
            per_diagram[key] = (table, ranks)
    H: dict[Grade3, int] = Counter()
    T: dict[Grade3, list] = {}
    R: dict[Grade3, int] = Counter()
    for k, col in b.columns.items():
        for s in col:
            table, ranks = per_diagram[id(b.complexes[s])]
            for (i, j), (free, tors) in table.items():
                H[(k, i, j)] += free
                T.setdefault((k, i, j), []).extend(tors)
            for (i, j), rk in ranks.items():
                R[(k, i, j)] += rk
    return H, T, R


def _to_intmatrix(m: sparse.spmatrix) -> IntMatrix:
    m = m.tocoo()
    return IntMatrix.from_entries(m.shape[0], m.shape[1], zip(m.row.tolist(), m.col.tolist(), m.data.tolist()))


def iterated_homology(b: Bicomplex) -> dict[Grade3, tuple[int, tuple[int, ...] | None]]:
    """``H^k(H^i(C, d''), d')`` per ``(k, i, j)``: free rank and torsion.

    Ranks are exact over the rationals.  Torsion is reported where ``d'`` is
    zero on both sides of the grade (then the group is ``H(d'')`` itself) and
    is ``None`` where it was not computed.
    """
    H, T, R = _column_homology(b)
    induced: dict[Grade3, int] = Counter()
    for (k, i, j), m in b.dprime.items():
        big = sparse.bmat([
            [m, b.d2(k + 1, i - 1, j) if (k + 1, i - 1, j) in b.blocks else None],
            [b.d2(k, i, j), None],
        ], format="coo", dtype=np.int64) if (k + 1, i - 1, j) in b.blocks else sparse.vstack(
            [m, b.d2(k, i, j)], format="coo", dtype=np.int64)
        induced[(k, i, j)] = matrix_rank(_to_intmatrix(big)) - R[(k, i, j)] - R[(k + 1, i - 1, j)]
    out = {}
    for g in sorted(set(H) | set(T)):
        k, i, j = g
        free = H[g] - induced[g] - induced[(k - 1, i, j)]
        exact = g not in b.dprime and (k - 1, i, j) not in b.dprime
        tors = tuple(sorted(T.get(g, ()))) if exact else None
        if free or tors:
            out[g] = (free, tors)
    return out


def euler_from_iterated(table: dict[Grade3, tuple[int, object]]) -> LaurentPoly:
    terms: dict[int, int] = {}
    for (k, i, j), (free, _) in table.items():
        terms[j] = terms.get(j, 0) + (-1 if (i + k) % 2 else 1) * free
    return LaurentPoly(terms)


@dataclass(frozen=True)
class EulerReport:
    chain: LaurentPoly
    homology: LaurentPoly
    colored_jones: LaurentPoly

    @property
    def lhs(self) -> LaurentPoly:
        return self.homology

    @property
    def rhs(self) -> LaurentPoly:
        return self.colored_jones

    @property
    def equal(self) -> bool:
        return self.chain == self.colored_jones and self.homology == self.colored_jones

    def to_json(self) -> dict:
        return {
            "chain": self.chain.to_pairs(),
            "homology": self.homology.to_pairs(),
            "colored_jones": self.colored_jones.to_pairs(),
            "equal": self.equal,
        }


def euler_identity(
    d: LinkDiagram,
    n: Sequence[int] | int,
    cap: int | None = None,
    bicomplex: Bicomplex | None = None,
) -> EulerReport:
    """Chain and homology level Euler characteristics against ``colored_jones``."""
    b = bicomplex if bicomplex is not None else build_bicomplex(d, n, cap)
    return EulerReport(b.euler_chain(), euler_from_iterated(iterated_homology(b)), colored_jones(d, b.n, cap))


# -- contracted circles ------------------------------------------------------------------------

def straight_resolutions(b: Bicomplex, s: KPairing, p: Pair) -> dict[int, int]:
    """Bits on the crossings of the pair ``p`` along the retraction's straight path.

    Returns ``{crossing of D^s: bit}``; these fix the Type 1 resolutions.
    """
    src = b.contractions[s]
    full = cable(b.diagram, b.n)
    phi = ContractionMap(full, src, b.contractions[add_pair(s, p)], p)
    if phi.free:
        return {}
    d = src.diagram
    a, bb = phi.cut_arcs
    arcs = {x for xs in d.crossings for x in xs}
    low, high = max(arcs) + 1, max(arcs) + 2
    code = cut(phi.code, a, bb, d.tails[a], d.tails[bb], low, high)
    positions = list(range(code.n))
    bits: dict[int, int] = {}
    tip = high
    while code.slots(tip):
        g = find_bigon(code, tip)
        bits[positions[g.low]] = 0
        bits[positions[g.high]] = 1
        positions = [q for k, q in enumerate(positions) if k not in (g.low, g.high)]
        code, rename = remove_bigon(code, g)
        tip = rename.get(g.e, g.e)
    return bits


def contracted_circle_counts(b: Bicomplex, s: KPairing, p: Pair) -> list[int]:
    """Circles made only of arcs of the pair's strands, over all Type 1 resolutions."""
    src = b.contractions[s]
    d = src.diagram
    bits = straight_resolutions(b, s, p)
    idx = {st: k for k, st in enumerate(src.strands)}
    pair_comps = {idx[(p[0], p[1])], idx[(p[0], p[1] + 1)]}
    owner = d.arc_component
    loops = sum(1 for q in pair_comps if q >= len(d.components))
    code = PlanarCode(tuple(d.crossings))
    free = [q for q in range(d.n_crossings) if q not in bits]
    out = []
    for vals in itertools.product((0, 1), repeat=len(free)):
        chosen = dict(bits)
        chosen.update(zip(free, vals))
        r = 0
        for q in range(d.n_crossings):
            r = (r << 1) | chosen[q]
        count = sum(1 for arcs in circle_arcs(code, r) if all(owner[a] in pair_comps for a in arcs))
        out.append(count + loops)
    return out
