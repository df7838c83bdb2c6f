import itertools

import pytest

from khcable.corpus import CORPUS, NEGATIVE_HOPF, RIGHT_TREFOIL, UNKNOT
from khcable.diagram import cable_diagram, disjoint_union, mirror
from khcable.errors import EnumerationCapError
from khcable.intmatrix import IntMatrix, homology_ranks
from khcable.kauffman import jones_framed, resolve
from khcable.khovanov import (
    build_complex,
    euler_from_table,
    free_ranks,
    graded_euler,
    homology,
    khovanov_homology,
    reflect,
)


def naive_complex(d):
    """Enhanced states and differential straight from the definitions."""
    n = d.n_crossings
    states = {}
    for bits in itertools.product((0, 1), repeat=n):
        circles = resolve(d, bits)
        for signs in itertools.product((1, -1), repeat=len(circles)):
            h = sum(bits)
            i = h - d.n_minus
            j = sum(signs) + h + d.n_plus - 2 * d.n_minus
            states[(bits, signs)] = (i, j)
    diff = {}
    for (bits, signs) in states:
        circles = resolve(d, bits)
        for k in range(n):
            if bits[k]:
                continue
            sign = (-1) ** sum(bits[:k])
            bits2 = bits[:k] + (1,) + bits[k + 1:]
            circles2 = resolve(d, bits2)
            where = lambda cs, arc: next(t for t, c in enumerate(cs) if arc in c)
            x = d.crossings[k]
            A, C = where(circles, x[0]), where(circles, x[2])
            base = [0] * len(circles2)
            for t, c in enumerate(circles):
                if t in (A, C):
                    continue
                t2 = where(circles2, c[0]) if c else len(circles2) - (len(circles) - t)
                base[t2] = signs[t]
            outs = []
            if A != C:
                m = where(circles2, x[0])
                if signs[A] == 1 or signs[C] == 1:
                    base[m] = -1 if -1 in (signs[A], signs[C]) else 1
                    outs.append(tuple(base))
            else:
                p, q = where(circles2, x[0]), where(circles2, x[2])
                pairs = [(1, -1), (-1, 1)] if signs[A] == 1 else [(-1, -1)]
                for sp, sq in pairs:
                    b = list(base)
                    b[p], b[q] = sp, sq
                    outs.append(tuple(b))
            for s2 in outs:
                key = ((bits, signs), (bits2, s2))
                diff[key] = diff.get(key, 0) + sign
    return states, diff


def naive_homology(d):
    states, diff = naive_complex(d)
    by_grade = {}
    for st, g in sorted(states.items()):
        by_grade.setdefault(g, []).append(st)
    index = {st: k for g, sts in by_grade.items() for k, st in enumerate(sts)}

    def matrix(i, j):
        src, tgt = by_grade.get((i, j), []), by_grade.get((i + 1, j), [])
        entries = [(index[b], index[a], v) for (a, b), v in diff.items()
                   if states[a] == (i, j) and v]
        return IntMatrix.from_entries(len(tgt), len(src), entries)

    table = {}
    for (i, j) in by_grade:
        free, tors = homology_ranks(matrix(i - 1, j), matrix(i, j))
        if free or tors:
            table[(i, j)] = (free, tors)
    dims = {g: len(s) for g, s in by_grade.items()}
    return dims, table


SMALL = ["unknot", "kink+", "kink-", "hopf", "hopf-", "trefoil", "trefoil-", "figure8", "triangle"]


@pytest.mark.parametrize("name", SMALL)
def test_matches_naive_oracle(name):
    d = CORPUS[name]
    dims, table = naive_homology(d)
    cx = build_complex(d)
    assert {g: grp.dimension for g, grp in cx.groups.items()} == dims
    assert homology(cx) == table


def test_naive_oracle_on_a_cable():
    d = cable_diagram(CORPUS["kink+"], (2,))
    assert khovanov_homology(d) == naive_homology(d)[1]


def test_trefoil_table():
    assert khovanov_homology(RIGHT_TREFOIL) == {
        (0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 7): (0, (2,)), (3, 9): (1, ()),
    }


def test_unknot_and_hopf():
    assert khovanov_homology(UNKNOT) == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert sum(f for f, _ in khovanov_homology(NEGATIVE_HOPF).values()) == 4


def test_euler_characteristics(corpus_item):
    _, d = corpus_item
    cx = build_complex(d)
    assert graded_euler(cx) == jones_framed(d)
    assert euler_from_table(homology(cx)) == jones_framed(d)


def test_mirror_reflects_free_part(corpus_item):
    _, d = corpus_item
    assert free_ranks(khovanov_homology(mirror(d))) == reflect(khovanov_homology(d))


def test_disjoint_union_with_unknot_doubles(corpus_item):
    _, d = corpus_item
    ranks = sum(f for f, _ in khovanov_homology(d).values())
    e = disjoint_union(d, UNKNOT)
    assert sum(f for f, _ in khovanov_homology(e).values()) == 2 * ranks


def test_differential_squares_to_zero():
    cx = build_complex(cable_diagram(RIGHT_TREFOIL, (2,)))
    cx.check_d_squared()


def test_cap():
    with pytest.raises(EnumerationCapError):
        build_complex(RIGHT_TREFOIL, cap=2)


def test_basis_states_have_their_grades():
    cx = build_complex(RIGHT_TREFOIL)
    for (i, j), g in cx.groups.items():
        for st in g.basis:
            assert (st.i, st.j) == (i, j)
