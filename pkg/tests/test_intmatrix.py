"""Smith normal form against determinantal divisors computed by brute force."""

import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khcable.errors import DifferentialLawError
from khcable.intmatrix import IntMatrix, homology_ranks, matrix_rank, smith_normal_form


def det(rows):
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def determinantal_divisors(a):
    """``d_k`` = gcd of all k x k minors; invariant factors are ``d_k / d_{k-1}``."""
    m, n = len(a), len(a[0]) if a else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, det([[a[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors(a):
    dk = determinantal_divisors(a)
    return tuple(d // p for d, p in zip(dk, [1] + dk[:-1]))


def rational_rank(a):
    rows = [[Fraction(x) for x in r] for r in a]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


dense = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(dense)
def test_snf_matches_determinantal_divisors(a):
    assert smith_normal_form(IntMatrix.from_dense(a)).diagonal == invariant_factors(a)


@given(dense)
def test_rank_matches_rational_elimination(a):
    assert matrix_rank(IntMatrix.from_dense(a)) == rational_rank(a)


@given(dense)
def test_transforms_are_unimodular_and_diagonalize(a):
    m = IntMatrix.from_dense(a)
    res = smith_normal_form(m, transforms=True)
    D = res.left @ m @ res.right
    assert D == res.diagonal_matrix(*m.shape)
    assert abs(det(res.left.to_dense())) == 1
    assert abs(det(res.right.to_dense())) == 1


@given(dense)
def test_divisibility_chain(a):
    diag = smith_normal_form(IntMatrix.from_dense(a)).diagonal
    assert all(d > 0 for d in diag)
    assert all(y % x == 0 for x, y in zip(diag, diag[1:]))


def test_known_torsion():
    # Z --2--> Z --0--> 0 has homology Z/2 at the middle
    free, tors = homology_ranks(IntMatrix.from_dense([[2]]), IntMatrix.zeros(0, 1))
    assert (free, tors) == (0, (2,))


def test_homology_requires_square_zero():
    with pytest.raises(DifferentialLawError):
        homology_ranks(IntMatrix.from_dense([[1]]), IntMatrix.from_dense([[1]]))


def test_matrix_algebra():
    a = IntMatrix.from_dense([[1, 2], [3, 4]])
    assert (a @ IntMatrix.identity(2)) == a
    assert (a + a.scale(-1)).is_zero()
    assert a.transpose().to_dense() == [[1, 3], [2, 4]]
