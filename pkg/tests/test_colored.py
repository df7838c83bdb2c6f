from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khcable.colored import as_multi_index, colored_jones, k_range, multi_binomial, parse_multi_index
from khcable.corpus import POSITIVE_HOPF, RIGHT_TREFOIL, UNKNOT
from khcable.diagram import unknot_diagram
from khcable.kauffman import jones_framed
from khcable.laurent import LOOP, ONE, LaurentPoly, quantum_integer


def chebyshev(n):
    """``S_n(x)`` at ``x = q + 1/q`` from ``S_{n+1} = x S_n - S_{n-1}``."""
    a, b = ONE, LOOP
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, LOOP * b - a
    return b


def test_parse_multi_index():
    assert parse_multi_index("2,1,3") == (2, 1, 3)
    assert parse_multi_index(" 4 ") == (4,)
    with pytest.raises(ValueError):
        parse_multi_index("2,x")
    with pytest.raises(ValueError):
        as_multi_index((1, -1))


def test_multi_binomial():
    assert multi_binomial((4,), (1,)) == 3
    assert multi_binomial((4, 3), (2, 1)) == 1 * 2
    with pytest.raises(ValueError):
        multi_binomial((3,), (2,))
    with pytest.raises(ValueError):
        multi_binomial((3,), (1, 0))


def test_k_range():
    assert list(k_range((3, 2))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("n", range(0, 7))
def test_unknot_quantum_integer(n):
    assert colored_jones(UNKNOT, (n,)) == quantum_integer(n + 1)
    assert colored_jones(UNKNOT, (n,)) == chebyshev(n)


@given(st.integers(0, 12))
def test_chebyshev_identity(n):
    total = LaurentPoly()
    for k in range(n // 2 + 1):
        total = total + LOOP ** (n - 2 * k) * ((-1) ** k * comb(n - k, k))
    assert total == quantum_integer(n + 1)


def test_example_n2():
    assert colored_jones(UNKNOT, 2).to_pairs() == [[-2, 1], [0, 1], [2, 1]]


def test_ones_give_jones(corpus_item):
    _, d = corpus_item
    assert colored_jones(d, (1,) * d.n_components) == jones_framed(d)


def test_zero_color_deletes_component():
    assert colored_jones(POSITIVE_HOPF, (1, 0)) == jones_framed(UNKNOT)
    assert colored_jones(RIGHT_TREFOIL, (0,)) == ONE


def test_split_link_multiplies():
    two = unknot_diagram(2)
    assert colored_jones(two, (2, 3)) == quantum_integer(3) * quantum_integer(4)


def test_arity_error():
    with pytest.raises(ValueError):
        colored_jones(UNKNOT, (2, 2))


def test_threads_agree():
    assert colored_jones(POSITIVE_HOPF, (2, 3), threads=1) == colored_jones(POSITIVE_HOPF, (2, 3), threads=3)


def test_value_at_one(corpus_item):
    # at q = 1 a diagram with c components evaluates to +-2^c, so J_n(1) = +-[3]^c
    _, d = corpus_item
    n = (2,) * d.n_components
    value = colored_jones(d, n).at_one()
    assert abs(value) == 3 ** d.n_components
