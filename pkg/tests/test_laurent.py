import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khcable.laurent import LOOP, ONE, Q, ZERO, LaurentPoly, quantum_integer

terms = st.dictionaries(st.integers(-8, 8), st.integers(-50, 50), max_size=6)
polys = terms.map(LaurentPoly)


def naive_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(terms, terms)
def test_product_matches_convolution(a, b):
    assert (LaurentPoly(a) * LaurentPoly(b)).terms == naive_mul(
        {e: c for e, c in a.items() if c}, {e: c for e, c in b.items() if c})


@given(polys)
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json()) == p
    pairs = json.loads(p.to_json())
    assert pairs == sorted(pairs)


def test_serialization_example():
    assert (Q + Q ** -1).to_pairs() == [[-1, 1], [1, 1]]


def test_zero_coefficients_dropped():
    assert LaurentPoly({3: 0, 1: 2}).terms == {1: 2}
    assert LaurentPoly({2: 5}) - LaurentPoly({2: 5}) == ZERO


def test_duplicate_exponent_rejected():
    with pytest.raises(ValueError):
        LaurentPoly.from_pairs([[1, 1], [1, 2]])


def test_big_coefficients_exact():
    p = (LOOP ** 40)
    assert p.coefficient(0) == 137846528820  # C(40, 20)
    assert p.at_one() == 2 ** 40


@pytest.mark.parametrize("n", range(0, 9))
def test_quantum_integer_recurrence(n):
    # [n+1] = (q + q^-1)[n] - [n-1]
    if n >= 1:
        assert quantum_integer(n + 1) == LOOP * quantum_integer(n) - quantum_integer(n - 1)
    assert quantum_integer(n).at_one() == n


def test_quantum_integer_values():
    assert quantum_integer(0) == ZERO
    assert quantum_integer(1) == ONE
    assert quantum_integer(3).to_pairs() == [[-2, 1], [0, 1], [2, 1]]
