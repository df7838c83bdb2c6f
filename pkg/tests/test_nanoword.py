import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khcable.corpus import CORPUS
from khcable.diagram import cable_diagram, gauss_code
from khcable.errors import ParseError
from khcable.kauffman import jones_framed
from khcable.nanoword import (
    ALPHA1,
    ALPHA_STAR,
    Nanophrase,
    cable_word,
    canonical,
    commute_cable_project,
    equivalent,
    format_phrase,
    from_gauss_code,
    letter_kinds,
    lift_alpha1_to_alphaStar,
    parse_nanophrase,
    project_to_alpha1,
    renamed,
    to_diagram,
)


@st.composite
def phrases(draw, alphabet=ALPHA_STAR):
    """Random nanophrases: every letter placed twice among up to three words."""
    nletters = draw(st.integers(0, 4))
    nwords = draw(st.integers(1, 3))
    slots = [a for a in range(nletters) for _ in range(2)]
    words = [[] for _ in range(nwords)]
    for a in draw(st.permutations(slots)):
        words[draw(st.integers(0, nwords - 1))].append(f"L{a}")
    pool = ("a+", "a-", "b+", "b-") if alphabet == ALPHA_STAR else (1, -1)
    values = {f"L{a}": draw(st.sampled_from(pool)) for a in range(nletters)}
    return Nanophrase(tuple(tuple(w) for w in words), values, alphabet)


def test_parse_examples():
    p = parse_nanophrase("ABAB | A=+1 B=-1")
    assert p.alphabet == ALPHA1 and p.words == (("A", "B", "A", "B"),)
    assert p.values == {"A": 1, "B": -1}
    q = parse_nanophrase("AB | AB | A=a+ B=b-")
    assert q.alphabet == ALPHA_STAR and q.r == 2
    assert parse_nanophrase("() | AA | A=b+").words == ((), ("A", "A"))


@pytest.mark.parametrize("text", [
    "ABAB | A=+1 A=-1 B=+1",     # duplicate binding
    "ABA | A=+1 B=+1",           # letter occurring three times
    "AB | A=+1",                 # missing value
    "AA | A=+1 B=-1",            # value for an absent letter
    "AA | A=a+ B=+1 BB",         # junk after bindings
    "AA | A=c+",                 # unknown value
    "AB | AB | A=a+ B=+1",       # mixed alphabets
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_nanophrase(text)


@given(phrases())
def test_format_round_trip(p):
    assert equivalent(parse_nanophrase(format_phrase(p)), p)


@given(phrases(), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_cable_counts(p, m):
    m = m[: p.r]
    q = cable_word(p, m)
    assert q.r == sum(m)
    occ = p.occurrences
    expected = sum(m[occ[a][0][0]] * m[occ[a][1][0]] for a in occ)
    assert len(q.values) == expected
    assert all(len(o) == 2 for o in q.occurrences.values())


@given(phrases(ALPHA1), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_cable_commutes_with_projection(p, m):
    assert commute_cable_project(p, m[: p.r])


@given(phrases())
def test_one_cable_is_identity(p):
    assert equivalent(cable_word(p, (1,) * p.r), p)


@given(phrases())
def test_lift_project(p):
    q = project_to_alpha1(p)
    assert q.alphabet == ALPHA1
    assert project_to_alpha1(lift_alpha1_to_alphaStar(q)) == q


def test_letter_kinds():
    kinds = letter_kinds(parse_nanophrase("AB | BA | A=+1 B=+1"))
    assert kinds == {"A": "two", "B": "two"}
    assert letter_kinds(parse_nanophrase("AA | A=+1")) == {"A": "single"}


def test_cable_arity():
    with pytest.raises(ValueError):
        cable_word(parse_nanophrase("AA | A=+1"), (1, 2))


def test_canonical_ignores_names():
    p = parse_nanophrase("XYXY | X=a+ Y=b-")
    assert canonical(p) == canonical(renamed(p))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_realization_round_trip(name):
    d = CORPUS[name]
    p = from_gauss_code(gauss_code(d), ALPHA_STAR)
    e = to_diagram(p)
    assert equivalent(from_gauss_code(gauss_code(e), ALPHA_STAR), p)
    assert jones_framed(e) == jones_framed(d)


def test_realization_rejects_virtual_and_alpha1():
    with pytest.raises(ParseError):
        to_diagram(parse_nanophrase("ABAB | A=a+ B=a+"))
    with pytest.raises(ParseError):
        to_diagram(parse_nanophrase("AA | A=+1"))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_alpha1_gauss_code_of_cable_is_projection(name):
    d = CORPUS[name]
    star = from_gauss_code(gauss_code(d), ALPHA_STAR)
    for m in itertools.product(range(3), repeat=d.n_components):
        lhs = from_gauss_code(gauss_code(cable_diagram(d, m)), ALPHA1)
        assert equivalent(lhs, project_to_alpha1(cable_word(star, m)))
