import pytest

from khcable.corpus import CORPUS, R3_TRIANGLE, RIGHT_TREFOIL, UNKNOT
from khcable.diagram import writhe
from khcable.errors import IllegalMoveError
from khcable.kauffman import jones_framed
from khcable.khovanov import khovanov_homology
from khcable.moves import (
    R1Site,
    all_moves,
    apply_framed_r1,
    apply_r2,
    apply_r3,
    faces,
    is_planar,
    isomorphic,
    r1_inverse_sites,
    r1_sites,
    r2_inverse_sites,
    r2_sites,
    r3_sites,
    undo_framed_r1,
    undo_r2,
)


def test_faces_satisfy_euler(corpus_item):
    _, d = corpus_item
    if d.n_crossings:
        assert len(faces(d)) == d.n_crossings + 2


def test_r2_adds_bigon_and_undoes(corpus_item):
    _, d = corpus_item
    for site in r2_sites(d):
        e = apply_r2(d, site)
        assert e.n_crossings == d.n_crossings + 2
        assert writhe(e)[1] == writhe(d)[1]
        assert is_planar(e)
        assert r2_inverse_sites(e)
        assert any(isomorphic(undo_r2(e, s), d) for s in r2_inverse_sites(e))


def test_framed_r1_keeps_writhe_and_undoes(corpus_item):
    _, d = corpus_item
    for site in r1_sites(d):
        e = apply_framed_r1(d, site)
        assert e.n_crossings == d.n_crossings + 2
        assert writhe(e) == writhe(d)
        assert any(isomorphic(undo_framed_r1(e, s), d) for s in r1_inverse_sites(e))


def test_framed_r1_needs_opposite_kinks():
    with pytest.raises(IllegalMoveError):
        apply_framed_r1(RIGHT_TREFOIL, R1Site(1, (1, True), (1, False)))


def test_r3_triangle():
    sites = r3_sites(R3_TRIANGLE)
    assert sites
    for fi in sites:
        e = apply_r3(R3_TRIANGLE, fi)
        assert e.n_crossings == 3
        assert writhe(e) == writhe(R3_TRIANGLE)
        assert jones_framed(e) == jones_framed(R3_TRIANGLE)
        # sliding back across the new triangle returns the original diagram
        assert any(isomorphic(apply_r3(e, g), R3_TRIANGLE) for g in r3_sites(e))


def test_r3_on_non_triangle_rejected():
    with pytest.raises(IllegalMoveError):
        apply_r3(UNKNOT, 0)


def test_r2_then_r3_sites_exist():
    # a Reidemeister II finger next to a crossing creates R3 triangles
    found = False
    for site in r2_sites(RIGHT_TREFOIL)[:40]:
        if r3_sites(apply_r2(RIGHT_TREFOIL, site)):
            found = True
            break
    assert found


@pytest.mark.parametrize("name", ["unknot", "kink+", "hopf", "trefoil"])
def test_invariants_unchanged_by_moves(name):
    d = CORPUS[name]
    j = jones_framed(d)
    kh = khovanov_homology(d)
    for desc, e in list(all_moves(d))[:30]:
        assert jones_framed(e) == j, desc
        assert khovanov_homology(e) == kh, desc
