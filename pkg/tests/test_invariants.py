import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from knotcert.codec import parse_pd
from knotcert.diagram import build_diagram, crossing_change, is_alternating, mirror, seifert_data, smooth_crossing
from knotcert.errors import NotAKnot, ResourceLimit
from knotcert.families import pretzel, torus_2p
from knotcert.invariants import (
    alexander, conway, det_from_goeritz, det_from_jones, det_from_trees, determinant, invariant_bundle,
    jones, kauffman_bracket, signature, v2_from_jones, v3_from_jones,
)
from knotcert.polynomial import LaurentPolynomial

TREFOIL = build_diagram(parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"))


def poly(pairs):
    return LaurentPolynomial({int(e): int(c) for e, c in pairs})


def test_trefoil_values():
    assert jones(TREFOIL) == LaurentPolynomial({1: 1, 3: 1, 4: -1})
    assert conway(TREFOIL) == LaurentPolynomial({0: 1, 2: 1}, "z")
    b = invariant_bundle(TREFOIL)
    assert (b.a2, b.a4, b.four_v3, b.det, b.sigma, b.genus) == (1, 0, 1, 3, 2, 1)


def test_unknot_and_figure_eight(diagrams):
    assert invariant_bundle(diagrams["0_1"]).det == 1
    b = invariant_bundle(diagrams["4_1"])
    assert (b.a2, b.four_v3, b.det, b.sigma) == (-1, 0, 5, 0)


def test_bracket_of_kink_free_unknot_diagram():
    assert kauffman_bracket(build_diagram(parse_pd(""))) == LaurentPolynomial({0: 1})


def test_jones_matches_table(corpus, diagrams):
    for rec in corpus:
        if rec.pd.c <= 10:
            assert jones(diagrams[rec.name]) == poly(rec.expected["jones"]), rec.name


def test_conway_matches_table(corpus, diagrams):
    for rec in corpus:
        assert conway(diagrams[rec.name]) == LaurentPolynomial(
            {int(e): int(c) for e, c in rec.expected["conway"]}, "z"), rec.name


def test_alexander_is_conway_in_disguise(diagrams):
    for name in ("3_1", "4_1", "5_2", "7_4", "8_19", "10_132"):
        D = diagrams[name]
        assert abs(sum(c * (-1) ** e for e, c in alexander(D))) == determinant(D)


def test_signature_and_det_match_table(corpus, diagrams):
    for rec in corpus:
        D = diagrams[rec.name]
        assert signature(D) == rec.expected["signature"], rec.name
        assert determinant(D) == rec.expected["det"], rec.name


def test_genus_on_alternating_knots(corpus, diagrams):
    for rec in corpus:
        D = diagrams[rec.name]
        if not seifert_data(D).upper_bound_only:
            assert int(seifert_data(D).genus) == rec.expected["genus"], rec.name


def test_v2_v3_from_jones():
    V = jones(TREFOIL)
    assert v2_from_jones(V) == 1
    assert v3_from_jones(V) == Fraction(1, 4)


def test_det_methods_agree(corpus, diagrams):
    for rec in corpus:
        D = diagrams[rec.name]
        if D.c == 0 or not is_alternating(D):
            continue
        assert det_from_jones(D) == det_from_goeritz(D) == det_from_trees(D) == rec.expected["det"]


def test_det_skein_additivity(corpus, diagrams):
    rng = random.Random(20240611)
    alt = [diagrams[r.name] for r in corpus if diagrams[r.name].c and is_alternating(diagrams[r.name])]
    for _ in range(50):
        D = rng.choice(alt)
        i = rng.randrange(D.c)
        d0 = det_from_goeritz(smooth_crossing(D, i, "zero", kinks=False))
        dinf = det_from_goeritz(smooth_crossing(D, i, "infinity", kinks=False))
        assert det_from_goeritz(D) == d0 + dinf


def test_mirror_symmetries(corpus, diagrams):
    for rec in corpus[:60]:
        D = diagrams[rec.name]
        b, m = invariant_bundle(D), invariant_bundle(mirror(D))
        assert (m.a2, m.a4, m.det, m.genus) == (b.a2, b.a4, b.det, b.genus)
        assert (m.four_v3, m.sigma) == (-b.four_v3, -b.sigma)


@pytest.mark.parametrize("p", [3, 5, 7, 9, 11, 13])
def test_torus_closed_forms(p):
    b = invariant_bundle(torus_2p(p))
    assert b.a2 == (p * p - 1) // 8
    assert b.four_v3 == (p**3 - p) // 24
    assert b.det == p and b.sigma == p - 1


def test_pretzel_333():
    # genus one, odd pretzel: det = pq + qr + rp, a2 = (det + 1) / 4
    b = invariant_bundle(pretzel(3, 3, 3))
    assert (b.det, b.a2, b.a4, b.four_v3, b.genus) == (27, 7, 0, 18, 1)


def test_bracket_limit():
    with pytest.raises(ResourceLimit):
        kauffman_bracket(torus_2p(25), max_crossings=20)


def test_bundle_rejects_links():
    with pytest.raises(NotAKnot):
        invariant_bundle(build_diagram(parse_pd("X[1,3,2,4] X[3,1,4,2]")))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_crossing_change_moves_a2_by_linking(corpus, data):
    # Conway skein: a2(D+) - a2(D-) = lk(D0)
    rec = data.draw(st.sampled_from([r for r in corpus if 3 <= r.pd.c <= 8]))
    D = build_diagram(rec.pd)
    i = data.draw(st.integers(0, D.c - 1))
    E = crossing_change(D, i)
    D0 = smooth_crossing(D, i, "zero")
    lk = conway(D0)[1]
    plus, minus = (D, E) if D.signs[i] > 0 else (E, D)
    assert conway(plus)[2] - conway(minus)[2] == lk
