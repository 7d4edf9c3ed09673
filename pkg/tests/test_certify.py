from fractions import Fraction

import pytest

from knotcert import certify as cf
from knotcert.diagram import mirror
from knotcert.errors import HypothesisViolated, ZeroV3
from knotcert.families import (
    coherent_twist_knot, dense_special_alternating, pretzel, special_alternating_70, torus_2p,
)
from knotcert.invariants import InvariantBundle, invariant_bundle
from knotcert.twist import twist_regions


def run(criterion, D, bundle=None, name=""):
    return cf.evaluate(criterion, D, profile=None, bundle=bundle, name=name)


def test_ratio():
    b = invariant_bundle(torus_2p(3))
    assert cf.ratio(b) == 6
    with pytest.raises(ZeroV3):
        cf.ratio(InvariantBundle(4, -1, 0, 0, 5, 0, 1))


def test_coherent_and_incoherent_constants():
    assert cf.coherent_x(4) == Fraction(3 * 8, 24 * 64)
    assert cf.incoherent_y(6) == Fraction(96, 8)
    X, bound = cf.coherent_bound(32, 100, Fraction(1, 2))
    assert bound == Fraction(700) / (64 * X * Fraction(1, 8))
    with pytest.raises(HypothesisViolated):
        cf.coherent_bound(2, 10, Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        cf.incoherent_bound(4, 10, Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        cf.incoherent_bound(40, 100, Fraction(1, 2), tw=8)
    Y, b2 = cf.incoherent_bound(40, 100, Fraction(1, 2))
    assert cf.incoherent_bound_alt(40, 100, Fraction(1, 2)) == (7 + Y) / 4 * Fraction(3, 4) * 10**4
    assert b2 == (7 + Y) / 2 * Fraction(1, 4) * 10**4


def test_figure_eight_everything_violated(diagrams):
    D = diagrams["4_1"]
    b = invariant_bundle(D)
    for c in cf.CCS_CRITERIA:
        cert = run(c, D, b, "4_1")
        assert cert.verdict == cf.VIOLATED, c
    assert cf.evaluate(cf.THM_I, D, bundle=b).assumptions["four_v3_nonzero"] is False


def test_trefoil_thm_i_certifies_and_torus_is_excluded():
    D = torus_2p(3)
    b = invariant_bundle(D)
    assert run(cf.THM_I, D, b).verdict == cf.INCONCLUSIVE  # |ratio| = 6 > (3 - 2 - 1)/2
    for c in (cf.THM_II, cf.DENSITY, cf.MAIN, cf.DET_BOUND):
        cert = run(c, D, b)
        assert cert.verdict == cf.VIOLATED, c
    assert run(cf.THM_II, D, b).assumptions["not_torus_2p"] is False


def test_thm_ii_on_pretzel_333():
    D = pretzel(3, 3, 3)
    cert = run(cf.THM_II, D, invariant_bundle(D))
    assert cert.verdict == cf.CERTIFIED
    assert cert.ledger[0].relation == "!="


def test_thm_i_on_corpus_is_sound(corpus, diagrams):
    seen = {cf.CERTIFIED: 0}
    for rec in corpus:
        if not rec.expected["alternating"] or rec.pd.c == 0:
            continue
        b = invariant_bundle(diagrams[rec.name])
        cert = run(cf.THM_I, diagrams[rec.name], b)
        if cert.verdict == cf.CERTIFIED:
            seen[cf.CERTIFIED] += 1
            r = abs(cf.ratio(b))
            assert 0 < r <= Fraction(b.det - abs(b.sigma) - 1, 2)
    assert seen[cf.CERTIFIED] == 100


def test_non_alternating_is_violated(diagrams):
    D = diagrams["8_19"]
    b = invariant_bundle(D)
    for c in cf.CCS_CRITERIA:
        assert run(c, D, b).verdict == cf.VIOLATED


def test_mirror_of_special_alternating_is_noted():
    D = mirror(special_alternating_70())
    cert = run(cf.DENSITY, D)
    assert cert.verdict == cf.CERTIFIED
    assert any("mirror" in n for n in cert.notes)


def test_seventy_regions():
    D = special_alternating_70()
    p = twist_regions(D)
    assert (D.c, p.tw, p.tw_bar, p.density) == (70, 70, 70, Fraction(1, 70))
    for c in (cf.DENSITY, cf.MAIN):
        cert = cf.evaluate(c, D, profile=p)
        assert cert.verdict == cf.CERTIFIED
        assert cert.ledger and all(e.ok is True for e in cert.ledger)
        assert cf.revalidate(cert, D, profile=p)


@pytest.mark.parametrize("coherent", [True, False])
def test_large_twist_chain(coherent):
    D = dense_special_alternating(401, coherent=coherent)
    p = twist_regions(D)
    assert p.regions[p.max_region].coherent is coherent
    cert = cf.evaluate(cf.MAIN, D, profile=p)
    assert cert.verdict == cf.CERTIFIED
    assert any(("coherent" if coherent else "incoherent") in n for n in cert.notes)
    names = [e.ineq for e in cert.ledger]
    assert ("eqn X with 7/(64X)" in names) is coherent
    assert ("eqn Y with (7+Y)/2" in names) is not coherent
    assert cf.revalidate(cert, D, profile=p)


def test_small_tw_main_is_inconclusive(corpus, diagrams):
    counts = {}
    for rec in corpus:
        cert = run(cf.MAIN, diagrams[rec.name])
        counts[cert.verdict] = counts.get(cert.verdict, 0) + 1
    assert counts == {cf.INCONCLUSIVE: 23, cf.VIOLATED: 227}


def test_alternating_coherent():
    D = coherent_twist_knot(45)
    b = invariant_bundle(D)
    assert (b.det, b.sigma, b.four_v3) == (931875, 38, 3311)
    cert = run(cf.ALT_COHERENT, D, b)
    assert cert.verdict == cf.CERTIFIED
    D = coherent_twist_knot(31)
    assert run(cf.ALT_COHERENT, D, invariant_bundle(D)).verdict == cf.VIOLATED


def test_det_bound_verdicts(diagrams):
    assert run(cf.DET_BOUND, diagrams["4_1"]).verdict == cf.BOUND_FAILS
    assert run(cf.DET_BOUND, diagrams["8_18"]).verdict == cf.BOUND_HOLDS
    assert run(cf.DET_BOUND, diagrams["3_1"]).verdict == cf.VIOLATED


def test_certificate_json():
    D = special_alternating_70()
    out = cf.evaluate(cf.DENSITY, D, name="g70").to_json()
    assert out["knot"] == "g70" and out["verdict"] == cf.CERTIFIED
    line = out["ledger"][0]
    assert set(line) == {"ineq", "relation", "lhs", "rhs", "ok"}
    assert line["lhs"] == {"exact": "1/70"} and set(line["rhs"]) == {"lo", "hi"}
    assert Fraction(line["rhs"]["lo"]) > Fraction(1, 70)


def test_unknown_criterion():
    with pytest.raises(ValueError):
        run("NoSuchThing", torus_2p(3))
