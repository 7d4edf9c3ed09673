"""The ten acceptance criteria, one PASS/FAIL line each (see the summary
section at the end of the pytest output)."""
import itertools
import random
import time
from fractions import Fraction

import pytest

from knotcert import certify as cf
from knotcert.bounds import battery
from knotcert.codec import (
    canonical_pd, gauss_to_pd, parse_dt, parse_gauss, parse_pd, pd_to_gauss, read_corpus, record_to_json,
    serialize_gauss, serialize_pd,
)
from knotcert.diagram import build_diagram, is_alternating, is_reduced, mirror, smooth_crossing
from knotcert.errors import (
    DisconnectedTrace, LabelCountError, MalformedToken, NonPlanarInput, NotAKnot, ResourceLimit,
)
from knotcert.families import (
    alternating_knot_160, coherent_twist_knot, dense_special_alternating, pretzel, special_alternating_70,
    torus_2p,
)
from knotcert.gauss import a2n_gauss, gauss_of, v3_gauss
from knotcert.invariants import (
    conway, det_from_goeritz, det_from_jones, det_from_trees, invariant_bundle, jones, v3_from_jones,
)
from knotcert.twist import twist_regions

from conftest import ACCEPTANCE, corpus_path
from oracles import circle_search_classes

AMPHICHEIRAL = ("4_1", "6_3", "8_3", "8_9", "8_12", "8_17", "8_18", "10_17", "10_33", "10_37", "10_43",
                "10_45", "10_79", "10_81", "10_88", "10_99", "10_109", "10_115", "10_118", "10_123")


def report(n, ok, detail):
    ACCEPTANCE[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    return ok


@pytest.fixture(scope="module")
def bundles(corpus, diagrams):
    return {r.name: invariant_bundle(diagrams[r.name]) for r in corpus}


def test_criterion_1_torus_closed_forms():
    t = time.perf_counter()
    bad = []
    for p in (3, 5, 7, 9, 11):
        D = torus_2p(p)
        G = gauss_of(D)
        a2_poly, v3_poly = conway(D)[2], 4 * v3_from_jones(jones(D))
        a2_gauss, v3_g = a2n_gauss(G, 1), v3_gauss(G)
        if not (a2_poly == a2_gauss == (p * p - 1) // 8 and v3_poly == v3_g == (p**3 - p) // 24):
            bad.append(p)
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    assert report(1, ok, f"a2 and 4v3 of T(2,p), p=3..11, via Gauss and polynomial paths; mismatches {bad}; "
                         f"{dt:.2f}s")


def test_criterion_2_gauss_vs_polynomials(corpus, diagrams):
    t = time.perf_counter()
    seen, bad = 0, []
    for rec in corpus:
        for D in (diagrams[rec.name], mirror(diagrams[rec.name])):
            G = gauss_of(D)
            nabla = conway(D)
            if (a2n_gauss(G, 1), a2n_gauss(G, 2), v3_gauss(G)) != (nabla[2], nabla[4], 4 * v3_from_jones(jones(D))):
                bad.append(rec.name)
            seen += 1
    dt = time.perf_counter() - t
    ok = not bad and seen >= 200 and dt < 600
    assert report(2, ok, f"{seen} diagrams incl. mirrors, {len(bad)} disagreements; {dt:.1f}s")


def test_criterion_3_bound_battery(corpus, diagrams, bundles):
    violations, tight = [], set()
    for rec in corpus:
        D, b = diagrams[rec.name], bundles[rec.name]
        c = rec.expected["crossings"]
        for e in battery(D, b, c=c):
            if e.ok is not True:
                violations.append((rec.name, e.ineq))
        if c and (b.a2 == Fraction(c * c - 1, 8) or abs(b.four_v3) == Fraction(c**3 - c, 24)):
            tight.add(rec.name)
    family_tight = all(
        invariant_bundle(torus_2p(p)).a2 == (p * p - 1) // 8 and invariant_bundle(torus_2p(p)).four_v3 ==
        (p**3 - p) // 24 for p in (3, 5, 7, 9, 11))
    ok = not violations and tight == {"3_1", "5_1", "7_1", "9_1"} and family_tight
    assert report(3, ok, f"{len(violations)} violations on {len(corpus)} knots; equality cases {sorted(tight)}")


def test_criterion_4_determinants(corpus, diagrams):
    alt = [diagrams[r.name] for r in corpus if diagrams[r.name].c and is_alternating(diagrams[r.name])]
    triple = sum(det_from_jones(D) == det_from_goeritz(D) == det_from_trees(D) for D in alt)
    rng = random.Random(4)
    skein = 0
    for _ in range(50):
        D = rng.choice(alt)
        i = rng.randrange(D.c)
        d0 = det_from_goeritz(smooth_crossing(D, i, "zero", kinks=False))
        dinf = det_from_goeritz(smooth_crossing(D, i, "infinity", kinks=False))
        skein += det_from_goeritz(D) == d0 + dinf
    ok = triple == len(alt) and skein == 50
    assert report(4, ok, f"triple agreement {triple}/{len(alt)} alternating knots; skein additivity {skein}/50")


def _det_bound_failures(corpus, diagrams, bundles, keep):
    failures, checked = [], 0
    for rec in corpus:
        D = diagrams[rec.name]
        if D.c == 0 or not (is_alternating(D) and is_reduced(D)):
            continue
        p = twist_regions(D)
        if p.tw_bar < 2 or not keep(p.tw_bar):
            continue
        checked += 1
        cert = cf.evaluate(cf.DET_BOUND, D, profile=p, bundle=bundles[rec.name])
        if cert.verdict != cf.BOUND_HOLDS:
            failures.append(rec.name)
    return checked, failures


@pytest.mark.xfail(strict=True, reason="det-key and det-density fail for tw_bar = 2 diagrams (4_1: 6.20 > 5)")
def test_criterion_5_det_lower_bounds(corpus, diagrams, bundles):
    checked, failures = _det_bound_failures(corpus, diagrams, bundles, lambda t: True)
    ok = not failures
    report(5, ok, f"{checked} reduced alternating diagrams with tw_bar >= 2; bound exceeds det on "
                  f"{len(failures)}: {' '.join(failures)} (all tw_bar = 2)")
    assert ok


def test_criterion_5_holds_from_three_regions(corpus, diagrams, bundles):
    checked, failures = _det_bound_failures(corpus, diagrams, bundles, lambda t: t >= 3)
    assert checked > 150 and failures == []
    _, small = _det_bound_failures(corpus, diagrams, bundles, lambda t: t == 2)
    assert small == ["4_1", "5_2", "6_1", "7_2", "7_3", "8_3", "9_3", "9_4", "10_3"]


def _eqn_rows(ctx):
    bad = []
    for tw in range(64, 101):
        for label, (lhs, rhs) in (
            ("X", cf.eqn_x(tw, tw, Fraction(1, 28), ctx, printed=True)),
            ("X'", cf.eqn_x(tw, tw, Fraction(1, 28), ctx, printed=False)),
            ("Y", cf.eqn_y(tw, tw, Fraction(1, 4), ctx, divisor=4)),
            ("Y'", cf.eqn_y(tw, tw, Fraction(1, 4), ctx, divisor=2)),
        ):
            if lhs.le(rhs) is not True:
                bad.append((label, tw))
    return bad


@pytest.mark.xfail(strict=True, reason="Y(cR) < 1/4 only holds from cR = 70, not from cR = 32")
def test_criterion_6_main_constants():
    t = time.perf_counter()
    eqn_bad = _eqn_rows(cf.context())
    x_bad = [c for c in range(32, 201) if not cf.coherent_x(c) > Fraction(1, 28)]
    y_bad = [c for c in range(32, 201) if not cf.incoherent_y(c) < Fraction(1, 4)]
    dt = time.perf_counter() - t
    ok = not eqn_bad and not x_bad and not y_bad and dt < 60
    y_text = f"Y(cR) >= 1/4 for cR in {y_bad[0]}..{y_bad[-1]}" if y_bad else "Y(cR) < 1/4 throughout"
    report(6, ok, f"eqn X/Y for tw 64..100: {len(eqn_bad)} failures; X(cR) > 1/28 on 32..200: "
                  f"{len(x_bad)} failures; {y_text}; {dt:.2f}s")
    assert ok


def test_criterion_6_constants_where_used():
    assert _eqn_rows(cf.context()) == []
    assert all(cf.coherent_x(c) > Fraction(1, 28) for c in range(21, 201))
    assert all(cf.incoherent_y(c) < Fraction(1, 4) for c in range(70, 201))
    # in the main proof d > 9/16 and c >= c(R) + tw - 1 give c(R) > 9(tw - 1)/7 >= 81
    for tw in range(64, 101):
        c_min = 9 * (tw - 1) // 7 + 1
        assert c_min >= 81 and cf.incoherent_y(c_min) < Fraction(1, 4)


def test_criterion_7_pipeline_sanity(corpus, diagrams, bundles):
    problems = []
    for name in AMPHICHEIRAL:
        D, b = diagrams[name], bundles[name]
        if b.four_v3 != 0:
            problems.append(f"{name}: 4v3 = {b.four_v3}")
        for c in cf.CCS_CRITERIA:
            if cf.evaluate(c, D, bundle=b).verdict != cf.VIOLATED:
                problems.append(f"{name}: {c}")
    for p in (3, 5, 7, 9, 11):
        D = torus_2p(p)
        b = invariant_bundle(D)
        thm2 = cf.evaluate(cf.THM_II, D, bundle=b)
        det = cf.evaluate(cf.DET_BOUND, D, bundle=b)
        if thm2.verdict != cf.VIOLATED or thm2.assumptions.get("not_torus_2p") is not False:
            problems.append(f"T(2,{p}) thm ii")
        if det.verdict != cf.VIOLATED or det.assumptions.get("tw_bar_ge_2") is not False:
            problems.append(f"T(2,{p}) det-key")
    D = special_alternating_70()
    p = twist_regions(D)
    for c in (cf.DENSITY, cf.MAIN):
        cert = cf.evaluate(c, D, profile=p)
        if cert.verdict != cf.CERTIFIED or not cert.ledger or not all(e.ok is True for e in cert.ledger):
            problems.append(f"70-region diagram: {c}")
    ok = not problems and p.tw == 70
    assert report(7, ok, f"{len(AMPHICHEIRAL)} amphicheiral knots, T(2,p) exclusions, 70-region diagram "
                         f"(tw={p.tw}); problems: {problems or 'none'}")


@pytest.fixture(scope="module")
def certificate_cases(corpus, diagrams, bundles):
    cases = [(r.name, diagrams[r.name], bundles[r.name]) for r in corpus]
    for name, D in (("g70", special_alternating_70()), ("dense-coherent", dense_special_alternating(401)),
                    ("dense-incoherent", dense_special_alternating(401, coherent=False))):
        cases.append((name, D, None))
    for name, D in (("twist-45", coherent_twist_knot(45)), ("twist-31", coherent_twist_knot(31)),
                    ("P(3,3,3)", pretzel(3, 3, 3)), ("alt-160", alternating_knot_160())):
        cases.append((name, D, invariant_bundle(D)))
    return cases


def test_criterion_8_revalidation(certificate_cases):
    total, certified, broken = 0, 0, []
    for name, D, b in certificate_cases:
        p = twist_regions(D) if D.c and is_reduced(D) else None
        for c in cf.CRITERIA:
            if b is None and c in (cf.THM_I, cf.THM_II, cf.ALT, cf.ALT_COHERENT):
                continue
            cert = cf.evaluate(c, D, profile=p, bundle=b, name=name)
            total += 1
            certified += cert.verdict == cf.CERTIFIED
            if not cf.revalidate(cert, D, profile=p, bundle=b):
                broken.append(f"{name}:{c}")
    ok = not broken
    assert report(8, ok, f"{total} certificates re-checked at squared gamma precision ({certified} certified); "
                         f"{len(broken)} changed")


def test_criterion_9_twist_analysis(corpus, diagrams):
    p111 = twist_regions(pretzel(1, 1, 1))
    p333 = twist_regions(pretzel(3, 3, 3))
    det333 = invariant_bundle(pretzel(3, 3, 3)).det
    compared, mismatched = 0, []
    samples = []
    for rec in corpus:
        D = diagrams[rec.name]
        if 0 < D.c <= 8 and is_alternating(D):
            samples += [(rec.name, D), (rec.name + "*", mirror(D))]
    for k in (2, 3, 4):
        for t in itertools.product(range(1, 6), repeat=k):
            if sum(t) <= 8:
                samples.append((f"P{t}", pretzel(*t)))
    for name, D in samples:
        prof = twist_regions(D)
        compared += 1
        if prof.classes != circle_search_classes(D, prof):
            mismatched.append(name)
    ok = ((p111.tw, p111.tw_bar) == (3, 1) and (p333.tw, p333.tw_bar, p333.density, det333) ==
          (3, 3, Fraction(1, 3), 27) and not mismatched)
    assert report(9, ok, f"P(1,1,1) tw={p111.tw} tw_bar={p111.tw_bar}; P(3,3,3) tw={p333.tw} "
                         f"tw_bar={p333.tw_bar} d={p333.density} det={det333}; oracle fuzz {compared} diagrams, "
                         f"{len(mismatched)} discrepancies")


def _raises(exc, fn, *args):
    try:
        fn(*args)
    except exc:
        return True
    except Exception:
        return False
    return False


def test_criterion_10_parsers(corpus):
    with open(corpus_path()) as fh:
        raw = [line.rstrip("\n") for line in fh]
    stable = 0
    for rec, line in zip(corpus, raw):
        pd_text = serialize_pd(rec.pd)
        ok = serialize_pd(parse_pd(pd_text)) == pd_text and record_to_json(rec) == line
        if rec.pd.c:
            g = serialize_gauss(pd_to_gauss(rec.pd))
            ok = ok and serialize_gauss(parse_gauss(g)) == g
            ok = ok and sorted(gauss_to_pd(parse_gauss(g)).crossings) == sorted(rec.pd.crossings)
        stable += ok
    negatives = [
        _raises(MalformedToken, parse_pd, "X[1,2,3]"),
        _raises(MalformedToken, parse_pd, "X[1,5,2,4] Y[3,1,4,6]"),
        _raises(LabelCountError, parse_pd, "X[1,2,3,4]"),
        _raises(DisconnectedTrace, parse_pd, "X[1,1,2,2] X[3,3,4,4]"),
        _raises(MalformedToken, parse_gauss, "O1+ U1+ Q2+"),
        _raises(LabelCountError, parse_gauss, "O1+ U1-"),
        _raises(NonPlanarInput, lambda: gauss_to_pd(parse_gauss("O1+ U2+ U1+ O2+"))),
        _raises(NotAKnot, pd_to_gauss, parse_pd("X[1,3,2,4] X[3,1,4,2]")),
        _raises(LabelCountError, parse_dt, "4 4 2"),
        _raises(MalformedToken, parse_dt, "4 x 2"),
        _raises(ResourceLimit, parse_dt, " ".join(str(2 * k) for k in range(2, 19)) + " 2"),
    ]
    bad_lines = [i for i in read_corpus(_bad_corpus()) if not hasattr(i, "pd")]
    ok = stable == len(corpus) and all(negatives) and len(bad_lines) == 2
    assert report(10, ok, f"{stable}/{len(corpus)} records byte-stable (PD, Gauss, JSONL); "
                          f"{sum(negatives)}/{len(negatives)} malformed inputs raise the named error; "
                          f"{len(bad_lines)}/2 bad corpus lines itemised")


def _bad_corpus():
    import tempfile

    fh = tempfile.NamedTemporaryFile("w", suffix=".jsonl", delete=False)
    fh.write('{"name": "3_1", "pd": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}\n{broken\n{"name": "x"}\n')
    fh.close()
    return fh.name
