"""The inequality battery: known bounds on a2, a4, v3, twist density and
det, evaluated on one knot at a time.

Each check is a :class:`~knotcert.certify.LedgerEntry`; a check with
``ok`` False is a violation.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .certify import LedgerEntry, _compare, context, det_key_bounds, _det_density_rhs
from .diagram import PlanarDiagram, is_alternating, is_reduced, seifert_data
from .errors import NotReduced
from .invariants import InvariantBundle, MAX_JONES_CROSSINGS, jones
from .polynomial import LaurentPolynomial
from .twist import TwistProfile, twist_regions


def gbinom(x, k: int) -> Fraction:
    """Binomial coefficient with a rational top entry.

    Zero for x < k - 1, where the polynomial would go negative; this keeps
    the function convex, which is what the averaging bound relies on.
    """
    x = Fraction(x)
    if x < k - 1:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out / factorial(k)


def conway_coefficient_bound(c: int, n: int) -> Fraction:
    """(C(c, 2n) - 2 C(c/2, 2n)) / 2."""
    return (gbinom(c, 2 * n) - 2 * gbinom(Fraction(c, 2), 2 * n)) / 2


def _check(out, ineq, lhs, rhs, relation="<="):
    out.append(LedgerEntry(ineq, lhs, rhs, _compare(lhs, rhs, relation), relation))


def _equal(out, ineq, got, want):
    out.append(LedgerEntry(ineq, str(got), str(want), got == want, "=="))


def finite_type_checks(bundle: InvariantBundle, c: int, *, positive: int = 0,
                       diagram_c: int | None = None) -> list[LedgerEntry]:
    """Bounds in terms of the crossing number ``c``.

    ``positive`` is +1 for a positive diagram, -1 for a negative one (its
    mirror is then positive) and 0 otherwise; ``diagram_c`` is the crossing
    count of that diagram.
    """
    out: list[LedgerEntry] = []
    a2, a4, v = bundle.a2, bundle.a4, bundle.four_v3
    _check(out, "|a2| <= (C(c,2) - 2C(c/2,2))/2", abs(a2), conway_coefficient_bound(c, 1))
    _check(out, "|a4| <= (C(c,4) - 2C(c/2,4))/2", abs(a4), conway_coefficient_bound(c, 2))
    _check(out, "a2 <= c^2/8", a2, Fraction(c * c, 8))
    if c > 0:
        _check(out, "a2 <= (c^2-1)/8", a2, Fraction(c * c - 1, 8))
    _check(out, "-(c^3-c)/24 <= 4v3", Fraction(-(c**3 - c), 24), v)
    _check(out, "4v3 <= (c^3-c)/24", v, Fraction(c**3 - c, 24))
    if positive and c > 0:
        v = v * positive
        g = bundle.genus
        cd = c if diagram_c is None else diagram_c
        _check(out, "a4 <= c(D)^2 a2 / 2", a4, Fraction(cd * cd, 2) * a2)
        _check(out, "a2 <= 4v3", a2, v)
        _check(out, "a2 >= C(g,1)", a2, g, ">=")
        if g >= 2:
            _check(out, "a4 >= C(g,2)", a4, g * (g - 1) // 2, ">=")
        _check(out, "0 < g", 0, g, "<")
        _check(out, "g <= a2", g, a2)
    return out


def twist_checks(profile: TwistProfile) -> list[LedgerEntry]:
    out: list[LedgerEntry] = []
    if profile.c == 0:
        return out
    d = profile.density
    _check(out, "1/tw <= d", Fraction(1, profile.tw), d)
    _check(out, "(tw-1)/c <= 1-d", Fraction(profile.tw - 1, profile.c), 1 - d)
    return out


def det_checks(profile: TwistProfile, det: int, ctx=None) -> list[LedgerEntry]:
    """Determinant lower bounds; only meaningful for reduced alternating diagrams."""
    out: list[LedgerEntry] = []
    ctx = ctx or context()
    if profile.tw_bar is None or profile.tw_bar < 2:
        return out
    for label, bound in det_key_bounds(profile.c, profile.tw_bar, [r.c_R for r in profile.regions], ctx):
        _check(out, f"{label} < det", bound, det, "<")
    _check(out, "det-density <= det", _det_density_rhs(profile.c, profile.tw_bar, profile.density, ctx), det)
    return out


def expected_checks(D: PlanarDiagram, bundle: InvariantBundle, expected: dict) -> list[LedgerEntry]:
    """Compare computed invariants with the values stored alongside a corpus record."""
    out: list[LedgerEntry] = []
    if "det" in expected:
        _equal(out, "det == expected", bundle.det, expected["det"])
    if "signature" in expected:
        _equal(out, "signature == expected", bundle.sigma, expected["signature"])
    if "genus" in expected and not seifert_data(D).upper_bound_only:
        _equal(out, "genus == expected", bundle.genus, expected["genus"])
    if "conway" in expected:
        want = dict((int(e), int(c)) for e, c in expected["conway"])
        _equal(out, "a2 == expected", bundle.a2, want.get(2, 0))
        _equal(out, "a4 == expected", bundle.a4, want.get(4, 0))
    if "jones" in expected and D.c <= MAX_JONES_CROSSINGS:
        want = LaurentPolynomial({int(e): int(c) for e, c in expected["jones"]}, "t")
        got = jones(D)
        _equal(out, "jones == expected", got, want)
    return out


def battery(D: PlanarDiagram, bundle: InvariantBundle, *, c: int | None = None,
            expected: dict | None = None, include_det: bool = False, ctx=None) -> list[LedgerEntry]:
    """Every applicable check for one knot diagram."""
    c = D.c if c is None else c
    positive = 0
    if D.c and all(s > 0 for s in D.signs):
        positive = 1
    elif D.c and all(s < 0 for s in D.signs):
        positive = -1
    out = finite_type_checks(bundle, c, positive=positive, diagram_c=D.c)
    if D.c and is_reduced(D):
        try:
            profile = twist_regions(D)
        except NotReduced:  # pragma: no cover - guarded by is_reduced
            profile = None
        if profile is not None:
            out += twist_checks(profile)
            if include_det and is_alternating(D):
                out += det_checks(profile, bundle.det, ctx)
    if expected:
        out += expected_checks(D, bundle, expected)
    return out
