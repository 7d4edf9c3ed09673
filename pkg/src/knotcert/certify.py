"""Obstruction criteria for chirally cosmetic surgeries, as certificates.

Every criterion returns a :class:`Certificate` whose ledger lists each
inequality it relied on, with both sides as exact rationals or rational
intervals.  A verdict of ``certified-no-CCS`` is only issued when every
ledger line holds for every value in its intervals.  Comparisons that the
intervals cannot decide are retried at a finer gamma precision.

Quantities:
  ratio    (7 a2^2 - a2 - 10 a4) / (4 v3)
  X(cR)    (cR - 1)(cR^2 - 2 cR) / (24 cR^3)
  Y(cR)    16 cR / ((cR - 2)(cR - 4))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .diagram import PlanarDiagram, is_alternating, is_reduced, special_alternating
from .errors import DegenerateDenominator, HypothesisViolated, LemmaContradiction, ZeroV3
from .interval import DEFAULT_EPS, MAX_EPS, GammaContext, Interval, precision_ladder
from .invariants import InvariantBundle
from .twist import TwistProfile, twist_regions

CERTIFIED = "certified-no-CCS"
INCONCLUSIVE = "inconclusive"
VIOLATED = "hypothesis-violated"
# verdicts of the determinant-bound check, which is a verification and
# not an obstruction
BOUND_HOLDS = "verified"
BOUND_FAILS = "violated"

THM_I = "ThmObstruction-i"
THM_II = "ThmObstruction-ii"
DENSITY = "PropNonLargeDensity"
CROSSING = "CorCrossing"
MAIN = "MainTheorem"
ALT = "PropAlt"
ALT_COHERENT = "CorAlternating"
DET_BOUND = "DetBoundCheck"
CRITERIA = (THM_I, THM_II, DENSITY, CROSSING, MAIN, ALT, ALT_COHERENT, DET_BOUND)
CCS_CRITERIA = CRITERIA[:-1]

MAIN_TW = 63


@lru_cache(maxsize=None)
def context(eps=DEFAULT_EPS) -> GammaContext:
    return GammaContext(Fraction(eps))


# ------------------------------------------------------------------ records


def _value_json(v):
    if isinstance(v, Interval):
        return v.to_json()
    try:
        return {"exact": str(Fraction(v))}
    except (TypeError, ValueError):
        return {"value": str(v)}


@dataclass
class LedgerEntry:
    ineq: str
    lhs: object
    rhs: object
    ok: bool | None  # None: the intervals overlap at this precision
    relation: str = "<="

    def to_json(self) -> dict:
        return {"ineq": self.ineq, "relation": self.relation, "lhs": _value_json(self.lhs),
                "rhs": _value_json(self.rhs), "ok": self.ok}


def _compare(lhs, rhs, relation: str) -> bool | None:
    if relation == "!=":
        if isinstance(lhs, Interval) or isinstance(rhs, Interval):
            raise TypeError("!= is only used on exact values")
        return lhs != rhs
    if relation in (">", ">="):
        lhs, rhs = rhs, lhs
        relation = "<" if relation == ">" else "<="
    if not isinstance(lhs, Interval) and not isinstance(rhs, Interval):
        return lhs < rhs if relation == "<" else lhs <= rhs
    if not isinstance(lhs, Interval):
        lhs = Interval.exact(lhs, rhs.bits)
    return lhs.lt(rhs) if relation == "<" else lhs.le(rhs)


@dataclass
class Certificate:
    knot: str
    criterion: str
    verdict: str = INCONCLUSIVE
    assumptions: dict = field(default_factory=dict)
    ledger: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    gamma_eps: Fraction | None = None

    def check(self, ineq: str, lhs, rhs, relation: str = "<=") -> bool | None:
        ok = _compare(lhs, rhs, relation)
        self.ledger.append(LedgerEntry(ineq, lhs, rhs, ok, relation))
        return ok

    @property
    def all_ok(self) -> bool:
        return all(e.ok is True for e in self.ledger)

    @property
    def undecided(self) -> bool:
        return any(e.ok is None for e in self.ledger)

    def finish(self) -> "Certificate":
        """Set the verdict from the ledger unless a hypothesis already failed."""
        if self.verdict in (VIOLATED, BOUND_HOLDS, BOUND_FAILS):
            return self
        self.verdict = CERTIFIED if self.all_ok and self.ledger else INCONCLUSIVE
        return self

    def violated(self, why: str) -> "Certificate":
        self.verdict = VIOLATED
        self.notes.append(why)
        return self

    def to_json(self) -> dict:
        out = {
            "knot": self.knot,
            "criterion": self.criterion,
            "verdict": self.verdict,
            "assumptions": dict(self.assumptions),
            "ledger": [e.to_json() for e in self.ledger],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.gamma_eps is not None:
            out["gamma_eps"] = str(self.gamma_eps)
        return out


# ------------------------------------------------------------- exact pieces


def ratio(bundle: InvariantBundle) -> Fraction:
    """(7 a2^2 - a2 - 10 a4) / (4 v3), exactly."""
    if bundle.four_v3 == 0:
        raise ZeroV3("4 v3 vanishes, the ratio is undefined")
    return Fraction(7 * bundle.a2**2 - bundle.a2 - 10 * bundle.a4, bundle.four_v3)


def coherent_x(cR: int) -> Fraction:
    return Fraction((cR - 1) * (cR * cR - 2 * cR), 24 * cR**3)


def incoherent_y(cR: int) -> Fraction:
    return Fraction(16 * cR, (cR - 2) * (cR - 4))


def coherent_bound(cR: int, c: int, d) -> tuple[Fraction, Fraction]:
    """(X, 7c / (64 X d^3)) for a coherent maximum region of cR crossings."""
    if cR < 3:
        raise HypothesisViolated(f"X(cR) is not positive for cR = {cR}")
    X = coherent_x(cR)
    d = Fraction(d)
    return X, Fraction(7 * c) / (64 * X * d**3)


def incoherent_bound(cR: int, c: int, d, tw: int | None = None) -> tuple[Fraction, Fraction]:
    """(Y, (7 + Y)/2 (1 - d)^2 c^2) for an incoherent maximum region.

    ``tw`` is checked against the tw >= 9 requirement when given.
    """
    if cR <= 4:
        raise HypothesisViolated(f"Y(cR) needs cR > 4, got {cR}")
    if tw is not None and tw < 9:
        raise HypothesisViolated(f"incoherent estimate needs tw >= 9, got {tw}")
    Y = incoherent_y(cR)
    d = Fraction(d)
    return Y, (7 + Y) / 2 * (1 - d) ** 2 * c * c


def incoherent_bound_alt(cR: int, c: int, d) -> Fraction:
    """The variant (7 + Y)/4 (1 - d^2) c^2 reached at the end of the estimate."""
    Y = incoherent_y(cR)
    d = Fraction(d)
    return (7 + Y) / 4 * (1 - d * d) * c * c


# ----------------------------------------------------------- gamma pieces


def det_key_bounds(c: int, tw_bar: int, region_sizes, ctx: GammaContext) -> list[tuple[str, Interval]]:
    """Lower bounds for det: the basic one, then one refined bound per size cR > 2."""
    g = ctx.power
    base = g(tw_bar) + (c - tw_bar) * g(Fraction(tw_bar - 1, 2))
    out = [("det-key", 2 * g(-1) * base)]
    for cR in sorted({s for s in region_sizes if s > 2}):
        extra = (cR - 2) * (c - tw_bar - cR) * g(Fraction(tw_bar - 3, 4))
        out.append((f"det-key refined cR={cR}", 2 * g(-1) * (base + extra)))
    return out


def prop_det_density(D: PlanarDiagram, profile: TwistProfile | None = None,
                     ctx: GammaContext | None = None) -> Interval:
    """2 (1 - d) gamma^((tw_bar - 7)/4) / tw_bar * c^2, a lower bound for det."""
    profile = profile or twist_regions(D)
    ctx = ctx or context()
    return _det_density_rhs(profile.c, profile.tw_bar, profile.density, ctx)


def _det_density_rhs(c, tw_bar, d, ctx) -> Interval:
    if tw_bar is None or tw_bar <= 1:
        raise HypothesisViolated("the density estimate for det needs tw_bar > 1")
    return 2 * (1 - Fraction(d)) * ctx.power(Fraction(tw_bar - 7, 4)) / tw_bar * c * c


def density_threshold(tw: int, ctx: GammaContext) -> Interval:
    """1 - (7 tw / 8) gamma^((7 - tw)/4)."""
    return 1 - Fraction(7 * tw, 8) * ctx.power(Fraction(7 - tw, 4))


def eqn_x(tw: int, tw_bar: int, X, ctx: GammaContext, *, printed: bool = True):
    """Both sides of the coherent-case constant inequality.

    ``printed=True`` uses 7X/64, otherwise 7/(64X) as the coherent lemma
    actually supplies.
    """
    lead = Fraction(7) * X / 64 if printed else Fraction(7) / (64 * X)
    gap = 1 - Fraction(7 * tw, 8) * ctx.power(Fraction(3 - tw, 4))
    if gap.lo <= 0:
        raise DegenerateDenominator(f"lower bound for 1-d is not positive at tw={tw}")
    lhs = lead * gap ** -3
    rhs = (tw - 1) * ctx.power(Fraction(tw_bar - 7, 4)) / tw
    return lhs, rhs


def eqn_y(tw: int, tw_bar: int, Y, ctx: GammaContext, *, divisor: int = 4):
    """Both sides of the incoherent-case constant inequality."""
    lhs = (7 + Fraction(Y)) / divisor * Fraction(7 * tw, 8) * ctx.power(Fraction(3 - tw, 4))
    rhs = ctx.power(Fraction(tw_bar - 7, 4)) / tw
    return lhs, rhs


# ------------------------------------------------------------- hypotheses


def _bundle_assumptions(cert: Certificate, bundle: InvariantBundle | None) -> bool:
    if bundle is None:
        return True
    ok = bundle.four_v3 != 0
    cert.assumptions["four_v3_nonzero"] = ok
    return ok


def _diagram_assumptions(cert: Certificate, D: PlanarDiagram, profile: TwistProfile | None,
                         *, special: bool):
    """Fill the diagram checklist; returns the profile or None if a hypothesis fails."""
    alt = is_alternating(D)
    red = is_reduced(D)
    cert.assumptions["alternating"] = alt
    cert.assumptions["reduced"] = red
    if special:
        sa = special_alternating(D)
        cert.assumptions["positive"] = sa is not None
        if sa == "mirror":
            cert.notes.append("all crossings are negative; the criterion is applied to the mirror image")
    if not (alt and red):
        cert.violated("needs a reduced alternating diagram")
        return None
    if special and not cert.assumptions["positive"]:
        cert.violated("needs a special alternating (positive) diagram")
        return None
    if not D.is_knot:
        cert.violated("needs a knot diagram")
        return None
    if D.c == 0:
        cert.violated("needs a nontrivial diagram")
        return None
    profile = profile or twist_regions(D)
    cert.assumptions["twist_reduced"] = bool(profile.twist_reduced)
    cert.assumptions["not_torus_2p"] = profile.tw_bar is not None and profile.tw_bar >= 2
    if not profile.twist_reduced:
        cert.violated("needs a twist-reduced diagram")
        return None
    return profile


# ------------------------------------------------------------------ criteria


def criterion_thm_i(bundle: InvariantBundle, *, name: str = "", alternating: bool = True) -> Certificate:
    """0 < |ratio| <= (det - |sigma| - 1) / 2."""
    cert = Certificate(name, THM_I)
    cert.assumptions["alternating"] = alternating
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    if not alternating:
        return cert.violated("needs an alternating knot")
    r = abs(ratio(bundle))
    cert.check("0 < |ratio|", Fraction(0), r, "<")
    cert.check("|ratio| <= (det - |sigma| - 1)/2", r, Fraction(bundle.det - abs(bundle.sigma) - 1, 2))
    return cert.finish()


def criterion_thm_ii(bundle: InvariantBundle, is_torus_2p: bool, *, name: str = "",
                     alternating: bool = True) -> Certificate:
    """sigma = 2g and ratio != det/2 + 3g - 5/2, away from the (2, p) torus knots."""
    cert = Certificate(name, THM_II)
    cert.assumptions["alternating"] = alternating
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    sig_ok = bundle.sigma == 2 * bundle.genus
    cert.assumptions["sigma_eq_2g"] = sig_ok
    cert.assumptions["not_torus_2p"] = not is_torus_2p
    if not alternating:
        return cert.violated("needs an alternating knot")
    if not sig_ok:
        return cert.violated("sigma != 2g")
    if is_torus_2p:
        return cert.violated("(2, p) torus knots are excluded")
    rhs = Fraction(bundle.det, 2) + 3 * bundle.genus - Fraction(5, 2)
    cert.check("ratio != det/2 + 3g - 5/2", ratio(bundle), rhs, "!=")
    return cert.finish()


def det_lower_bound(D: PlanarDiagram, profile: TwistProfile | None = None, det: int | None = None, *,
                    name: str = "", ctx: GammaContext | None = None) -> Certificate:
    """Check both determinant lower bounds (and the density form) against det."""
    from .invariants import determinant

    ctx = ctx or context()
    cert = Certificate(name, DET_BOUND, gamma_eps=ctx.eps)
    cert.assumptions["alternating"] = alt = is_alternating(D)
    cert.assumptions["reduced"] = red = is_reduced(D)
    if not (alt and red):
        return cert.violated("needs a reduced alternating diagram")
    profile = profile or twist_regions(D)
    cert.assumptions["tw_bar_ge_2"] = profile.tw_bar >= 2
    if profile.tw_bar < 2:
        return cert.violated("tw_bar = 1: (2, p) torus diagrams are excluded")
    det = determinant(D) if det is None else det
    sizes = [r.c_R for r in profile.regions]
    for label, bound in det_key_bounds(profile.c, profile.tw_bar, sizes, ctx):
        cert.check(f"{label} < det", bound, det, "<")
    cert.check("det-density <= det", _det_density_rhs(profile.c, profile.tw_bar, profile.density, ctx), det)
    if cert.undecided:
        return cert
    cert.verdict = BOUND_HOLDS if cert.all_ok else BOUND_FAILS
    return cert


def criterion_density(D: PlanarDiagram, profile: TwistProfile | None = None, *, name: str = "",
                      ctx: GammaContext | None = None, bundle: InvariantBundle | None = None) -> Certificate:
    """d <= 1 - (7 tw/8) gamma^((7 - tw)/4) on a special alternating diagram."""
    ctx = ctx or context()
    cert = Certificate(name, DENSITY, gamma_eps=ctx.eps)
    profile = _diagram_assumptions(cert, D, profile, special=True)
    if profile is None:
        return cert
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    if not cert.assumptions["not_torus_2p"]:
        return cert.violated("tw_bar = 1: (2, p) torus knot")
    cert.check("d <= 1 - (7tw/8) gamma^((7-tw)/4)", profile.density, density_threshold(profile.tw, ctx))
    return cert.finish()


def criterion_crossing(D: PlanarDiagram, profile: TwistProfile | None = None, *, name: str = "",
                       ctx: GammaContext | None = None, bundle: InvariantBundle | None = None) -> Certificate:
    """c(R) <= (tw - 1)(1 - (7 tw/8) gamma^((7 - tw)/4))."""
    ctx = ctx or context()
    cert = Certificate(name, CROSSING, gamma_eps=ctx.eps)
    profile = _diagram_assumptions(cert, D, profile, special=True)
    if profile is None:
        return cert
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    if not cert.assumptions["not_torus_2p"]:
        return cert.violated("tw_bar = 1: (2, p) torus knot")
    rhs = (profile.tw - 1) * density_threshold(profile.tw, ctx)
    cert.check("c(R) <= (tw-1)(1 - (7tw/8) gamma^((7-tw)/4))", profile.max_c_R, rhs)
    return cert.finish()


def main_theorem_check(D: PlanarDiagram, profile: TwistProfile | None = None, *, name: str = "",
                       ctx: GammaContext | None = None, bundle: InvariantBundle | None = None) -> Certificate:
    """Large twist number obstruction, replayed inequality by inequality.

    The density and crossing criteria are tried first.  If neither applies
    and tw > 63, the diagram must satisfy the two density bounds that make
    the coherent or incoherent estimate close the gap; each link of that
    chain goes into the ledger.
    """
    ctx = ctx or context()
    cert = Certificate(name, MAIN, gamma_eps=ctx.eps)
    profile = _diagram_assumptions(cert, D, profile, special=True)
    if profile is None:
        return cert
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    if not cert.assumptions["not_torus_2p"]:
        return cert.violated("tw_bar = 1: (2, p) torus knot")
    for fn in (criterion_density, criterion_crossing):
        sub = fn(D, profile, name=name, ctx=ctx, bundle=bundle)
        cert.ledger.extend(sub.ledger)
        if sub.verdict == CERTIFIED:
            cert.ledger = list(sub.ledger)
            cert.notes.append(f"branch: {sub.criterion}")
            cert.verdict = CERTIFIED
            return cert
    prior = len(cert.ledger)
    tw, tw_bar, c = profile.tw, profile.tw_bar, profile.c
    d = profile.density
    cR = profile.max_c_R
    cert.assumptions["tw_gt_63"] = tw > MAIN_TW
    if tw <= MAIN_TW:
        cert.notes.append("density criteria inconclusive and tw <= 63")
        cert.verdict = INCONCLUSIVE
        return cert
    region = profile.regions[profile.max_region]
    coherent = bool(region.coherent)
    cert.notes.append("branch: " + ("coherent" if coherent else "incoherent") + " maximum region")
    g_tail = ctx.power(Fraction(3 - tw, 4))
    cert.check("1 - d < (7tw/8) gamma^((3-tw)/4)", 1 - d, Fraction(7 * tw, 8) * g_tail, "<")
    cert.check("c(R) > (tw-1)(1 - (7tw/8) gamma^((7-tw)/4))", cR, (tw - 1) * density_threshold(tw, ctx), ">")
    cert.check("d > 9/16", d, Fraction(9, 16), ">")
    cert.check("c(R) > 31", cR, 31, ">")
    target = (1 - d) * ctx.power(Fraction(tw_bar - 7, 4)) / tw * c * c
    if coherent:
        X, bound = coherent_bound(cR, c, d)
        cert.check("X > 1/28", X, Fraction(1, 28), ">")
        lhs, rhs = eqn_x(tw, tw_bar, X, ctx, printed=True)
        cert.check("eqn X as printed (7X/64)", lhs, rhs)
        lhs, rhs = eqn_x(tw, tw_bar, X, ctx, printed=False)
        cert.check("eqn X with 7/(64X)", lhs, rhs)
        cert.check("7c/(64X d^3) <= (1-d) gamma^((tw_bar-7)/4) c^2 / tw", bound, target)
    else:
        cert.check("tw >= 9", tw, 9, ">=")
        Y, bound = incoherent_bound(cR, c, d)
        cert.check("Y < 1/4", Y, Fraction(1, 4), "<")
        lhs, rhs = eqn_y(tw, tw_bar, Y, ctx, divisor=4)
        cert.check("eqn Y as printed ((7+Y)/4)", lhs, rhs)
        lhs, rhs = eqn_y(tw, tw_bar, Y, ctx, divisor=2)
        cert.check("eqn Y with (7+Y)/2", lhs, rhs)
        cert.check("(7+Y)/2 (1-d)^2 c^2 <= (1-d) gamma^((tw_bar-7)/4) c^2 / tw", bound, target)
        alt = incoherent_bound_alt(cR, c, d)
        if _compare(alt, target, "<=") != _compare(bound, target, "<="):
            cert.notes.append("the (7+Y)/4 (1-d^2) c^2 form of the incoherent bound gives a different outcome")
    if bundle is not None:
        r = ratio(bundle)
        cert.check("ratio <= lemma bound", r, bound)
        cert.check("det-density <= det", 2 * target, bundle.det)
        cert.check("lemma bound < det/2 + 3g - 5/2", bound,
                   Fraction(bundle.det, 2) + 3 * bundle.genus - Fraction(5, 2), "<")
    # the failed density lines are replaced by the chain that supersedes them
    cert.ledger = cert.ledger[prior:]
    cert.notes.append("density and crossing criteria inconclusive; their lines are dropped")
    return cert.finish()


def criterion_alt(D: PlanarDiagram, profile: TwistProfile | None = None,
                  bundle: InvariantBundle | None = None, *, name: str = "",
                  ctx: GammaContext | None = None) -> Certificate:
    """c^4 <= 3 gamma^(tw - 1) on a reduced twist-reduced alternating diagram."""
    from .invariants import invariant_bundle

    ctx = ctx or context()
    cert = Certificate(name, ALT, gamma_eps=ctx.eps)
    profile = _diagram_assumptions(cert, D, profile, special=False)
    if profile is None:
        return cert
    bundle = bundle or invariant_bundle(D)
    if not _bundle_assumptions(cert, bundle):
        return cert.violated("4 v3 = 0")
    ok = cert.check("c^4 <= 3 gamma^(tw-1)", profile.c**4, 3 * ctx.power(profile.tw - 1))
    if ok:
        # the obstruction it feeds must then hold
        cert.check("|ratio| <= (det - |sigma| - 1)/2", abs(ratio(bundle)),
                   Fraction(bundle.det - abs(bundle.sigma) - 1, 2))
    return cert.finish()


def criterion_alternating_coherent(D: PlanarDiagram, profile: TwistProfile | None = None,
                                   bundle: InvariantBundle | None = None, *, name: str = "",
                                   ctx: GammaContext | None = None) -> Certificate:
    """Coherent maximum region, tw > 19 and d > 2/3 on an alternating diagram.

    The bound 64c / (-2(1-d)^3 + d^3) is compared directly with
    (det - |sigma| - 1)/2.
    """
    from .invariants import invariant_bundle

    ctx = ctx or context()
    cert = Certificate(name, ALT_COHERENT, gamma_eps=ctx.eps)
    profile = _diagram_assumptions(cert, D, profile, special=False)
    if profile is None:
        return cert
    region = profile.regions[profile.max_region]
    d, c, cR, tw = profile.density, profile.c, profile.max_c_R, profile.tw
    cert.assumptions["coherent"] = bool(region.coherent)
    cert.assumptions["c_R_gt_5"] = cR > 5
    cert.assumptions["tw_gt_19"] = tw > 19
    cert.assumptions["d_gt_2_3"] = d > Fraction(2, 3)
    if not region.coherent:
        return cert.violated("maximum twist region is not coherent")
    if cR <= 5:
        return cert.violated("needs c(R) > 5")
    if tw <= 19:
        return cert.violated("needs tw > 19")
    if d <= Fraction(2, 3):
        return cert.violated("needs d > 2/3")
    bundle = bundle or invariant_bundle(D)
    cert.assumptions["four_v3_nonzero"] = bundle.four_v3 != 0
    q = -2 * (1 - d) ** 3 + d**3
    cert.check("-2(1-d)^3 + d^3 > 0", q, 0, ">")
    sign = D.signs[region.crossings[0]]
    if bundle.four_v3 * sign <= 0:
        raise LemmaContradiction(
            f"4 v3 = {bundle.four_v3} but a coherent dominant region of sign {sign} forces it nonzero with that sign")
    bound = 64 * Fraction(c) / q
    cert.check("|ratio| < 64c/(-2(1-d)^3 + d^3)", abs(ratio(bundle)), bound, "<")
    rhs = Fraction(bundle.det - abs(bundle.sigma) - 1, 2)
    cert.check("64c/(-2(1-d)^3 + d^3) < (det - |sigma| - 1)/2", bound, rhs, "<")
    for label, b in det_key_bounds(c, profile.tw_bar, [r.c_R for r in profile.regions], ctx)[:1]:
        cert.check(f"{label} < det", b, bundle.det, "<")
    return cert.finish()


# ---------------------------------------------------------------- dispatch


def _evaluate_once(criterion: str, D, profile, bundle, name, ctx) -> Certificate:
    if criterion == DET_BOUND:
        return det_lower_bound(D, profile, None if bundle is None else bundle.det, name=name, ctx=ctx)
    if criterion == DENSITY:
        return criterion_density(D, profile, name=name, ctx=ctx, bundle=bundle)
    if criterion == CROSSING:
        return criterion_crossing(D, profile, name=name, ctx=ctx, bundle=bundle)
    if criterion == MAIN:
        return main_theorem_check(D, profile, name=name, ctx=ctx, bundle=bundle)
    if criterion == ALT:
        return criterion_alt(D, profile, bundle, name=name, ctx=ctx)
    if criterion == ALT_COHERENT:
        return criterion_alternating_coherent(D, profile, bundle, name=name, ctx=ctx)
    alternating = is_alternating(D)
    if criterion == THM_I:
        return criterion_thm_i(bundle, name=name, alternating=alternating)
    if criterion == THM_II:
        torus = False
        if alternating and is_reduced(D) and D.c:
            prof = profile or twist_regions(D)
            torus = prof.tw_bar == 1
        return criterion_thm_ii(bundle, torus, name=name, alternating=alternating)
    raise ValueError(f"unknown criterion {criterion!r}")


def evaluate(criterion: str, D: PlanarDiagram, *, profile: TwistProfile | None = None,
             bundle: InvariantBundle | None = None, name: str = "", eps=DEFAULT_EPS,
             cap=MAX_EPS) -> Certificate:
    """Run one criterion, refining gamma while some comparison is undecided."""
    cert = None
    for e in precision_ladder(eps, cap):
        cert = _evaluate_once(criterion, D, profile, bundle, name, context(e))
        if not cert.undecided:
            return cert
    cert.verdict = INCONCLUSIVE if cert.verdict != VIOLATED else cert.verdict
    cert.notes.append("precision cap reached with undecided comparisons")
    return cert


def revalidate(cert: Certificate, D: PlanarDiagram, *, profile=None, bundle=None) -> bool:
    """Recompute at the squared gamma precision and compare line by line.

    Every decided ledger line must keep its truth value and every interval
    must shrink into the old one.
    """
    eps = Fraction(cert.gamma_eps) if cert.gamma_eps is not None else DEFAULT_EPS
    again = _evaluate_once(cert.criterion, D, profile, bundle, cert.knot, context(eps * eps))
    if cert.verdict == CERTIFIED and again.verdict != CERTIFIED:
        return False
    if again.verdict != cert.verdict and not cert.undecided:
        return False
    if len(again.ledger) != len(cert.ledger):
        return False
    for old, new in zip(cert.ledger, again.ledger):
        if old.ineq != new.ineq:
            return False
        if old.ok is not None and new.ok is not old.ok:
            return False
        for a, b in ((old.lhs, new.lhs), (old.rhs, new.rhs)):
            if isinstance(a, Interval) and isinstance(b, Interval) and not (a.lo <= b.lo and b.hi <= a.hi):
                return False
    return True
