"""Polynomial invariants and the scalars derived from them.

Everything here is exact: integer Laurent polynomials, Fractions and
big-integer determinants.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .diagram import (
    PlanarDiagram,
    crossing_change,
    is_alternating,
    is_reduced,
    remove_kinks,
    seifert_data,
    smooth_crossing,
    tait_graph,
)
from .errors import MethodDisagreement, NotAKnot, NotQuarterInteger, ResourceLimit
from .linalg import bareiss_det, signature as matrix_signature
from .polynomial import LaurentPolynomial

MAX_JONES_CROSSINGS = 16
MAX_SKEIN_CROSSINGS = 16

_LOOP = LaurentPolynomial({2: -1, -2: -1}, "A")


def kauffman_bracket(D: PlanarDiagram, max_crossings: int = MAX_JONES_CROSSINGS,
                     backend: str | None = None) -> LaurentPolynomial:
    """Unnormalised bracket <D> in A, with <O> = 1."""
    if D.c > max_crossings:
        raise ResourceLimit(f"bracket state sum limited to {max_crossings} crossings, got {D.c}")
    extra = D.free_loops
    if D.c == 0:
        return _LOOP ** max(extra - 1, 0)
    arr = np.array(D.crossings, dtype=np.int64) - 1
    hist = kernels.bracket_histogram(arr, 2 * D.c, backend)
    out = LaurentPolynomial(var="A")
    for k in range(D.c + 1):
        for loops in range(1, hist.shape[1]):
            n = int(hist[k, loops])
            if n:
                out = out + LaurentPolynomial({2 * k - D.c: n}, "A") * _LOOP ** (loops - 1 + extra)
    return out


def jones_half(D: PlanarDiagram, **kw) -> LaurentPolynomial:
    """Jones polynomial in s = t^(1/2); valid for links."""
    w = D.writhe
    f = LaurentPolynomial({-3 * w: (-1) ** w}, "A") * kauffman_bracket(D, **kw)
    # A = t^(-1/4) = s^(-1/2)
    return f.scale_exponents(-1, 2).with_var("s")


def jones(D: PlanarDiagram, **kw) -> LaurentPolynomial:
    """Jones polynomial of a knot in t."""
    if not D.is_knot:
        raise NotAKnot("integer-exponent Jones polynomial needs a knot; use jones_half")
    return jones_half(D, **kw).scale_exponents(1, 2).with_var("t")


def v3_from_jones(V: LaurentPolynomial) -> Fraction:
    v3 = -Fraction(V.derivative_at_one(3), 144) - Fraction(V.derivative_at_one(2), 48)
    if (4 * v3).denominator != 1:
        raise NotQuarterInteger(f"v3 = {v3} is not in Z/4")
    return v3


def v2_from_jones(V: LaurentPolynomial) -> Fraction:
    return -Fraction(V.derivative_at_one(2), 6)


# ------------------------------------------------------------------ Conway


def _key(D: PlanarDiagram):
    return D.crossings, D.signs, D.free_loops


def conway(D: PlanarDiagram, max_crossings: int = MAX_SKEIN_CROSSINGS) -> LaurentPolynomial:
    """Conway polynomial by the descending-diagram skein recursion."""
    if D.c > max_crossings:
        raise ResourceLimit(f"skein recursion limited to {max_crossings} crossings, got {D.c}")
    memo: dict = {}
    z = LaurentPolynomial({1: 1}, "z")

    def rec(E: PlanarDiagram) -> LaurentPolynomial:
        E = remove_kinks(E)
        if E.c == 0:
            return LaurentPolynomial({0: 1 if E.n_components == 1 else 0}, "z")
        if E.free_loops:
            return LaurentPolynomial(var="z")
        key = _key(E)
        if key in memo:
            return memo[key]
        bad = _first_ascending(E)
        if bad is None:
            res = LaurentPolynomial({0: 1 if E.n_components == 1 else 0}, "z")
        else:
            other = rec(crossing_change(E, bad))
            smooth = rec(smooth_crossing(E, bad, "zero", kinks=False))
            # N(+) - N(-) = z N(0)
            res = other + z * smooth if E.signs[bad] > 0 else other - z * smooth
        memo[key] = res
        return res

    return rec(D)


def _first_ascending(D: PlanarDiagram) -> int | None:
    """First crossing met from below while walking components in order."""
    seen = set()
    ent = D.entering
    for comp in D.components:
        for arc in comp:
            i, slot = ent[arc]
            if i in seen:
                continue
            seen.add(i)
            if slot == 0:
                return i
    return None


def conway_from_alexander(delta: LaurentPolynomial) -> LaurentPolynomial:
    """Symmetric, normalised Alexander polynomial -> Conway polynomial."""
    rest = delta
    out = {}
    step = LaurentPolynomial({1: 1, 0: -2, -1: 1})
    while rest:
        m = rest.max_degree
        a = rest[m]
        out[2 * m] = a
        rest = rest - a * step ** m
    return LaurentPolynomial(out, "z")


def alexander(D: PlanarDiagram) -> LaurentPolynomial:
    """Alexander polynomial from the Fox matrix of the over-arc presentation.

    Normalised to be symmetric with Delta(1) = 1.  Entries are evaluated at
    integer points and the minor's determinant is interpolated exactly.
    """
    if not D.is_knot:
        raise NotAKnot("Alexander polynomial computed for knots only")
    if D.c == 0:
        return LaurentPolynomial({0: 1})
    rows = _fox_rows(D)
    n = D.c
    pts = list(range(2, 2 + n + 1))
    vals = []
    for t in pts:
        m = [[a * t + b for a, b in row[1:]] for row in rows[1:]]
        vals.append(bareiss_det(m))
    coeffs = _interpolate(pts, vals)
    poly = LaurentPolynomial(dict(enumerate(coeffs)))
    lo, hi = poly.min_degree, poly.max_degree
    poly = poly.shift(-(lo + hi) // 2)
    if poly.evaluate(1) < 0:
        poly = -poly
    return poly


def _fox_rows(D: PlanarDiagram):
    """Row per crossing, entries (a, b) meaning a*t + b, columns = over-arcs."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b, c, d in D.crossings:
        parent[find(b)] = find(d)
    labels = sorted({v for x in D.crossings for v in x})
    roots = sorted({find(v) for v in labels})
    col = {r: k for k, r in enumerate(roots)}
    rows = []
    for (a, b, c, d), s in zip(D.crossings, D.signs):
        row = [(0, 0)] * len(roots)

        def add(lab, e):
            k = col[find(lab)]
            x, y = row[k]
            row[k] = (x + e[0], y + e[1])

        add(b, (-1, 1))  # 1 - t on the over-arc
        if s > 0:
            add(a, (1, 0))
            add(c, (0, -1))
        else:
            add(a, (0, -1))
            add(c, (1, 0))
        rows.append(row)
    return rows


def _interpolate(xs, ys) -> list[int]:
    """Coefficients (low to high) of the polynomial through integer points."""
    n = len(xs)
    coef = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coef[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coef):
        raise ArithmeticError("interpolated determinant is not integral")
    return [int(c) for c in coef]


# --------------------------------------------------------- determinant, sigma


def goeritz(D: PlanarDiagram, color: int = 0, fd=None) -> list[list[int]]:
    """Reduced signed Tait-graph Laplacian (a Goeritz matrix)."""
    T = tait_graph(D, color, fd)
    L = T.laplacian(signed=True)
    return [row[1:] for row in L[1:]]


def det_from_jones(D: PlanarDiagram, **kw) -> int:
    """|V(-1)|, evaluating s = t^(1/2) at i."""
    V = jones_half(D, **kw)
    re = im = 0
    for e, c in V:
        r = e % 4
        if r == 0:
            re += c
        elif r == 1:
            im += c
        elif r == 2:
            re -= c
        else:
            im -= c
    if im and re:
        raise ArithmeticError("V(-1) is not real or purely imaginary")
    return abs(re) + abs(im)


def det_from_goeritz(D: PlanarDiagram) -> int:
    if D.c == 0:
        return 1 if D.n_components == 1 else 0
    return abs(bareiss_det(goeritz(D)))


def det_from_trees(D: PlanarDiagram) -> int:
    if D.c == 0:
        return 1
    return tait_graph(D, 0).spanning_tree_count()


def determinant(D: PlanarDiagram, *, use_jones: bool | None = None) -> int:
    """Determinant, cross-checked by every applicable method."""
    values = {"goeritz": det_from_goeritz(D)}
    if use_jones is None:
        use_jones = D.c <= MAX_JONES_CROSSINGS
    if use_jones:
        values["jones"] = det_from_jones(D)
    if is_alternating(D) and is_reduced(D):
        values["trees"] = det_from_trees(D)
    if len(set(values.values())) != 1:
        raise MethodDisagreement(f"determinant methods disagree: {values}")
    return values["goeritz"]


def signature(D: PlanarDiagram, color: int = 0) -> int:
    """Knot signature with positive knots having positive signature.

    Gordon-Litherland: signature of the Goeritz form of a checkerboard
    surface plus a correction summed over crossings whose checkerboard
    sign disagrees with their crossing sign.
    """
    if D.c == 0:
        return 0
    T = tait_graph(D, color)
    G = [row[1:] for row in T.laplacian(signed=True)[1:]]
    # crossings whose Tait sign disagrees with the crossing sign
    mu = sum(D.signs[i] for _, _, i, s in T.edges if s == -D.signs[i])
    return matrix_signature(G) + mu


# ------------------------------------------------------------------ bundle


@dataclass(frozen=True)
class InvariantBundle:
    c: int
    a2: int
    a4: int
    four_v3: int
    det: int
    sigma: int
    genus: int
    method: str = "polynomial"

    def to_json(self) -> dict:
        return asdict(self)


GAUSS_CHECK_CROSSINGS = 40


def invariant_bundle(D: PlanarDiagram, *, max_crossings: int = MAX_JONES_CROSSINGS,
                     cross_check: bool = True, backend: str | None = None) -> InvariantBundle:
    """All scalar invariants used by the certifier.

    Small diagrams go through the Jones and Conway polynomials, with the
    Gauss-diagram formulas as a cross-check; larger ones use the Gauss
    formulas directly.  det and sigma always come from the Tait graphs.
    """
    from .gauss import a2n_gauss, gauss_of, v3_gauss

    if not D.is_knot:
        raise NotAKnot("invariant bundle is defined for knots")
    det = determinant(D, use_jones=D.c <= max_crossings)
    sigma = signature(D)
    g = int(seifert_data(D).genus)
    if D.c <= max_crossings:
        nabla = conway(D, max_crossings)
        a2, a4 = nabla[2], nabla[4]
        four_v3 = int(4 * v3_from_jones(jones(D, max_crossings=max_crossings, backend=backend)))
        if cross_check and D.c <= GAUSS_CHECK_CROSSINGS:
            G = gauss_of(D)
            got = (a2n_gauss(G, 1, backend=backend), a2n_gauss(G, 2, backend=backend), v3_gauss(G, backend))
            if got != (a2, a4, four_v3):
                raise MethodDisagreement(f"Gauss formulas {got} vs polynomials {(a2, a4, four_v3)}")
        method = "polynomial"
    else:
        G = gauss_of(D)
        a2 = a2n_gauss(G, 1, backend=backend)
        a4 = a2n_gauss(G, 2, backend=backend)
        four_v3 = v3_gauss(G, backend)
        method = "gauss"
    return InvariantBundle(D.c, a2, a4, four_v3, det, sigma, g, method)
