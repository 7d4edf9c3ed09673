"""Exact Laurent polynomials in one variable with integer coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable ``{exponent: coefficient}`` with zero terms dropped."""

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "t"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coef: int = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({exp: coef}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t") -> "LaurentPolynomial":
        return cls({0: c}, var)

    # -- container protocol
    def terms(self) -> list[tuple[int, int]]:
        return list(self._terms.items())

    def __getitem__(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_degree(self) -> int | None:
        return next(iter(self._terms), None)

    @property
    def max_degree(self) -> int | None:
        return next(reversed(self._terms), None) if self._terms else None

    # -- arithmetic
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(list(self._terms.items()) + list(other._terms.items()), self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({-e * -n: c ** (-n)}, self.var)
        out = LaurentPolynomial({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other}, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    # -- transformations
    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.var)

    def invert_variable(self) -> "LaurentPolynomial":
        """p(t) -> p(1/t)."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()}, self.var)

    def scale_exponents(self, num: int, den: int = 1) -> "LaurentPolynomial":
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(e * num, den)
            if r:
                raise ValueError(f"exponent {e}*{num}/{den} is not an integer")
            out[q] = c
        return LaurentPolynomial(out, self.var)

    def with_var(self, var: str) -> "LaurentPolynomial":
        return LaurentPolynomial(self._terms, var)

    def evaluate(self, x):
        """Exact value at a rational (or complex/any ring element) point."""
        if isinstance(x, int):
            x = Fraction(x)
        total = 0
        for e, c in self._terms.items():
            total += c * x**e
        return total

    def derivative_at_one(self, order: int) -> int:
        """k-th derivative at t = 1, via falling factorials of the exponents."""
        total = 0
        for e, c in self._terms.items():
            f = 1
            for j in range(order):
                f *= e - j
            total += c * f
        return total

    # -- text / json
    def to_json(self) -> dict:
        return {"var": self.var, "terms": [[e, c] for e, c in self._terms.items()]}

    @classmethod
    def from_json(cls, obj) -> "LaurentPolynomial":
        return cls([tuple(t) for t in obj["terms"]], obj.get("var", "t"))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                mono = str(abs(c))
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            parts.append(("-" if c < 0 else "+") + mono)
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s
