"""Exact rational intervals with outward rounding, and the constant gamma.

gamma is the reciprocal of the positive root of x^5 + 2x^4 + x^3 - 1.  All
quantities involving gamma are carried as closed intervals whose endpoints
are Fractions; after each operation the endpoints are pushed outward onto a
dyadic grid so denominators stay bounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Context
from fractions import Fraction
from functools import lru_cache

DEFAULT_EPS = Fraction(1, 10**30)
MAX_EPS = Fraction(1, 10**240)


def _floor_grid(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_grid(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    bits: int = field(default=200, compare=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x, bits: int = 200) -> "Interval":
        x = Fraction(x)
        return cls(x, x, bits)

    def _wrap(self, lo, hi, other=None) -> "Interval":
        bits = self.bits if other is None else max(self.bits, other.bits)
        if lo == hi and lo.denominator.bit_length() <= bits + 1:
            return Interval(lo, hi, bits)
        return Interval(_floor_grid(lo, bits), _ceil_grid(hi, bits), bits)

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.exact(other, self.bits)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(self.lo + o.lo, self.hi + o.hi, o)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._wrap(min(prods), max(prods), o)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return self._wrap(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int):
            raise TypeError("only integer powers; use gamma_power for roots")
        if k < 0:
            return (self ** (-k)).reciprocal()
        if self.lo < 0:
            if k % 2 == 0 and self.hi > 0:
                m = max(-self.lo, self.hi)
                return self._wrap(Fraction(0), m ** k)
            lo, hi = sorted((self.lo ** k, self.hi ** k))
            return self._wrap(lo, hi)
        result = Interval.exact(1, self.bits)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        scale = 1 << (2 * self.bits)
        lo_n = math.floor(self.lo * scale)
        hi_n = math.ceil(self.hi * scale)
        lo = Fraction(math.isqrt(lo_n), 1 << self.bits)
        r = math.isqrt(hi_n)
        hi = Fraction(r if r * r == hi_n else r + 1, 1 << self.bits)
        return Interval(lo, hi, self.bits)

    # three-valued comparisons: True, False, or None when the intervals overlap
    def lt(self, other):
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def le(self, other):
        o = self._coerce(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        return None

    def to_json(self, digits: int = 30) -> dict:
        if self.is_exact:
            return {"exact": str(self.lo)}
        return {"lo": decimal_str(self.lo, digits, down=True), "hi": decimal_str(self.hi, digits, down=False)}

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def decimal_str(x: Fraction, digits: int = 30, *, down: bool) -> str:
    """Decimal string of x rounded toward -inf (down) or +inf, so bounds stay valid."""
    ctx = Context(prec=digits, rounding=ROUND_FLOOR if down else ROUND_CEILING)
    return str(ctx.divide(ctx.create_decimal(x.numerator), ctx.create_decimal(x.denominator)))


def _p(x: Fraction) -> Fraction:
    return x**5 + 2 * x**4 + x**3 - 1


@dataclass(frozen=True)
class GammaInterval:
    lo: Fraction
    hi: Fraction
    eps: Fraction

    def certificate(self) -> tuple[Fraction, Fraction]:
        """p at 1/hi and 1/lo: negative, then positive."""
        return _p(1 / self.hi), _p(1 / self.lo)


@lru_cache(maxsize=None)
def gamma_interval(precision=DEFAULT_EPS) -> GammaInterval:
    """Rational bracket of gamma of width at most ``precision``, by bisection."""
    eps = Fraction(precision)
    if eps <= 0:
        raise ValueError("precision must be positive")
    # the root of p lies in (1/2, 1): p(1/2) < 0 < p(1)
    a, b = Fraction(1, 2), Fraction(1)
    while 1 / a - 1 / b > eps:
        m = (a + b) / 2
        v = _p(m)
        if v == 0:  # p has no rational roots, kept for completeness
            a = b = m
            break
        if v < 0:
            a = m
        else:
            b = m
    return GammaInterval(1 / b, 1 / a, eps)


def _bits_for(eps: Fraction) -> int:
    return max(64, math.ceil(math.log2(eps.denominator / eps.numerator)) + 64)


class GammaContext:
    """Powers of gamma at one precision, shared read-only once built."""

    def __init__(self, eps=DEFAULT_EPS):
        self.eps = Fraction(eps)
        self.gamma_bracket = gamma_interval(self.eps)
        self.bits = _bits_for(self.eps)
        self.gamma = Interval(self.gamma_bracket.lo, self.gamma_bracket.hi, self.bits)
        self._quarter = self.gamma.sqrt().sqrt()
        self._cache: dict[int, Interval] = {}

    def refined(self) -> "GammaContext":
        """Context with the precision squared (twice as many digits)."""
        return GammaContext(self.eps * self.eps)

    def power(self, e) -> Interval:
        """gamma ** e for e a multiple of 1/4."""
        q = Fraction(e) * 4
        if q.denominator != 1:
            raise ValueError(f"exponent {e} is not a multiple of 1/4")
        k = int(q)
        if k not in self._cache:
            if k % 4 == 0:
                self._cache[k] = self.gamma ** (k // 4)
            elif k % 2 == 0:
                self._cache[k] = self.gamma.sqrt() ** (k // 2)
            else:
                self._cache[k] = self._quarter ** k
        return self._cache[k]

    def interval(self, x) -> Interval:
        return Interval.exact(x, self.bits)


def precision_ladder(start=DEFAULT_EPS, cap=MAX_EPS):
    """eps, eps^2, eps^4, ... down to the cap (digits double each step)."""
    eps = Fraction(start)
    while True:
        yield eps
        if eps <= cap:
            return
        eps = max(eps * eps, Fraction(cap))
