"""Truncated Laurent series with tower-element coefficients.

Used for two local expansions: at a finite point z = gamma + eps (simple
poles of the eigenfunction-equation coefficients) and at infinity in the
local parameter 1/z.  A series knows its offset (lowest stored exponent)
and how many exponents beyond it are trusted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

from .errors import SeriesExtractionFailure
from .ring import RingElement, Tower

__all__ = ["LaurentSeries"]


class LaurentSeries:
    """coeffs[i] is the coefficient of eps^(offset + i); order = exponents kept."""

    __slots__ = ("tower", "offset", "coeffs")

    def __init__(self, tower: Tower, offset: int, coeffs: Sequence[RingElement]):
        cs = list(coeffs)
        # normalise the offset so the first stored coefficient is nonzero
        while cs and cs[0].is_zero():
            cs.pop(0)
            offset += 1
        self.tower = tower
        self.offset = offset
        self.coeffs = cs

    @classmethod
    def zero(cls, tower: Tower, upto: int) -> "LaurentSeries":
        # represent 0 + O(eps^upto)
        s = cls.__new__(cls)
        s.tower = tower
        s.offset = upto
        s.coeffs = []
        return s

    @classmethod
    def const(cls, value: RingElement, order: int) -> "LaurentSeries":
        t = value.tower
        return cls(t, 0, [value] + [t.zero] * (order - 1))

    @classmethod
    def var(cls, tower: Tower, order: int) -> "LaurentSeries":
        """The series eps + O(eps^order)."""
        return cls(tower, 1, [tower.one] + [tower.zero] * (order - 2))

    @property
    def order(self) -> int:
        """First exponent that is no longer stored."""
        return self.offset + len(self.coeffs)

    def coeff(self, k: int) -> RingElement:
        if k >= self.order:
            raise SeriesExtractionFailure(f"exponent {k} beyond truncation {self.order}")
        if k < self.offset:
            return self.tower.zero
        return self.coeffs[k - self.offset]

    def valuation(self) -> int:
        if not self.coeffs:
            raise SeriesExtractionFailure("series is zero to the stored order")
        return self.offset

    def truncate(self, upto: int) -> "LaurentSeries":
        if upto >= self.order:
            return self
        return LaurentSeries(self.tower, self.offset, self.coeffs[: upto - self.offset])

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        t = self.tower
        upto = min(self.order, other.order)
        start = min(self.offset, other.offset,)
        if not self.coeffs:
            return other.truncate(self.order)
        if not other.coeffs:
            return self.truncate(other.order)
        cs = [self.coeff(k) + other.coeff(k) for k in range(start, upto)]
        return LaurentSeries(t, start, cs)

    def __neg__(self) -> "LaurentSeries":
        s = LaurentSeries.__new__(LaurentSeries)
        s.tower = self.tower
        s.offset = self.offset
        s.coeffs = [-c for c in self.coeffs]
        return s

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        t = self.tower
        if not self.coeffs or not other.coeffs:
            upto = min(
                self.order + (other.offset if other.coeffs else other.order),
                other.order + (self.offset if self.coeffs else self.order),
            )
            return LaurentSeries.zero(t, upto)
        # (a_0 eps^p + ...)(b_0 eps^q + ...): trusted through the smaller reach
        upto = min(self.order + other.offset, other.order + self.offset)
        offset = self.offset + other.offset
        n = upto - offset
        out = [t.zero] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LaurentSeries(t, offset, out)

    def scale(self, value) -> "LaurentSeries":
        v = self.tower.el(value)
        s = LaurentSeries.__new__(LaurentSeries)
        s.tower = self.tower
        s.offset = self.offset
        s.coeffs = [c * v for c in self.coeffs]
        return s

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by eps^k."""
        s = LaurentSeries.__new__(LaurentSeries)
        s.tower = self.tower
        s.offset = self.offset + k
        s.coeffs = list(self.coeffs)
        return s

    def inverse(self) -> "LaurentSeries":
        """Inverse of a series with invertible lowest coefficient."""
        t = self.tower
        if not self.coeffs:
            raise SeriesExtractionFailure("cannot invert a zero series")
        lead = self.coeffs[0]
        n = len(self.coeffs)
        inv0 = t.one / lead
        out: List[RingElement] = [inv0]
        for k in range(1, n):
            acc = t.zero
            for i in range(1, k + 1):
                ci = self.coeffs[i] if i < n else t.zero
                if not ci.is_zero():
                    acc = acc + ci * out[k - i]
            out.append(-inv0 * acc)
        return LaurentSeries(t, -self.offset, out)

    def sqrt_unit(self) -> "LaurentSeries":
        """Square root of a series with constant term 1 and even offset 0."""
        t = self.tower
        if self.offset != 0 or not self.coeffs or self.coeffs[0] != t.one:
            raise SeriesExtractionFailure("sqrt needs a unit series starting at 1")
        n = len(self.coeffs)
        out: List[RingElement] = [t.one]
        half = Fraction(1, 2)
        for k in range(1, n):
            acc = self.coeffs[k]
            for i in range(1, k):
                acc = acc - out[i] * out[k - i]
            out.append(acc * half)
        return LaurentSeries(t, 0, out)

    def __repr__(self):
        body = " + ".join(
            f"({c})*e^{self.offset + i}" for i, c in enumerate(self.coeffs) if not c.is_zero()
        )
        return f"<series {body or '0'} + O(e^{self.order})>"


def poly_series(coeffs: Sequence[RingElement], arg: LaurentSeries) -> LaurentSeries:
    """Evaluate sum coeffs[i] * arg^i by Horner's rule.

    Meant for arguments with valuation >= 0 (like gamma + eps), where the
    truncation order of `arg` survives unchanged.
    """
    t = arg.tower
    n = arg.order
    out = LaurentSeries.const(t.embed(coeffs[-1]), n)
    for c in reversed(coeffs[:-1]):
        out = out * arg + LaurentSeries.const(t.embed(c), n)
    return out
