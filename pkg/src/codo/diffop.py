"""Ordinary differential operators over a coefficient tower.

A DiffOp stores the coefficient sequence c_0..c_n of sum_i c_i * d^i.
Composition is the Leibniz expansion d^i (b .) = sum_s C(i,s) b^(s) d^(i-s);
everything else (commutators, adjoints, polynomial evaluation, gauge action
on eigenfunctions) is built on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, List, Optional, Sequence

from .errors import NonCommutingPair, TowerMismatch
from .ring import RingElement, Tower

__all__ = [
    "DiffOp",
    "compose",
    "commutator",
    "formal_adjoint",
    "eval_poly",
    "gauge_apply",
    "PowerCache",
]


class DiffOp:
    """Finite-order operator sum_i c_i d^i; the zero operator has no coefficients."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs: Sequence[RingElement]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.tower = tower
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, tower: Tower) -> "DiffOp":
        return cls(tower, ())

    @classmethod
    def identity(cls, tower: Tower) -> "DiffOp":
        return cls(tower, (tower.one,))

    @classmethod
    def d(cls, tower: Tower, k: int = 1) -> "DiffOp":
        """The k-th power of the derivation symbol."""
        return cls(tower, tuple(tower.zero for _ in range(k)) + (tower.one,))

    @classmethod
    def from_scalar(cls, tower: Tower, value) -> "DiffOp":
        return cls(tower, (tower.el(value),))

    # -- structure -----------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RingElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.tower.zero

    @property
    def leading(self) -> RingElement:
        if not self.coeffs:
            return self.tower.zero
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.tower.one

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        from .parse import format_operator

        return f"<op {format_operator(self)}>"

    def map_tower(self, tower: Tower) -> "DiffOp":
        """Embed all coefficients into a larger tower."""
        return DiffOp(tower, [tower.embed(c) for c in self.coeffs])

    # -- linear arithmetic ------------------------------------------------------------

    def _check(self, other: "DiffOp"):
        if not self.tower.compatible(other.tower):
            raise TowerMismatch("operators over different towers")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            other = DiffOp.from_scalar(self.tower, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self.tower, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.tower, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            other = DiffOp.from_scalar(self.tower, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "DiffOp":
        v = self.tower.el(value)
        return DiffOp(self.tower, [c * v for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose(self, other)
        if isinstance(other, (int, Fraction, RingElement)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = DiffOp.identity(self.tower)
        for _ in range(k):
            out = compose(out, self)
        return out

    # -- action on functions -----------------------------------------------------------

    def apply(self, r: RingElement, shift: Optional[RingElement] = None) -> RingElement:
        """Apply to a tower element; with `shift` the derivation is d + shift."""
        vs = r
        out = self.tower.zero
        for i, c in enumerate(self.coeffs):
            if i:
                vs = vs.derive() + (shift * vs if shift is not None else 0)
            if not c.is_zero():
                out = out + c * vs
        return out


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Operator product a(b(.)) via the Leibniz rule."""
    a._check(b)
    t = a.tower
    if a.is_zero() or b.is_zero():
        return DiffOp.zero(t)
    n, m = a.order, b.order
    out = [t.zero] * (n + m + 1)
    # derivatives of b's coefficients up to the order of a
    derivs: List[List[RingElement]] = []
    for bj in b.coeffs:
        row = [bj]
        for _ in range(n):
            row.append(row[-1].derive())
        derivs.append(row)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        for j in range(m + 1):
            if b.coeffs[j].is_zero():
                continue
            for s in range(i + 1):
                bjs = derivs[j][s]
                if bjs.is_zero():
                    continue
                c = comb(i, s)
                term = ai * bjs
                if c != 1:
                    term = term * c
                out[i + j - s] = out[i + j - s] + term
    return DiffOp(t, out)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return compose(a, b) - compose(b, a)


def formal_adjoint(a: DiffOp) -> DiffOp:
    """sum_i (-d)^i . c_i; an involutive anti-homomorphism."""
    t = a.tower
    if a.is_zero():
        return a
    out = [t.zero] * (a.order + 1)
    for i, ci in enumerate(a.coeffs):
        if ci.is_zero():
            continue
        sign_i = -1 if i % 2 else 1
        d = ci
        for s in range(i + 1):
            if s:
                d = d.derive()
            if d.is_zero():
                continue
            term = d * (comb(i, s) * sign_i)
            out[i - s] = out[i - s] + term
    return DiffOp(t, out)


class PowerCache:
    """Memoized powers of a pair of commuting operators."""

    def __init__(self, a: DiffOp, b: DiffOp):
        self.a = a
        self.b = b
        self._pa = {0: DiffOp.identity(a.tower), 1: a}
        self._pb = {0: DiffOp.identity(b.tower), 1: b}

    def _pow(self, memo, op, k):
        if k not in memo:
            memo[k] = compose(self._pow(memo, op, k - 1), op)
        return memo[k]

    def a_pow(self, k: int) -> DiffOp:
        return self._pow(self._pa, self.a, k)

    def b_pow(self, k: int) -> DiffOp:
        return self._pow(self._pb, self.b, k)


def eval_poly(curve, a: DiffOp, b: DiffOp, cache: Optional[PowerCache] = None,
              check_commute: bool = True) -> DiffOp:
    """Substitute z -> a, w -> b into a bivariate curve polynomial.

    `curve` provides coeffs: {(z_degree, w_degree): coefficient element}.
    The pair must commute, otherwise the power ordering would matter.
    """
    if check_commute and not commutator(a, b).is_zero():
        raise NonCommutingPair("eval_poly needs a commuting pair")
    t = a.tower
    cache = cache or PowerCache(a, b)
    out = DiffOp.zero(t)
    for (i, j), c in sorted(curve.coeffs.items()):
        term = compose(cache.a_pow(i), cache.b_pow(j)) if j else cache.a_pow(i)
        out = out + term.scale(t.embed(c))
    return out


def gauge_apply(a: DiffOp, shift: RingElement, r: RingElement) -> RingElement:
    """Conjugated action e^(-s) A (e^s r) where derive(s) = shift.

    Works on the eigenfunction side: the exponential never materialises,
    only the twisted derivation d + shift does.
    """
    t = a.tower
    shift = t.el(shift)
    r = t.el(r)
    return a.apply(r, shift=shift)
