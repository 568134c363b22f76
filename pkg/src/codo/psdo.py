"""Truncated pseudo-differential calculus.

A PseudoDiffOp stores coefficients for degrees in a finite window and an
explicit `valid` floor: every stored degree >= valid is exact, anything
below is unknown.  `valid=None` means the tail is exactly zero (a plain
differential operator).  Products report the floor that survives the
standard expansion d^k (a .) = sum_s C(k, s) a^(s) d^(k-s), which for
negative k never terminates and must be cut somewhere.

`psdo_root` computes the k-th root of a monic operator by matching
coefficients from the top degree down, and `schur_expand` rewrites a
second operator in powers of that root; for a commuting pair the
expansion coefficients are constants, which is the classical mechanism
behind commutativity of the whole centraliser.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .diffop import DiffOp
from .errors import NonMonic, OrderNotDivisible, TowerMismatch, TruncationError
from .ring import RingElement, Tower

__all__ = ["PseudoDiffOp", "psdo_root", "psdo_inverse", "schur_expand", "schur_test"]


def _gbinom(k: int, s: int) -> Fraction:
    """Generalised binomial k(k-1)...(k-s+1)/s!; valid for negative k."""
    num = 1
    for i in range(s):
        num *= k - i
    den = 1
    for i in range(2, s + 1):
        den *= i
    return Fraction(num, den)


class PseudoDiffOp:
    """Formal Laurent sum c_i d^i with an explicit exactness floor."""

    __slots__ = ("tower", "coeffs", "valid")

    def __init__(self, tower: Tower, coeffs: Dict[int, RingElement], valid: Optional[int]):
        cs = {i: c for i, c in coeffs.items() if not c.is_zero()}
        if valid is not None:
            cs = {i: c for i, c in cs.items() if i >= valid}
        self.tower = tower
        self.coeffs = cs
        self.valid = valid

    @classmethod
    def from_diffop(cls, op: DiffOp) -> "PseudoDiffOp":
        return cls(op.tower, {i: c for i, c in enumerate(op.coeffs)}, None)

    def to_diffop(self) -> DiffOp:
        if any(i < 0 for i in self.coeffs):
            raise TruncationError("has negative-degree terms")
        n = max(self.coeffs, default=-1)
        return DiffOp(self.tower, [self.coeffs.get(i, self.tower.zero) for i in range(n + 1)])

    @property
    def top(self) -> int:
        return max(self.coeffs, default=(self.valid if self.valid is not None else 0))

    def coeff(self, i: int) -> RingElement:
        if self.valid is not None and i < self.valid:
            raise TruncationError(f"degree {i} is below the guaranteed depth {self.valid}")
        return self.coeffs.get(i, self.tower.zero)

    def __eq__(self, other):
        if not isinstance(other, PseudoDiffOp):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, self.tower.zero) == other.coeffs.get(k, self.tower.zero) for k in keys)

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(f"{i}: {c}" for i, c in sorted(self.coeffs.items(), reverse=True))
        return f"<psdo {{{terms}}} valid={self.valid}>"

    # -- arithmetic -------------------------------------------------------------

    def _merge_valid(self, other: "PseudoDiffOp") -> Optional[int]:
        if self.valid is None:
            return other.valid
        if other.valid is None:
            return self.valid
        return max(self.valid, other.valid)

    def __add__(self, other):
        if not isinstance(other, PseudoDiffOp):
            return NotImplemented
        if not self.tower.compatible(other.tower):
            raise TowerMismatch("pseudo-differential operators over different towers")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, self.tower.zero) + c
        return PseudoDiffOp(self.tower, out, self._merge_valid(other))

    def __neg__(self):
        return PseudoDiffOp(self.tower, {i: -c for i, c in self.coeffs.items()}, self.valid)

    def __sub__(self, other):
        if not isinstance(other, PseudoDiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, value) -> "PseudoDiffOp":
        v = self.tower.el(value)
        return PseudoDiffOp(self.tower, {i: c * v for i, c in self.coeffs.items()}, self.valid)

    def mul(self, other: "PseudoDiffOp", floor: Optional[int] = None) -> "PseudoDiffOp":
        """Product truncated at `floor`; the result records its own exact floor."""
        if not self.tower.compatible(other.tower):
            raise TowerMismatch("pseudo-differential operators over different towers")
        t = self.tower
        if not self.coeffs or not other.coeffs:
            return PseudoDiffOp(t, {}, self._merge_valid(other))
        top_a = max(self.coeffs)
        top_b = max(other.coeffs)
        finite_tail = (
            self.valid is None
            and other.valid is None
            and min(self.coeffs) >= 0
            and min(other.coeffs) >= 0
        )
        if floor is None:
            if not finite_tail:
                raise ValueError("floor required when a factor has an infinite tail")
            floor_eff = 0
        else:
            floor_eff = floor
        limits = []
        if self.valid is not None:
            limits.append(self.valid + top_b)
        if other.valid is not None:
            limits.append(other.valid + top_a)
        if not finite_tail:
            limits.append(floor_eff)
        valid = max(limits) if limits else None

        out: Dict[int, RingElement] = {}
        for i, ai in sorted(self.coeffs.items(), reverse=True):
            for j, bj in sorted(other.coeffs.items(), reverse=True):
                if i >= 0:
                    smax = i
                else:
                    smax = i + j - floor_eff
                    if smax < 0:
                        continue
                d = bj
                for s in range(smax + 1):
                    if s:
                        d = d.derive()
                    deg = i + j - s
                    if not finite_tail and deg < floor_eff:
                        break
                    if d.is_zero():
                        if i >= 0:
                            continue
                        break
                    g = _gbinom(i, s)
                    term = d * ai if g == 1 else d * ai * g
                    out[deg] = out.get(deg, t.zero) + term
        return PseudoDiffOp(t, out, valid)

    def pow(self, k: int, floor: Optional[int] = None) -> "PseudoDiffOp":
        if k < 0:
            raise ValueError("use psdo_inverse for negative powers")
        out = PseudoDiffOp(self.tower, {0: self.tower.one}, None)
        for _ in range(k):
            out = out.mul(self, floor=floor)
        return out


def psdo_root(op: DiffOp, k: int, depth: int) -> PseudoDiffOp:
    """Monic k-th root K with K^k = op + O(d^(-depth-1)).

    Coefficients are matched from the top degree downwards; the result is
    exact for all degrees >= -depth.
    """
    n = op.order
    if n < 0 or n % k:
        raise OrderNotDivisible(f"order {n} not divisible by {k}")
    if not op.is_monic():
        raise NonMonic("k-th roots are defined for monic operators here")
    t = op.tower
    q = n // k
    target = PseudoDiffOp.from_diffop(op)
    root = PseudoDiffOp(t, {q: t.one}, None)
    steps = q + depth
    inv_k = Fraction(1, k)
    for j in range(1, steps + 1):
        # the unknown corrections of `root` live strictly below q - j + 1, so
        # the power is exact at degree n - j up to the single new correction;
        # treat the partial root as exact and do the error accounting here
        power = PseudoDiffOp(t, {0: t.one}, None)
        for _ in range(k):
            power = PseudoDiffOp(t, power.mul(root, floor=n - j).coeffs, None)
        want = target.coeffs.get(n - j, t.zero)
        have = power.coeffs.get(n - j, t.zero)
        delta = (want - have) * inv_k
        if not delta.is_zero():
            root = root + PseudoDiffOp(t, {q - j: delta}, None)
    return PseudoDiffOp(t, root.coeffs, -depth)


def psdo_inverse(op: PseudoDiffOp, depth: int) -> PseudoDiffOp:
    """Two-sided inverse of an operator with invertible leading coefficient.

    Exact for degrees >= -q - depth where q is the top degree of `op`.
    """
    t = op.tower
    if not op.coeffs:
        raise ZeroDivisionError("cannot invert the zero operator")
    q = max(op.coeffs)
    lead = op.coeffs[q]
    inv: Dict[int, RingElement] = {}
    derivs: Dict[Tuple[int, int], RingElement] = {}

    def dcoeff(j: int, s: int) -> RingElement:
        if s == 0:
            return inv[j]
        key = (j, s)
        if key not in derivs:
            derivs[key] = dcoeff(j, s - 1).derive()
        return derivs[key]

    for target in range(0, -(depth + 1), -1):
        # coefficient of d^target in op*inv: contributions i + j - s = target
        acc = t.zero
        for i, ci in op.coeffs.items():
            for j in inv:
                s = i + j - target
                if s < 0 or (i >= 0 and s > i):
                    continue
                d = dcoeff(j, s)
                if d.is_zero():
                    continue
                g = _gbinom(i, s)
                acc = acc + ci * d * g
        want = t.one if target == 0 else t.zero
        inv[target - q] = (want - acc) / lead
    return PseudoDiffOp(t, inv, -q - depth)


def schur_expand(high: DiffOp, root: PseudoDiffOp, depth: int) -> Dict[int, RingElement]:
    """Expansion coefficients of `high` in powers of `root`, down to K^-depth."""
    t = high.tower
    q = max(root.coeffs)
    if q != 1:
        raise ValueError("expected an order-one root")
    m = high.order
    # a deep working floor keeps every power exact beyond -depth
    floor = -(depth + m + 4)
    if root.valid is not None and root.valid > floor:
        raise TruncationError("root not computed deep enough for this expansion")
    inv = psdo_inverse(root, depth + m + 4)
    powers: Dict[int, PseudoDiffOp] = {0: PseudoDiffOp(t, {0: t.one}, None)}
    for i in range(1, m + 1):
        powers[i] = powers[i - 1].mul(root, floor=floor)
    for i in range(-1, -depth - 1, -1):
        powers[i] = powers[i + 1].mul(inv, floor=floor)
    rest = PseudoDiffOp.from_diffop(high)
    out: Dict[int, RingElement] = {}
    for i in range(m, -depth - 1, -1):
        c = rest.coeff(i)
        out[i] = c
        if not c.is_zero():
            rest = rest - powers[i].scale(c)
    return out


def schur_test(low: DiffOp, high: DiffOp, depth: int = 6) -> bool:
    """True iff the expansion of `high` in powers of low^(1/order) has
    constant coefficients down to the requested depth."""
    root = psdo_root(low, low.order, depth + high.order + 4)
    coeffs = schur_expand(high, root, depth)
    return all(c.derive().is_zero() for c in coeffs.values())
