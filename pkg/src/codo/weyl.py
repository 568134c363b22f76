"""First Weyl algebra in normal-ordered form.

Elements are finite maps (i, j) -> coefficient representing
sum a_ij x^i d^j with every x to the left of every d; coefficients are
exact rationals in the tower parameters.  Products are normal-ordered via

    d^b x^c = sum_s C(b,s) C(c,s) s! x^(c-s) d^(b-s),

automorphisms act by substituting images for the two generators, and the
commuting pair X = (x^3 + d^2 + h)^2 + 2x, Y = (x^3 + d^2 + h)^3
+ (3/2)(x (x^3 + d^2 + h) + (x^3 + d^2 + h) x) with Y^2 = X^3 - h is
provided as a constructor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Optional, Sequence, Tuple

from .diffop import DiffOp
from .errors import InvalidAutomorphism, TowerMismatch
from .ring import RingElement, Tower, TowerSpec, format_element, tower_build

__all__ = [
    "WeylElement",
    "WeylAut",
    "weyl_mul",
    "weyl_x",
    "weyl_d",
    "weyl_tower",
    "dixmier_pair",
    "apply_aut",
    "weyl_to_diffop",
    "diffop_to_weyl",
]


def weyl_tower(*parameters: str) -> Tower:
    """Coefficient tower for Weyl computations: parameters only, no x use."""
    return tower_build(TowerSpec(parameters=tuple(parameters)))


class WeylElement:
    """Normal-ordered element sum a_ij x^i d^j of the first Weyl algebra."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower: Tower, terms: Dict[Tuple[int, int], RingElement]):
        self.tower = tower
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def from_scalar(cls, tower: Tower, value) -> "WeylElement":
        return cls(tower, {(0, 0): tower.el(value)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        """Order as a differential operator: the top power of d."""
        return max((j for _, j in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def leading_coeff(self) -> Dict[int, RingElement]:
        """x-profile of the top d-power: {i: a_i,order}."""
        n = self.order
        return {i: c for (i, j), c in self.terms.items() if j == n}

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = self.tower.zero
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "<weyl 0>"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[1], k[0]), reverse=True):
            c = format_element(self.terms[(i, j)])
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("d" if j == 1 else f"d^{j}")
            body = "*".join(mono)
            parts.append(f"({c})*{body}" if body else f"({c})")
        return "<weyl " + " + ".join(parts) + ">"

    # -- ring operations ---------------------------------------------------------

    def _check(self, other: "WeylElement"):
        if not self.tower.compatible(other.tower):
            raise TowerMismatch("Weyl elements over different towers")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            other = WeylElement.from_scalar(self.tower, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self.tower.zero) + v
        return WeylElement(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.tower, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            other = WeylElement.from_scalar(self.tower, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "WeylElement":
        v = self.tower.el(value)
        return WeylElement(self.tower, {k: c * v for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            return self.scale(other)
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RingElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = WeylElement.from_scalar(self.tower, 1)
        for _ in range(k):
            out = weyl_mul(out, self)
        return out


def weyl_x(tower: Tower, power: int = 1) -> WeylElement:
    return WeylElement(tower, {(power, 0): tower.one})


def weyl_d(tower: Tower, power: int = 1) -> WeylElement:
    return WeylElement(tower, {(0, power): tower.one})


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Normal-ordered product; agrees with DiffOp composition."""
    a._check(b)
    t = a.tower
    out: Dict[Tuple[int, int], RingElement] = {}
    for (i1, j1), c1 in a.terms.items():
        for (i2, j2), c2 in b.terms.items():
            c = c1 * c2
            for s in range(min(j1, i2) + 1):
                f = comb(j1, s) * comb(i2, s) * factorial(s)
                key = (i1 + i2 - s, j1 + j2 - s)
                term = c if f == 1 else c * f
                out[key] = out.get(key, t.zero) + term
    return WeylElement(t, out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_mul(a, b) - weyl_mul(b, a)


def dixmier_pair(tower: Tower, h: str = "h") -> Tuple[WeylElement, WeylElement]:
    """The commuting pair X, Y with [X, Y] = 0 and Y^2 - X^3 + h = 0.

    Built from p = x and q = -d (so [p, q] = 1): X = (p^3 + q^2 + h)^2 + 2p,
    Y = (p^3 + q^2 + h)^3 + (3/2)(p (p^3+q^2+h) + (p^3+q^2+h) p).
    """
    p = weyl_x(tower)
    hel = tower.el(h) if isinstance(h, str) else tower.el(h)
    d = (
        WeylElement(tower, {(3, 0): tower.one, (0, 2): tower.one})
        + WeylElement.from_scalar(tower, hel)
    )
    x_el = (d * d) + p.scale(2)
    y_el = (d * d * d) + ((p * d) + (d * p)).scale(Fraction(3, 2))
    return x_el, y_el


@dataclass(frozen=True)
class WeylAut:
    """Automorphism given by the images of the two generators.

    The certificate records how it was built: ("linear", a, b, c, d) with
    ad - bc = 1, ("shift_x", coeffs of P1), ("shift_d", coeffs of P2) or
    ("composite", parts).  Construction verifies [image(d), image(x)] = 1.
    """

    img_x: WeylElement
    img_d: WeylElement
    certificate: tuple

    def __post_init__(self):
        one = WeylElement.from_scalar(self.img_x.tower, 1)
        if commutator(self.img_d, self.img_x) != one:
            raise InvalidAutomorphism(
                f"images do not satisfy [d', x'] = 1 (certificate {self.certificate})"
            )

    @classmethod
    def linear(cls, tower: Tower, a, b, c, d) -> "WeylAut":
        """x -> a x + b d, d -> c x + d d with ad - bc = 1."""
        ea, eb, ec, ed = (tower.el(v) for v in (a, b, c, d))
        if ea * ed - eb * ec != tower.one:
            raise InvalidAutomorphism("determinant of the linear certificate is not 1")
        ix = WeylElement(tower, {(1, 0): ea, (0, 1): eb})
        idd = WeylElement(tower, {(1, 0): ec, (0, 1): ed})
        return cls(ix, idd, ("linear", str(ea), str(eb), str(ec), str(ed)))

    @classmethod
    def shift_x(cls, tower: Tower, p1_coeffs: Sequence) -> "WeylAut":
        """x -> x + P1(d), d -> d."""
        ix = weyl_x(tower)
        for k, c in enumerate(p1_coeffs):
            ix = ix + WeylElement(tower, {(0, k): tower.el(c)})
        return cls(ix, weyl_d(tower), ("shift_x", tuple(str(tower.el(c)) for c in p1_coeffs)))

    @classmethod
    def shift_d(cls, tower: Tower, p2_coeffs: Sequence) -> "WeylAut":
        """x -> x, d -> d + P2(x)."""
        idd = weyl_d(tower)
        for k, c in enumerate(p2_coeffs):
            idd = idd + WeylElement(tower, {(k, 0): tower.el(c)})
        return cls(weyl_x(tower), idd, ("shift_d", tuple(str(tower.el(c)) for c in p2_coeffs)))

    @classmethod
    def identity(cls, tower: Tower) -> "WeylAut":
        return cls.linear(tower, 1, 0, 0, 1)

    def then(self, other: "WeylAut") -> "WeylAut":
        """Composite (other . self): apply self first, then other."""
        return WeylAut(
            apply_aut(other, self.img_x),
            apply_aut(other, self.img_d),
            ("composite", self.certificate, other.certificate),
        )


def apply_aut(aut: WeylAut, a: WeylElement) -> WeylElement:
    """Ring-homomorphic image: substitute the generator images and reorder."""
    t = a.tower
    out = WeylElement(t, {})
    xpow: Dict[int, WeylElement] = {0: WeylElement.from_scalar(t, 1)}
    dpow: Dict[int, WeylElement] = {0: WeylElement.from_scalar(t, 1)}

    def power(memo, base, k):
        if k not in memo:
            memo[k] = weyl_mul(power(memo, base, k - 1), base)
        return memo[k]

    for (i, j), c in sorted(a.terms.items()):
        term = weyl_mul(power(xpow, aut.img_x, i), power(dpow, aut.img_d, j))
        out = out + term.scale(c)
    return out


def weyl_to_diffop(a: WeylElement, tower: Tower) -> DiffOp:
    """Realise x^i d^j as an operator over a tower containing x."""
    xg = tower.x
    n = a.order
    coeffs = [tower.zero] * (n + 1)
    for (i, j), c in a.terms.items():
        coeffs[j] = coeffs[j] + tower.embed(c) * xg ** i
    return DiffOp(tower, coeffs)


def diffop_to_weyl(op: DiffOp, tower: Tower) -> WeylElement:
    """Inverse embedding for operators with polynomial coefficients."""
    terms: Dict[Tuple[int, int], RingElement] = {}
    xname = op.tower.x_name
    for j, c in enumerate(op.coeffs):
        if c.is_zero():
            continue
        for (exps, coeff_el) in c.coeffs_by((xname,)).items():
            terms[(exps[0], j)] = tower.project(coeff_el)
    return WeylElement(tower, terms)
