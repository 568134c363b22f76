"""Bivariate curve polynomials and monic odd-degree hyperelliptic data."""

from __future__ import annotations

from typing import Dict, Mapping, Sequence, Tuple

from .errors import DegreeMismatch
from .ring import RingElement, Tower, format_element

__all__ = ["CurvePoly", "HyperellipticCurve"]


class CurvePoly:
    """Polynomial R(z, w) with coefficients that are exact rationals in parameters.

    Coefficients are RingElements of some tower and must not involve x or any
    extension generator; keys are (z_degree, w_degree).
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs: Mapping[Tuple[int, int], RingElement]):
        self.tower = tower
        self.coeffs: Dict[Tuple[int, int], RingElement] = {
            k: v for k, v in coeffs.items() if not v.is_zero()
        }

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_z(self) -> int:
        return max((k[0] for k in self.coeffs), default=-1)

    def degree_w(self) -> int:
        return max((k[1] for k in self.coeffs), default=-1)

    def __eq__(self, other):
        if not isinstance(other, CurvePoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    __hash__ = None

    def scale(self, factor: RingElement) -> "CurvePoly":
        return CurvePoly(self.tower, {k: v * factor for k, v in self.coeffs.items()})

    def normalized(self) -> "CurvePoly":
        """Monic in w when the top w-coefficient is z-free, else monic in z."""
        if not self.coeffs:
            return self
        dw = self.degree_w()
        top_w = {k: v for k, v in self.coeffs.items() if k[1] == dw}
        if len(top_w) == 1 and next(iter(top_w))[0] == 0:
            lead = top_w[(0, dw)]
        else:
            dz = max(k[0] for k in top_w)
            lead = top_w[(dz, dw)]
        return self.scale(self.tower.one / lead)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[1], k[0]), reverse=True):
            c = self.coeffs[(i, j)]
            mono = []
            if i == 1:
                mono.append("z")
            elif i > 1:
                mono.append(f"z^{i}")
            if j == 1:
                mono.append("w")
            elif j > 1:
                mono.append(f"w^{j}")
            body = "*".join(mono)
            cs = format_element(c)
            if body and cs == "1":
                parts.append(body)
            elif body:
                parts.append(f"({cs})*{body}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)

    __repr__ = __str__


class HyperellipticCurve:
    """w^2 = F_g(z) with F_g monic of odd degree 2g+1; c holds c_0..c_2g."""

    __slots__ = ("genus", "c", "tower")

    def __init__(self, genus: int, c: Sequence[RingElement], tower: Tower):
        if len(c) != 2 * genus + 1:
            raise DegreeMismatch(
                f"genus {genus} needs {2 * genus + 1} lower coefficients, got {len(c)}"
            )
        self.genus = genus
        self.c = tuple(c)
        self.tower = tower

    def f_coeffs(self) -> Tuple[RingElement, ...]:
        """Coefficients of F_g from degree 0 up to 2g+1 (monic)."""
        return self.c + (self.tower.one,)

    def eval(self, z: RingElement) -> RingElement:
        out = z.tower.zero
        for c in reversed(self.f_coeffs()):
            out = out * z + z.tower.embed(c)
        return out

    def eval_derivative(self, z: RingElement) -> RingElement:
        cs = self.f_coeffs()
        out = z.tower.zero
        for i in range(len(cs) - 1, 0, -1):
            out = out * z + z.tower.embed(cs[i]) * i
        return out

    def to_curve_poly(self) -> CurvePoly:
        """The plane model w^2 - F_g(z) as a CurvePoly."""
        coeffs = {(0, 2): self.tower.one}
        for i, ci in enumerate(self.f_coeffs()):
            coeffs[(i, 0)] = coeffs.get((i, 0), self.tower.zero) - ci
        return CurvePoly(self.tower, coeffs)

    def __eq__(self, other):
        if not isinstance(other, HyperellipticCurve):
            return NotImplemented
        return self.genus == other.genus and all(a == b for a, b in zip(self.c, other.c))

    __hash__ = None

    def __str__(self):
        parts = [f"z^{2 * self.genus + 1}"]
        for i in range(2 * self.genus, -1, -1):
            ci = self.c[i]
            if ci.is_zero():
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            cs = format_element(ci)
            parts.append(f"({cs})*{mono}" if mono else f"({cs})")
        return "w^2 - (" + " + ".join(parts) + ")"

    __repr__ = __str__
