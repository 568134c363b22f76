"""Spectral-curve computations for commuting pairs.

The central routine is the differential resultant: stack the coefficient
rows of d^i(A - z) and d^j(B - w) in the monomial basis d^0..d^(n+m-1) and
take the determinant.  For a commuting pair the result is x-free and is a
curve polynomial annihilating the pair; if the raw determinant carries
extraneous content the smallest annihilating factor is returned.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence

import sympy

from . import linalg
from .curves import CurvePoly, HyperellipticCurve
from .diffop import DiffOp, PowerCache, commutator, compose, eval_poly
from .errors import NonCommutingPair, XDependentResultant
from .ring import RingElement, Tower

__all__ = [
    "bc_resultant",
    "rank_of_pair",
    "sigma_invariant",
    "is_nonsingular",
    "discriminant",
]


def rank_of_pair(n: int, m: int) -> int:
    """gcd of the two orders: the dimension of the joint eigenspace."""
    if n < 1 or m < 1:
        raise ValueError("orders must be positive")
    return math.gcd(n, m)


def _fresh_names(tower: Tower, base: Sequence[str]):
    out = []
    for name in base:
        candidate = name
        while candidate in tower._index:
            candidate = candidate + "_"
        out.append(candidate)
    return out


def bc_resultant(a: DiffOp, b: DiffOp, zname: str = "z", wname: str = "w") -> CurvePoly:
    """Annihilating curve polynomial R(z, w) with R(a, b) = 0.

    Reuses tower parameters named `zname`/`wname` when the operators do not
    involve them, otherwise adjoins fresh parameters.
    """
    if not commutator(a, b).is_zero():
        raise NonCommutingPair("bc_resultant needs a commuting pair")
    t = a.tower
    needed = [n for n in (zname, wname) if n not in t._index]
    big = t.extend(parameters=tuple(needed)) if needed else t
    for name in (zname, wname):
        if any(c.involves(name) for c in list(a.coeffs) + list(b.coeffs)):
            raise XDependentResultant(
                f"operator coefficients already involve {name!r}; pick other names"
            )
    z = big.gen(zname)
    w = big.gen(wname)
    az = a.map_tower(big) - DiffOp.from_scalar(big, z)
    bw = b.map_tower(big) - DiffOp.from_scalar(big, w)
    n, m = a.order, b.order
    size = n + m
    rows: List[List[RingElement]] = []
    op = az
    for i in range(m):
        if i:
            op = compose(DiffOp.d(big), op)
        rows.append([op.coeff(k) for k in range(size)])
    op = bw
    for j in range(n):
        if j:
            op = compose(DiffOp.d(big), op)
        rows.append([op.coeff(k) for k in range(size)])
    det = linalg.det(rows, big)
    if det.is_zero():
        raise XDependentResultant("differential resultant vanished identically")
    if not det.derive().is_zero():
        raise XDependentResultant("resultant is x-dependent")
    for i, name in enumerate(big.names):
        if name in (zname, wname) or big.kinds[i] == "param":
            continue
        if det.involves(name):
            raise XDependentResultant(f"resultant involves non-parameter {name!r}")
    if det.den.degree(big.gens[big._index[zname]]) > 0 or det.den.degree(big.gens[big._index[wname]]) > 0:
        raise XDependentResultant("resultant denominator involves z or w")
    coeffs = {k: t.project(v) for k, v in det.coeffs_by((zname, wname)).items()}
    curve = CurvePoly(t, coeffs).normalized()
    cache = PowerCache(a, b)
    # rank > 1 pairs produce a power of the curve, and non-generic pairs can
    # carry extra content, so always hunt for the smallest annihilating factor
    reduced = _minimal_annihilating_factor(curve, t, zname, wname, cache)
    if reduced is not None:
        return reduced
    if eval_poly(curve, a, b, cache=cache, check_commute=False).is_zero():
        return curve
    raise XDependentResultant("no factor of the resultant annihilates the pair")


def _minimal_annihilating_factor(curve: CurvePoly, tower: Tower, zname: str,
                                 wname: str, cache: PowerCache) -> Optional[CurvePoly]:
    """Factor the resultant over Q(parameters) and keep the smallest
    annihilating factor; Burchnall-Chaundy guarantees one exists."""
    zsym = sympy.Symbol(zname)
    wsym = sympy.Symbol(wname)
    expr = sympy.Integer(0)
    for (i, j), c in curve.coeffs.items():
        # coefficients are parameter fractions; clear them into one numerator
        expr += (c.num.as_expr() / c.den.as_expr()) * zsym ** i * wsym ** j
    num, _den = sympy.fraction(sympy.together(expr))
    factors = sympy.factor_list(num)[1]
    candidates = [f for f, _ in factors if f.has(zsym) or f.has(wsym)]
    candidates.sort(key=lambda f: sympy.total_degree(f, zsym, wsym))
    for f in candidates:
        cp = _curve_from_expr(f, tower, zname, wname)
        if eval_poly(cp, cache.a, cache.b, cache=cache, check_commute=False).is_zero():
            return cp.normalized()
    return None


def _curve_from_expr(f, tower: Tower, zname: str, wname: str) -> CurvePoly:
    zsym = sympy.Symbol(zname)
    wsym = sympy.Symbol(wname)
    poly = sympy.Poly(f, zsym, wsym)
    coeffs = {}
    for (i, j), c in zip(poly.monoms(), poly.coeffs()):
        coeffs[(i, j)] = tower.el(str(c))
    return CurvePoly(tower, coeffs)


def sigma_invariant(e: RingElement, wname: str = "w") -> bool:
    """True iff the element is fixed by (z, w) -> (z, -w): no w-component."""
    return not e.involves(wname)


def discriminant(curve: HyperellipticCurve) -> RingElement:
    """Discriminant of the monic F_g via the Sylvester resultant of (F, F')."""
    t = curve.tower
    f = list(curve.f_coeffs())
    n = len(f) - 1
    df = [f[i] * i for i in range(1, n + 1)]
    m = n - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [t.zero] * size
        for k, ck in enumerate(reversed(f)):
            row[i + k] = ck
        rows.append(row)
    for i in range(n):
        row = [t.zero] * size
        for k, ck in enumerate(reversed(df)):
            row[i + k] = ck
        rows.append(row)
    res = linalg.det(rows, t)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res * sign


def is_nonsingular(curve: HyperellipticCurve) -> bool:
    """Generic nonsingularity: the discriminant of F_g is not identically 0."""
    return not discriminant(curve).is_zero()
