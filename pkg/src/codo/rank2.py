"""Self-adjoint rank-two pairs on hyperelliptic curves.

Everything revolves around the identity

    4F_g(z) = 4(z - W)Q^2 - 4V(Q')^2 + (Q'')^2 - 2Q'Q(3)
              + 2Q(2V'Q' + 4VQ'' + Q(4)),                      (*)

where primes are x-derivatives, Q(x, z) is monic of degree g in z, and
(V, W) are the potentials of L4 = (d^2 + V)^2 + W.  A triple (Q, V, W)
solving (*) yields the curve w^2 = F_g(z), the coefficients

    chi0 = -Q''/(2Q) + w/Q - V,        chi1 = Q'/Q

of the second-order equation psi'' = chi0 psi + chi1 psi', and an
order-(4g+2) partner commuting with L4.

Differentiating (*) in x gives exactly 2Q times

    Q(5) + 4VQ(3) + 2Q'(2z - 2W + V'') + 6V'Q'' - 2QW' = 0,    (**)

so (**) is linear in Q for fixed V, W.  That linearity is what the
polynomial-family solver exploits.  (Note the sign of V'': it is forced
by d/dx of (*), and the x^3-potential family below satisfies (**) only
with this sign.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .curves import HyperellipticCurve
from .diffop import DiffOp, commutator, compose
from .errors import (
    CurveMismatch,
    DegenerateRoot,
    DegreeMismatch,
    NoSolutionAtBound,
    RankTooSmall,
    SeriesExtractionFailure,
    SingularLinearSystem,
    XDependentResidual,
)
from .ring import (
    RingElement,
    SqrtAlgebraic,
    Tower,
    format_element,
)
from .series import LaurentSeries, poly_series

__all__ = [
    "RankTwoTriple",
    "ChiPair",
    "PoleRecord",
    "TyurinData",
    "q_equation_rhs",
    "q_equation_extract",
    "corollary1_residual",
    "v_from_q",
    "corollary2_residuals",
    "ur_residual",
    "curve_extension",
    "chi_from_q",
    "reduce_derivatives",
    "build_l4",
    "f_coeffs_from_expansion",
    "build_partner",
    "mironov_q",
    "tyurin_from_chi",
    "tyurin_residuals",
]


@dataclass(frozen=True)
class RankTwoTriple:
    """Monic Q = z^g + q_(g-1) z^(g-1) + ... + q_0 plus potentials V, W."""

    genus: int
    q: Tuple[RingElement, ...]
    v: RingElement
    w: RingElement
    tower: Tower

    def __post_init__(self):
        if len(self.q) != self.genus:
            raise DegreeMismatch(
                f"genus {self.genus} needs {self.genus} non-leading q coefficients"
            )

    def q_list(self) -> List[RingElement]:
        """Coefficients of Q from z^0 up to the monic z^g."""
        return list(self.q) + [self.tower.one]


@dataclass(frozen=True)
class ChiPair:
    """chi0, chi1 in a tower extended by the spectral parameter and w."""

    chi0: RingElement
    chi1: RingElement
    tower: Tower
    zname: str
    wname: str


# -- z-polynomial helpers (lists of x-coefficients, index = z power) ----------

def _ztrim(a: List[RingElement]) -> List[RingElement]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _zadd(a, b):
    n = max(len(a), len(b))
    z = (a[0] if a else b[0]).tower.zero
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(x + y)
    return out


def _zscale(a, s):
    return [c * s for c in a]


def _zmul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _zderive(a):
    return [c.derive() for c in a]


def _zshift(a, zero):
    """Multiply by z."""
    return [zero] + list(a)


def q_equation_rhs(triple: RankTwoTriple) -> List[RingElement]:
    """z-coefficients of 4(z-W)Q^2 - 4V(Q')^2 + (Q'')^2 - 2Q'Q(3)
    + 2Q(2V'Q' + 4VQ'' + Q(4))."""
    t = triple.tower
    zero = t.zero
    v, w = triple.v, triple.w
    q0 = triple.q_list()
    q1 = _zderive(q0)
    q2 = _zderive(q1)
    q3 = _zderive(q2)
    q4 = _zderive(q3)
    qsq = _zmul(q0, q0, zero)
    out = _zadd(_zscale(_zshift(qsq, zero), t.el(4)), _zscale(qsq, -4 * w))
    out = _zadd(out, _zscale(_zmul(q1, q1, zero), -4 * v))
    out = _zadd(out, _zmul(q2, q2, zero))
    out = _zadd(out, _zscale(_zmul(q1, q3, zero), t.el(-2)))
    inner = _zadd(
        _zscale(q1, 2 * v.derive()),
        _zadd(_zscale(q2, 4 * v), q4),
    )
    out = _zadd(out, _zscale(_zmul(q0, inner, zero), t.el(2)))
    return _ztrim(out)


def q_equation_extract(triple: RankTwoTriple) -> HyperellipticCurve:
    """Curve F_g with 4F_g = the right-hand side above; the residual must be
    x-free, monic of degree 2g+1 after dividing by 4."""
    t = triple.tower
    g = triple.genus
    rhs = q_equation_rhs(triple)
    if len(rhs) != 2 * g + 2:
        raise DegreeMismatch(f"expected z-degree {2 * g + 1}, got {len(rhs) - 1}")
    for i, c in enumerate(rhs):
        if not c.derive().is_zero():
            raise XDependentResidual(
                f"coefficient of z^{i} depends on x: the triple does not solve "
                f"the curve identity"
            )
    for i, name in enumerate(t.names):
        if t.kinds[i] == "param":
            continue
        if any(c.involves(name) for c in rhs):
            raise XDependentResidual(f"curve coefficient involves {name!r}")
    if rhs[-1] != t.el(4):
        raise DegreeMismatch("leading z-coefficient is not 4")
    quarter = Fraction(1, 4)
    return HyperellipticCurve(g, tuple(c * quarter for c in rhs[:-1]), t)


def corollary1_residual(triple: RankTwoTriple) -> List[RingElement]:
    """z-coefficients of Q(5) + 4VQ(3) + 2Q'(2z - 2W + V'') + 6V'Q'' - 2QW'.

    This is (1/2Q) d/dx of the curve identity's right-hand side, hence zero
    on every solution; it is linear in Q for fixed V and W.
    """
    t = triple.tower
    zero = t.zero
    v, w = triple.v, triple.w
    q0 = triple.q_list()
    q1 = _zderive(q0)
    q2 = _zderive(q1)
    q3 = _zderive(q2)
    q5 = _zderive(_zderive(q3))
    out = _zadd(q5, _zscale(q3, 4 * v))
    out = _zadd(out, _zscale(_zshift(q1, zero), t.el(4)))
    out = _zadd(out, _zscale(q1, -4 * w + 2 * v.derive().derive()))
    out = _zadd(out, _zscale(q2, 6 * v.derive()))
    out = _zadd(out, _zscale(q0, -2 * w.derive()))
    return _ztrim(out)


def v_from_q(triple: RankTwoTriple, curve: HyperellipticCurve, gamma: RingElement) -> RingElement:
    """((Q'')^2 - 2Q'Q(3) - 4F_g(z)) / (4(Q')^2) evaluated at z = gamma."""
    t = gamma.tower
    q0 = [t.embed(c) for c in triple.q_list()]
    q1 = [c.derive() for c in q0]
    q2 = [c.derive() for c in q1]
    q3 = [c.derive() for c in q2]

    def horner(cs):
        out = t.zero
        for c in reversed(cs):
            out = out * gamma + c
        return out

    qp = horner(q1)
    if qp.is_zero():
        raise DegenerateRoot("Q' vanishes at the requested root")
    num = horner(q2) ** 2 - 2 * horner(q1) * horner(q3) - 4 * curve.eval(gamma)
    return num / (4 * qp * qp)


def corollary2_residuals(
    triple: RankTwoTriple, curve: HyperellipticCurve, roots: Sequence[RingElement]
) -> List[RingElement]:
    """Pairwise differences of v_from_q over the supplied roots (g-1 constraints)."""
    vals = [v_from_q(triple, curve, g) for g in roots]
    out = []
    for j in range(len(vals)):
        for k in range(j + 1, len(vals)):
            out.append(vals[j] - vals[k])
    return out


def ur_residual(g1: RingElement, g2: RingElement, curve: HyperellipticCurve) -> RingElement:
    """The genus-two constraint tying two pole trajectories to one quintic."""
    d1 = g1.derive()
    d2 = g2.derive()
    dd1 = d1.derive()
    dd2 = d2.derive()
    ddd1 = dd1.derive()
    ddd2 = dd2.derive()
    diff = g1 - g2
    out = 4 * (d1 ** 2 * curve.eval(g2) - d2 ** 2 * curve.eval(g1))
    out = out - 4 * d1 ** 4 * d2 ** 2
    out = out + diff ** 2 * d2 ** 2 * dd1 ** 2
    out = out + 2 * diff * d1 ** 3 * d2 * dd2
    out = out + 2 * diff * d1 * d2 ** 2 * (d2 * dd1 + (g2 - g1) * ddd1)
    out = out + d1 ** 2 * (
        4 * d2 ** 4
        + 6 * diff * d2 ** 2 * (dd1 + dd2)
        + diff ** 2 * (2 * d2 * ddd2 - dd2 ** 2)
    )
    return out


# -- chi construction and expansions ------------------------------------------

def curve_extension(
    tower: Tower, curve: HyperellipticCurve, zname: str = "z", wname: str = "w"
) -> Tower:
    """Extend a tower by the spectral parameter z and w with w^2 = F_g(z)."""
    with_z = tower.extend(parameters=(zname,)) if zname not in tower._index else tower
    z = with_z.gen(zname)
    f = with_z.zero
    for c in reversed(curve.f_coeffs()):
        f = f * z + with_z.embed(c)
    if f.den != with_z.ring.one:
        raise CurveMismatch("curve coefficients must be polynomial to adjoin w")
    from .ring import format_poly

    return with_z.extend(extensions=(SqrtAlgebraic(wname, format_poly(with_z, f.num)),))


def _q_of_z(triple: RankTwoTriple, tower: Tower, zname: str) -> RingElement:
    z = tower.gen(zname)
    out = tower.zero
    for c in reversed(triple.q_list()):
        out = out * z + tower.embed(c)
    return out


def chi_from_q(
    triple: RankTwoTriple,
    curve: HyperellipticCurve,
    zname: str = "z",
    wname: str = "w",
    tower: Optional[Tower] = None,
) -> ChiPair:
    """chi0 = -Q''/(2Q) + w/Q - V and chi1 = Q'/Q on the curve extension."""
    if q_equation_extract(triple) != curve:
        raise CurveMismatch("curve does not match the triple")
    ext = tower if tower is not None else curve_extension(triple.tower, curve, zname, wname)
    q = _q_of_z(triple, ext, zname)
    qx = q.derive()
    qxx = qx.derive()
    w = ext.gen(wname)
    v = ext.embed(triple.v)
    chi0 = -qxx / (2 * q) + w / q - v
    chi1 = qx / q
    return ChiPair(chi0, chi1, ext, zname, wname)


def reduce_derivatives(chi: ChiPair, upto: int) -> List[Tuple[RingElement, RingElement]]:
    """Coefficients (a_j, b_j) with psi^(j) = a_j psi + b_j psi'.

    a_0, b_0 = 1, 0 and a_1, b_1 = 0, 1; then a_(j+1) = a_j' + b_j chi0 and
    b_(j+1) = a_j + b_j' + b_j chi1.
    """
    t = chi.tower
    out = [(t.one, t.zero)]
    if upto >= 1:
        out.append((t.zero, t.one))
    for _ in range(upto - 1):
        a, b = out[-1]
        out.append((a.derive() + b * chi.chi0, a + b.derive() + b * chi.chi1))
    return out[: upto + 1]


def build_l4(triple: RankTwoTriple) -> DiffOp:
    """(d^2 + V)^2 + W expanded."""
    t = triple.tower
    v, w = triple.v, triple.w
    return DiffOp(
        t,
        (v * v + v.derive().derive() + w, 2 * v.derive(), 2 * v, t.zero, t.one),
    )


def _ratfun_series_at_infinity(
    num: List[RingElement], den: List[RingElement], tower: Tower, order: int
) -> LaurentSeries:
    """Series of num(z)/den(z) in y = 1/z, valued in `tower`."""
    num = [tower.embed(c) for c in num]
    den = [tower.embed(c) for c in den]
    while num and num[-1].is_zero():
        num.pop()
    while den and den[-1].is_zero():
        den.pop()
    if not den:
        raise SeriesExtractionFailure("zero denominator")
    if not num:
        return LaurentSeries.zero(tower, order)
    dn, dd = len(num) - 1, len(den) - 1
    pad = order + dd - dn + 1
    rn = LaurentSeries(tower, 0, list(reversed(num)) + [tower.zero] * pad)
    rd = LaurentSeries(tower, 0, list(reversed(den)) + [tower.zero] * pad)
    return (rn * rd.inverse()).shift(dd - dn).truncate(order)


def _z_coefficient_lists(e: RingElement, zname: str, wname: Optional[str]):
    """Split a fraction into w-even/odd numerator z-lists plus the denominator
    z-list; the denominator must be w-free (guaranteed by normal form)."""
    t = e.tower
    zi = t._index[zname]
    wi = t._index[wname] if wname is not None else None
    if wi is not None and e.den.degree(t.gens[wi]) > 0:
        raise SeriesExtractionFailure("denominator involves w after normal form")

    def split(poly, take_w):
        buckets: Dict[int, dict] = {}
        for monom, coeff in poly.items():
            wdeg = monom[wi] if wi is not None else 0
            if wdeg != (1 if take_w else 0):
                continue
            m = list(monom)
            if wi is not None:
                m[wi] = 0
            zdeg = m[zi]
            m[zi] = 0
            buckets.setdefault(zdeg, {})[tuple(m)] = coeff
        if not buckets:
            return []
        top = max(buckets)
        out = []
        for k in range(top + 1):
            d = buckets.get(k)
            out.append(
                RingElement(t, t.ring.from_dict(d), t.ring.one) if d else t.zero
            )
        return out

    even = split(e.num, False)
    odd = split(e.num, True)
    den = split(e.den, False)
    return even, odd, den


def _expansion_at_infinity(e: RingElement, genus: int, curve: HyperellipticCurve,
                           zname: str, wname: str, korder: int) -> Dict[int, RingElement]:
    """k-coefficients of an element rational in z and linear in w, where
    k = 1/sqrt(z) and w = k^-(2g+1) (1 + c_2g k^2 + ...)^(1/2)."""
    t = e.tower
    yorder = korder // 2 + genus + 3
    even, odd, den = _z_coefficient_lists(e, zname, wname)
    out: Dict[int, RingElement] = {}
    if even:
        s = _ratfun_series_at_infinity(even, den, t, yorder)
        for j in range(s.valuation() if s.coeffs else 0, s.order):
            c = s.coeff(j)
            if not c.is_zero():
                out[2 * j] = out.get(2 * j, t.zero) + c
    if odd:
        s = _ratfun_series_at_infinity(odd, den, t, yorder)
        # sqrt(1 + c_2g y + c_(2g-1) y^2 + ... + c_0 y^(2g+1))
        unit = [t.one] + [t.embed(c) for c in reversed(curve.c)]
        unit = LaurentSeries(t, 0, unit + [t.zero] * (yorder - len(unit) + 1)).truncate(yorder)
        ws = unit.sqrt_unit()
        prod = s * ws
        for j in range(prod.valuation() if prod.coeffs else 0, prod.order):
            c = prod.coeff(j)
            if not c.is_zero():
                k = -(2 * genus + 1) + 2 * j
                out[k] = out.get(k, t.zero) + c
    return {k: v for k, v in out.items() if k <= korder}


def f_coeffs_from_expansion(
    chi: ChiPair, genus: int, curve: HyperellipticCurve
) -> Tuple[RingElement, RingElement, RingElement]:
    """Recover (f0, f1, f2) of L4 from the local data at the point at infinity.

    With chi0 = 1/k + a0 + a1 k + O(k^2) and chi1 = b1 k + O(k^2):
    f0 = a0^2 - 2a1 - 2b1' - a0'', f1 = -2(b1 + a0'), f2 = -2a0.
    """
    t = chi.tower
    e0 = _expansion_at_infinity(chi.chi0, genus, curve, chi.zname, chi.wname, 2)
    e1 = _expansion_at_infinity(chi.chi1, genus, curve, chi.zname, chi.wname, 2)
    if any(k < -1 for k in e0) or e0.get(-1) != t.one:
        raise SeriesExtractionFailure("chi0 does not start at 1/k")
    if any(k < 1 for k in e1):
        raise SeriesExtractionFailure("chi1 does not vanish at infinity")
    a0 = e0.get(0, t.zero)
    a1 = e0.get(1, t.zero)
    b1 = e1.get(1, t.zero)
    f0 = a0 * a0 - 2 * a1 - 2 * b1.derive() - a0.derive().derive()
    f1 = -2 * (b1 + a0.derive())
    f2 = -2 * a0
    return f0, f1, f2


# -- the order-(4g+2) partner ---------------------------------------------------

def build_partner(
    triple: RankTwoTriple,
    curve: HyperellipticCurve,
    zname: str = "z",
    wname: str = "w",
    verify: bool = True,
) -> DiffOp:
    """Operator L of order 4g+2 with L psi = w psi on the joint eigenfunctions.

    Solves sum_j f_j a_j = w, sum_j f_j b_j = 0 by matching coefficients in
    the basis z^i and z^i w over the x-function field.
    """
    t = triple.tower
    g = triple.genus
    n = 4 * g + 2
    chi = chi_from_q(triple, curve, zname, wname)
    ext = chi.tower
    ab = reduce_derivatives(chi, n)
    qz = _q_of_z(triple, ext, zname)
    qn = qz ** n
    rows_by_key: Dict[Tuple[int, int, int], Dict[int, RingElement]] = {}
    rhs_by_key: Dict[Tuple[int, int, int], RingElement] = {}

    def add_entries(elem: RingElement, col: int, which: int):
        if elem.is_zero():
            return
        cleared = elem * qn
        if cleared.den.degree(ext.gens[ext._index[zname]]) > 0:
            raise SingularLinearSystem("could not clear the z-denominators")
        for (zi, wi), c in cleared.coeffs_by((zname, wname)).items():
            key = (which, zi, wi)
            if col < 0:
                rhs_by_key[key] = rhs_by_key.get(key, ext.zero) + c
            else:
                rows_by_key.setdefault(key, {})[col] = c

    for j, (aj, bj) in enumerate(ab):
        add_entries(aj, j, 0)
        add_entries(bj, j, 1)
    add_entries(ext.gen(wname), -1, 0)

    keys = sorted(set(rows_by_key) | set(rhs_by_key))
    matrix = [
        [rows_by_key.get(k, {}).get(j, ext.zero) for j in range(n + 1)] for k in keys
    ]
    rhs = [rhs_by_key.get(k, ext.zero) for k in keys]
    sol, basis = linalg.nullspace_and_solution(matrix, rhs, ext)
    if sol is None:
        raise SingularLinearSystem("no partner operator: the triple is not a solution")
    if basis:
        raise SingularLinearSystem("partner system is underdetermined")
    coeffs = [t.project(c) for c in sol]
    lead = coeffs[-1]
    if lead == t.el(-1):
        coeffs = [-c for c in coeffs]
    elif lead != t.one:
        raise SingularLinearSystem(f"unexpected leading coefficient {lead}")
    partner = DiffOp(t, coeffs)
    if verify and not commutator(partner, build_l4(triple)).is_zero():
        raise SingularLinearSystem("partner does not commute with L4")
    return partner


# -- the polynomial-potential family ----------------------------------------------

def mironov_q(
    genus: int,
    h: Sequence = ("h0", "h1", "h2", "h3"),
    degree_bound: Optional[int] = None,
    x_name: str = "x",
) -> RankTwoTriple:
    """Monic degree-g solution Q for V = h3 x^3 + h2 x^2 + h1 x + h0 and
    W = g(g+1) h3 x, found by undetermined coefficients.

    Entries of `h` may be parameter names (kept symbolic) or exact numbers.
    The recovered triple always passes `q_equation_extract` before being
    returned.
    """
    from .ring import TowerSpec, tower_build

    if len(h) != 4:
        raise ValueError("h must have four entries h0..h3")
    if not isinstance(h[3], str) and Fraction(h[3]) == 0:
        raise ValueError("the cubic coefficient h3 must be nonzero")
    g = genus
    if g < 1:
        raise ValueError("genus must be at least 1")
    bound = degree_bound if degree_bound is not None else 2 * g + 4
    if bound < 2 * g:
        raise ValueError(f"degree bound {bound} below the base schedule {2 * g}")
    sym = tuple(v for v in h if isinstance(v, str))
    base = tower_build(TowerSpec(parameters=sym, x_name=x_name))

    def h_el(tower, i):
        return tower.gen(h[i]) if isinstance(h[i], str) else tower.el(Fraction(h[i]))

    degrees = [2 * (g - i) for i in range(g)]
    while True:
        triple = _solve_mironov(base, g, h, h_el, degrees, x_name)
        if triple is not None:
            q_equation_extract(triple)
            return triple
        if all(d + 2 > bound for d in degrees):
            raise NoSolutionAtBound(
                f"no solution with coefficient degrees up to {bound}"
            )
        degrees = [min(d + 2, bound) for d in degrees]


def _solve_mironov(base, g, h, h_el, degrees, x_name):
    from .ring import TowerSpec, tower_build

    unknowns = []
    for i in range(g):
        for d in range(degrees[i] + 1):
            unknowns.append(f"qc{i}_{d}")
    solver = base.extend(parameters=tuple(unknowns))
    x = solver.x
    v = h_el(solver, 3) * x ** 3 + h_el(solver, 2) * x ** 2 + h_el(solver, 1) * x + h_el(solver, 0)
    w = h_el(solver, 3) * x * (g * (g + 1))
    qs = []
    for i in range(g):
        qi = solver.zero
        for d in range(degrees[i] + 1):
            qi = qi + solver.gen(f"qc{i}_{d}") * x ** d
        qs.append(qi)
    triple = RankTwoTriple(g, tuple(qs), v, w, solver)
    resid = corollary1_residual(triple)
    rows = []
    rhs = []
    for zc in resid:
        if zc.is_zero():
            continue
        for (xdeg,), elem in zc.coeffs_by((x_name,)).items():
            lin = elem.coeffs_by(tuple(unknowns))
            row = [base.zero] * len(unknowns)
            const = base.zero
            for key, c in lin.items():
                weight = sum(key)
                if weight == 0:
                    const = base.project(c)
                elif weight == 1:
                    row[key.index(1)] = base.project(c)
                else:
                    raise SingularLinearSystem("system is not linear in the unknowns")
            rows.append(row)
            rhs.append(-const)
    sol, basis = linalg.nullspace_and_solution(rows, rhs, base)
    if sol is None:
        return None
    # free variables are pinned to zero by the solver, which picks the
    # minimal-degree representative; solutions in this family are unique
    # in practice for the scheduled degrees
    vx = base.x
    vb = h_el(base, 3) * vx ** 3 + h_el(base, 2) * vx ** 2 + h_el(base, 1) * vx + h_el(base, 0)
    wb = h_el(base, 3) * vx * (g * (g + 1))
    qs_final = []
    pos = 0
    for i in range(g):
        qi = base.zero
        for d in range(degrees[i] + 1):
            qi = qi + sol[pos] * vx ** d
            pos += 1
        qs_final.append(qi)
    return RankTwoTriple(g, tuple(qs_final), vb, wb, base)


# -- deformation data at the poles -------------------------------------------------

@dataclass(frozen=True)
class PoleRecord:
    """Laurent data of (chi_0, ..., chi_(l-1)) at one pole: chi_j has residue
    c[j] and constant term d[j]."""

    gamma: RingElement
    c: Tuple[RingElement, ...]
    d: Tuple[RingElement, ...]


@dataclass(frozen=True)
class TyurinData:
    rank: int
    poles: Tuple[PoleRecord, ...]


def tyurin_residuals(data: TyurinData) -> List[List[RingElement]]:
    """Residuals of the deformation equations per pole.

    Row layout per pole: [c_(l-1) + gamma', the d_0 relation, then the d_j
    relations for j = 1..l-1].  All zero iff the data solves the system.
    """
    if data.rank < 2:
        raise RankTooSmall("deformation equations need rank >= 2")
    l = data.rank
    out = []
    for pole in data.poles:
        clast = pole.c[l - 1]
        alpha = [cj / clast for cj in pole.c]
        rows = [clast + pole.gamma.derive()]
        rows.append(
            pole.d[0]
            - (alpha[0] * alpha[l - 2] + alpha[0] * pole.d[l - 1] - alpha[0].derive())
        )
        for j in range(1, l):
            rows.append(
                pole.d[j]
                - (
                    alpha[j] * alpha[l - 2]
                    - alpha[j - 1]
                    + alpha[j] * pole.d[l - 1]
                    - alpha[j].derive()
                )
            )
        out.append(rows)
    return out


def _sqrt_branch_series(fser: LaurentSeries, wroot: RingElement, nterms: int) -> LaurentSeries:
    """Branch of sqrt(fser) with constant term `wroot` (wroot^2 = fser(0)).

    Solves the Cauchy products of w*w = f term by term; each step divides by
    2*wroot only, which keeps coefficient growth tame in radical towers.
    """
    t = fser.tower
    out = [wroot]
    for j in range(1, nterms):
        acc = fser.coeff(j)
        for i in range(1, j):
            acc = acc - out[i] * out[j - i]
        out.append(acc / (2 * wroot))
    return LaurentSeries(t, 0, out)


def tyurin_from_chi(
    triple: RankTwoTriple,
    curve: HyperellipticCurve,
    roots: Sequence[Tuple[RingElement, str]],
    tower: Tower,
) -> TyurinData:
    """Expand chi0, chi1 at every pole (gamma_i, +-w(gamma_i)).

    `roots` lists (gamma_i, name of the adjoined sqrt(F(gamma_i))); both
    branches of each pole are emitted, so rank two and genus g give 2g
    records.
    """
    order = 3
    t = tower
    q0 = [t.embed(c) for c in triple.q_list()]
    q1 = [c.derive() for c in q0]
    q2 = [c.derive() for c in q1]
    fc = [t.embed(c) for c in curve.f_coeffs()]
    v = t.embed(triple.v)
    poles = []
    for gamma, wname in roots:
        gamma = t.embed(gamma)
        wroot = t.gen(wname)
        arg = LaurentSeries(t, 0, [gamma, t.one] + [t.zero] * (order - 2))
        qser = poly_series(q0, arg)
        if qser.valuation() != 1:
            raise DegenerateRoot("Q must have a simple zero at gamma")
        qinv = qser.inverse()
        qxser = poly_series(q1, arg)
        qxxser = poly_series(q2, arg)
        fser = poly_series(fc, arg)
        if fser.coeff(0) != wroot * wroot:
            raise CurveMismatch(f"{wname}^2 != F(gamma) in this tower")
        wser = _sqrt_branch_series(fser, wroot, 2)
        chi1 = qxser * qinv
        for sign in (1, -1):
            branch = wser if sign == 1 else -wser
            chi0 = qxxser.scale(Fraction(-1, 2)) * qinv + branch * qinv - LaurentSeries.const(v, order)
            poles.append(
                PoleRecord(
                    gamma=gamma,
                    c=(chi0.coeff(-1), chi1.coeff(-1)),
                    d=(chi0.coeff(0), chi1.coeff(0)),
                )
            )
    return TyurinData(rank=2, poles=tuple(poles))
