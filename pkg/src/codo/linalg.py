"""Exact linear algebra over a tower's fraction field.

Plain fraction-based Gaussian elimination: every entry is a canonical
RingElement, so pivots and zero tests are exact.  Sizes in this package
stay small (resultant matrices up to ~20x20, coefficient-matching systems
with a few dozen rows), which keeps this simple strategy fast enough.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import SingularLinearSystem
from .ring import RingElement, Tower

__all__ = ["det", "solve", "nullspace_and_solution"]


def det(rows: Sequence[Sequence[RingElement]], tower: Tower) -> RingElement:
    """Determinant over the tower's fraction field.

    Clears row denominators and runs fraction-free Bareiss elimination; the
    intermediate entries are then minors of the cleared matrix, so no gcd
    normalisation is needed until the very end.
    """
    n = len(rows)
    if n == 0:
        return tower.one
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    ring = tower.ring
    den_acc = ring.one
    m = []
    for row in rows:
        lcm = ring.one
        for e in row:
            if e.den != ring.one:
                lcm = lcm.lcm(e.den)
        den_acc = den_acc * lcm
        m.append([e.num * lcm.quo(e.den) for e in row])
    d = _det_bareiss(m, tower)
    return tower._normalize(d, den_acc)


def _exact_div(tower: Tower, num, prev):
    ring = tower.ring
    if prev == ring.one:
        return num
    if any(prev.degree(tower.gens[i]) > 0 for i in tower._quad_indices):
        e = tower._normalize(num, prev)
        if e.den != ring.one:
            raise ArithmeticError("inexact division in Bareiss elimination")
        return e.num
    return num.quo(prev)


def _det_bareiss(m, tower: Tower):
    ring = tower.ring
    n = len(m)
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        piv = None
        for r in range(k, n):
            if m[r][k]:
                piv = r
                break
        if piv is None:
            return ring.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = tower._reduce(m[i][j] * m[k][k] - m[i][k] * m[k][j])
                m[i][j] = _exact_div(tower, num, prev)
            m[i][k] = ring.zero
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


def _rref(m: List[List[RingElement]], tower: Tower) -> List[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        piv = None
        for r in range(row, nrows):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = tower.one / m[row][col]
        m[row] = [e * inv for e in m[row]]
        for r in range(nrows):
            if r != row and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return pivots


def nullspace_and_solution(
    rows: Sequence[Sequence[RingElement]],
    rhs: Sequence[RingElement],
    tower: Tower,
) -> Tuple[Optional[List[RingElement]], List[List[RingElement]]]:
    """Solve rows * v = rhs exactly.

    Returns (particular solution or None when inconsistent, nullspace basis).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [tower.zero] * ncols, [
            [tower.one if i == j else tower.zero for i in range(ncols)] for j in range(ncols)
        ]
    pivots = _rref(aug, tower)
    # inconsistent if a pivot lands in the rhs column
    if ncols in pivots:
        return None, []
    sol = [tower.zero] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [tower.zero] * ncols
        vec[fc] = tower.one
        for r, col in enumerate(pivots):
            vec[col] = -aug[r][fc]
        basis.append(vec)
    return sol, basis


def solve(
    rows: Sequence[Sequence[RingElement]],
    rhs: Sequence[RingElement],
    tower: Tower,
) -> List[RingElement]:
    """Unique exact solution; raises SingularLinearSystem otherwise."""
    sol, basis = nullspace_and_solution(rows, rhs, tower)
    if sol is None:
        raise SingularLinearSystem("inconsistent linear system")
    if basis:
        raise SingularLinearSystem("solution is not unique")
    return sol
