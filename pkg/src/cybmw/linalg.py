"""Exact linear algebra over RingValue coefficients.

Fraction-free Bareiss elimination for determinants (no fractions are ever
formed; every division is exact in the ground ring), plus a unit-pivot
Gaussian solver used for basis-change systems whose pivots are units.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .ring import RingSpec, RingValue


def _divide_exact(a: RingValue, b: RingValue) -> RingValue:
    """a / b when the division is exact in the ring; raises otherwise."""
    if a.spec != b.spec:
        raise ValueError("mixed-ring operands")
    if a.rational is not None:
        return RingValue(a.spec, rational=a.rational / b.rational)
    if a.is_zero():
        return a.spec.zero()
    # a = pa/d^ea, b = pb/d^eb: a/b = (pa/pb) * d^{eb-ea}
    q = a.poly.divide_exact(b.poly)
    if q is None:
        raise ArithmeticError("inexact division in Bareiss step")
    net = b.delta_power - a.delta_power
    if net == 0:
        return RingValue(a.spec, poly=q)
    if net > 0:
        d = a.spec.delta().poly
        for _ in range(net):
            q = q * d
        return RingValue(a.spec, poly=q)
    return RingValue(a.spec, poly=q, delta_power=-net)


def bareiss_det(matrix: List[List[RingValue]], spec: RingSpec) -> RingValue:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return spec.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = spec.one()
    for j in range(n - 1):
        # pivot search within column j
        piv = None
        for i in range(j, n):
            if not m[i][j].is_zero():
                piv = i
                break
        if piv is None:
            return spec.zero()
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            sign = -sign
        pjj = m[j][j]
        for i in range(j + 1, n):
            for c in range(j + 1, n):
                num = pjj * m[i][c] - m[i][j] * m[j][c]
                m[i][c] = _divide_exact(num, prev)
            m[i][j] = spec.zero()
        prev = pjj
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


class UnitSolver:
    """LU-style factorization with unit pivots for repeated exact solves.

    Used for change-of-basis systems M x = v whose matrix is invertible
    over the coefficient ring with unit pivots reachable by row/column
    permutation (true for the tower basis changes used by the engine).
    """

    def __init__(self, columns: List[List[RingValue]], spec: RingSpec):
        # columns[j][i]: entry (i, j); solve M x = v
        self.spec = spec
        n = len(columns)
        self.n = n
        m = [[columns[j][i] for j in range(n)] for i in range(n)]
        self.row_perm = list(range(n))
        self.ops: List[tuple] = []  # replayed on right-hand sides
        for j in range(n):
            piv = None
            for i in range(j, n):
                try:
                    inv = m[i][j].inverse()
                except (ValueError, ZeroDivisionError):
                    continue
                piv = (i, inv)
                break
            if piv is None:
                raise ArithmeticError(
                    f"no unit pivot in column {j}; basis change not unit-triangularizable"
                )
            i, inv = piv
            if i != j:
                m[i], m[j] = m[j], m[i]
                self.ops.append(("swap", i, j))
            self.ops.append(("scale", j, inv))
            m[j] = [inv * x for x in m[j]]
            for r in range(n):
                if r != j and not m[r][j].is_zero():
                    f = m[r][j]
                    self.ops.append(("axpy", r, j, f))
                    m[r] = [a - f * b for a, b in zip(m[r], m[j])]

    def solve(self, v: List[RingValue]) -> List[RingValue]:
        x = v[:]
        for op in self.ops:
            if op[0] == "swap":
                _, i, j = op
                x[i], x[j] = x[j], x[i]
            elif op[0] == "scale":
                _, j, inv = op
                x[j] = inv * x[j]
            else:
                _, r, j, f = op
                x[r] = x[r] - f * x[j]
        return x
