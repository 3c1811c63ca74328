"""Exact weighted l1 minimisation under linear equality constraints.

Solves ``min sum_j w_j |b_j|  s.t.  sum_j b_j M_j = target`` over the
rationals.  The free coefficients are split as ``b = p - n`` with
``p, n >= 0`` and the resulting standard-form LP is solved by a dense
tableau simplex using Bland's rule.  Everything is exact, so degenerate
pivots are common and the anti-cycling rule matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactq import (
    RationalMatrix,
    Subspace,
    is_zero_vector,
    rref,
    solve,
    vec,
    vsub,
)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


class InstanceTooLarge(ValueError):
    """Raised by brute-force oracles that refuse big inputs."""


@dataclass(frozen=True)
class L1Problem:
    columns: RationalMatrix
    target: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "target", vec(self.target))
        object.__setattr__(self, "weights", vec(self.weights))
        if len(self.target) != self.columns.rows:
            raise ValueError("target length must equal the number of rows")
        if len(self.weights) != self.columns.cols:
            raise ValueError("one weight per column is required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], target: Sequence, weights: Sequence) -> "L1Problem":
        return cls(RationalMatrix.from_columns(columns, rows=len(target)), tuple(target), tuple(weights))

    def cost(self, coefficients: Sequence) -> Fraction:
        return sum((w * abs(b) for w, b in zip(self.weights, coefficients)), Fraction(0))

    def residual(self, coefficients: Sequence) -> tuple:
        return vsub(self.columns.apply(coefficients), self.target)


@dataclass(frozen=True)
class L1Solution:
    status: str
    value: Optional[Fraction] = None
    coefficients: Optional[tuple] = None

    @property
    def feasible(self) -> bool:
        return self.status == OPTIMAL


_INFEASIBLE = L1Solution(INFEASIBLE)


def min_weighted_l1(p: L1Problem) -> L1Solution:
    """Exact optimum of the weighted l1 problem (or ``status='infeasible'``)."""
    n = p.columns.cols
    if is_zero_vector(p.target):
        return L1Solution(OPTIMAL, Fraction(0), (Fraction(0),) * n)

    zero_idx = [j for j in range(n) if p.weights[j] == 0]
    pos_idx = [j for j in range(n) if p.weights[j] != 0]
    coeffs = [Fraction(0)] * n

    if zero_idx:
        # cost-free directions: work modulo their span
        z = p.columns.select_columns(zero_idx)
        ann = Subspace.span(z.rows, z.columns()).annihilator()
        sub_cols = ann @ p.columns.select_columns(pos_idx)
        sub_target = ann.apply(p.target)
        sub = _solve_positive(sub_cols, sub_target, [p.weights[j] for j in pos_idx])
        if sub is None:
            return _INFEASIBLE
        for j, b in zip(pos_idx, sub):
            coeffs[j] = b
        rest = vsub(p.target, p.columns.select_columns(pos_idx).apply(sub))
        zc = solve(z, rest)
        if zc is None:  # pragma: no cover - excluded by the annihilator constraint
            raise AssertionError("residual left the span of zero-weight columns")
        for j, b in zip(zero_idx, zc):
            coeffs[j] = b
    else:
        sub = _solve_positive(p.columns, p.target, list(p.weights))
        if sub is None:
            return _INFEASIBLE
        coeffs = list(sub)

    coeffs = tuple(coeffs)
    return L1Solution(OPTIMAL, p.cost(coeffs), coeffs)


def _solve_positive(cols: RationalMatrix, target: Sequence, weights: list) -> Optional[list]:
    """Simplex on the split LP; every weight is positive here."""
    m, n = cols.rows, cols.cols
    if n == 0 or m == 0:
        return [Fraction(0)] * n if is_zero_vector(target) else None
    aug = cols.hstack(RationalMatrix.from_columns([vec(target)], rows=m))
    red, pivots, rank = rref(aug)
    if n in pivots:
        return None
    if rank == 0:
        return [Fraction(0)] * n

    # the rref pivot columns give a starting basis; flip sign rows so rhs >= 0
    width = 2 * n
    tab = []
    rhs = []
    basis = []
    for i, pc in enumerate(pivots):
        r = red.row(i)
        row = list(r[:n]) + [-x for x in r[:n]]
        b = r[n]
        if b < 0:
            row = [-x for x in row]
            b = -b
            basis.append(pc + n)
        else:
            basis.append(pc)
        tab.append(row)
        rhs.append(b)
    cost = list(weights) + list(weights)

    while True:
        reduced = [
            cost[j] - sum((cost[basis[i]] * tab[i][j] for i in range(rank) if tab[i][j]), Fraction(0))
            for j in range(width)
        ]
        enter = next((j for j in range(width) if reduced[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rank):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # pragma: no cover - objective is bounded below by 0
            raise AssertionError("unbounded l1 problem")
        piv = tab[leave][enter]
        prow = [x / piv for x in tab[leave]]
        prhs = rhs[leave] / piv
        tab[leave], rhs[leave] = prow, prhs
        for i in range(rank):
            if i != leave:
                f = tab[i][enter]
                if f:
                    tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
                    rhs[i] -= f * prhs
        basis[leave] = enter

    x = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        x[bv] = rhs[i]
    return [x[j] - x[j + n] for j in range(n)]


def enumerate_basic_optima(p: L1Problem, max_cols: int = 8) -> L1Solution:
    """Brute-force oracle: best basic feasible solution of the split LP.

    Every subset of split columns of size ``rank(M)`` whose submatrix has
    full column rank is solved directly; nonnegative solutions are
    compared by cost.
    """
    n = p.columns.cols
    if n > max_cols:
        raise InstanceTooLarge(f"{n} columns exceeds the oracle limit of {max_cols}")
    split = p.columns.hstack(-p.columns)
    cost = list(p.weights) * 2
    r = p.columns.rank()
    best: Optional[L1Solution] = None
    if r == 0:
        if is_zero_vector(p.target):
            return L1Solution(OPTIMAL, Fraction(0), (Fraction(0),) * n)
        return _INFEASIBLE
    for subset in combinations(range(2 * n), r):
        sub = split.select_columns(subset)
        if sub.rank() != r:
            continue
        x = solve(sub, p.target)
        if x is None or any(xi < 0 for xi in x):
            continue
        value = sum((cost[j] * xi for j, xi in zip(subset, x)), Fraction(0))
        if best is None or value < best.value:
            coeffs = [Fraction(0)] * n
            for j, xi in zip(subset, x):
                if j < n:
                    coeffs[j] += xi
                else:
                    coeffs[j - n] -= xi
            best = L1Solution(OPTIMAL, value, tuple(coeffs))
    if best is None:
        return _INFEASIBLE
    return best
