"""Weighted l1 minimization over the rationals.

A generated semi-norm is, after truncation, the optimum of a small linear
program: write the target as a combination of columns and pay
weight * |coefficient| for each.  The solver is an exact simplex method
and an independent brute-force oracle checks it.
"""
from fractions import Fraction as F

from fsnorm.simplex import L1Problem, enumerate_basic_optima, min_weighted_l1

# Two ways to reach (1, 0): directly at cost 3, or as a difference of cheap columns.
p = L1Problem.from_columns(
    columns=[[1, 0], [1, 1], [0, 1]],
    target=[1, 0],
    weights=[3, 1, F(1, 2)],
)
sol = min_weighted_l1(p)
print("value       ", sol.value)
print("coefficients", [str(c) for c in sol.coefficients])
print("oracle      ", enumerate_basic_optima(p).value)

# Zero-weight columns make their span free.
free = L1Problem.from_columns([[1, 1], [1, 0]], [3, 1], [0, 5])
print("with a free direction:", min_weighted_l1(free).value)

# No representation at all: the value is infinite.
print("feasible?", min_weighted_l1(L1Problem.from_columns([[1, 0]], [0, 1], [1])).feasible)
