"""Simplicial l1 values of homology classes.

The value is the least l1 norm of a simplicial cycle in the class.  It is
an upper bound for the singular l1 semi-norm, not that semi-norm itself.
"""
from fractions import Fraction as F

from fsnorm.homology import (
    HomologyClass,
    SimplicialComplex,
    homology_basis,
    induced_chain_map,
    l1_simplicial,
)

triangle = SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)])
square = SimplicialComplex.from_facets(4, [(0, 1), (1, 2), (2, 3), (0, 3)])

for name, K in (("triangle", triangle), ("square", square)):
    hb = homology_basis(K, 1)
    z = HomologyClass(1, hb.cycles[0])
    print(f"{name}: H_1 has dim {hb.dim}, generator value {l1_simplicial(K, z)}")

# degree 0 on two points: |a [p] + b [q]| = |a| + |b|
pts = SimplicialComplex(2, ((0,), (1,)))
print("degree 0:", l1_simplicial(pts, HomologyClass(0, (F(3), F(-1, 2)))))

# collapsing the square onto the triangle does not increase the value
f = [0, 1, 2, 2]
z = HomologyClass.from_coefficients(square, 1, {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): -1})
image = HomologyClass(1, induced_chain_map(square, triangle, f, 1).apply(z.cycle))
print("square class", l1_simplicial(square, z), "-> image", l1_simplicial(triangle, image))
