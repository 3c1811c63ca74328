import random
from fractions import Fraction as F

import pytest

from fsnorm.exactq import is_zero_vector
from fsnorm.fincat import validate
from fsnorm.homology import (
    HomologyClass,
    SimplicialComplex,
    boundary_matrix,
    circle_model_bridge,
    class_from_dict,
    class_to_dict,
    complex_from_dict,
    homology_basis,
    homology_coordinates,
    induced_chain_map,
    induced_homology_map,
    l1_simplicial,
)
from fsnorm.locus import EXACT, universal_locus
from fsnorm.seminorm import GeneratingFamily, eval_generated

HOLLOW = complex_from_dict({"vertices": 3, "simplices": [[0], [1], [2], [0, 1], [1, 2], [0, 2]]})
FILLED = SimplicialComplex.from_facets(3, [(0, 1, 2)])
CYCLE = {"degree": 1, "coefficients": {"[0,1]": "1", "[1,2]": "1", "[0,2]": "-1"}}


def random_complex(rng, n=None):
    n = n or rng.randint(1, 8)
    facets = []
    for _ in range(rng.randint(1, 6)):
        k = rng.randint(1, min(4, n))
        facets.append(tuple(sorted(rng.sample(range(n), k))))
    return SimplicialComplex.from_facets(n, facets)


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(3, ((0,), (0, 1)))
    with pytest.raises(ValueError):
        SimplicialComplex(2, ((0,), (1,), (0,)))
    with pytest.raises(ValueError):
        SimplicialComplex(2, ((0,), (2,)))
    with pytest.raises(ValueError):
        complex_from_dict({"vertices": 1, "simplices": [[0]], "extra": 0})


def test_boundary_examples():
    edge = SimplicialComplex.from_facets(2, [(0, 1)])
    assert boundary_matrix(edge, 1).to_rows() == [[-1], [1]]
    assert boundary_matrix(HOLLOW, 1).rank() == 2
    assert boundary_matrix(HOLLOW, 0).shape == (0, 3)


def test_homology_dimensions():
    assert homology_basis(HOLLOW, 1).dim == 1
    assert homology_basis(FILLED, 1).dim == 0
    assert homology_basis(SimplicialComplex(2, ((0,), (1,))), 0).dim == 2
    assert homology_basis(FILLED, 0).dim == 1
    assert homology_basis(HOLLOW, 2).dim == 0


def test_l1_examples():
    c = class_from_dict(HOLLOW, CYCLE)
    assert l1_simplicial(HOLLOW, c) == 3
    assert l1_simplicial(HOLLOW, HomologyClass(1, (F(0),) * 3)) == 0
    pts = SimplicialComplex(3, ((0,), (1,), (2,)))
    assert l1_simplicial(pts, HomologyClass(0, (F(2), F(-1, 2), F(0)))) == F(5, 2)
    # connected: degree-0 value is the absolute augmentation
    assert l1_simplicial(FILLED, HomologyClass(0, (F(2), F(-1, 2), F(0)))) == F(3, 2)
    # boundary in the filled triangle vanishes
    tri = SimplicialComplex.from_facets(3, [(0, 1, 2)])
    assert l1_simplicial(tri, class_from_dict(tri, CYCLE)) == 0


def test_class_roundtrip_and_errors():
    c = class_from_dict(HOLLOW, CYCLE)
    assert class_from_dict(HOLLOW, class_to_dict(HOLLOW, c)) == c
    with pytest.raises(ValueError):
        class_from_dict(HOLLOW, {"degree": 1, "coefficients": {"[0,1]": "1"}})
    with pytest.raises(ValueError):
        class_from_dict(HOLLOW, {"degree": 1, "coefficients": {"[0,3]": "1"}})


def test_longer_cycle_and_chain_map():
    square = SimplicialComplex.from_facets(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    z = HomologyClass.from_coefficients(square, 1, {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): -1})
    assert l1_simplicial(square, z) == 4
    assert l1_simplicial(square, HomologyClass(1, tuple(F(-3) * x for x in z.cycle))) == 12
    # collapse the square onto the triangle: 3 -> 2 (edge (2,3) degenerates)
    f = [0, 1, 2, 2]
    cm = induced_chain_map(square, HOLLOW, f, 1)
    image = HomologyClass(1, cm.apply(z.cycle))
    image.check(HOLLOW)
    assert l1_simplicial(HOLLOW, image) <= l1_simplicial(square, z)
    assert induced_homology_map(square, HOLLOW, f, 1).shape == (1, 1)
    # chain map commutes with boundaries
    assert cm @ boundary_matrix(square, 2) == boundary_matrix(HOLLOW, 2) @ induced_chain_map(square, HOLLOW, f, 2)
    assert induced_chain_map(square, HOLLOW, f, 0) @ boundary_matrix(square, 1) == boundary_matrix(HOLLOW, 1) @ cm


def test_boundary_squares_to_zero():
    rng = random.Random(8)
    for _ in range(50):
        K = random_complex(rng)
        for d in range(1, K.dimension + 1):
            assert (boundary_matrix(K, d) @ boundary_matrix(K, d + 1)).is_zero()


def test_rank_nullity_and_projection():
    rng = random.Random(10)
    for _ in range(30):
        K = random_complex(rng)
        for d in range(0, K.dimension + 1):
            hb = homology_basis(K, d)
            n = len(K.cells(d))
            expect = n - boundary_matrix(K, d).rank() - boundary_matrix(K, d + 1).rank()
            assert hb.dim == expect
            for y in boundary_matrix(K, d + 1).columns():
                assert is_zero_vector(hb.projection.apply(y))
            for i, z in enumerate(hb.cycles):
                assert hb.projection.apply(z) == tuple(F(int(i == j)) for j in range(hb.dim))


def test_seminorm_laws_on_classes():
    rng = random.Random(12)
    for _ in range(15):
        K = random_complex(rng, rng.randint(3, 6))
        for d in range(0, min(K.dimension, 1) + 1):
            hb = homology_basis(K, d)
            if hb.dim == 0:
                continue
            def cls(coeffs):
                c = [F(0)] * len(K.cells(d))
                for a, z in zip(coeffs, hb.cycles):
                    c = [x + a * y for x, y in zip(c, z)]
                return HomologyClass(d, tuple(c))
            a = [F(rng.randint(-2, 2)) for _ in range(hb.dim)]
            b = [F(rng.randint(-2, 2)) for _ in range(hb.dim)]
            la, lb = l1_simplicial(K, cls(a)), l1_simplicial(K, cls(b))
            assert l1_simplicial(K, cls([x + y for x, y in zip(a, b)])) <= la + lb
            assert l1_simplicial(K, cls([F(-3, 2) * x for x in a])) == F(3, 2) * la
            assert homology_coordinates(K, cls(a)) == tuple(a)
            if d == 0 and any(a):
                assert la > 0


def test_circle_bridge():
    cat = circle_model_bridge()
    assert validate(cat).ok
    loc = universal_locus(cat)["X"]
    assert loc.status == EXACT and loc.space.dim == 1
    fam = GeneratingFamily.from_elements([("X", (1,))], [3])
    for k in range(5):
        assert eval_generated(cat, fam, "X", (1,), k).upper_bound == F(3, 2 ** k)
