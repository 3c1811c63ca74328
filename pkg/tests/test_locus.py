import random
from fractions import Fraction as F

import pytest

from fsnorm.exactq import Subspace
from fsnorm.fincat import ObjectSpec, PresentedCategory, enumerate_morphisms, one_object
from fsnorm.locus import (
    CARRIES,
    EXACT,
    INNER,
    VIOLATED,
    Locus,
    LocusBounds,
    NotStabilized,
    carries,
    eigen_vanishing_inner,
    exact_locus_on_stabilized,
    orbit_seminorm,
    seminorm_locus,
    universal_locus,
)
from fsnorm.seminorm import GeneratingFamily, Generated, Sum, Tabulated, Trivial

from randcat import random_family, random_stabilized_category

CIRCLE = one_object("X", 1, {"f": [[2]]})
IDEMPOTENT = one_object("X", 2, {"P": [[1, 0], [0, 0]]})
UNIPOTENT = one_object("X", 2, {"u": [[1, 1], [0, 1]]})
BARE = PresentedCategory((ObjectSpec("X", 2),))


def test_eigen_inner_examples():
    assert eigen_vanishing_inner(CIRCLE, 1)["X"].space == Subspace.full(1)
    assert eigen_vanishing_inner(IDEMPOTENT, 4)["X"].space.dim == 0
    assert eigen_vanishing_inner(BARE, 4)["X"].space.dim == 0
    with pytest.raises(ValueError):
        eigen_vanishing_inner(CIRCLE, 0)


def test_universal_examples():
    loc = universal_locus(CIRCLE)["X"]
    assert loc.space == Subspace.full(1) and loc.status == EXACT
    assert any(c.eigenvalue == 2 and c.witness_word == ("f",) for c in loc.certificates)
    assert all(c.verify(CIRCLE) for c in loc.certificates)
    loc = universal_locus(IDEMPOTENT)["X"]
    assert loc.space.dim == 0 and loc.status == EXACT
    loc = universal_locus(UNIPOTENT, 6, 16)["X"]
    assert loc.space.dim == 0 and loc.status == INNER


def test_pushforward_of_eigenvectors():
    # X --g--> Y, X has an expanding endomorphism; Y inherits vanishing
    from fsnorm.exactq import matrix
    from fsnorm.fincat import GeneratorArrow

    cat = PresentedCategory(
        (ObjectSpec("X", 2), ObjectSpec("Y", 1)),
        (GeneratorArrow("e", "X", "X", matrix([[3, 0], [0, 1]])),
         GeneratorArrow("g", "X", "Y", matrix([[1, 1]]))))
    res = universal_locus(cat, 4)
    assert res["X"].space == Subspace.span(2, [(1, 0)])
    assert res["Y"].space == Subspace.full(1)


def test_exact_locus_examples():
    fam = GeneratingFamily.from_elements([("X", (1, 0)), ("X", (0, 1))], [1, 2])
    assert exact_locus_on_stabilized(IDEMPOTENT, fam, "X").space.dim == 0
    fam0 = GeneratingFamily.from_elements([("X", (1, 1)), ("X", (0, 1))], [0, 2])
    loc = exact_locus_on_stabilized(IDEMPOTENT, fam0, "X")
    # reachable images of (1, 1): itself and P(1, 1) = (1, 0)
    assert loc.space == Subspace.full(2)
    assert loc.space.contains((0, 0))
    with pytest.raises(NotStabilized):
        exact_locus_on_stabilized(CIRCLE, GeneratingFamily.from_elements([("X", (1,))], [1]), "X", 4)


def test_seminorm_locus_kinds():
    g = Generated(IDEMPOTENT, GeneratingFamily.from_elements([("X", (1, 0)), ("X", (0, 1))], [0, 1]))
    b = seminorm_locus(g, "X", 8)
    assert b.exact and b.inner == Subspace.span(2, [(1, 0)])
    assert seminorm_locus(Trivial(IDEMPOTENT), "X", 1).inner == Subspace.full(2)
    s = seminorm_locus(Sum((g, Trivial(IDEMPOTENT))), "X", 8)
    assert s.inner == Subspace.span(2, [(1, 0)])
    t = seminorm_locus(Tabulated(IDEMPOTENT, {("X", (0, 1)): 0}), "X", 1)
    assert t.inner == Subspace.span(2, [(0, 1)]) and not t.exact


def test_generated_inner_uses_expanding_eigenvectors():
    from fsnorm.exactq import matrix
    from fsnorm.fincat import GeneratorArrow

    b = seminorm_locus(Generated(CIRCLE, GeneratingFamily.from_elements([("X", (1,))], [1])), "X", 6)
    assert b.inner == Subspace.full(1)
    cat = PresentedCategory(
        (ObjectSpec("X", 2), ObjectSpec("Y", 1)),
        (GeneratorArrow("e", "X", "X", matrix([[3, 0], [0, 1]])),
         GeneratorArrow("g", "X", "Y", matrix([[1, 1]]))))
    # the expanding direction is outside the finite domain, so it is not certified
    off = Generated(cat, GeneratingFamily.from_elements([("X", (0, 1))], [1]))
    assert seminorm_locus(off, "X", 4).inner.dim == 0
    assert seminorm_locus(off, "Y", 4).inner.dim == 0
    on = Generated(cat, GeneratingFamily.from_elements([("X", (1, 0))], [1]))
    assert seminorm_locus(on, "X", 4).inner == Subspace.span(2, [(1, 0)])
    assert seminorm_locus(on, "Y", 4).inner == Subspace.full(1)


def test_carries_examples():
    g = Generated(IDEMPOTENT, GeneratingFamily.from_elements([("X", (1, 0)), ("X", (0, 1))], [1, 1]))
    v = carries(IDEMPOTENT, g, g)
    assert v.status == CARRIES and v.note == "reflexive"
    v = carries(IDEMPOTENT, Trivial(IDEMPOTENT), g)
    assert v.status == VIOLATED and v.witness is not None
    assert v.sigma_value == 0 and v.tau_value > 0
    heavier = Generated(IDEMPOTENT, g.family.with_weights([3, 2]))
    assert carries(IDEMPOTENT, heavier, g).status == CARRIES
    assert carries(IDEMPOTENT, g, heavier).status == CARRIES


def test_carries_undetermined_and_locus_inputs():
    g = Generated(UNIPOTENT, GeneratingFamily.from_elements([("X", (1, 0))], [1]))
    h = Generated(UNIPOTENT, GeneratingFamily.from_elements([("X", (0, 1))], [1]))
    assert carries(UNIPOTENT, g, h, 3).status == "undetermined"
    full = {"X": Locus("X", Subspace.full(2), EXACT)}
    zero = {"X": Locus("X", Subspace.zero(2), EXACT)}
    assert carries(UNIPOTENT, zero, full).status == CARRIES
    assert carries(UNIPOTENT, full, zero).status == VIOLATED
    v = carries(IDEMPOTENT, Trivial(IDEMPOTENT), {"X": LocusBounds("X", Subspace.zero(2), Subspace.zero(2))})
    assert v.status == VIOLATED and v.tau_value is None


def test_orbit_seminorm_is_functorial():
    rng = random.Random(9)
    for _ in range(10):
        cat = random_stabilized_category(rng)
        spaces = {o.name: Subspace.zero(o.dim) for o in cat.objects}
        for g in cat.generators:
            x = tuple(F(rng.randint(-2, 2)) for _ in range(cat.dim(g.src)))
            assert (orbit_seminorm(cat, spaces, g.dst, g.matrix.apply(x))
                    <= orbit_seminorm(cat, spaces, g.src, x))


def test_random_locus_laws():
    rng = random.Random(77)
    for _ in range(15):
        cat = random_stabilized_category(rng)
        enum = enumerate_morphisms(cat, 32)
        uni = universal_locus(cat, 6)
        handles = [Generated(cat, random_family(rng, cat)) for _ in range(3)]
        for o in cat.object_names:
            for h in handles:
                b = seminorm_locus(h, o, 32)
                assert b.inner.is_subspace_of(b.outer) and b.exact
                # the universal locus sits inside every finite functorial zero set
                if uni[o].status == EXACT:
                    assert uni[o].space.is_subspace_of(b.outer) or not _finite(h, cat)
        for m in enum.morphisms:
            assert uni[m.src].space.image(m.matrix).is_subspace_of(uni[m.dst].space)
            for h in handles:
                a = seminorm_locus(h, m.src, 32).inner
                assert a.image(m.matrix).is_subspace_of(seminorm_locus(h, m.dst, 32).inner)


def _finite(h, cat):
    from fsnorm.seminorm import INF, evaluate

    return all(evaluate(h, o.name, b, 32).upper_bound is not INF
               for o in cat.objects for b in Subspace.full(o.dim).vectors())
