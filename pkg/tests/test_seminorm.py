import random
from fractions import Fraction as F

import pytest

from fsnorm.exactq import RationalMatrix, matrix
from fsnorm.fincat import CatFunctor, GeneratorArrow, ObjectSpec, PresentedCategory, one_object
from fsnorm.seminorm import (
    INF,
    OK,
    VIOLATION,
    GeneratingFamily,
    Generated,
    NatTransform,
    ObjectMismatch,
    Pullback,
    Sum,
    Tabulated,
    TabulatedMiss,
    TransferError,
    Trivial,
    check_functorial,
    covers_every_object,
    eval_generated,
    evaluate,
    transfer_along_retraction,
    weights_from,
)
from fsnorm.simplex import L1Problem, enumerate_basic_optima

from randcat import conjugate, random_family, random_samples, random_stabilized_category

CIRCLE = one_object("X", 1, {"f": [[2]]})
UNIT = GeneratingFamily.from_elements([("X", (1,))], [1])
IDEMPOTENT = one_object("X", 2, {"P": [[1, 0], [0, 0]]})


def test_circle_values():
    for k in range(6):
        v = eval_generated(CIRCLE, UNIT, "X", (1,), k)
        assert v.upper_bound == F(1, 2 ** k) and not v.exact
        if k <= 3:
            oracle = enumerate_basic_optima(
                L1Problem.from_columns([[2 ** j] for j in range(k + 1)], [1], [1] * (k + 1)))
            assert oracle.value == v.upper_bound
    assert str(eval_generated(CIRCLE, UNIT, "X", (1,), 4)) == "1/16 (upper bound, not exact)"


def test_zero_and_family_bound():
    assert str(eval_generated(CIRCLE, UNIT, "X", (0,), 3)) == "0 (exact)"
    fam = GeneratingFamily.from_elements([("X", (1, 1))], [F(7, 3)])
    assert eval_generated(IDEMPOTENT, fam, "X", (1, 1), 0).upper_bound <= F(7, 3)


def test_unreachable_is_infinite():
    fam = GeneratingFamily.from_elements([("X", (1, 0))], [1])
    v = eval_generated(IDEMPOTENT, fam, "X", (0, 1), 4)
    assert v.upper_bound is INF and str(v).startswith("infinity at depth 4")


def test_object_mismatch():
    with pytest.raises(ObjectMismatch):
        eval_generated(CIRCLE, UNIT, "X", (1, 2), 1)
    with pytest.raises(ObjectMismatch):
        eval_generated(CIRCLE, UNIT, "Y", (1,), 1)


def test_handle_kinds():
    g = Generated(IDEMPOTENT, GeneratingFamily.from_elements([("X", (1, 0)), ("X", (0, 1))], [2, 3]))
    a = (F(1), F(-1, 2))
    assert evaluate(Trivial(IDEMPOTENT), "X", a, 3).upper_bound == 0
    assert evaluate(Sum((Trivial(IDEMPOTENT), g)), "X", a, 3) == evaluate(g, "X", a, 3)
    two = NatTransform(IDEMPOTENT, IDEMPOTENT, {"X": RationalMatrix.scalar(2, 2)})
    assert two.check() == []
    pb = evaluate(Pullback(two, g), "X", a, 3).upper_bound
    assert pb == 2 * evaluate(g, "X", a, 3).upper_bound == 7
    t = Tabulated(IDEMPOTENT, {("X", (1, 0)): 5})
    assert evaluate(t, "X", (1, 0), 0).upper_bound == 5
    with pytest.raises(TabulatedMiss):
        evaluate(t, "X", (0, 1), 0)
    assert evaluate(Sum((g, Tabulated(IDEMPOTENT, {("X", a): INF}))), "X", a, 1).upper_bound is INF


def test_check_functorial_examples():
    g = Generated(IDEMPOTENT, GeneratingFamily.from_elements([("X", (1, 1))], [1]))
    samples = {"X": [(1, 1), (2, -1), (0, 1)]}
    assert check_functorial(IDEMPOTENT, g, 4, samples).violations == []
    assert check_functorial(IDEMPOTENT, Trivial(IDEMPOTENT), 4, samples).violations == []
    bad = Tabulated(IDEMPOTENT, {("X", (1, 1)): 1, ("X", (1, 0)): 5})
    rep = check_functorial(IDEMPOTENT, bad, 0, {"X": [(1, 1)]})
    assert len(rep.violations) == 1 and rep.violations[0].verdict == VIOLATION


def test_circle_functoriality_is_undetermined_not_violated():
    g = Generated(CIRCLE, UNIT)
    rep = check_functorial(CIRCLE, g, 3, {"X": [(1,), (3,)]})
    assert rep.violations == []
    assert all(c.verdict in (OK, "undetermined") for c in rep.checks)


def test_covering():
    assert covers_every_object(CIRCLE, UNIT)
    two = PresentedCategory((ObjectSpec("X", 1), ObjectSpec("Y", 1)))
    assert not covers_every_object(two, UNIT)


# transfer -----------------------------------------------------------------

def _retract_instance():
    C = PresentedCategory((ObjectSpec("X", 1), ObjectSpec("Y", 1)),
                          (GeneratorArrow("f", "X", "Y", matrix([[2]])),
                           GeneratorArrow("g", "Y", "X", matrix([[F(1, 2)]]))))
    D = PresentedCategory((ObjectSpec("Z", 1),))
    A = CatFunctor(C, D, {"X": "Z", "Y": "Z"}, {"f": (), "g": ()})
    B = CatFunctor(D, C, {"Z": "X"}, {})
    lam = NatTransform(D, D, {"Z": matrix([[1]])}, functor=B.then(A))
    psi = NatTransform(C, D, {"X": matrix([[1]]), "Y": matrix([[F(1, 2)]])}, functor=A)
    return C, D, A, B, lam, psi


def test_transfer_identity():
    g = Generated(IDEMPOTENT, GeneratingFamily.from_elements([("X", (1, 1)), ("X", (0, 1))], [1, 2]))
    idf = CatFunctor.identity(IDEMPOTENT)
    ident = NatTransform(IDEMPOTENT, IDEMPOTENT, {"X": RationalMatrix.identity(2)}, functor=idf)
    h = transfer_along_retraction(idf, idf, ident, ident, g)
    for a in [(1, 0), (0, 1), (3, -2), (F(1, 2), 5)]:
        assert evaluate(h, "X", a, 5) == evaluate(g, "X", a, 5)


def test_transfer_retract_is_functorial_and_isometric():
    C, D, A, B, lam, psi = _retract_instance()
    sigma = Generated(C, GeneratingFamily.from_elements([("X", (1,)), ("Y", (1,))], [3, 1]))
    h = transfer_along_retraction(A, B, lam, psi, sigma)
    assert h.category == D
    assert check_functorial(D, h, 4, {"Z": [(1,), (-2,)]}).violations == []
    for a in [(1,), (F(-3, 2),)]:
        lam_a = lam.component("Z").apply(a)
        assert evaluate(h, "Z", lam_a, 4) == evaluate(h, "Z", a, 4)
    # |1|_sigma at X: min(3, 1 * |F(g)|^-1) = 2; psi_X = 1
    assert evaluate(h, "Z", (1,), 4).upper_bound == 2


def test_transfer_rejects_bad_input():
    C, D, A, B, lam, psi = _retract_instance()
    sigma = Trivial(C)
    singular = NatTransform(C, D, {"X": matrix([[0]]), "Y": matrix([[0]])}, functor=A)
    with pytest.raises(TransferError):
        transfer_along_retraction(A, B, lam, singular, sigma)
    unnatural = NatTransform(C, D, {"X": matrix([[1]]), "Y": matrix([[1]])}, functor=A)
    with pytest.raises(TransferError):
        transfer_along_retraction(A, B, lam, unnatural, sigma)


# laws on random stabilized instances --------------------------------------------

@pytest.fixture(scope="module")
def suite():
    rng = random.Random(2024)
    out = []
    for _ in range(15):
        cat = random_stabilized_category(rng)
        out.append((cat, random_family(rng, cat), random_samples(rng, cat, 8), rng))
    return out


def test_truncation_monotone(suite):
    for cat, fam, samples, _ in suite:
        for o, a in samples:
            vals = [eval_generated(cat, fam, o, a, d).upper_bound for d in range(4)]
            assert all(x >= y for x, y in zip(vals, vals[1:]))


def test_homogeneity_and_triangle(suite):
    for cat, fam, samples, _ in suite:
        for (o, a), (o2, b) in zip(samples, samples[1:]):
            va = eval_generated(cat, fam, o, a, 32).upper_bound
            for c in (F(-2), F(1, 3)):
                vc = eval_generated(cat, fam, o, tuple(c * x for x in a), 32).upper_bound
                assert vc == (INF if va is INF else abs(c) * va)
            if o == o2:
                s = tuple(x + y for x, y in zip(a, b))
                vb = eval_generated(cat, fam, o, b, 32).upper_bound
                assert eval_generated(cat, fam, o, s, 32).upper_bound <= va + vb


def test_monotone_weights(suite):
    for cat, fam, samples, rng in suite:
        heavier = fam.with_weights([w + rng.choice([0, F(1, 2), 2]) for w in fam.weights])
        for o, a in samples:
            assert (eval_generated(cat, heavier, o, a, 32).upper_bound
                    >= eval_generated(cat, fam, o, a, 32).upper_bound)


def test_roundtrip(suite):
    for cat, fam, samples, rng in suite:
        sigma = Generated(cat, random_family(rng, cat))
        w, exact = weights_from(sigma, fam.elements, 32)
        assert exact
        if any(x is INF for x in w):
            continue
        rt = fam.with_weights(w)
        for o, a in samples:
            assert eval_generated(cat, rt, o, a, 32).upper_bound >= evaluate(sigma, o, a, 32).upper_bound


def test_pullback_along_conjugation(suite):
    for cat, _, samples, rng in suite:
        cat2, T = conjugate(rng, cat)
        eta = NatTransform(cat, cat2, T)
        assert eta.check() == [] and eta.is_invertible()
        sigma = Generated(cat2, random_family(rng, cat2))
        pb = Pullback(eta, sigma)
        grid = {}
        for o, a in samples:
            grid.setdefault(o, []).append(a)
        rep = check_functorial(cat, pb, 32, grid)
        assert rep.violations == [] and rep.undetermined == []
