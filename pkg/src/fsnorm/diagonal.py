"""Carrying a whole sequence of generated semi-norms at once.

Given weight functions ``v_0, v_1, ...`` on an enumerated family
``a_0, a_1, ...``, the diagonal weight ``v(a_n) = max(1, v_0(a_n), ...,
v_n(a_n))`` is finite everywhere, and for every ``m`` the generated
semi-norm satisfies ``|a|_v >= Q_m |a|_{v_m}`` with an explicit constant
``Q_m`` in ``(0, 1]``.  Hence ``|.|_v`` carries every ``|.|_{v_m}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from .exactq import format_rational, vec
from .fincat import PresentedCategory, enumerate_morphisms
from .seminorm import (
    INF,
    GeneratingFamily,
    Generated,
    SeminormHandle,
    eval_generated,
    evaluate,
    fmt_value,
)

WeightFn = Union[Sequence, Callable[[int], Fraction]]


@dataclass(frozen=True)
class Enumeration:
    """Ordered, duplicate-free list of family elements ``(object, vector)``."""

    entries: tuple

    def __post_init__(self):
        ents = tuple((str(o), vec(v)) for o, v in self.entries)
        if len(set(ents)) != len(ents):
            raise ValueError("enumeration entries must be distinct")
        object.__setattr__(self, "entries", ents)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def family(self, weights: Sequence) -> GeneratingFamily:
        return GeneratingFamily.from_elements(self.entries[: len(weights)], list(weights))


def _weight(fn: WeightFn, k: int) -> Fraction:
    x = fn(k) if callable(fn) else fn[k]
    if x is INF:
        raise ValueError(f"weight at index {k} is infinite")
    return Fraction(x)


def diagonal_weights(en: Enumeration, families: Sequence[WeightFn], n_max: int = None) -> list:
    """``v(a_n) = max(1, v_0(a_n), ..., v_n(a_n))`` for ``n < n_max``.

    Each weight only looks at the families with index at most ``n``, so
    extending the prefix never changes earlier weights.
    """
    if n_max is None:
        n_max = len(en)
    if n_max > len(en):
        raise ValueError("n_max exceeds the enumeration length")
    out = []
    for n in range(n_max):
        vals = [Fraction(1)] + [_weight(families[j], n) for j in range(min(n + 1, len(families)))]
        out.append(max(vals))
    return out


@dataclass(frozen=True)
class DiagonalReport:
    v: tuple
    m: int
    q_values: tuple  # q_0 .. q_k; the implicit q_{-1} = 1 is not listed
    Q: Fraction
    exact: bool
    depth: int
    norms: tuple = ()  # |a_k|_{v_m} used for each q_k (upper bounds when not exact)
    verified_samples: tuple = field(default=())
    rhs_depth: int = None

    def to_dict(self) -> dict:
        return {
            "v": [format_rational(x) for x in self.v],
            "m": self.m,
            "q_values": [format_rational(x) for x in self.q_values],
            "Q": format_rational(self.Q),
            "exact": self.exact,
            "depth": self.depth,
            "rhs_depth": self.rhs_depth,
            "norms_vm": [fmt_value(x) for x in self.norms],
            "norm_kind": "exact" if self.exact else "upper-bound-only",
            "verified_samples": [
                {"object": o, "vector": [format_rational(x) for x in a], "lhs": fmt_value(l),
                 "rhs": fmt_value(r), "holds": ok}
                for (o, a), l, r, ok in self.verified_samples
            ],
        }


def q_constant(cat: PresentedCategory, en: Enumeration, v: Sequence, families: Sequence[WeightFn],
               m: int, depth: int) -> DiagonalReport:
    """``q_k = v(a_k) / |a_k|_{v_m}`` (1 when the norm vanishes) and ``Q = min(1, q_0..q_m)``.

    On a category whose enumeration has closed up, the norms are exact.
    Otherwise they are upper bounds, so each ``q_k`` with a nonzero true
    norm is only a lower bound for the true one; ``exact`` is then False.
    """
    n = len(v)
    vm = [_weight(families[m], k) for k in range(n)]
    fam_m = en.family(vm)
    qs, norms = [], []
    exact = True
    for k in range(min(m, n - 1) + 1):
        o, a = en[k]
        val = eval_generated(cat, fam_m, o, a, depth)
        exact = exact and val.exact
        norms.append(val.upper_bound)
        if val.upper_bound == 0:
            qs.append(Fraction(1))
        else:
            qs.append(Fraction(v[k]) / val.upper_bound)
    Q = min([Fraction(1)] + qs)
    stable = enumerate_morphisms(cat, depth).stabilized
    return DiagonalReport(tuple(v), m, tuple(qs), Q, exact and stable, depth, tuple(norms))


def verify_carry_bound(cat: PresentedCategory, en: Enumeration, v: Sequence,
                       families: Sequence[WeightFn], m: int, samples: Sequence,
                       depth: int) -> DiagonalReport:
    """Check ``|a|_v >= Q |a|_{v_m}`` on every sample ``(object, vector)``.

    On a closed enumeration both sides are exact.  Otherwise the right side
    is evaluated at depth ``2 * depth``: splicing the depth-``d``
    representations of the ``a_k`` into a depth-``d`` representation of
    ``a`` produces words of length up to ``2d``, and with that allowance
    the bound holds for truncated values too.
    """
    rep = q_constant(cat, en, v, families, m, depth)
    rhs_depth = depth if enumerate_morphisms(cat, depth).stabilized else 2 * depth
    fam_v = en.family(list(v))
    vm = [_weight(families[m], k) for k in range(len(v))]
    fam_m = en.family(vm)
    checked = []
    for o, a in samples:
        a = vec(a)
        lhs = eval_generated(cat, fam_v, o, a, depth).upper_bound
        norm = eval_generated(cat, fam_m, o, a, rhs_depth).upper_bound
        rhs = INF if norm is INF else rep.Q * norm
        checked.append(((o, a), lhs, rhs, lhs >= rhs))
    return DiagonalReport(rep.v, rep.m, rep.q_values, rep.Q, rep.exact, depth, rep.norms,
                          tuple(checked), rhs_depth)


@dataclass(frozen=True)
class CarriedFamily:
    handle: Generated
    weights: tuple
    member_weights: tuple
    exact: bool


def carry_family(cat: PresentedCategory, en: Enumeration, handles: Sequence[SeminormHandle],
                 n_max: int = None, depth: int = 8) -> CarriedFamily:
    """Generated semi-norm carrying every handle in ``handles``.

    Each handle ``tau`` contributes the weights ``a -> |a|_tau`` on the
    enumeration; the diagonal of these weights generates the result.
    """
    if n_max is None:
        n_max = len(en)
    members, exact = [], True
    for h in handles:
        vals = [evaluate(h, o, a, depth) for o, a in en.entries[:n_max]]
        if any(x.is_infinite for x in vals):
            raise ValueError("a member semi-norm is infinite on the enumeration")
        exact = exact and all(x.exact for x in vals)
        members.append(tuple(x.upper_bound for x in vals))
    w = diagonal_weights(en, members, n_max)
    return CarriedFamily(Generated(cat, en.family(w)), tuple(w), tuple(members), exact)
