"""A functor with no universal finite functorial semi-norm, computed exactly.

Objects are the naturals ``m`` together with sequences ``w >= 1``; the only
non-identity arrows are ``f_{m,w}: m -> w``.  Every object carries ``Q``
and ``f_{m,w}`` acts by the integer ``d(m, w) = ceil(w(m))``.  Generating
on the elements ``1_m`` with weights ``v(m)`` gives

    |1_w|_v = inf_m v(m) / d(m, w).

Sequences are represented as *eventually affine*: an explicit prefix
followed by ``tail + slope * m``.  That class is closed under the
construction ``w(m) = m v(m) + 1`` for eventually constant ``v``, and the
infimum over the infinite tail can be computed in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactq import RationalMatrix, format_rational
from .fincat import GeneratorArrow, ObjectSpec, PresentedCategory, enumerate_morphisms
from .seminorm import INF
from .simplex import L1Problem, enumerate_basic_optima

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EventualSeq:
    """``m -> prefix[m]`` for ``m < len(prefix)``, else ``tail + slope * m``."""

    prefix: tuple
    tail: Fraction
    slope: Fraction = Fraction(0)

    LOWER = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(x) for x in self.prefix))
        object.__setattr__(self, "tail", Fraction(self.tail))
        object.__setattr__(self, "slope", Fraction(self.slope))
        if self.slope < 0:
            raise ValueError("slope must be nonnegative")
        low = [x for x in self.prefix] + [self.tail + self.slope * len(self.prefix)]
        if min(low) < self.LOWER:
            raise ValueError(f"sequence values must be >= {self.LOWER}")

    @classmethod
    def constant(cls, c) -> "EventualSeq":
        return cls((), Fraction(c))

    def __call__(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("index must be nonnegative")
        if m < len(self.prefix):
            return self.prefix[m]
        return self.tail + self.slope * m

    @property
    def tail_start(self) -> int:
        return len(self.prefix)

    def to_dict(self) -> dict:
        return {"prefix": [format_rational(x) for x in self.prefix],
                "tail": format_rational(self.tail), "slope": format_rational(self.slope)}


class SeqObject(EventualSeq):
    """A sequence with all values ``>= 1``: an object of the second kind."""

    LOWER = Fraction(1)


def degree(m: int, w: SeqObject) -> int:
    """``ceil(w(m))``, the integer by which ``f_{m,w}`` acts."""
    return math.ceil(w(m))


@dataclass(frozen=True)
class Infimum:
    value: Fraction
    attained: bool
    argmin: Optional[int]  # an index achieving the value, when attained


def ratio_infimum(num: EventualSeq, den: EventualSeq, start: int = 0) -> Infimum:
    """Exact ``inf_{m >= start} num(m) / ceil(den(m))``.

    Past both prefixes, ``ceil(c m + e)`` shifts by the integer ``c p`` when
    ``m`` grows by the denominator ``p`` of ``c``; on each residue class the
    ratio is a Moebius function of the step count, hence monotone, so its
    infimum is either its first value or its limit.
    """
    L = max(start, num.tail_start, den.tail_start)
    best: Optional[tuple] = None  # (value, attained, argmin)

    def offer(val, attained, arg):
        nonlocal best
        if best is None or val < best[0] or (val == best[0] and attained and not best[1]):
            best = (val, attained, arg)

    for m in range(start, L):
        offer(num(m) / math.ceil(den(m)), True, m)
    a, b = num.slope, num.tail
    c, e = den.slope, den.tail
    p = c.denominator if c else 1
    for m0 in range(L, L + p):
        A, B = a * p, a * m0 + b
        C, D = c * p, math.ceil(c * m0 + e)
        first = B / D
        if C == 0 or A * D - B * C >= 0:
            offer(first, True, m0)
        else:
            offer(A / C, False, None)
    return Infimum(*best)


def closed_form_value(v: EventualSeq, w: SeqObject, m_max: int):
    """``(min_{m <= m_max} v(m) / d(m, w), exact)``.

    ``exact`` says the minimum already equals the infimum over all ``m``.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    vals = [v(m) / degree(m, w) for m in range(m_max + 1)]
    upper = min(vals)
    return upper, upper == ratio_infimum(v, w).value


def closed_form_infimum(v: EventualSeq, w: SeqObject) -> Infimum:
    """``|1_w|_v`` exactly."""
    return ratio_infimum(v, w)


def truncated_category(M: int, seq_objects: Sequence[SeqObject]) -> PresentedCategory:
    """Objects ``0..M`` and the given sequences, with every ``f_{m,w}``."""
    objs = [ObjectSpec(f"n{m}", 1) for m in range(M + 1)]
    objs += [ObjectSpec(f"w{i}", 1) for i in range(len(seq_objects))]
    gens = [
        GeneratorArrow(f"f_{m}_{i}", f"n{m}", f"w{i}", RationalMatrix.from_rows([[degree(m, w)]]))
        for i, w in enumerate(seq_objects)
        for m in range(M + 1)
    ]
    return PresentedCategory(tuple(objs), tuple(gens))


def brute_force_value(M: int, v: EventualSeq, w: SeqObject, support_bound: int = 8,
                      extra_objects: Sequence[SeqObject] = (), target=1):
    """``|target * 1_w|_v`` by enumerating basic representations in a truncation.

    The truncation keeps the naturals ``0..M`` and the sequence objects;
    ``support_bound`` caps the number of candidate terms the oracle will
    enumerate (it refuses larger instances).
    """
    seqs = [w] + [x for x in extra_objects if x != w]
    cat = truncated_category(M, seqs)
    enum = enumerate_morphisms(cat, 1)
    assert enum.stabilized
    cols, weights = [], []
    for m in range(M + 1):
        for mor in enum.hom(f"n{m}", "w0"):
            cols.append(mor.matrix.apply((Fraction(1),)))
            weights.append(v(m))
    prob = L1Problem.from_columns(cols, (Fraction(target),), weights)
    sol = enumerate_basic_optima(prob, max_cols=support_bound)
    return sol.value if sol.feasible else INF


@dataclass(frozen=True)
class GapReport:
    v: EventualSeq
    w: SeqObject
    lower_bound_w: Fraction  # exact value of |1_w|_w
    lower_bound_certified: bool  # |1_w|_w >= 1/2
    upper_bounds_v: tuple  # v(m) / ceil(w(m)) for m = 0..m_max
    upper_bounds_ok: bool  # each is <= 1/m for m >= 1
    infimum_v: Fraction  # exact |1_w|_v

    def to_dict(self) -> dict:
        return {
            "v": self.v.to_dict(),
            "w": self.w.to_dict(),
            "lower_bound_w": format_rational(self.lower_bound_w),
            "lower_bound_certified": self.lower_bound_certified,
            "upper_bounds_v": [format_rational(x) for x in self.upper_bounds_v],
            "upper_bounds_le_1_over_m": self.upper_bounds_ok,
            "infimum_v": format_rational(self.infimum_v),
        }

    def table(self) -> str:
        lines = [
            f"|1_w|_w = {format_rational(self.lower_bound_w)}"
            f"  (>= 1/2: {'yes' if self.lower_bound_certified else 'NO'})",
            f"|1_w|_v = {format_rational(self.infimum_v)}",
            f"{'m':>4}  {'w(m)':>10}  {'v(m)/ceil(w(m))':>16}  {'1/m':>8}",
        ]
        for m, ub in enumerate(self.upper_bounds_v):
            bound = "-" if m == 0 else format_rational(Fraction(1, m))
            lines.append(f"{m:>4}  {format_rational(self.w(m)):>10}  {format_rational(ub):>16}  {bound:>8}")
        return "\n".join(lines)


def construct_w(v: EventualSeq) -> SeqObject:
    """``w(m) = m * v(m) + 1``; eventually affine when ``v`` is eventually constant."""
    if v.slope != 0:
        raise ValueError("candidate weights must be eventually constant")
    return SeqObject(tuple(m * x + 1 for m, x in enumerate(v.prefix)), Fraction(1), v.tail)


def gap_demo(v_candidate: EventualSeq, m_max: int = 64) -> GapReport:
    """Show that ``|.|_w`` is not carried by anything below ``|.|_v``.

    ``|1_w|_w`` is computed exactly (and checked to be at least 1/2) while
    the upper bounds ``v(m) / ceil(w(m))`` on ``|1_w|_v`` fall below ``1/m``.
    """
    w = construct_w(v_candidate)
    lower = ratio_infimum(w, w)
    prefix_ok = all(w(m) / degree(m, w) >= HALF for m in range(w.tail_start))
    certified = prefix_ok and lower.value >= HALF
    ubs = tuple(v_candidate(m) / degree(m, w) for m in range(m_max + 1))
    ok = all(ub <= Fraction(1, m) for m, ub in enumerate(ubs) if m >= 1)
    return GapReport(v_candidate, w, lower.value, certified, ubs, ok,
                     ratio_infimum(v_candidate, w).value)


__all__ = [
    "EventualSeq", "SeqObject", "Infimum", "GapReport", "degree", "ratio_infimum",
    "closed_form_value", "closed_form_infimum", "truncated_category", "brute_force_value",
    "construct_w", "gap_demo",
]
