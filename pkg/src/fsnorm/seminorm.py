"""Functorial semi-norms: generated, trivial, sums, pull-backs and tables.

A generated semi-norm assigns to an element the cheapest way of writing
it as a rational combination of images of family elements under
morphisms, each term costing ``|coefficient| * weight``.  Morphisms are
enumerated up to a word-length ``depth``, so a value is an upper bound
on the true infimum; it is flagged ``exact`` only when the enumeration
has closed up (or the value is already 0).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Optional, Sequence, Union

from .exactq import (
    RationalMatrix,
    Subspace,
    format_rational,
    is_zero_vector,
    parse_rational,
    vec,
)
from .fincat import CatFunctor, PresentedCategory, enumerate_morphisms
from .simplex import L1Problem, min_weighted_l1


class ObjectMismatch(ValueError):
    """Element does not live in the named object's vector space."""


class TabulatedMiss(KeyError):
    """A tabulated semi-norm was asked about an element it does not list."""


class TransferError(ValueError):
    """Bad data for the retraction transfer (non-invertible or non-natural)."""


@total_ordering
class _Infinity:
    """The value of an element with no representation at all."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("fsnorm-infinity")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ValueError("0 * infinity is undefined here")
        return self

    __rmul__ = __mul__


INF = _Infinity()


def fmt_value(x) -> str:
    return "inf" if x is INF else format_rational(x)


# families ------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyEntry:
    object: str
    vector: tuple
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "vector", vec(self.vector))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight < 0:
            raise ValueError("family weights must be nonnegative")


@dataclass(frozen=True)
class GeneratingFamily:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            tuple(e if isinstance(e, FamilyEntry) else FamilyEntry(*e) for e in self.entries),
        )

    @classmethod
    def from_elements(cls, elements: Sequence, weights: Sequence) -> "GeneratingFamily":
        if len(elements) != len(weights):
            raise ValueError("one weight per element")
        return cls(tuple(FamilyEntry(o, v, w) for (o, v), w in zip(elements, weights)))

    @property
    def elements(self) -> list:
        return [(e.object, e.vector) for e in self.entries]

    @property
    def weights(self) -> list:
        return [e.weight for e in self.entries]

    def with_weights(self, weights: Sequence) -> "GeneratingFamily":
        return GeneratingFamily.from_elements(self.elements, list(weights))

    def check(self, cat: PresentedCategory) -> None:
        for i, e in enumerate(self.entries):
            if not cat.has_object(e.object):
                raise ObjectMismatch(f"entry {i}: unknown object {e.object!r}")
            if len(e.vector) != cat.dim(e.object):
                raise ObjectMismatch(
                    f"entry {i}: vector of length {len(e.vector)} in object of dim {cat.dim(e.object)}"
                )

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"object": e.object, "vector": [format_rational(x) for x in e.vector],
                 "weight": format_rational(e.weight)}
                for e in self.entries
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratingFamily":
        if not isinstance(data, dict) or set(data) != {"entries"}:
            raise ValueError("family must be an object with exactly the key 'entries'")
        out = []
        for i, e in enumerate(data["entries"]):
            if not isinstance(e, dict) or set(e) != {"object", "vector", "weight"}:
                raise ValueError(f"entries[{i}]: expected keys object, vector, weight")
            out.append(FamilyEntry(str(e["object"]), tuple(parse_rational(x) for x in e["vector"]),
                                   parse_rational(e["weight"])))
        return cls(tuple(out))


def load_family(path) -> GeneratingFamily:
    with open(path, encoding="utf-8") as fh:
        return GeneratingFamily.from_dict(json.load(fh))


def covers_every_object(cat: PresentedCategory, fam: GeneratingFamily) -> bool:
    """Family entries at each object span its space: then finite weights give a finite semi-norm."""
    for o in cat.objects:
        vs = [e.vector for e in fam.entries if e.object == o.name]
        if Subspace.span(o.dim, vs).dim != o.dim:
            return False
    return True


# values ------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """One summand ``coefficient * F(word)(family[entry])``."""

    coefficient: Fraction
    entry: int
    src: str
    word: tuple


@dataclass(frozen=True)
class TruncatedValue:
    depth: int
    upper_bound: Union[Fraction, _Infinity]
    exact: bool
    representation: tuple = field(default=(), compare=False)

    @property
    def is_infinite(self) -> bool:
        return self.upper_bound is INF

    def __str__(self) -> str:
        if self.is_infinite:
            return f"infinity at depth {self.depth}" + (" (exact)" if self.exact else "")
        tag = "exact" if self.exact else "upper bound, not exact"
        return f"{format_rational(self.upper_bound)} ({tag})"

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "value": fmt_value(self.upper_bound),
            "exact": self.exact,
            "representation": [
                {"coefficient": format_rational(t.coefficient), "entry": t.entry,
                 "source": t.src, "word": list(t.word)}
                for t in self.representation
            ],
        }


@dataclass(frozen=True)
class _ColumnSet:
    directions: tuple  # normalised column vectors
    weights: tuple
    provenance: tuple  # (entry index, src, word, scale) with column = scale * direction
    stabilized: bool


@lru_cache(maxsize=4096)
def _columns(cat: PresentedCategory, fam: GeneratingFamily, obj: str, depth: int) -> _ColumnSet:
    enum = enumerate_morphisms(cat, depth)
    best: dict = {}
    for idx, e in enumerate(fam.entries):
        for mor in enum.hom(e.object, obj):
            col = mor.matrix.apply(e.vector)
            lead = next((x for x in col if x != 0), None)
            if lead is None:
                continue
            # c * u with weight w costs the same as u with weight w/|c|
            u = tuple(x / lead for x in col)
            w = e.weight / abs(lead)
            cur = best.get(u)
            if cur is None or w < cur[0]:
                best[u] = (w, (idx, e.object, mor.witness_word, lead))
    dirs = tuple(best)
    return _ColumnSet(
        dirs,
        tuple(best[u][0] for u in dirs),
        tuple(best[u][1] for u in dirs),
        enum.stabilized,
    )


def _check_element(cat: PresentedCategory, obj: str, vector: Sequence) -> tuple:
    if not cat.has_object(obj):
        raise ObjectMismatch(f"unknown object {obj!r}")
    vector = vec(vector)
    if len(vector) != cat.dim(obj):
        raise ObjectMismatch(f"vector of length {len(vector)} in object {obj!r} of dim {cat.dim(obj)}")
    return vector


def eval_generated(
    cat: PresentedCategory, fam: GeneratingFamily, obj: str, vector: Sequence, depth: int
) -> TruncatedValue:
    """Truncated value of the semi-norm generated by ``fam`` at ``(obj, vector)``."""
    vector = _check_element(cat, obj, vector)
    if is_zero_vector(vector):
        return TruncatedValue(depth, Fraction(0), True)
    cs = _columns(cat, fam, obj, depth)
    dim = cat.dim(obj)
    prob = L1Problem(RationalMatrix.from_columns(cs.directions, rows=dim), vector, cs.weights)
    sol = min_weighted_l1(prob)
    if not sol.feasible:
        return TruncatedValue(depth, INF, cs.stabilized)
    terms = tuple(
        Term(b / scale, idx, src, word)
        for b, (idx, src, word, scale) in zip(sol.coefficients, cs.provenance)
        if b != 0
    )
    return TruncatedValue(depth, sol.value, cs.stabilized or sol.value == 0, terms)


# handles -----------------------------------------------------------------

@dataclass(frozen=True)
class Generated:
    category: PresentedCategory
    family: GeneratingFamily


@dataclass(frozen=True)
class Trivial:
    category: PresentedCategory


@dataclass(frozen=True)
class Sum:
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("empty sum; use Trivial")

    @property
    def category(self) -> PresentedCategory:
        return self.members[0].category


@dataclass(frozen=True)
class Tabulated:
    """Explicit values on finitely many elements."""

    category: PresentedCategory
    table: tuple  # (((object, vector), value), ...)

    def __post_init__(self):
        items = self.table.items() if isinstance(self.table, dict) else self.table
        object.__setattr__(
            self, "table",
            tuple(((o, vec(v)), x if x is INF else Fraction(x)) for (o, v), x in items),
        )

    def lookup(self, obj: str, vector: Sequence):
        key = (obj, vec(vector))
        for k, x in self.table:
            if k == key:
                return x
        raise TabulatedMiss(key)


@dataclass(frozen=True)
class NatTransform:
    """Components ``eta_X : F(X) -> F'(Phi X)`` for a functor ``Phi``.

    With ``functor=None`` the source and target categories coincide as
    shapes and ``Phi`` is the identity on names; this is the ordinary case
    ``F => F'``.  A non-trivial ``Phi`` lets the target be ``F' o Phi``.
    """

    source: PresentedCategory
    target: PresentedCategory
    components: tuple  # ((object, matrix), ...)
    functor: Optional[CatFunctor] = None

    def __post_init__(self):
        items = self.components.items() if isinstance(self.components, dict) else self.components
        object.__setattr__(self, "components", tuple(sorted(items, key=lambda kv: kv[0])))

    def component(self, obj: str) -> RationalMatrix:
        for k, m in self.components:
            if k == obj:
                return m
        raise KeyError(f"no component at {obj!r}")

    def target_object(self, obj: str) -> str:
        return obj if self.functor is None else self.functor.obj(obj)

    def _image_matrix(self, gen_name: str) -> RationalMatrix:
        if self.functor is None:
            return self.target.generator(gen_name).matrix
        return self.functor.matrix_of(gen_name)

    def check(self) -> list:
        """Shape and naturality-square violations (empty list when natural)."""
        errors = []
        if self.functor is not None:
            errors += self.functor.check()
            if errors:
                return errors
        for o in self.source.objects:
            try:
                m = self.component(o.name)
            except KeyError as exc:
                errors.append(str(exc))
                continue
            t = self.target_object(o.name)
            if m.shape != (self.target.dim(t), o.dim):
                errors.append(f"component at {o.name!r} has shape {m.shape}")
        if errors:
            return errors
        for g in self.source.generators:
            lhs = self.component(g.dst) @ g.matrix
            rhs = self._image_matrix(g.name) @ self.component(g.src)
            if lhs != rhs:
                errors.append(f"naturality fails at generator {g.name!r}")
        return errors

    def is_invertible(self) -> bool:
        return all(m.is_square() and m.inverse() is not None for _, m in self.components)


@dataclass(frozen=True)
class Pullback:
    eta: NatTransform
    inner: "SeminormHandle"

    @property
    def category(self) -> PresentedCategory:
        return self.eta.source


SeminormHandle = Union[Generated, Trivial, Sum, Pullback, Tabulated]


def evaluate(handle: SeminormHandle, obj: str, vector: Sequence, depth: int) -> TruncatedValue:
    """Dispatch evaluation over the handle kinds."""
    vector = _check_element(handle.category, obj, vector)
    if isinstance(handle, Generated):
        return eval_generated(handle.category, handle.family, obj, vector, depth)
    if isinstance(handle, Trivial):
        return TruncatedValue(depth, Fraction(0), True)
    if isinstance(handle, Sum):
        total = Fraction(0)
        exact = True
        for h in handle.members:
            v = evaluate(h, obj, vector, depth)
            total = total + v.upper_bound
            exact = exact and v.exact
        return TruncatedValue(depth, total, exact or total == 0)
    if isinstance(handle, Pullback):
        image = handle.eta.component(obj).apply(vector)
        return evaluate(handle.inner, handle.eta.target_object(obj), image, depth)
    if isinstance(handle, Tabulated):
        return TruncatedValue(depth, handle.lookup(obj, vector), True)
    raise TypeError(f"not a semi-norm handle: {handle!r}")


def weights_from(handle: SeminormHandle, elements: Sequence, depth: int):
    """Values of ``handle`` on ``elements``; returns (weights, all_exact)."""
    vals = [evaluate(handle, o, v, depth) for o, v in elements]
    return [v.upper_bound for v in vals], all(v.exact for v in vals)


# functoriality -------------------------------------------------------------

OK = "ok"
VIOLATION = "violation"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FunctorialityCheck:
    generator: str
    object: str
    vector: tuple
    image_value: TruncatedValue
    value: TruncatedValue
    verdict: str


@dataclass
class FunctorialityReport:
    checks: list

    @property
    def violations(self) -> list:
        return [c for c in self.checks if c.verdict == VIOLATION]

    @property
    def undetermined(self) -> list:
        return [c for c in self.checks if c.verdict == UNDETERMINED]


def _le_verdict(lhs: TruncatedValue, rhs: TruncatedValue) -> str:
    """Decide ``true(lhs) <= true(rhs)`` from upper bounds with exactness flags."""
    if rhs.exact and lhs.upper_bound <= rhs.upper_bound:
        return OK
    if lhs.upper_bound == 0:
        return OK
    if lhs.exact and lhs.upper_bound > rhs.upper_bound:
        return VIOLATION
    return UNDETERMINED


def check_functorial(cat: PresentedCategory, handle: SeminormHandle, depth: int,
                     samples: dict) -> FunctorialityReport:
    """Test ``|F(f) a| <= |a|`` for every generator ``f`` and sample ``a``."""
    checks = []
    for g in cat.generators:
        for v in samples.get(g.src, ()):
            v = vec(v)
            rhs = evaluate(handle, g.src, v, depth)
            lhs = evaluate(handle, g.dst, g.matrix.apply(v), depth)
            checks.append(FunctorialityCheck(g.name, g.src, v, lhs, rhs, _le_verdict(lhs, rhs)))
    return FunctorialityReport(checks)


# transfer along weak retractions ---------------------------------------------

def transfer_along_retraction(
    A: CatFunctor,
    B: CatFunctor,
    lam: NatTransform,
    psi: NatTransform,
    sigma: SeminormHandle,
) -> Pullback:
    """Move a semi-norm on ``F`` (over C) to ``G`` (over D).

    ``A: C -> D`` and ``B: D -> C`` with ``lam: Id_D => A B`` (given by its
    ``G``-components) and ``psi: F => G A``.  The result is the pull-back of
    ``sigma o B`` along ``psi^{-1} o G(lam)``.
    """
    for name, f in (("A", A), ("B", B)):
        errs = f.check()
        if errs:
            raise TransferError(f"functor {name}: {errs}")
    errs = lam.check()
    if errs:
        raise TransferError(f"lambda: {errs}")
    errs = psi.check()
    if errs:
        raise TransferError(f"psi: {errs}")
    if not lam.is_invertible():
        raise TransferError("lambda is not an isomorphism")
    if not psi.is_invertible():
        raise TransferError("psi is not an isomorphism")
    C, D = A.source, A.target
    if B.source != D or B.target != C:
        raise TransferError("B must go from the target of A back to its source")
    comps = {}
    for o in D.objects:
        bo = B.obj(o.name)
        psi_inv = psi.component(bo).inverse()
        comps[o.name] = psi_inv @ lam.component(o.name)
    phi = NatTransform(D, C, comps, functor=B)
    errs = phi.check()
    if errs:  # pragma: no cover - follows from the checks above
        raise TransferError(f"composite transformation: {errs}")
    return Pullback(phi, sigma)
