"""Vanishing loci and the carries relation.

The universal locus (the common zero set of every finite functorial
semi-norm) is squeezed from two sides:

* from below by eigenvector certificates: if ``F(w) b = lam * b`` with
  ``|lam| > 1`` then ``|lam| |b| <= |b|`` forces ``|b| = 0``, and zero sets
  are closed under push-forward;
* from above by a positive semi-norm on the quotient ``F / V``: when the
  quotient matrix semigroup is finite, the maximum of an l1 norm over the
  orbit is a finite functorial semi-norm vanishing exactly on ``V``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactq import (
    RationalMatrix,
    Subspace,
    format_rational,
    l1_norm,
    rational_eigenpairs,
    vec,
)
from .fincat import (
    GeneratorArrow,
    ObjectSpec,
    PresentedCategory,
    enumerate_morphisms,
)
from .seminorm import (
    INF,
    GeneratingFamily,
    Generated,
    Pullback,
    SeminormHandle,
    Sum,
    Tabulated,
    TabulatedMiss,
    Trivial,
    _columns,
    eval_generated,
    evaluate,
    fmt_value,
)

EXACT = "exact"
INNER = "inner-bound"
OUTER = "outer-bound"

DEFAULT_QUOTIENT_DEPTH = 64


class NotStabilized(RuntimeError):
    """Morphism enumeration did not close up, so no exact value is available."""


@dataclass(frozen=True)
class VanishingCertificate:
    object: str
    witness_word: tuple
    eigenvalue: Fraction
    eigenvector: tuple

    def verify(self, cat: PresentedCategory) -> bool:
        m = cat.word_matrix(self.witness_word, self.object)
        if not m.is_square() or m.rows != cat.dim(self.object):
            return False
        v = vec(self.eigenvector)
        lam = Fraction(self.eigenvalue)
        return (
            abs(lam) > 1
            and any(x != 0 for x in v)
            and m.apply(v) == tuple(lam * x for x in v)
        )

    def to_dict(self) -> dict:
        return {
            "object": self.object,
            "word": list(self.witness_word),
            "eigenvalue": format_rational(self.eigenvalue),
            "eigenvector": [format_rational(x) for x in self.eigenvector],
        }


@dataclass(frozen=True)
class Locus:
    object: str
    space: Subspace
    status: str
    certificates: tuple = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "object": self.object,
            "status": self.status,
            "ambient_dim": self.space.ambient_dim,
            "dim": self.space.dim,
            "basis": [[format_rational(x) for x in b] for b in self.space.canonical().vectors()],
            "certificates": [c.to_dict() for c in self.certificates],
        }


@dataclass(frozen=True)
class LocusBounds:
    """``inner <= N_sigma(X) <= outer``; exact when they agree."""

    object: str
    inner: Subspace
    outer: Subspace

    @property
    def exact(self) -> bool:
        return self.inner == self.outer

    @classmethod
    def from_locus(cls, loc: Locus) -> "LocusBounds":
        n = loc.space.ambient_dim
        if loc.status == EXACT:
            return cls(loc.object, loc.space, loc.space)
        if loc.status == INNER:
            return cls(loc.object, loc.space, Subspace.full(n))
        if loc.status == OUTER:
            return cls(loc.object, Subspace.zero(n), loc.space)
        raise ValueError(f"unknown locus status {loc.status!r}")

    def loci(self) -> list:
        if self.exact:
            return [Locus(self.object, self.inner, EXACT)]
        return [Locus(self.object, self.inner, INNER), Locus(self.object, self.outer, OUTER)]


# universal locus ---------------------------------------------------------------

def close_under_pushforward(cat: PresentedCategory, spaces: dict) -> dict:
    """Smallest family containing ``spaces`` and closed under every generator."""
    spaces = dict(spaces)
    changed = True
    while changed:
        changed = False
        for g in cat.generators:
            img = spaces[g.src].image(g.matrix)
            if not img.is_subspace_of(spaces[g.dst]):
                spaces[g.dst] = spaces[g.dst].sum(img)
                changed = True
    return spaces


def eigen_vanishing_inner(cat: PresentedCategory, depth: int) -> dict:
    """Certified inner bounds ``V(X)`` of the universal locus, per object."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    enum = enumerate_morphisms(cat, depth)
    certs: dict = {o.name: [] for o in cat.objects}
    for mor in enum.morphisms:
        if mor.src != mor.dst or not mor.witness_word:
            continue
        for lam, space in rational_eigenpairs(mor.matrix):
            if abs(lam) > 1:
                for b in space.vectors():
                    certs[mor.src].append(VanishingCertificate(mor.src, mor.witness_word, lam, b))
    spaces = {
        o.name: Subspace.span(o.dim, [c.eigenvector for c in certs[o.name]]) for o in cat.objects
    }
    spaces = close_under_pushforward(cat, spaces)
    return {o.name: Locus(o.name, spaces[o.name], INNER, tuple(certs[o.name])) for o in cat.objects}


@dataclass(frozen=True)
class Quotient:
    """``F / V`` as a presented category with projections and lifts."""

    category: PresentedCategory
    projections: dict  # object -> matrix F(X) -> F(X)/V(X)
    lifts: dict  # object -> matrix F(X)/V(X) -> F(X), a section of the projection


def quotient_category(cat: PresentedCategory, spaces: dict) -> Quotient:
    """Quotient functor; ``spaces`` must be closed under push-forward."""
    proj, lift, objs = {}, {}, []
    for o in cat.objects:
        v = spaces[o.name]
        comp = v.complement_basis()
        full = RationalMatrix.from_columns(v.vectors() + comp, rows=o.dim)
        inv = full.inverse()
        k = v.dim
        proj[o.name] = RationalMatrix.from_rows([inv.row(i) for i in range(k, o.dim)], cols=o.dim)
        lift[o.name] = RationalMatrix.from_columns(comp, rows=o.dim)
        objs.append(ObjectSpec(o.name, o.dim - k))
    gens = []
    for g in cat.generators:
        m = proj[g.dst] @ g.matrix @ lift[g.src]
        if not (proj[g.dst] @ g.matrix @ spaces[g.src].basis).is_zero():
            raise ValueError(f"subspaces are not closed under {g.name!r}")
        gens.append(GeneratorArrow(g.name, g.src, g.dst, m))
    return Quotient(PresentedCategory(tuple(objs), tuple(gens)), proj, lift)


def universal_locus(cat: PresentedCategory, depth: int = 8,
                    quotient_check_depth: int = DEFAULT_QUOTIENT_DEPTH) -> dict:
    """Per-object locus of the universal zero set.

    Status is ``exact`` when the quotient by the certified inner bound has a
    finite matrix semigroup (found within ``quotient_check_depth``), and
    ``inner-bound`` otherwise.
    """
    inner = eigen_vanishing_inner(cat, depth)
    q = quotient_category(cat, {k: loc.space for k, loc in inner.items()})
    stable = enumerate_morphisms(q.category, quotient_check_depth).stabilized
    status = EXACT if stable else INNER
    return {k: Locus(k, loc.space, status, loc.certificates) for k, loc in inner.items()}


def orbit_seminorm(cat: PresentedCategory, spaces: dict, obj: str, vector: Sequence,
                   depth: int = DEFAULT_QUOTIENT_DEPTH) -> Fraction:
    """``max_w |Fbar(w) [x]|_1`` over the quotient orbit of ``x``.

    Functorial and finite when the quotient semigroup is finite; it
    vanishes exactly on ``spaces[obj]``.
    """
    q = quotient_category(cat, spaces)
    enum = enumerate_morphisms(q.category, depth)
    if not enum.stabilized:
        raise NotStabilized("quotient semigroup did not close up")
    x = q.projections[obj].apply(vec(vector))
    return max(l1_norm(m.matrix.apply(x)) for m in enum.morphisms if m.src == obj)


# loci of particular semi-norms -----------------------------------------------------

def exact_locus_on_stabilized(cat: PresentedCategory, fam: GeneratingFamily, obj: str,
                              depth: int = DEFAULT_QUOTIENT_DEPTH) -> Locus:
    """Exact zero set of a generated semi-norm on a finite-semigroup category.

    The zero set is spanned by the images of zero-weight family elements;
    that claim is re-checked by evaluating the semi-norm on a basis of the
    locus (value 0) and a basis of a complement (value > 0).
    """
    enum = enumerate_morphisms(cat, depth)
    if not enum.stabilized:
        raise NotStabilized(f"enumeration not closed at depth {depth}")
    cs = _columns(cat, fam, obj, depth)
    dim = cat.dim(obj)
    space = Subspace.span(dim, [u for u, w in zip(cs.directions, cs.weights) if w == 0])
    for b in space.vectors():
        if eval_generated(cat, fam, obj, b, depth).upper_bound != 0:
            raise AssertionError("zero-weight span element has positive value")
    for c in space.complement_basis():
        val = eval_generated(cat, fam, obj, c, depth).upper_bound
        if not (val is INF or val > 0):
            raise AssertionError("complement element has value 0")
    return Locus(obj, space, EXACT)


def generated_inner(cat: PresentedCategory, fam: GeneratingFamily, depth: int) -> dict:
    """Certified subspaces of the zero set of a generated semi-norm, per object.

    Zero-weight directions vanish outright.  An eigenvector with ``|lam| > 1``
    only vanishes when its value is finite, so each eigenspace is cut down to
    the span of the columns seen so far before it is counted.  The result is
    closed under push-forward.
    """
    zero, domain = {}, {}
    for o in cat.objects:
        cs = _columns(cat, fam, o.name, depth)
        zero[o.name] = Subspace.span(o.dim, [u for u, w in zip(cs.directions, cs.weights) if w == 0])
        domain[o.name] = Subspace.span(o.dim, cs.directions)
    for mor in enumerate_morphisms(cat, depth).morphisms:
        if mor.src != mor.dst or not mor.witness_word:
            continue
        for lam, space in rational_eigenpairs(mor.matrix):
            if abs(lam) > 1:
                zero[mor.src] = zero[mor.src].sum(space.intersection(domain[mor.src]))
    return close_under_pushforward(cat, zero)


def seminorm_locus(handle: SeminormHandle, obj: str, depth: int) -> LocusBounds:
    """Inner and outer bounds on the zero set of ``handle`` at ``obj``."""
    cat = handle.category
    n = cat.dim(obj)
    if isinstance(handle, Trivial):
        full = Subspace.full(n)
        return LocusBounds(obj, full, full)
    if isinstance(handle, Generated):
        enum = enumerate_morphisms(cat, depth)
        if enum.stabilized:
            s = exact_locus_on_stabilized(cat, handle.family, obj, depth).space
            return LocusBounds(obj, s, s)
        return LocusBounds(obj, generated_inner(cat, handle.family, depth)[obj], Subspace.full(n))
    if isinstance(handle, Sum):
        parts = [seminorm_locus(h, obj, depth) for h in handle.members]
        inner, outer = parts[0].inner, parts[0].outer
        for p in parts[1:]:
            inner = inner.intersection(p.inner)
            outer = outer.intersection(p.outer)
        return LocusBounds(obj, inner, outer)
    if isinstance(handle, Pullback):
        eta = handle.eta.component(obj)
        inner = seminorm_locus(handle.inner, handle.eta.target_object(obj), depth)
        return LocusBounds(obj, inner.inner.preimage(eta), inner.outer.preimage(eta))
    if isinstance(handle, Tabulated):
        zeros = [v for (o, v), x in handle.table if o == obj and x == 0]
        return LocusBounds(obj, Subspace.span(n, zeros), Subspace.full(n))
    raise TypeError(f"not a semi-norm handle: {handle!r}")


# carries ---------------------------------------------------------------------

CARRIES = "carries"
VIOLATED = "violated"


@dataclass(frozen=True)
class CarryVerdict:
    status: str
    witness: Optional[tuple] = None  # (object, vector)
    sigma_value: Optional[object] = None
    tau_value: Optional[object] = None
    note: str = ""
    per_object: tuple = ()

    def to_dict(self) -> dict:
        out = {"status": self.status, "note": self.note,
               "per_object": {k: v for k, v in self.per_object}}
        if self.witness is not None:
            out["witness"] = {"object": self.witness[0],
                              "vector": [format_rational(x) for x in self.witness[1]]}
            out["sigma_value"] = None if self.sigma_value is None else fmt_value(self.sigma_value)
            out["tau_value"] = None if self.tau_value is None else fmt_value(self.tau_value)
        return out


def _bounds(x, cat: PresentedCategory, depth: int) -> dict:
    if isinstance(x, dict):
        out = {}
        for o in cat.objects:
            locs = x.get(o.name)
            if locs is None:
                out[o.name] = LocusBounds(o.name, Subspace.zero(o.dim), Subspace.full(o.dim))
                continue
            if isinstance(locs, (Locus, LocusBounds)):
                locs = [locs]
            inner, outer = Subspace.zero(o.dim), Subspace.full(o.dim)
            for loc in locs:
                b = loc if isinstance(loc, LocusBounds) else LocusBounds.from_locus(loc)
                inner = inner.sum(b.inner)
                outer = outer.intersection(b.outer)
            out[o.name] = LocusBounds(o.name, inner, outer)
        return out
    return {o.name: seminorm_locus(x, o.name, depth) for o in cat.objects}


def _value_or_none(x, obj: str, vector, depth: int):
    if isinstance(x, dict):
        return None
    try:
        return evaluate(x, obj, vector, depth).upper_bound
    except TabulatedMiss:
        return None


def carries(cat: PresentedCategory, sigma: Union[SeminormHandle, dict],
            tau: Union[SeminormHandle, dict], depth: int = 8) -> CarryVerdict:
    """Does ``sigma`` carry ``tau`` (every sigma-null element is tau-null)?

    Each side is a semi-norm handle or a mapping ``object -> Locus``.
    """
    if sigma == tau:
        return CarryVerdict(CARRIES, note="reflexive")
    bs = _bounds(sigma, cat, depth)
    bt = _bounds(tau, cat, depth)
    per = []
    undecided = False
    for o in cat.objects:
        s, t = bs[o.name], bt[o.name]
        if s.outer.is_subspace_of(t.inner):
            per.append((o.name, CARRIES))
            continue
        wit = next((b for b in s.inner.vectors() if not t.outer.contains(b)), None)
        if wit is not None:
            sv, tv = _value_or_none(sigma, o.name, wit, depth), _value_or_none(tau, o.name, wit, depth)
            per.append((o.name, VIOLATED))
            return CarryVerdict(VIOLATED, (o.name, wit), sv, tv, per_object=tuple(per))
        per.append((o.name, "undetermined"))
        undecided = True
    if undecided:
        return CarryVerdict("undetermined", per_object=tuple(per))
    return CarryVerdict(CARRIES, per_object=tuple(per))
