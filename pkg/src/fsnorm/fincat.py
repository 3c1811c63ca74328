"""Finitely presented categories with a functor to finite-dimensional Q-spaces.

A :class:`PresentedCategory` lists objects (with the dimension of the
vector space attached to each), generating arrows (with their matrices)
and optional relations.  Morphisms are enumerated breadth-first by word
length and identified by their functor image per ``(src, dst)``, so the
enumeration is finite whenever the generated matrix semigroup is.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .exactq import RationalMatrix, format_rational, parse_rational

DEFAULT_MAX_DEPTH = 4096
DEFAULT_MAX_MORPHISMS = 200_000


class CategoryError(ValueError):
    """Malformed category input (parse-level)."""


class DepthOverflow(RuntimeError):
    """Resource guard tripped: requested depth or enumeration size too large."""


def max_depth() -> int:
    """Global depth cap, overridable through ``SEMINORM_MAX_DEPTH``."""
    raw = os.environ.get("SEMINORM_MAX_DEPTH")
    return int(raw) if raw else DEFAULT_MAX_DEPTH


@dataclass(frozen=True)
class ObjectSpec:
    name: str
    dim: int


@dataclass(frozen=True)
class GeneratorArrow:
    name: str
    src: str
    dst: str
    matrix: RationalMatrix


@dataclass(frozen=True)
class PresentedCategory:
    objects: tuple
    generators: tuple = ()
    relations: tuple = ()  # pairs (lhs word, rhs word), words as name tuples

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(
            self, "relations", tuple((tuple(l), tuple(r)) for l, r in self.relations)
        )

    @property
    def object_names(self) -> list:
        return [o.name for o in self.objects]

    def dim(self, name: str) -> int:
        for o in self.objects:
            if o.name == name:
                return o.dim
        raise KeyError(f"unknown object {name!r}")

    def has_object(self, name: str) -> bool:
        return any(o.name == name for o in self.objects)

    def generator(self, name: str) -> GeneratorArrow:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(f"unknown generator {name!r}")

    def word_endpoints(self, word: Sequence[str]) -> Optional[tuple]:
        """``(src, dst)`` of a composable nonempty word, else ``None``.

        Words list generators in order of application.
        """
        if not word:
            return None
        gens = [self.generator(w) for w in word]
        for a, b in zip(gens, gens[1:]):
            if a.dst != b.src:
                return None
        return gens[0].src, gens[-1].dst

    def word_matrix(self, word: Sequence[str], src: Optional[str] = None) -> RationalMatrix:
        """Functor image of a word; the empty word needs ``src`` (identity)."""
        if not word:
            if src is None:
                raise ValueError("empty word needs an explicit object")
            return RationalMatrix.identity(self.dim(src))
        ends = self.word_endpoints(word)
        if ends is None:
            raise ValueError(f"word {list(word)} is not composable")
        m = self.generator(word[0]).matrix
        for w in word[1:]:
            m = self.generator(w).matrix @ m
        return m


@dataclass(frozen=True)
class Morphism:
    src: str
    dst: str
    matrix: RationalMatrix
    witness_word: tuple

    @property
    def key(self) -> tuple:
        return (self.src, self.dst, self.matrix)


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok


def validate(cat: PresentedCategory) -> ValidationReport:
    """Collect every structural and functoriality violation."""
    errors = []
    seen = set()
    for o in cat.objects:
        if o.name in seen:
            errors.append(f"object {o.name!r}: duplicate name")
        seen.add(o.name)
        if o.dim < 0:
            errors.append(f"object {o.name!r}: negative dimension {o.dim}")
    dims = {o.name: o.dim for o in cat.objects}
    gseen = set()
    for g in cat.generators:
        if g.name in gseen:
            errors.append(f"generator {g.name!r}: duplicate name")
        gseen.add(g.name)
        bad_ref = False
        for end in (g.src, g.dst):
            if end not in dims:
                errors.append(f"generator {g.name!r}: unknown object {end!r}")
                bad_ref = True
        if bad_ref:
            continue
        if g.matrix.shape != (dims[g.dst], dims[g.src]):
            errors.append(
                f"generator {g.name!r}: matrix is {g.matrix.rows}x{g.matrix.cols}, "
                f"expected {dims[g.dst]}x{dims[g.src]}"
            )
    if errors:
        return ValidationReport(errors)
    for i, (lhs, rhs) in enumerate(cat.relations):
        label = f"relation {i} ({'.'.join(lhs) or 'id'} = {'.'.join(rhs) or 'id'})"
        unknown = [w for w in lhs + rhs if w not in gseen]
        if unknown:
            errors.append(f"{label}: unknown generators {unknown}")
            continue
        ends = [cat.word_endpoints(w) if w else None for w in (lhs, rhs)]
        if any(w and e is None for w, e in zip((lhs, rhs), ends)):
            errors.append(f"{label}: word not composable")
            continue
        if not lhs and not rhs:
            continue
        # an empty side is an identity, which must be an endomorphism
        if not lhs or not rhs:
            e = ends[0] or ends[1]
            if e[0] != e[1]:
                errors.append(f"{label}: identity compared with a non-endomorphism")
                continue
            ends = [e, e]
        if ends[0] != ends[1]:
            errors.append(f"{label}: endpoints differ {ends[0]} vs {ends[1]}")
            continue
        ml = cat.word_matrix(lhs, ends[0][0])
        mr = cat.word_matrix(rhs, ends[0][0])
        if ml != mr:
            errors.append(f"{label}: functor images differ {ml} vs {mr}")
    return ValidationReport(errors)


@dataclass(frozen=True)
class Enumeration:
    """Morphisms realisable by words of length <= ``depth``."""

    depth: int
    morphisms: tuple
    stabilized: bool
    stable_depth: Optional[int]  # least k with level(k) == level(k-1), if seen

    def hom(self, src: str, dst: str) -> list:
        return [m for m in self.morphisms if m.src == src and m.dst == dst]

    def keys(self) -> set:
        return {m.key for m in self.morphisms}

    def __len__(self) -> int:
        return len(self.morphisms)


def enumerate_morphisms(
    cat: PresentedCategory, depth: int, max_morphisms: int = DEFAULT_MAX_MORPHISMS
) -> Enumeration:
    """Breadth-first morphism enumeration, deduplicated by functor image.

    ``stabilized`` is true once extending by one more generator adds
    nothing, i.e. the returned set is closed under composition.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    # checked outside the cache so a changed cap always applies
    if depth > max_depth():
        raise DepthOverflow(f"depth {depth} exceeds cap {max_depth()}")
    return _enumerate(cat, depth, max_morphisms)


@lru_cache(maxsize=256)
def _enumerate(cat: PresentedCategory, depth: int, max_morphisms: int) -> Enumeration:
    by_src: dict = {}
    for g in cat.generators:
        by_src.setdefault(g.src, []).append(g)

    found: dict = {}
    frontier = []
    for o in cat.objects:
        m = Morphism(o.name, o.name, RationalMatrix.identity(o.dim), ())
        found[m.key] = m
        frontier.append(m)

    stable_depth = None
    level = 0
    # one extra step past ``depth`` detects closure without returning it
    while frontier:
        nxt = []
        for m in frontier:
            for g in by_src.get(m.dst, ()):
                mm = Morphism(m.src, g.dst, g.matrix @ m.matrix, m.witness_word + (g.name,))
                if mm.key not in found:
                    if level + 1 > depth:
                        return Enumeration(depth, tuple(found.values()), False, None)
                    found[mm.key] = mm
                    nxt.append(mm)
                    if len(found) > max_morphisms:
                        raise DepthOverflow(f"more than {max_morphisms} morphisms")
        level += 1
        frontier = nxt
        if not frontier:
            stable_depth = level
    return Enumeration(depth, tuple(found.values()), True, stable_depth)


# JSON ------------------------------------------------------------------

_TOP_KEYS = {"objects", "generators", "relations"}


def _check_keys(d, allowed: set, where: str, required: Sequence[str] = ()) -> None:
    if not isinstance(d, dict):
        raise CategoryError(f"{where}: expected an object")
    extra = set(d) - allowed
    if extra:
        raise CategoryError(f"{where}: unknown keys {sorted(extra)}")
    for k in required:
        if k not in d:
            raise CategoryError(f"{where}: missing key {k!r}")


def _parse_matrix(rows, where: str, shape: Optional[tuple] = None) -> RationalMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise CategoryError(f"{where}: matrix must be a list of rows")
    try:
        parsed = [[parse_rational(x) for x in r] for r in rows]
    except ValueError as exc:
        raise CategoryError(f"{where}: {exc}") from None
    widths = {len(r) for r in parsed}
    if len(widths) > 1:
        raise CategoryError(f"{where}: ragged matrix")
    cols = widths.pop() if widths else (shape[1] if shape else 0)
    # a dim-0 target gives [] rows; take the column count from the source
    if not parsed and shape is not None:
        cols = shape[1]
    return RationalMatrix.from_rows(parsed, cols=cols)


def category_from_dict(data: dict) -> PresentedCategory:
    _check_keys(data, _TOP_KEYS, "category", required=("objects",))
    objects = []
    for i, o in enumerate(data["objects"]):
        _check_keys(o, {"name", "dim"}, f"objects[{i}]", required=("name", "dim"))
        if not isinstance(o["dim"], int) or isinstance(o["dim"], bool):
            raise CategoryError(f"objects[{i}]: dim must be an integer")
        objects.append(ObjectSpec(str(o["name"]), o["dim"]))
    dims = {o.name: o.dim for o in objects}
    gens = []
    for i, g in enumerate(data.get("generators", [])):
        where = f"generators[{i}]"
        _check_keys(g, {"name", "src", "dst", "matrix"}, where, required=("name", "src", "dst", "matrix"))
        shape = (dims.get(g["dst"], 0), dims.get(g["src"], 0))
        gens.append(GeneratorArrow(str(g["name"]), str(g["src"]), str(g["dst"]),
                                   _parse_matrix(g["matrix"], where, shape)))
    rels = []
    for i, r in enumerate(data.get("relations", [])):
        _check_keys(r, {"lhs", "rhs"}, f"relations[{i}]", required=("lhs", "rhs"))
        rels.append((tuple(r["lhs"]), tuple(r["rhs"])))
    return PresentedCategory(tuple(objects), tuple(gens), tuple(rels))


def category_to_dict(cat: PresentedCategory) -> dict:
    out = {
        "objects": [{"name": o.name, "dim": o.dim} for o in cat.objects],
        "generators": [
            {
                "name": g.name,
                "src": g.src,
                "dst": g.dst,
                "matrix": [[format_rational(x) for x in g.matrix.row(i)] for i in range(g.matrix.rows)],
            }
            for g in cat.generators
        ],
    }
    if cat.relations:
        out["relations"] = [{"lhs": list(l), "rhs": list(r)} for l, r in cat.relations]
    return out


def load_category(path) -> PresentedCategory:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CategoryError(f"{path}: {exc}") from None
    return category_from_dict(data)


def dump_category(cat: PresentedCategory, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(category_to_dict(cat), fh, indent=2)
        fh.write("\n")


# small builders ----------------------------------------------------------

def one_object(name: str, dim: int, generators: dict) -> PresentedCategory:
    """Single-object category with endomorphism generators ``{name: rows}``."""
    return PresentedCategory(
        (ObjectSpec(name, dim),),
        tuple(GeneratorArrow(g, name, name, RationalMatrix.from_rows(rows, cols=dim))
              for g, rows in generators.items()),
    )


@dataclass(frozen=True)
class CatFunctor:
    """Functor between presented categories, given on objects and generators.

    Each generator of ``source`` is sent to a word in ``target`` (the empty
    word is an identity).
    """

    source: PresentedCategory
    target: PresentedCategory
    object_map: tuple  # ((src object, target object), ...)
    generator_map: tuple  # ((generator, target word tuple), ...)

    def __post_init__(self):
        om = self.object_map.items() if isinstance(self.object_map, dict) else self.object_map
        gm = self.generator_map.items() if isinstance(self.generator_map, dict) else self.generator_map
        object.__setattr__(self, "object_map", tuple(sorted((str(a), str(b)) for a, b in om)))
        object.__setattr__(self, "generator_map", tuple(sorted((str(a), tuple(b)) for a, b in gm)))

    @classmethod
    def identity(cls, cat: PresentedCategory) -> "CatFunctor":
        return cls(cat, cat, {o.name: o.name for o in cat.objects},
                   {g.name: (g.name,) for g in cat.generators})

    def obj(self, name: str) -> str:
        return dict(self.object_map)[name]

    def word(self, word: Sequence[str]) -> tuple:
        gm = dict(self.generator_map)
        return tuple(x for w in word for x in gm[w])

    def matrix_of(self, generator: str) -> RationalMatrix:
        """Target functor image of the image of ``generator``."""
        g = self.source.generator(generator)
        return self.target.word_matrix(self.word((generator,)), self.obj(g.src))

    def then(self, other: "CatFunctor") -> "CatFunctor":
        """Composite ``other o self``."""
        return CatFunctor(
            self.source,
            other.target,
            {a: other.obj(b) for a, b in self.object_map},
            {g: other.word(w) for g, w in self.generator_map},
        )

    def check(self) -> list:
        errors = []
        om = dict(self.object_map)
        gm = dict(self.generator_map)
        for o in self.source.objects:
            if o.name not in om:
                errors.append(f"object {o.name!r} is not mapped")
            elif not self.target.has_object(om[o.name]):
                errors.append(f"object {o.name!r} maps to unknown {om[o.name]!r}")
        if errors:
            return errors
        for g in self.source.generators:
            if g.name not in gm:
                errors.append(f"generator {g.name!r} is not mapped")
                continue
            w = gm[g.name]
            want = (om[g.src], om[g.dst])
            if not w:
                if want[0] != want[1]:
                    errors.append(f"generator {g.name!r} maps to an identity between distinct objects")
                continue
            try:
                ends = self.target.word_endpoints(w)
            except KeyError as exc:
                errors.append(f"generator {g.name!r}: {exc}")
                continue
            if ends != want:
                errors.append(f"generator {g.name!r} maps to {w} with endpoints {ends}, expected {want}")
        return errors
