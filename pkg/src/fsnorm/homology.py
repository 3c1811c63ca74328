"""Finite simplicial complexes, rational homology and the simplicial l1 value.

Simplices are sorted vertex tuples; a d-simplex's boundary deletes each
position ``i`` with sign ``(-1)^i``.  The l1 value of a class is the
minimum of ``|c|_1`` over rational cycles ``c`` representing it, solved
exactly as a weighted l1 problem.  It is an upper bound for the singular
l1-semi-norm (subdivision can only lower it), never the same thing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exactq import (
    RationalMatrix,
    Subspace,
    format_rational,
    is_zero_vector,
    kernel_basis,
    parse_rational,
    zero_vector,
)
from .fincat import PresentedCategory, one_object
from .simplex import L1Problem, min_weighted_l1


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices: tuple

    def __post_init__(self):
        simp = []
        for s in self.simplices:
            t = tuple(int(i) for i in s)
            if not t:
                raise ValueError("empty simplex")
            if list(t) != sorted(set(t)):
                raise ValueError(f"simplex {list(s)} must list distinct vertices in increasing order")
            if t[-1] >= self.vertex_count or t[0] < 0:
                raise ValueError(f"simplex {list(s)} has a vertex out of range")
            simp.append(t)
        if len(set(simp)) != len(simp):
            raise ValueError("duplicate simplex")
        present = set(simp)
        for t in simp:
            for k in range(1, len(t)):
                for face in combinations(t, k):
                    if face not in present:
                        raise ValueError(f"face {list(face)} of {list(t)} is missing")
        object.__setattr__(self, "simplices", tuple(sorted(simp, key=lambda t: (len(t), t))))

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Sequence[Sequence[int]]) -> "SimplicialComplex":
        faces = set()
        for f in facets:
            f = tuple(sorted(f))
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        return cls(vertex_count, tuple(faces))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def cells(self, d: int) -> list:
        """The d-simplices, in the fixed (lexicographic) order."""
        return [s for s in self.simplices if len(s) == d + 1]

    def index(self, d: int) -> dict:
        return {s: i for i, s in enumerate(self.cells(d))}

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "simplices": [list(s) for s in self.simplices]}


def boundary_matrix(K: SimplicialComplex, d: int) -> RationalMatrix:
    """``d_d: C_d -> C_{d-1}``; for ``d = 0`` the zero map to the zero space."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    src = K.cells(d)
    if d == 0:
        return RationalMatrix.zeros(0, len(src))
    idx = K.index(d - 1)
    rows = [[Fraction(0)] * len(src) for _ in idx]
    for j, s in enumerate(src):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            rows[idx[face]][j] += 1 if i % 2 == 0 else -1
    return RationalMatrix.from_rows(rows, cols=len(src))


@dataclass(frozen=True)
class HomologyBasis:
    degree: int
    cycles: tuple  # representative cycles of a homology basis
    projection: RationalMatrix  # C_d -> Q^h, exact on cycles; kills boundaries

    @property
    def dim(self) -> int:
        return len(self.cycles)


def homology_basis(K: SimplicialComplex, d: int) -> HomologyBasis:
    n = len(K.cells(d))
    Z = kernel_basis(boundary_matrix(K, d))
    B = Subspace.span(n, boundary_matrix(K, d + 1).columns())
    b_vecs = B.vectors()
    # extend B to a basis of Z, then of C_d
    h_vecs = []
    cur = B
    for z in Z.vectors():
        if not cur.contains(z):
            h_vecs.append(z)
            cur = cur.sum(Subspace.span(n, [z]))
    w_vecs = cur.complement_basis()
    if n == 0:
        return HomologyBasis(d, (), RationalMatrix.zeros(0, 0))
    T = RationalMatrix.from_columns(b_vecs + h_vecs + w_vecs, rows=n)
    Tinv = T.inverse()
    assert Tinv is not None
    lo = len(b_vecs)
    P = Tinv.select_rows(range(lo, lo + len(h_vecs)))
    return HomologyBasis(d, tuple(h_vecs), P)


@dataclass(frozen=True)
class HomologyClass:
    degree: int
    cycle: tuple

    def check(self, K: SimplicialComplex) -> None:
        n = len(K.cells(self.degree))
        if len(self.cycle) != n:
            raise ValueError(f"chain has length {len(self.cycle)}, expected {n}")
        if not is_zero_vector(boundary_matrix(K, self.degree).apply(self.cycle)):
            raise ValueError("chain is not a cycle")

    @classmethod
    def from_coefficients(cls, K: SimplicialComplex, degree: int, coeffs: Mapping) -> "HomologyClass":
        idx = K.index(degree)
        c = [Fraction(0)] * len(idx)
        for s, a in coeffs.items():
            s = tuple(sorted(s))
            if s not in idx:
                raise ValueError(f"{list(s)} is not a {degree}-simplex of the complex")
            c[idx[s]] += parse_rational(a) if isinstance(a, str) else Fraction(a)
        cls_ = cls(degree, tuple(c))
        cls_.check(K)
        return cls_


def homology_coordinates(K: SimplicialComplex, cls: HomologyClass) -> tuple:
    cls.check(K)
    return homology_basis(K, cls.degree).projection.apply(cls.cycle)


def l1_simplicial(K: SimplicialComplex, cls: HomologyClass) -> Fraction:
    """``min |c|_1`` over cycles ``c`` homologous to ``cls.cycle``."""
    cls.check(K)
    d = cls.degree
    n = len(K.cells(d))
    if n == 0:
        return Fraction(0)
    bd = boundary_matrix(K, d)
    P = homology_basis(K, d).projection
    stacked = bd.vstack(P)
    target = zero_vector(bd.rows) + P.apply(cls.cycle)
    sol = min_weighted_l1(L1Problem.from_columns(stacked.columns(), target, [1] * n))
    assert sol.feasible
    return sol.value


def induced_chain_map(K: SimplicialComplex, L: SimplicialComplex, vertex_map: Sequence[int],
                      d: int) -> RationalMatrix:
    """Chain map ``C_d(K) -> C_d(L)`` of a simplicial vertex map.

    Degenerate images go to zero; otherwise the sign is that of the sorting
    permutation.
    """
    if len(vertex_map) != K.vertex_count:
        raise ValueError("vertex map must cover every vertex of the source")
    src, idx = K.cells(d), L.index(d)
    rows = [[Fraction(0)] * len(src) for _ in idx]
    for j, s in enumerate(src):
        img = [vertex_map[i] for i in s]
        if len(set(img)) < len(img):
            continue
        key = tuple(sorted(img))
        if key not in idx:
            raise ValueError(f"image of {list(s)} is not a simplex of the target")
        inversions = sum(1 for a, b in combinations(img, 2) if a > b)
        rows[idx[key]][j] = Fraction(-1 if inversions % 2 else 1)
    return RationalMatrix.from_rows(rows, cols=len(src))


def induced_homology_map(K, L, vertex_map, d) -> RationalMatrix:
    """The induced map on homology coordinates (basis from ``homology_basis``)."""
    hk, hl = homology_basis(K, d), homology_basis(L, d)
    f = induced_chain_map(K, L, vertex_map, d)
    cols = [hl.projection.apply(f.apply(z)) for z in hk.cycles]
    return RationalMatrix.from_columns(cols, rows=hl.dim)


def circle_model_bridge() -> PresentedCategory:
    """``H_1`` of the circle with the degree-2 self-map."""
    return one_object("X", 1, {"f": [[2]]})


# file formats -------------------------------------------------------------

def complex_from_dict(d: dict) -> SimplicialComplex:
    extra = set(d) - {"vertices", "simplices"}
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)}")
    return SimplicialComplex(int(d["vertices"]), tuple(tuple(s) for s in d["simplices"]))


def class_from_dict(K: SimplicialComplex, d: dict) -> HomologyClass:
    extra = set(d) - {"degree", "coefficients"}
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)}")
    coeffs = {}
    for key, val in d["coefficients"].items():
        s = json.loads(key)
        if not isinstance(s, list):
            raise ValueError(f"bad simplex key {key!r}")
        coeffs[tuple(int(i) for i in s)] = parse_rational(val)
    return HomologyClass.from_coefficients(K, int(d["degree"]), coeffs)


def class_to_dict(K: SimplicialComplex, cls: HomologyClass) -> dict:
    cells = K.cells(cls.degree)
    return {
        "degree": cls.degree,
        "coefficients": {json.dumps(list(s), separators=(",", ":")): format_rational(a)
                         for s, a in zip(cells, cls.cycle) if a != 0},
    }


def load_complex(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return complex_from_dict(json.load(fh))


def load_class(K: SimplicialComplex, path) -> HomologyClass:
    with open(path, encoding="utf-8") as fh:
        return class_from_dict(K, json.load(fh))
