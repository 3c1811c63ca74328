"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are tuples of fractions.  Matrices are immutable
:class:`RationalMatrix` values, hashable so they can key dictionaries
during morphism enumeration.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints are accepted too).

    Raises ``ValueError`` for anything else, including a zero denominator.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> tuple:
    """Coerce an iterable of ints/strings/fractions into a rational vector."""
    return tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def l1_norm(a: Sequence) -> Fraction:
    return sum((abs(x) for x in a), Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [vec(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "RationalMatrix":
        columns = [vec(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        n = len(columns)
        return cls(rows, n, tuple(columns[j][i] for i in range(rows) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, n: int, c) -> "RationalMatrix":
        c = Fraction(c)
        zero = Fraction(0)
        return cls(n, n, tuple(c if i == j else zero for i in range(n) for j in range(n)))

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # arithmetic -------------------------------------------------------
    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        c = self.cols
        e = self.entries
        return tuple(
            sum((e[i * c + k] * v[k] for k in range(c) if v[k]), Fraction(0))
            for i in range(self.rows)
        )

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            n, m, p = self.rows, self.cols, other.cols
            a, b = self.entries, other.entries
            out = []
            for i in range(n):
                arow = a[i * m:(i + 1) * m]
                for j in range(p):
                    s = Fraction(0)
                    for k in range(m):
                        x = arow[k]
                        if x:
                            y = b[k * p + j]
                            if y:
                                s += x * y
                    out.append(s)
            return RationalMatrix(n, p, tuple(out))
        return self.apply(other)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_columns([self.row(i) for i in range(self.rows)], rows=self.cols)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return RationalMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], cols=self.cols + other.cols
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_columns([self.col(j) for j in idx], rows=self.rows)

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.row(i) for i in idx], cols=self.cols)

    def rank(self) -> int:
        return rref(self)[2]

    def inverse(self) -> Optional["RationalMatrix"]:
        """Exact inverse, or ``None`` if singular."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        red, pivots, rank = rref(self.hstack(RationalMatrix.identity(n)))
        if pivots[:n] != list(range(n)):
            return None
        return RationalMatrix.from_rows([red.row(i)[n:] for i in range(n)], cols=n)

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def __str__(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(format_rational(x) for x in self.row(i)) + "]" for i in range(self.rows)
        ) + "]"


def matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    """Shorthand for :meth:`RationalMatrix.from_rows`."""
    return RationalMatrix.from_rows(rows)


def rref(m: RationalMatrix):
    """Reduced row echelon form.

    Returns ``(reduced, pivot_columns, rank)``.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(m.rows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return RationalMatrix.from_rows(rows, cols=m.cols), pivots, len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, stored by a basis (the columns of ``basis``)."""

    ambient_dim: int
    basis: RationalMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows must equal ambient dimension")
        if self.basis.cols and self.basis.rank() != self.basis.cols:
            raise ValueError("basis columns are linearly dependent")

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, RationalMatrix.zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RationalMatrix.identity(n))

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Span of arbitrary vectors, reduced to a canonical echelon basis."""
        vectors = [vec(v) for v in vectors]
        if not vectors:
            return cls.zero(n)
        red, _, rank = rref(RationalMatrix.from_rows(vectors, cols=n))
        return cls(n, RationalMatrix.from_columns([red.row(i) for i in range(rank)], rows=n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        if self.dim == 0:
            return is_zero_vector(v)
        return solve(self.basis, v) is not None

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.is_subspace_of(other)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.canonical().basis))

    def canonical(self) -> "Subspace":
        return Subspace.span(self.ambient_dim, self.vectors())

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.vectors() + other.vectors())

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # x = A a = B b  <=>  [A | -B] (a, b) = 0
        k = kernel_basis(self.basis.hstack(-other.basis))
        vs = [self.basis.apply(c[: self.dim]) for c in k.vectors()]
        return Subspace.span(self.ambient_dim, vs)

    def image(self, m: RationalMatrix) -> "Subspace":
        return Subspace.span(m.rows, [m.apply(b) for b in self.vectors()])

    def preimage(self, m: RationalMatrix) -> "Subspace":
        """``{x : m x in self}``."""
        ann = self.annihilator()
        if ann.rows == 0:
            return Subspace.full(m.cols)
        return kernel_basis(ann @ m)

    def annihilator(self) -> RationalMatrix:
        """Matrix whose kernel is exactly this subspace."""
        k = kernel_basis(self.basis.transpose()) if self.dim else Subspace.full(self.ambient_dim)
        return RationalMatrix.from_rows(k.vectors(), cols=self.ambient_dim)

    def complement_basis(self) -> list:
        """Standard basis vectors completing ``basis`` to a basis of Q^n."""
        n = self.ambient_dim
        ident = RationalMatrix.identity(n)
        _, pivots, _ = rref(self.basis.hstack(ident))
        return [ident.col(p - self.dim) for p in pivots if p >= self.dim]


def kernel_basis(m: RationalMatrix) -> Subspace:
    """Basis of ``{x : m x = 0}``."""
    red, pivots, rank = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -red[i, f]
        basis.append(tuple(x))
    return Subspace(m.cols, RationalMatrix.from_columns(basis, rows=m.cols))


def solve(m: RationalMatrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length must equal the row count")
    aug = m.hstack(RationalMatrix.from_columns([vec(b)], rows=m.rows))
    red, pivots, _ = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = red[i, m.cols]
    return tuple(x)


# characteristic polynomial and rational roots --------------------------

def charpoly(m: RationalMatrix) -> list:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(x I - m)``, lowest degree first.

    Faddeev-LeVerrier recursion; exact over Q.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = RationalMatrix.identity(n)
    mk = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace() / k
    return coeffs


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_eval(coeffs: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(coeffs: Sequence) -> list:
    """Distinct rational roots of a polynomial (coefficients lowest degree first)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    # strip the root 0
    shift = 0
    while coeffs[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    coeffs = coeffs[shift:]
    if len(coeffs) == 1:
        return roots
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    found = set()
    for p, q in product(_divisors(ints[0]), _divisors(ints[-1])):
        for cand in (Fraction(p, q), Fraction(-p, q)):
            if cand not in found and _poly_eval(ints, cand) == 0:
                found.add(cand)
    return sorted(set(roots) | found)


def rational_eigenpairs(m: RationalMatrix) -> list:
    """Rational eigenvalues with their eigenspaces, in increasing order.

    Non-rational eigenvalues are omitted.
    """
    if not m.is_square():
        raise ValueError("eigenpairs of a non-square matrix")
    out = []
    n = m.rows
    for lam in rational_roots(charpoly(m)):
        space = kernel_basis(m - RationalMatrix.scalar(n, lam))
        out.append((lam, space))
    return out
