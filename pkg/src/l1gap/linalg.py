"""Exact linear algebra over a FieldDescriptor, plus integer lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, PreconditionError
from .field import FieldDescriptor, FieldElement

Vector = tuple  # tuple[FieldElement, ...]


def vec(field: FieldDescriptor, values: Iterable) -> Vector:
    return tuple(field.coerce(x) for x in values)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"pairing vectors of length {len(u)} and {len(v)}")
    total = None
    for x, y in zip(u, v):
        if (isinstance(x, FieldElement) and x.is_zero()) or (isinstance(y, FieldElement) and y.is_zero()):
            continue
        if isinstance(x, int) and x == 0 or isinstance(y, int) and y == 0:
            continue
        term = x * y
        total = term if total is None else total + term
    if total is None:
        for x in (*u, *v):
            if isinstance(x, FieldElement):
                return x.field.zero
        return 0
    return total


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def kron(u: Sequence, v: Sequence) -> Vector:
    return tuple(x * y for x in u for y in v)


class Matrix:
    """Dense immutable matrix of FieldElements."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Iterable[Iterable], ncols: int, field: FieldDescriptor):
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.field = field

    @classmethod
    def from_rows(cls, rows, field: FieldDescriptor, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        return cls(rows, ncols, field)

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldDescriptor) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> "Matrix":
        return Matrix([[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows, self.field)

    T = property(transpose)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"applying {self.shape} matrix to vector of length {len(v)}")
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix([[dot(r, c) for c in cols] for r in self.rows], other.ncols, self.field)

    def is_rational(self) -> bool:
        return all(x.is_rational() for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def _rref(rows: list[list[FieldElement]], ncols: int) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = piv.inverse()
            rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by its canonical RREF basis (rows)."""

    field: FieldDescriptor
    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = dc_field(default=(), compare=False, repr=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: FieldDescriptor) -> "Subspace":
        rows = []
        for v in vectors:
            v = [field.coerce(x) for x in v]
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(v)
        reduced, pivots = _rref(rows, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int, field: FieldDescriptor) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int, field: FieldDescriptor) -> "Subspace":
        return cls.span(Matrix.identity(ambient_dim, field).rows, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix(self.basis, self.ambient_dim, self.field)

    def reduce(self, v: Sequence) -> list:
        v = [self.field.coerce(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if not f.is_zero():
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return all(x.is_zero() for x in self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the canonical basis."""
        if not self.contains(v):
            raise PreconditionError("vector is not in the subspace")
        return tuple(self.field.coerce(v[p]) for p in self.pivots)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        return annihilator(annihilator(self) + annihilator(other))

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __str__(self):
        inner = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"span{{{inner}}} in {self.field}^{self.ambient_dim}"


def _check_compatible(u: Subspace, w: Subspace):
    if u.field != w.field:
        raise FieldMismatch(f"{u.field} vs {w.field}")
    if u.ambient_dim != w.ambient_dim:
        raise DimensionMismatch(f"ambient {u.ambient_dim} vs {w.ambient_dim}")


def rref(m: Matrix) -> Subspace:
    return Subspace.span(m.rows, m.ncols, m.field)


def kernel(m: Matrix) -> Subspace:
    """{x : m x = 0} as a subspace of F^ncols."""
    reduced, pivots = _rref(list(map(list, m.rows)), m.ncols)
    free = [c for c in range(m.ncols) if c not in pivots]
    F = m.field
    basis = []
    for f in free:
        x = [F.zero] * m.ncols
        x[f] = F.one
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return Subspace.span(basis, m.ncols, F)


def image(m: Matrix) -> Subspace:
    """Column space of m as a subspace of F^nrows."""
    return Subspace.span(m.transpose().rows, m.nrows, m.field)


def annihilator(v: Subspace) -> Subspace:
    """{phi : <phi, x> = 0 for all x in v}, in dual coordinates."""
    return kernel(Matrix(v.basis, v.ambient_dim, v.field))


def rational_points(v: Subspace) -> Subspace:
    """Span of v ∩ Q^n.

    A rational x lies in v iff A x = 0 for a basis A of the annihilator.
    Writing A = A0 + A1*sqrt(d) with rational A0, A1 splits this into the
    rational system [A0; A1] x = 0.
    """
    F = v.field
    if F.is_rational:
        return v
    constraints = annihilator(v).basis
    split = [[F(x.a) for x in row] for row in constraints]
    split += [[F(x.b) for x in row] for row in constraints]
    if not split:
        return Subspace.full(v.ambient_dim, F)
    return kernel(Matrix(split, v.ambient_dim, F))


def is_rational(v: Subspace) -> bool:
    return rational_points(v).dim == v.dim


def solve(m: Matrix, rhs: Sequence) -> Vector:
    """Unique solution of m x = rhs for invertible square m."""
    if m.nrows != m.ncols or len(rhs) != m.nrows:
        raise DimensionMismatch(f"solve with {m.shape} and rhs of length {len(rhs)}")
    F = m.field
    aug = [list(r) + [F.coerce(b)] for r, b in zip(m.rows, rhs)]
    reduced, pivots = _rref(aug, m.ncols + 1)
    if pivots != list(range(m.ncols)):
        raise PreconditionError("matrix is singular")
    return tuple(r[-1] for r in reduced)


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("inverse of non-square matrix")
    F = m.field
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(m.rows)]
    reduced, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise PreconditionError("matrix is singular")
    return Matrix([r[n:] for r in reduced], n, F)


# -- integer lattices -------------------------------------------------------


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Row Hermite normal form H of an integer matrix G and T with T·G = H.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    Zero rows are dropped from H (and the matching rows of T).
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return [tuple(row) for row in a[:r]], [tuple(row) for row in u[:r]]


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    return hnf_with_transform(rows, ncols)[0]


def _as_fraction(x) -> Fraction:
    if isinstance(x, FieldElement):
        if not x.is_rational():
            raise PreconditionError(f"lattice generator entry {x} is irrational")
        return x.a
    return Fraction(x)


@dataclass(frozen=True)
class IntegralLattice:
    """Integer span of rational generator vectors."""

    ambient_dim: int
    generators: tuple
    denominator: int
    hnf_basis: tuple
    transform: tuple = dc_field(compare=False, repr=False, default=())

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], ambient_dim: int) -> "IntegralLattice":
        gens = tuple(tuple(_as_fraction(x) for x in g) for g in generators)
        for g in gens:
            if len(g) != ambient_dim:
                raise DimensionMismatch(f"generator of length {len(g)} in ambient dimension {ambient_dim}")
        den = 1
        for g in gens:
            for x in g:
                den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [[int(x * den) for x in g] for g in gens]
        h, t = hnf_with_transform(ints, ambient_dim)
        g = math.gcd(den, *(x for row in h for x in row))
        h = [tuple(x // g for x in row) for row in h]
        return cls(ambient_dim, gens, den // g, tuple(h), tuple(t))

    @classmethod
    def standard(cls, n: int) -> "IntegralLattice":
        return cls.from_generators([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def rank(self) -> int:
        return len(self.hnf_basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def basis_vectors(self) -> list[tuple[Fraction, ...]]:
        return [tuple(Fraction(x, self.denominator) for x in row) for row in self.hnf_basis]

    def field_basis(self, field: FieldDescriptor) -> list[Vector]:
        return [vec(field, b) for b in self.basis_vectors()]

    def basis_preimages(self) -> list[tuple[int, ...]]:
        """Integer coefficients over the generators for each HNF basis row."""
        return [tuple(row) for row in self.transform]

    def contains(self, v: Sequence) -> bool:
        target = [_as_fraction(x) * self.denominator for x in v]
        if any(x.denominator != 1 for x in target):
            return False
        rest = [int(x) for x in target]
        col = 0
        for row in self.hnf_basis:
            while row[col] == 0:
                if rest[col] != 0:
                    return False
                col += 1
            if rest[col] % row[col]:
                return False
            q = rest[col] // row[col]
            rest = [x - q * y for x, y in zip(rest, row)]
            col += 1
        return all(x == 0 for x in rest)

    def __eq__(self, other):
        if not isinstance(other, IntegralLattice):
            return NotImplemented
        return (self.ambient_dim, self.denominator, self.hnf_basis) == (
            other.ambient_dim, other.denominator, other.hnf_basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.denominator, self.hnf_basis))
