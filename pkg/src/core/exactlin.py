# src/core/exactlin.py
# Exact rational linear algebra: matrices, row reduction, subspaces and quotients.
#
# Every value here is immutable. Vectors are plain tuples of Fractions so they
# hash and compare by value.

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError, ParseError

Rational = Fraction
Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"Boolean is not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"Not a rational literal: {value!r}") from e
    raise ParseError(f"Unsupported rational value: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def vector(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatchError(f"Vector lengths differ: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatchError(f"Vector lengths differ: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def vec_combination(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    """Σ coeffs[i]·vectors[i], skipping zero coefficients."""
    acc = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x
    return tuple(acc)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(x, Fraction) for x in self.entries):
            object.__setattr__(self, "entries", tuple(to_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatchError("Column count required for an empty row list")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatchError(f"Ragged row of length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(to_rational(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionMismatchError("Row count required for an empty column list")
            rows = len(columns[0])
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, n: int, value) -> "Matrix":
        return cls.identity(n).scale(to_rational(value))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [to_rational(v) for v in values]
        return cls(n, n, tuple(vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def from_flat(cls, rows: int, cols: int, flat: Sequence) -> "Matrix":
        return cls(rows, cols, tuple(flat))

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def flatten(self) -> Vector:
        return self.entries

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"Cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        out = []
        for i in range(self.rows):
            acc = ZERO
            base = i * self.cols
            for j, x in enumerate(v):
                if x:
                    a = self.entries[base + j]
                    if a:
                        acc += a * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: Union["Matrix", Sequence[Fraction]]):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        out = [ZERO] * (self.rows * other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.entries[i * self.cols + k]
                if not a:
                    continue
                base = k * other.cols
                for j in range(other.cols):
                    b = other.entries[base + j]
                    if b:
                        out[i * other.cols + j] += a * b
        return Matrix(self.rows, other.cols, tuple(out))

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shapes differ: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError(f"Cannot stack {self.shape} beside {other.shape}")
        return Matrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)], self.cols + other.cols)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError("Trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), ZERO)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def _rref_rows(rows: List[List[Fraction]], ncols: int, stop_col: Optional[int] = None) -> List[int]:
    """In-place Gauss-Jordan elimination. Pivots are searched only before stop_col."""
    limit = ncols if stop_col is None else stop_col
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref_rows(rows, m.cols)
    return Matrix.from_rows(rows, m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(a: Matrix, b: Matrix, free_value=0) -> Optional[Matrix]:
    """One exact solution x of a·x = b, or None when the system is inconsistent.

    Free variables are set to `free_value` (0 by default), which pins the
    returned representative.
    """
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: a has {a.rows} rows but b has {b.rows}")
    n = a.cols
    free_value = to_rational(free_value)
    rows = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    pivots = _rref_rows(rows, n + b.cols, stop_col=n)
    for i in range(len(pivots), len(rows)):
        if any(x != 0 for x in rows[i][n:]):
            return None
    free = [c for c in range(n) if c not in set(pivots)]
    solution = [[free_value if c in free else ZERO for _ in range(b.cols)] for c in range(n)]
    for r, p in enumerate(pivots):
        for k in range(b.cols):
            value = rows[r][n + k]
            if free_value:
                value -= sum((rows[r][f] for f in free), ZERO) * free_value
            solution[p][k] = value
    return Matrix.from_rows(solution, b.cols)


def solve_vector(a: Matrix, v: Sequence[Fraction], free_value=0) -> Optional[Vector]:
    x = solve(a, Matrix.from_columns([v], a.rows), free_value)
    return None if x is None else x.column(0)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix
    pivots: Tuple[int, ...]

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatchError(
                f"Subspace basis has {self.basis.cols} columns, ambient dimension is {self.ambient_dim}"
            )

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(vector(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatchError(f"Spanning vector of length {len(r)} in ambient {ambient_dim}")
        pivots = _rref_rows(rows, ambient_dim)
        rows = rows[:len(pivots)]
        return cls(ambient_dim, Matrix.from_rows(rows, ambient_dim), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[Vector]:
        return self.basis.to_rows()

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """v minus its pivot-determined component in this subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(v)} in ambient {self.ambient_dim}")
        coeffs = [v[p] for p in self.pivots]
        return vec_sub(v, vec_combination(coeffs, self.vectors(), self.ambient_dim))

    def contains(self, v: Sequence[Fraction]) -> bool:
        return vec_is_zero(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of a member of the subspace in the RREF basis."""
        return tuple(v[p] for p in self.pivots)

    def combine(self, coords: Sequence[Fraction]) -> Vector:
        if len(coords) != self.dim:
            raise DimensionMismatchError(f"Expected {self.dim} coordinates, got {len(coords)}")
        return vec_combination(coords, self.vectors(), self.ambient_dim)

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.vectors() + other.vectors())


def kernel_basis(a: Matrix) -> Subspace:
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    vectors = []
    for f in range(a.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * a.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        vectors.append(v)
    return Subspace.span(a.cols, vectors)


def image_basis(a: Matrix) -> Subspace:
    return Subspace.span(a.rows, a.columns())


@dataclass(frozen=True)
class QuotientSpace:
    ambient_dim: int
    sub: Subspace
    complement_coords: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.complement_coords)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        return self.sub.reduce(v)

    def class_coords(self, v: Sequence[Fraction]) -> Vector:
        r = self.reduce(v)
        return tuple(r[c] for c in self.complement_coords)

    def is_zero_class(self, v: Sequence[Fraction]) -> bool:
        return vec_is_zero(self.class_coords(v))

    def representative(self, coords: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.ambient_dim
        for c, x in zip(self.complement_coords, coords):
            out[c] = to_rational(x)
        return tuple(out)


def quotient(ambient_dim: int, sub: Subspace) -> QuotientSpace:
    if sub.ambient_dim != ambient_dim:
        raise DimensionMismatchError(f"Subspace lives in {sub.ambient_dim} dims, quotient asked for {ambient_dim}")
    pivot_set = set(sub.pivots)
    return QuotientSpace(ambient_dim, sub, tuple(c for c in range(ambient_dim) if c not in pivot_set))
