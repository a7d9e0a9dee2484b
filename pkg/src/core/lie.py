# src/core/lie.py
# Lie algebras by structure constants, derivations and LieDer pairs.

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError, InvalidDataError
from .exactlin import (
    Matrix, QuotientSpace, Subspace, Vector, ZERO, kernel_basis, quotient, solve_vector,
    to_rational, unit_vector, vec_combination, vec_is_zero, zero_vector,
)
from .models import CheckResult

logger = logging.getLogger("liederx.lie")

# Linear maps between coordinate spaces. Column j holds the image of source
# basis vector j, so composition is the plain matrix product.
LinearMapGH = Matrix

BracketData = Mapping[Tuple[int, int], Union[Mapping[int, object], Sequence[object]]]


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    structure: Tuple[Tuple[Vector, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.structure) != self.dim or any(len(row) != self.dim for row in self.structure):
            raise DimensionMismatchError(f"Structure table does not match dimension {self.dim}")

    @classmethod
    def from_brackets(cls, dim: int, brackets: BracketData, name: str = "") -> "LieAlgebra":
        """Build from [e_i, e_j] for i < j (0-based); the rest follows by antisymmetry."""
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            if not (0 <= i < j < dim):
                raise InvalidDataError(f"Bracket key ({i}, {j}) must satisfy 0 <= i < j < {dim}")
            if isinstance(value, Mapping):
                vec = [ZERO] * dim
                for k, coeff in value.items():
                    if not 0 <= k < dim:
                        raise InvalidDataError(f"Bracket value index {k} out of range")
                    vec[k] = to_rational(coeff)
            else:
                if len(value) != dim:
                    raise DimensionMismatchError(f"Bracket vector of length {len(value)} in dimension {dim}")
                vec = [to_rational(x) for x in value]
            table[i][j] = tuple(vec)
            table[j][i] = tuple(-x for x in vec)
        return cls(dim, tuple(tuple(row) for row in table), name)

    @classmethod
    def abelian(cls, dim: int, name: str = "") -> "LieAlgebra":
        return cls.from_brackets(dim, {}, name or f"A{dim}")

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.structure[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError(f"Bracket arguments must have length {self.dim}")
        acc = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b or i == j:
                    continue
                c = a * b
                for k, s in enumerate(self.structure[i][j]):
                    if s:
                        acc[k] += c * s
        return tuple(acc)

    def upper_brackets(self) -> dict:
        return {
            (i, j): self.structure[i][j]
            for i, j in combinations(range(self.dim), 2)
            if not vec_is_zero(self.structure[i][j])
        }


def jacobi_check(L: LieAlgebra) -> CheckResult:
    basis = [unit_vector(L.dim, i) for i in range(L.dim)]
    for i, j, k in combinations(range(L.dim), 3):
        total = zero_vector(L.dim)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = L.bracket_basis(a, b)
            total = tuple(s + t for s, t in zip(total, L.bracket(inner, basis[c])))
        if not vec_is_zero(total):
            return CheckResult.failed(f"jacobi at ({i + 1},{j + 1},{k + 1})")
    return CheckResult.passed()


def ad_matrix(L: LieAlgebra, i: int) -> Matrix:
    if not 0 <= i < L.dim:
        raise DimensionMismatchError(f"Basis index {i} out of range for dimension {L.dim}")
    return Matrix.from_columns([L.bracket_basis(i, j) for j in range(L.dim)], L.dim)


def ad_of(L: LieAlgebra, u: Sequence) -> Matrix:
    """Matrix of ad(u) for an arbitrary vector u."""
    n = L.dim
    if n == 0:
        return Matrix.zeros(0, 0)
    flat = vec_combination(list(u), [ad_matrix(L, i).flatten() for i in range(n)], n * n)
    return Matrix(n, n, flat)


def center(L: LieAlgebra) -> Subspace:
    # rows indexed by (j, k): Σ_i u_i c[i][j][k] = 0
    n = L.dim
    rows = [[L.structure[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return kernel_basis(Matrix.from_rows(rows, n))


def leibniz_system(L: LieAlgebra) -> Matrix:
    """Linear system on row-major flattened D whose kernel is Der(L)."""
    n = L.dim
    c = L.structure
    rows = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            row = [ZERO] * (n * n)
            for a in range(n):
                row[k * n + a] += c[i][j][a]
                row[a * n + i] -= c[a][j][k]
                row[a * n + j] -= c[i][a][k]
            rows.append(row)
    return Matrix.from_rows(rows, n * n)


def derivation_space(L: LieAlgebra) -> Subspace:
    n = L.dim
    if n < 2:
        return Subspace.full(n * n)
    space = kernel_basis(leibniz_system(L))
    logger.debug(f"Der({L.name or 'L'}) has dimension {space.dim}")
    return space


def inner_derivations(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.dim * L.dim, [ad_matrix(L, i).flatten() for i in range(L.dim)])


def derivation_coords(L: LieAlgebra, m: Matrix, space: Subspace = None) -> Vector:
    space = space or derivation_space(L)
    flat = m.flatten()
    if not space.contains(flat):
        raise InvalidDataError("Matrix is not a derivation")
    return space.coordinates(flat)


def derivation_matrix(L: LieAlgebra, coords: Sequence, space: Subspace = None) -> Matrix:
    space = space or derivation_space(L)
    return Matrix(L.dim, L.dim, space.combine([to_rational(x) for x in coords]))


def out_space(L: LieAlgebra) -> QuotientSpace:
    """Out(L) = Der(L)/ad(L), living on Der(L) coordinates."""
    der = derivation_space(L)
    inner = [der.coordinates(ad_matrix(L, i).flatten()) for i in range(L.dim)]
    return quotient(der.dim, Subspace.span(der.dim, inner))


def is_lieder_pair(L: LieAlgebra, d: Matrix) -> CheckResult:
    if d.shape != (L.dim, L.dim):
        return CheckResult.failed(f"derivation shape {d.shape} does not match dimension {L.dim}")
    for i, j in combinations(range(L.dim), 2):
        lhs = d.apply(L.bracket_basis(i, j))
        ei, ej = unit_vector(L.dim, i), unit_vector(L.dim, j)
        rhs = tuple(a + b for a, b in zip(L.bracket(d.column(i), ej), L.bracket(ei, d.column(j))))
        if lhs != rhs:
            return CheckResult.failed(f"leibniz at ({i + 1},{j + 1})")
    return CheckResult.passed()


@dataclass(frozen=True)
class Derivation:
    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        check = is_lieder_pair(self.algebra, self.matrix)
        if not check:
            raise InvalidDataError(f"Not a derivation of {self.algebra.name or 'the algebra'}: {check.failure}")


@dataclass(frozen=True)
class LieDerPair:
    algebra: LieAlgebra
    derivation: Derivation

    def __post_init__(self):
        if self.derivation.algebra != self.algebra:
            raise InvalidDataError("Derivation belongs to a different algebra")

    @classmethod
    def of(cls, algebra: LieAlgebra, d: Matrix = None) -> "LieDerPair":
        if d is None:
            d = Matrix.zeros(algebra.dim, algebra.dim)
        return cls(algebra, Derivation(algebra, d))

    @property
    def d(self) -> Matrix:
        return self.derivation.matrix

    @property
    def dim(self) -> int:
        return self.algebra.dim


def is_lie_hom(src: LieAlgebra, dst: LieAlgebra, psi: Matrix) -> CheckResult:
    if psi.shape != (dst.dim, src.dim):
        return CheckResult.failed(f"map shape {psi.shape} is not {dst.dim}x{src.dim}")
    for i, j in combinations(range(src.dim), 2):
        if psi.apply(src.bracket_basis(i, j)) != dst.bracket(psi.column(i), psi.column(j)):
            return CheckResult.failed(f"bracket not preserved at ({i + 1},{j + 1})")
    return CheckResult.passed()


def is_lieder_hom(src: LieDerPair, dst: LieDerPair, psi: Matrix) -> CheckResult:
    check = is_lie_hom(src.algebra, dst.algebra, psi)
    if not check:
        return check
    if dst.d @ psi != psi @ src.d:
        return CheckResult.failed("map does not intertwine the derivations")
    return CheckResult.passed()


def direct_sum(g: LieAlgebra, h: LieAlgebra, name: str = "") -> LieAlgebra:
    """g ⊕ h with g-basis first, then h-basis."""
    n = g.dim + h.dim
    brackets = {}
    for (i, j), v in g.upper_brackets().items():
        brackets[(i, j)] = tuple(v) + zero_vector(h.dim)
    for (i, j), v in h.upper_brackets().items():
        brackets[(g.dim + i, g.dim + j)] = zero_vector(g.dim) + tuple(v)
    return LieAlgebra.from_brackets(n, brackets, name or f"{g.name}+{h.name}")


def block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows, b.rows
    rows: List[list] = []
    for i in range(n):
        rows.append(list(a.row(i)) + [ZERO] * b.cols)
    for i in range(m):
        rows.append([ZERO] * a.cols + list(b.row(i)))
    return Matrix.from_rows(rows, a.cols + b.cols)


def ad_preimage(L: LieAlgebra, target: Matrix, free_value=0) -> Optional[Vector]:
    """Some u with ad(u) = target, free variables set to free_value; None if target is not inner."""
    n = L.dim
    if target.shape != (n, n):
        raise DimensionMismatchError(f"Target of shape {target.shape} in dimension {n}")
    if n == 0:
        return ()
    system = Matrix.from_columns([ad_matrix(L, a).flatten() for a in range(n)], n * n)
    return solve_vector(system, target.flatten(), free_value)
