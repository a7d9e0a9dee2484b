# src/core/cochain.py
# Alternating cochains, the Chevalley-Eilenberg and LieDer coboundaries,
# the δ operator, the formal coboundary d^F, the cup product and cohomology.

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError, InvalidDataError
from .exactlin import (
    Matrix, Subspace, Vector, ZERO, kernel_basis, solve_vector, to_rational,
    vec_is_zero, zero_vector,
)
from .lie import LieAlgebra, LieDerPair
from .models import CheckResult, ComplexKind

logger = logging.getLogger("liederx.cochain")


@lru_cache(maxsize=None)
def increasing_tuples(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def tuple_index(n: int, k: int) -> Dict[Tuple[int, ...], int]:
    return {t: i for i, t in enumerate(increasing_tuples(n, k))}


def permutation_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """(sign, sorted tuple) of a sequence of indices; sign 0 on repeats."""
    items = list(indices)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return 0, tuple(items)
    return sign, tuple(items)


@lru_cache(maxsize=None)
def shuffles(total: int, p: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...], int], ...]:
    """(p, total-p)-shuffles as (first positions, remaining positions, sign)."""
    out = []
    for first in combinations(range(total), p):
        chosen = set(first)
        rest = tuple(i for i in range(total) if i not in chosen)
        inversions = sum(pos - r for r, pos in enumerate(first))
        out.append((first, rest, -1 if inversions % 2 else 1))
    return tuple(out)


@dataclass(frozen=True)
class AltCochain:
    """Alternating k-linear map from a source_dim space to a target_dim space.

    Values are stored once per strictly increasing index tuple, in the order of
    itertools.combinations; other tuples follow by antisymmetry.
    """
    source_dim: int
    target_dim: int
    degree: int
    values: Tuple[Vector, ...]

    def __post_init__(self):
        expected = comb(self.source_dim, self.degree)
        if len(self.values) != expected:
            raise DimensionMismatchError(
                f"Degree-{self.degree} cochain on {self.source_dim} dims needs {expected} values, got {len(self.values)}"
            )
        for v in self.values:
            if len(v) != self.target_dim:
                raise DimensionMismatchError(f"Cochain value of length {len(v)}, target dimension {self.target_dim}")

    @classmethod
    def zero(cls, source_dim: int, target_dim: int, degree: int) -> "AltCochain":
        return cls(source_dim, target_dim, degree, (zero_vector(target_dim),) * comb(source_dim, degree))

    @classmethod
    def from_function(cls, source_dim: int, target_dim: int, degree: int,
                      fn: Callable[[Tuple[int, ...]], Sequence]) -> "AltCochain":
        return cls(source_dim, target_dim, degree,
                   tuple(tuple(to_rational(x) for x in fn(t)) for t in increasing_tuples(source_dim, degree)))

    @classmethod
    def from_dict(cls, source_dim: int, target_dim: int, degree: int,
                  data: Dict[Tuple[int, ...], Sequence]) -> "AltCochain":
        """Build from values on arbitrary tuples; a non-increasing key is re-signed."""
        values = [list(zero_vector(target_dim)) for _ in range(comb(source_dim, degree))]
        index = tuple_index(source_dim, degree)
        for key, val in data.items():
            if len(key) != degree or any(not 0 <= i < source_dim for i in key):
                raise DimensionMismatchError(f"Tuple {key} does not fit a degree-{degree} cochain on {source_dim} dims")
            sign, ordered = permutation_sign(key)
            if sign == 0:
                raise InvalidDataError(f"Tuple {key} repeats an index")
            if len(val) != target_dim:
                raise DimensionMismatchError(f"Value of length {len(val)}, target dimension {target_dim}")
            values[index[ordered]] = [sign * to_rational(x) for x in val]
        return cls(source_dim, target_dim, degree, tuple(tuple(v) for v in values))

    @classmethod
    def from_flat(cls, source_dim: int, target_dim: int, degree: int, flat: Sequence) -> "AltCochain":
        count = comb(source_dim, degree)
        if len(flat) != count * target_dim:
            raise DimensionMismatchError(f"Flat cochain of length {len(flat)}, expected {count * target_dim}")
        return cls(source_dim, target_dim, degree,
                   tuple(tuple(flat[i * target_dim:(i + 1) * target_dim]) for i in range(count)))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "AltCochain":
        return cls(m.cols, m.rows, 1, tuple(m.column(j) for j in range(m.cols)))

    def to_matrix(self) -> Matrix:
        if self.degree != 1:
            raise DimensionMismatchError("Only degree-1 cochains are linear maps")
        return Matrix.from_columns(self.values, self.target_dim)

    @property
    def tuples(self) -> Tuple[Tuple[int, ...], ...]:
        return increasing_tuples(self.source_dim, self.degree)

    def value(self, t: Tuple[int, ...]) -> Vector:
        return self.values[tuple_index(self.source_dim, self.degree)[t]]

    def evaluate(self, indices: Sequence[int]) -> Vector:
        sign, ordered = permutation_sign(indices)
        if sign == 0:
            return zero_vector(self.target_dim)
        v = self.value(ordered)
        return v if sign == 1 else tuple(-x for x in v)

    def evaluate_vectors(self, vectors: Sequence[Sequence]) -> Vector:
        """Multilinear evaluation on arbitrary coordinate vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatchError(f"Degree-{self.degree} cochain given {len(vectors)} arguments")
        acc = [ZERO] * self.target_dim

        def walk(pos: int, chosen: List[int], coeff):
            if pos == len(vectors):
                sign, ordered = permutation_sign(chosen)
                if sign:
                    c = coeff * sign
                    for k, x in enumerate(self.value(ordered)):
                        if x:
                            acc[k] += c * x
                return
            for s, a in enumerate(vectors[pos]):
                if a and s not in chosen:
                    chosen.append(s)
                    walk(pos + 1, chosen, coeff * a)
                    chosen.pop()

        walk(0, [], to_rational(1))
        return tuple(acc)

    def evaluate_with_first(self, v: Sequence, rest: Sequence[int]) -> Vector:
        """c(v, e_rest...) for a vector v and basis indices rest."""
        acc = [ZERO] * self.target_dim
        for s, a in enumerate(v):
            if not a:
                continue
            for k, x in enumerate(self.evaluate((s,) + tuple(rest))):
                if x:
                    acc[k] += a * x
        return tuple(acc)

    def flatten(self) -> Vector:
        return tuple(x for v in self.values for x in v)

    def _check_compatible(self, other: "AltCochain"):
        if (self.source_dim, self.target_dim, self.degree) != (other.source_dim, other.target_dim, other.degree):
            raise DimensionMismatchError("Cochains differ in source, target or degree")

    def __add__(self, other: "AltCochain") -> "AltCochain":
        self._check_compatible(other)
        return AltCochain(self.source_dim, self.target_dim, self.degree,
                          tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(self.values, other.values)))

    def __sub__(self, other: "AltCochain") -> "AltCochain":
        self._check_compatible(other)
        return AltCochain(self.source_dim, self.target_dim, self.degree,
                          tuple(tuple(a - b for a, b in zip(u, v)) for u, v in zip(self.values, other.values)))

    def __neg__(self) -> "AltCochain":
        return self.scale(-1)

    def scale(self, c) -> "AltCochain":
        c = to_rational(c)
        return AltCochain(self.source_dim, self.target_dim, self.degree,
                          tuple(tuple(c * a for a in v) for v in self.values))

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.values)

    def map_target(self, m: Matrix) -> "AltCochain":
        """m ∘ c."""
        if m.cols != self.target_dim:
            raise DimensionMismatchError(f"Cannot compose a {m.shape} map after a cochain valued in {self.target_dim} dims")
        return AltCochain(self.source_dim, m.rows, self.degree, tuple(m.apply(v) for v in self.values))


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    space_dim: int
    rho: Tuple[Matrix, ...]

    def __post_init__(self):
        _check_rho(self.algebra, self.space_dim, self.rho)

    def is_representation(self) -> CheckResult:
        return _check_rep_axiom(self.algebra, self.rho)


@dataclass(frozen=True)
class LieDerRep:
    pair: LieDerPair
    space_dim: int
    rho: Tuple[Matrix, ...]
    t: Matrix

    def __post_init__(self):
        _check_rho(self.pair.algebra, self.space_dim, self.rho)
        if self.t.shape != (self.space_dim, self.space_dim):
            raise DimensionMismatchError(f"T has shape {self.t.shape}, space dimension is {self.space_dim}")

    @property
    def algebra(self) -> LieAlgebra:
        return self.pair.algebra

    def is_representation(self) -> CheckResult:
        return _check_rep_axiom(self.algebra, self.rho)

    def check_ldrep(self) -> CheckResult:
        """T ρ(x) = ρ(Dx) + ρ(x) T on basis vectors."""
        check = self.is_representation()
        if not check:
            return check
        d = self.pair.d
        for i in range(self.algebra.dim):
            lhs = self.t @ self.rho[i]
            rhs = rho_of(self.rho, self.space_dim, d.column(i)) + self.rho[i] @ self.t
            if lhs != rhs:
                return CheckResult.failed(f"ldrep at x{i + 1}")
        return CheckResult.passed()


def _check_rho(algebra: LieAlgebra, space_dim: int, rho: Sequence[Matrix]):
    if len(rho) != algebra.dim:
        raise DimensionMismatchError(f"Need one matrix per basis vector ({algebra.dim}), got {len(rho)}")
    for m in rho:
        if m.shape != (space_dim, space_dim):
            raise DimensionMismatchError(f"Action matrix of shape {m.shape} on a {space_dim}-dim space")


def _check_rep_axiom(algebra: LieAlgebra, rho: Sequence[Matrix]) -> CheckResult:
    space_dim = rho[0].rows if rho else 0
    for i, j in combinations(range(algebra.dim), 2):
        lhs = rho_of(rho, space_dim, algebra.bracket_basis(i, j))
        if lhs != rho[i] @ rho[j] - rho[j] @ rho[i]:
            return CheckResult.failed(f"representation axiom at ({i + 1},{j + 1})")
    return CheckResult.passed()


def rho_of(rho: Sequence[Matrix], space_dim: int, x: Sequence) -> Matrix:
    """Σ x_i ρ(e_i)."""
    acc = Matrix.zeros(space_dim, space_dim)
    for a, m in zip(x, rho):
        if a:
            acc = acc + m.scale(a)
    return acc


def trivial_rep(pair: LieDerPair, space_dim: int, t: Matrix = None) -> LieDerRep:
    t = t if t is not None else Matrix.zeros(space_dim, space_dim)
    return LieDerRep(pair, space_dim, tuple(Matrix.zeros(space_dim, space_dim) for _ in range(pair.dim)), t)


def adjoint_rep(pair: LieDerPair) -> LieDerRep:
    from .lie import ad_matrix
    return LieDerRep(pair, pair.dim, tuple(ad_matrix(pair.algebra, i) for i in range(pair.dim)), pair.d)


@dataclass(frozen=True)
class LieDerCochain:
    top: AltCochain
    lower: Optional[AltCochain] = None

    def __post_init__(self):
        if self.top.degree == 1:
            if self.lower is not None:
                raise DimensionMismatchError("Degree-1 LieDer cochains have no lower component")
        else:
            if self.lower is None or self.lower.degree != self.top.degree - 1:
                raise DimensionMismatchError(f"Degree-{self.top.degree} LieDer cochain needs a degree-{self.top.degree - 1} lower part")
            if (self.lower.source_dim, self.lower.target_dim) != (self.top.source_dim, self.top.target_dim):
                raise DimensionMismatchError("Top and lower parts differ in source or target")

    @property
    def degree(self) -> int:
        return self.top.degree

    @classmethod
    def zero(cls, source_dim: int, target_dim: int, degree: int) -> "LieDerCochain":
        lower = AltCochain.zero(source_dim, target_dim, degree - 1) if degree > 1 else None
        return cls(AltCochain.zero(source_dim, target_dim, degree), lower)

    @classmethod
    def from_flat(cls, source_dim: int, target_dim: int, degree: int, flat: Sequence) -> "LieDerCochain":
        size = comb(source_dim, degree) * target_dim
        top = AltCochain.from_flat(source_dim, target_dim, degree, flat[:size])
        lower = AltCochain.from_flat(source_dim, target_dim, degree - 1, flat[size:]) if degree > 1 else None
        return cls(top, lower)

    def flatten(self) -> Vector:
        return self.top.flatten() + (self.lower.flatten() if self.lower is not None else ())

    def is_zero(self) -> bool:
        return self.top.is_zero() and (self.lower is None or self.lower.is_zero())

    def __add__(self, other: "LieDerCochain") -> "LieDerCochain":
        lower = self.lower + other.lower if self.lower is not None else None
        return LieDerCochain(self.top + other.top, lower)

    def __sub__(self, other: "LieDerCochain") -> "LieDerCochain":
        lower = self.lower - other.lower if self.lower is not None else None
        return LieDerCochain(self.top - other.top, lower)

    def __neg__(self) -> "LieDerCochain":
        return LieDerCochain(-self.top, -self.lower if self.lower is not None else None)


def _coboundary(algebra: LieAlgebra, rho: Sequence[Matrix], c: AltCochain) -> AltCochain:
    if c.source_dim != algebra.dim:
        raise DimensionMismatchError(f"Cochain on {c.source_dim} dims, algebra has dimension {algebra.dim}")
    if len(rho) != algebra.dim or any(m.shape != (c.target_dim, c.target_dim) for m in rho):
        raise DimensionMismatchError("Action matrices do not match the cochain target")
    k = c.degree

    def value(t: Tuple[int, ...]) -> Vector:
        acc = [ZERO] * c.target_dim
        for i, xi in enumerate(t):
            rest = t[:i] + t[i + 1:]
            term = rho[xi].apply(c.value(rest))
            sign = -1 if i % 2 else 1
            for s, x in enumerate(term):
                if x:
                    acc[s] += sign * x
        for i, j in combinations(range(len(t)), 2):
            br = algebra.bracket_basis(t[i], t[j])
            if vec_is_zero(br):
                continue
            rest = tuple(x for p, x in enumerate(t) if p != i and p != j)
            term = c.evaluate_with_first(br, rest)
            sign = -1 if (i + j) % 2 else 1
            for s, x in enumerate(term):
                if x:
                    acc[s] += sign * x
        return tuple(acc)

    return AltCochain.from_function(algebra.dim, c.target_dim, k + 1, value)


def ce_coboundary(rep: Union[Representation, LieDerRep], c: AltCochain) -> AltCochain:
    if c.target_dim != rep.space_dim:
        raise DimensionMismatchError(f"Cochain valued in {c.target_dim} dims, representation space has {rep.space_dim}")
    return _coboundary(rep.algebra, rep.rho, c)


def formal_coboundary(g: LieAlgebra, varrho: Sequence[Matrix], c: AltCochain) -> AltCochain:
    """d^F_ϱ: the Chevalley-Eilenberg formula with ϱ in place of a representation."""
    return _coboundary(g, varrho, c)


def delta_with(d: Matrix, t: Matrix, c: AltCochain) -> AltCochain:
    """Σ_i c(.., D x_i, ..) − T c(..)."""
    if d.shape != (c.source_dim, c.source_dim) or t.shape != (c.target_dim, c.target_dim):
        raise DimensionMismatchError("δ: D or T does not match the cochain")

    def value(tup: Tuple[int, ...]) -> Vector:
        acc = [ZERO] * c.target_dim
        for i, xi in enumerate(tup):
            for s, a in enumerate(d.column(xi)):
                if not a:
                    continue
                replaced = tup[:i] + (s,) + tup[i + 1:]
                for k, x in enumerate(c.evaluate(replaced)):
                    if x:
                        acc[k] += a * x
        tv = t.apply(c.value(tup))
        return tuple(a - b for a, b in zip(acc, tv))

    return AltCochain.from_function(c.source_dim, c.target_dim, c.degree, value)


def delta_op(rep: LieDerRep, c: AltCochain) -> AltCochain:
    return delta_with(rep.pair.d, rep.t, c)


def lieder_coboundary(rep: LieDerRep, c: LieDerCochain) -> LieDerCochain:
    check = rep.check_ldrep()
    if not check:
        raise InvalidDataError(f"Coefficients are not a LieDer representation: {check.failure}")
    return _lieder_coboundary_unchecked(rep, c)


def _lieder_coboundary_unchecked(rep: LieDerRep, c: LieDerCochain) -> LieDerCochain:
    n = c.degree
    top = ce_coboundary(rep, c.top)
    dl = delta_op(rep, c.top)
    if n == 1:
        return LieDerCochain(top, -dl)
    lower = ce_coboundary(rep, c.lower)
    return LieDerCochain(top, lower - dl if n % 2 else lower + dl)


def cup_product(h: LieAlgebra, a: AltCochain, b: AltCochain) -> AltCochain:
    """[a, b]_⌣ for h-valued cochains on the same source."""
    if a.source_dim != b.source_dim or a.target_dim != h.dim or b.target_dim != h.dim:
        raise DimensionMismatchError("Cup product needs h-valued cochains on a common source")
    p, q = a.degree, b.degree

    def value(t: Tuple[int, ...]) -> Vector:
        acc = [ZERO] * h.dim
        for first, rest, sign in shuffles(p + q, p):
            u = a.value(tuple(t[i] for i in first))
            if vec_is_zero(u):
                continue
            v = b.value(tuple(t[i] for i in rest))
            if vec_is_zero(v):
                continue
            for k, x in enumerate(h.bracket(u, v)):
                if x:
                    acc[k] += sign * x
        return tuple(acc)

    return AltCochain.from_function(a.source_dim, h.dim, p + q, value)


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    complex: ComplexKind
    dim_cocycles: int
    dim_coboundaries: int
    dim_h: int
    cocycles: Subspace
    coboundaries: Subspace
    harmonic: Subspace
    differential_in: Optional[Matrix]

    @property
    def representatives(self) -> List[Vector]:
        return self.harmonic.vectors()

    def is_cocycle(self, v) -> bool:
        return self.cocycles.contains(_as_flat(v))

    def is_trivial(self, v) -> bool:
        return self.coboundaries.contains(_as_flat(v))

    def class_coordinates(self, v) -> Vector:
        flat = _as_flat(v)
        if not self.cocycles.contains(flat):
            raise InvalidDataError(f"Not a degree-{self.degree} cocycle")
        return self.harmonic.coordinates(self.coboundaries.reduce(flat))

    def preimage(self, v) -> Optional[Vector]:
        flat = _as_flat(v)
        if self.differential_in is None:
            return () if vec_is_zero(flat) else None
        return solve_vector(self.differential_in, flat)


def _as_flat(v) -> Vector:
    if isinstance(v, (AltCochain, LieDerCochain)):
        return v.flatten()
    return tuple(v)


def _ce_matrix(rep, degree: int) -> Matrix:
    m, dim_v = rep.algebra.dim, rep.space_dim
    size = comb(m, degree) * dim_v
    out_size = comb(m, degree + 1) * dim_v
    columns = []
    for k in range(size):
        unit = [ZERO] * size
        unit[k] = to_rational(1)
        columns.append(ce_coboundary(rep, AltCochain.from_flat(m, dim_v, degree, unit)).flatten())
    return Matrix.from_columns(columns, out_size) if columns else Matrix.zeros(out_size, 0)


def _lieder_size(m: int, dim_v: int, degree: int) -> int:
    if degree < 1:
        return 0
    size = comb(m, degree) * dim_v
    return size + (comb(m, degree - 1) * dim_v if degree > 1 else 0)


def _lieder_matrix(rep: LieDerRep, degree: int) -> Matrix:
    m, dim_v = rep.algebra.dim, rep.space_dim
    size = _lieder_size(m, dim_v, degree)
    out_size = _lieder_size(m, dim_v, degree + 1)
    columns = []
    for k in range(size):
        unit = [ZERO] * size
        unit[k] = to_rational(1)
        image = _lieder_coboundary_unchecked(rep, LieDerCochain.from_flat(m, dim_v, degree, unit))
        columns.append(image.flatten())
    return Matrix.from_columns(columns, out_size) if columns else Matrix.zeros(out_size, 0)


def coboundary_matrix(rep, degree: int, complex: ComplexKind = ComplexKind.CE) -> Matrix:
    """Matrix of the degree-`degree` coboundary on flattened cochains."""
    if complex is ComplexKind.CE:
        return _ce_matrix(rep, degree)
    return _lieder_matrix(rep, degree)


def cohomology(rep, degree: int, complex: ComplexKind = ComplexKind.CE) -> CohomologyResult:
    if complex is ComplexKind.LIEDER:
        if not isinstance(rep, LieDerRep):
            raise InvalidDataError("LieDer cohomology needs a LieDer representation")
        if degree < 1:
            raise InvalidDataError("LieDer cochains start in degree 1")
        check = rep.check_ldrep()
    else:
        if degree < 0:
            raise InvalidDataError("Negative cohomological degree")
        check = rep.is_representation()
    if not check:
        raise InvalidDataError(f"Invalid coefficients: {check.failure}")

    d_out = coboundary_matrix(rep, degree, complex)
    ambient = d_out.cols
    cocycles = kernel_basis(d_out) if d_out.rows else Subspace.full(ambient)
    has_incoming = degree >= 1 if complex is ComplexKind.CE else degree >= 2
    if has_incoming:
        d_in = coboundary_matrix(rep, degree - 1, complex)
        coboundaries = Subspace.span(ambient, d_in.columns())
    else:
        d_in = None
        coboundaries = Subspace.zero(ambient)
    harmonic = Subspace.span(ambient, [coboundaries.reduce(v) for v in cocycles.vectors()])
    if harmonic.dim != cocycles.dim - coboundaries.dim:
        raise InvalidDataError("Coboundaries are not contained in cocycles; the complex is not a complex")
    logger.debug(
        f"{complex.value} H^{degree}: dim Z={cocycles.dim}, dim B={coboundaries.dim}, dim H={harmonic.dim}"
    )
    return CohomologyResult(degree, complex, cocycles.dim, coboundaries.dim, harmonic.dim,
                            cocycles, coboundaries, harmonic, d_in)
