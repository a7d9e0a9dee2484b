# src/core/nonabelian.py
# Non-abelian 2-cocycles of LieDer pairs, their gauge equivalences and the
# dictionary between cocycles and extensions.

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .cochain import AltCochain, rho_of
from .errors import (
    DimensionMismatchError, InvalidDataError, InvalidWitnessError, NotACocycleError,
)
from .exactlin import Matrix, ZERO, rank, solve, unit_vector, vec_add, vec_is_zero, vec_sub, zero_vector
from .lie import (
    LieAlgebra, LieDerPair, ad_of, block_diagonal, is_lie_hom, is_lieder_hom,
    is_lieder_pair, jacobi_check,
)
from .models import CheckResult

logger = logging.getLogger("liederx.nonabelian")


@dataclass(frozen=True)
class NonAbelianCocycle:
    gpair: LieDerPair
    hpair: LieDerPair
    varrho: Tuple[Matrix, ...]
    omega: AltCochain
    chi: Matrix

    def __post_init__(self):
        m, p = self.gpair.dim, self.hpair.dim
        if len(self.varrho) != m or any(r.shape != (p, p) for r in self.varrho):
            raise DimensionMismatchError(f"ϱ needs {m} matrices of shape {p}x{p}")
        if (self.omega.source_dim, self.omega.target_dim, self.omega.degree) != (m, p, 2):
            raise DimensionMismatchError(f"ω must be a degree-2 cochain from {m} to {p} dims")
        if self.chi.shape != (p, m):
            raise DimensionMismatchError(f"χ has shape {self.chi.shape}, expected {p}x{m}")
        if not isinstance(self.varrho, tuple):
            object.__setattr__(self, "varrho", tuple(self.varrho))

    @classmethod
    def zero(cls, gpair: LieDerPair, hpair: LieDerPair) -> "NonAbelianCocycle":
        m, p = gpair.dim, hpair.dim
        return cls(gpair, hpair, tuple(Matrix.zeros(p, p) for _ in range(m)),
                   AltCochain.zero(m, p, 2), Matrix.zeros(p, m))

    @property
    def g(self) -> LieAlgebra:
        return self.gpair.algebra

    @property
    def h(self) -> LieAlgebra:
        return self.hpair.algebra

    def rho(self, x: Sequence) -> Matrix:
        return rho_of(self.varrho, self.hpair.dim, x)

    def replace(self, varrho=None, omega=None, chi=None) -> "NonAbelianCocycle":
        return NonAbelianCocycle(
            self.gpair, self.hpair,
            tuple(varrho) if varrho is not None else self.varrho,
            omega if omega is not None else self.omega,
            chi if chi is not None else self.chi,
        )


def verify_cocycle(c: NonAbelianCocycle) -> CheckResult:
    g, h = c.g, c.h
    m = g.dim
    d, k = c.gpair.d, c.hpair.d

    for i, r in enumerate(c.varrho):
        if not is_lieder_pair(h, r):
            return CheckResult.failed(f"der: varrho(x{i + 1}) is not a derivation of h")

    for i, j in combinations(range(m), 2):
        lhs = c.rho(g.bracket_basis(i, j))
        rhs = c.varrho[i] @ c.varrho[j] - c.varrho[j] @ c.varrho[i] - ad_of(h, c.omega.value((i, j)))
        if lhs != rhs:
            return CheckResult.failed(f"nc1 at (x{i + 1},x{j + 1})")

    for x, y, z in combinations(range(m), 3):
        om = c.omega
        total = zero_vector(h.dim)
        for a, b, e in ((x, y, z), (y, z, x), (z, x, y)):
            total = vec_add(total, c.varrho[a].apply(om.evaluate((b, e))))
            total = vec_sub(total, om.evaluate_with_first(g.bracket_basis(a, b), (e,)))
        if not vec_is_zero(total):
            return CheckResult.failed(f"nc2 at (x{x + 1},x{y + 1},x{z + 1})")

    for i in range(m):
        lhs = k @ c.varrho[i]
        rhs = c.rho(d.column(i)) + c.varrho[i] @ k + ad_of(h, c.chi.column(i))
        if lhs != rhs:
            return CheckResult.failed(f"nc3 at x{i + 1}")

    for i, j in combinations(range(m), 2):
        lhs = vec_add(k.apply(c.omega.value((i, j))), c.chi.apply(g.bracket_basis(i, j)))
        rhs = vec_sub(c.varrho[i].apply(c.chi.column(j)), c.varrho[j].apply(c.chi.column(i)))
        rhs = vec_add(rhs, c.omega.evaluate_vectors([d.column(i), unit_vector(m, j)]))
        rhs = vec_add(rhs, c.omega.evaluate_vectors([unit_vector(m, i), d.column(j)]))
        if lhs != rhs:
            return CheckResult.failed(f"nc4 at (x{i + 1},x{j + 1})")
    return CheckResult.passed()


def _check_tau(c: NonAbelianCocycle, tau: Matrix):
    if tau.shape != (c.hpair.dim, c.gpair.dim):
        raise DimensionMismatchError(f"τ has shape {tau.shape}, expected {c.hpair.dim}x{c.gpair.dim}")


def apply_gauge(c: NonAbelianCocycle, tau: Matrix) -> NonAbelianCocycle:
    """The cocycle c′ related to c by the witness τ."""
    _check_tau(c, tau)
    g, h = c.g, c.h
    m = g.dim
    varrho = tuple(r - ad_of(h, tau.column(i)) for i, r in enumerate(c.varrho))

    def omega_value(t):
        i, j = t
        ti, tj = tau.column(i), tau.column(j)
        v = c.omega.value(t)
        v = vec_sub(v, varrho[i].apply(tj))
        v = vec_add(v, varrho[j].apply(ti))
        v = vec_sub(v, h.bracket(ti, tj))
        return vec_add(v, tau.apply(g.bracket_basis(i, j)))

    omega = AltCochain.from_function(m, h.dim, 2, omega_value)
    chi = c.chi - c.hpair.d @ tau + tau @ c.gpair.d
    return NonAbelianCocycle(c.gpair, c.hpair, varrho, omega, chi)


def verify_equivalence_witness(c: NonAbelianCocycle, c2: NonAbelianCocycle, tau: Matrix) -> CheckResult:
    if c.gpair != c2.gpair or c.hpair != c2.hpair:
        return CheckResult.failed("cocycles live over different pairs")
    _check_tau(c, tau)
    g, h = c.g, c.h
    for i in range(g.dim):
        if c.varrho[i] - c2.varrho[i] != ad_of(h, tau.column(i)):
            return CheckResult.failed(f"eq11 at x{i + 1}")
    for i, j in combinations(range(g.dim), 2):
        ti, tj = tau.column(i), tau.column(j)
        lhs = vec_sub(c.omega.value((i, j)), c2.omega.value((i, j)))
        rhs = vec_sub(c2.varrho[i].apply(tj), c2.varrho[j].apply(ti))
        rhs = vec_add(rhs, h.bracket(ti, tj))
        rhs = vec_sub(rhs, tau.apply(g.bracket_basis(i, j)))
        if lhs != rhs:
            return CheckResult.failed(f"eq22 at (x{i + 1},x{j + 1})")
    if c.chi - c2.chi != c.hpair.d @ tau - tau @ c.gpair.d:
        return CheckResult.failed("eq33")
    return CheckResult.passed()


@dataclass(frozen=True)
class Extension:
    total: LieDerPair
    inj: Matrix
    proj: Matrix
    kpair: LieDerPair
    gpair: LieDerPair

    def __post_init__(self):
        n, m, p = self.total.dim, self.gpair.dim, self.kpair.dim
        if self.inj.shape != (n, p):
            raise DimensionMismatchError(f"inj has shape {self.inj.shape}, expected {n}x{p}")
        if self.proj.shape != (m, n):
            raise DimensionMismatchError(f"proj has shape {self.proj.shape}, expected {m}x{n}")


@dataclass(frozen=True)
class Section:
    ext: Extension
    s: Matrix

    def __post_init__(self):
        m = self.ext.gpair.dim
        if self.s.shape != (self.ext.total.dim, m):
            raise DimensionMismatchError(f"Section has shape {self.s.shape}")
        if self.ext.proj @ self.s != Matrix.identity(m):
            raise InvalidDataError("Section does not split the projection (p∘s ≠ Id)")


def pull_back(inj: Matrix, vectors: Sequence[Sequence]) -> List[tuple]:
    """Coordinates v with inj·v = w for each w; raises when w ∉ im inj."""
    if not vectors:
        return []
    x = solve(inj, Matrix.from_columns(vectors, inj.rows))
    if x is None:
        raise InvalidDataError("Bracket value lies outside the image of inj")
    return x.columns()


def extract_varrho_omega(total: LieAlgebra, inj: Matrix, s: Matrix, g: LieAlgebra):
    m, p = g.dim, inj.cols
    images = []
    for i in range(m):
        for a in range(p):
            images.append(total.bracket(s.column(i), inj.column(a)))
    pulled = pull_back(inj, images)
    varrho = tuple(
        Matrix.from_columns(pulled[i * p:(i + 1) * p], p) if p else Matrix.zeros(0, 0)
        for i in range(m)
    )
    pairs = list(combinations(range(m), 2))
    values = [
        vec_sub(total.bracket(s.column(i), s.column(j)), s.apply(g.bracket_basis(i, j)))
        for i, j in pairs
    ]
    omega = AltCochain(m, p, 2, tuple(tuple(v) for v in pull_back(inj, values)))
    return varrho, omega


def extract_cocycle(e: Extension, s: Section) -> NonAbelianCocycle:
    if s.ext != e:
        raise InvalidDataError("Section belongs to a different extension")
    g = e.gpair.algebra
    varrho, omega = extract_varrho_omega(e.total.algebra, e.inj, s.s, g)
    dhat = e.total.d
    chi_cols = [vec_sub(dhat.apply(s.s.column(i)), s.s.apply(e.gpair.d.column(i))) for i in range(g.dim)]
    chi = Matrix.from_columns(pull_back(e.inj, chi_cols), e.kpair.dim) if g.dim else Matrix.zeros(e.kpair.dim, 0)
    return NonAbelianCocycle(e.gpair, e.kpair, varrho, omega, chi)


def build_extension(c: NonAbelianCocycle) -> Tuple[Extension, Section]:
    check = verify_cocycle(c)
    if not check:
        raise NotACocycleError(f"Cannot build an extension from a non-cocycle: {check.failure}")
    g, h = c.g, c.h
    m, p = g.dim, h.dim
    brackets = {}
    for i, j in combinations(range(m), 2):
        brackets[(i, j)] = tuple(g.bracket_basis(i, j)) + c.omega.value((i, j))
    for i in range(m):
        for a in range(p):
            brackets[(i, m + a)] = zero_vector(m) + c.varrho[i].column(a)
    for a, b in combinations(range(p), 2):
        brackets[(m + a, m + b)] = zero_vector(m) + tuple(h.bracket_basis(a, b))
    total = LieAlgebra.from_brackets(m + p, brackets, f"{g.name or 'g'}x{h.name or 'h'}")

    dhat = block_diagonal(c.gpair.d, c.hpair.d)
    # lower-left block carries χ
    rows = [list(dhat.row(r)) for r in range(m + p)]
    for a in range(p):
        for i in range(m):
            rows[m + a][i] = c.chi[a, i]
    dhat = Matrix.from_rows(rows, m + p)

    inj = Matrix.from_rows([[ZERO] * p for _ in range(m)] + [list(r) for r in Matrix.identity(p).to_rows()], p)
    proj = Matrix.from_rows([list(Matrix.identity(m).row(i)) + [ZERO] * p for i in range(m)], m + p)
    ext = Extension(LieDerPair.of(total, dhat), inj, proj, c.hpair, c.gpair)
    s = Matrix.from_rows([list(r) for r in Matrix.identity(m).to_rows()] + [[ZERO] * m for _ in range(p)], m)
    logger.debug(f"Built extension of dimension {m + p} from cocycle")
    return ext, Section(ext, s)


def section_difference(e: Extension, s: Section, s2: Section) -> Matrix:
    """τ = s − s′ read in h-coordinates."""
    m = e.gpair.dim
    cols = [vec_sub(s.s.column(i), s2.s.column(i)) for i in range(m)]
    return Matrix.from_columns(pull_back(e.inj, cols), e.kpair.dim) if m else Matrix.zeros(e.kpair.dim, 0)


def verify_extension(e: Extension) -> CheckResult:
    g, h, total = e.gpair.algebra, e.kpair.algebra, e.total.algebra
    m, p, n = g.dim, h.dim, total.dim
    for name, alg in (("total", total), ("g", g), ("h", h)):
        check = jacobi_check(alg)
        if not check:
            return CheckResult.failed(f"{name}: {check.failure}")
    if not is_lieder_pair(total, e.total.d):
        return CheckResult.failed("total derivation fails Leibniz")
    if not (e.proj @ e.inj).is_zero():
        return CheckResult.failed("proj∘inj ≠ 0")
    if rank(e.inj) != p:
        return CheckResult.failed("inj is not injective")
    if rank(e.proj) != m:
        return CheckResult.failed("proj is not surjective")
    if rank(e.inj) + rank(e.proj) != n:
        return CheckResult.failed("sequence is not exact")
    if not is_lie_hom(h, total, e.inj):
        return CheckResult.failed("inj is not a Lie algebra homomorphism")
    if not is_lie_hom(total, g, e.proj):
        return CheckResult.failed("proj is not a Lie algebra homomorphism")
    try:
        pull_back(e.inj, [total.bracket(unit_vector(n, i), e.inj.column(a)) for i in range(n) for a in range(p)])
    except InvalidDataError:
        return CheckResult.failed("image of inj is not an ideal")
    if e.total.d @ e.inj != e.inj @ e.kpair.d:
        return CheckResult.failed("D̂∘inj ≠ inj∘K")
    if e.proj @ e.total.d != e.gpair.d @ e.proj:
        return CheckResult.failed("proj∘D̂ ≠ D∘proj")
    return CheckResult.passed()


def verify_extension_iso(e: Extension, e2: Extension, kappa: Matrix) -> CheckResult:
    """κ: ĝ → ĝ′ is a LieDer isomorphism commuting with inj and proj."""
    n = e.total.dim
    if kappa.shape != (e2.total.dim, n) or rank(kappa) != n or e2.total.dim != n:
        return CheckResult.failed("κ is not bijective")
    check = is_lieder_hom(e.total, e2.total, kappa)
    if not check:
        return check
    if kappa @ e.inj != e2.inj:
        return CheckResult.failed("κ∘inj ≠ inj′")
    if e2.proj @ kappa != e.proj:
        return CheckResult.failed("proj′∘κ ≠ proj")
    return CheckResult.passed()


def iso_from_gauge(c: NonAbelianCocycle, c2: NonAbelianCocycle, tau: Matrix) -> Matrix:
    """κ(x, u) = (x, u + τx) from the extension of c to the extension of c′."""
    check = verify_equivalence_witness(c, c2, tau)
    if not check:
        raise InvalidWitnessError(f"τ does not witness the equivalence: {check.failure}")
    m, p = c.gpair.dim, c.hpair.dim
    rows = [list(Matrix.identity(m).row(i)) + [ZERO] * p for i in range(m)]
    for a in range(p):
        rows.append(list(tau.row(a)) + list(Matrix.identity(p).row(a)))
    kappa = Matrix.from_rows(rows, m + p)
    e, _ = build_extension(c)
    e2, _ = build_extension(c2)
    iso = verify_extension_iso(e, e2, kappa)
    if not iso:
        raise InvalidWitnessError(f"κ failed the isomorphism checks: {iso.failure}")
    return kappa
