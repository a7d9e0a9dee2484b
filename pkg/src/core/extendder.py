# src/core/extendder.py
# Extending a pair of derivations (K on h, D on g) to a derivation of a given
# extension ĝ of g by h: compatibility, the degree-2 obstruction class and
# the construction of the lift.

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from .cochain import (
    AltCochain, CohomologyResult, Representation, cohomology, delta_with, formal_coboundary, rho_of,
)
from .errors import ClosureError, DimensionMismatchError, InvalidDataError
from .exactlin import Matrix, Subspace, Vector, commutator, kernel_basis, solve, vec_is_zero
from .lie import (
    Derivation, LieAlgebra, LieDerPair, ad_preimage, center, is_lieder_pair, leibniz_system,
)
from .models import CheckResult, ComplexKind
from .nonabelian import Extension, Section, extract_varrho_omega, pull_back, verify_extension

logger = logging.getLogger("liederx.extendder")


@dataclass(frozen=True)
class ExtensionContext:
    """A plain extension 0 → h → ĝ → g → 0 together with a section s."""
    total: LieAlgebra
    inj: Matrix
    proj: Matrix
    g: LieAlgebra
    h: LieAlgebra
    s: Matrix

    def __post_init__(self):
        n, m, p = self.total.dim, self.g.dim, self.h.dim
        if self.inj.shape != (n, p) or self.proj.shape != (m, n) or self.s.shape != (n, m):
            raise DimensionMismatchError("inj, proj or section do not match the algebra dimensions")
        plain = Extension(LieDerPair.of(self.total), self.inj, self.proj, LieDerPair.of(self.h), LieDerPair.of(self.g))
        check = verify_extension(plain)
        if not check:
            raise InvalidDataError(f"Not an extension: {check.failure}")
        if self.proj @ self.s != Matrix.identity(m):
            raise InvalidDataError("Section does not split the projection (p∘s ≠ Id)")

    @classmethod
    def from_extension(cls, e: Extension, s: Section) -> "ExtensionContext":
        return cls(e.total.algebra, e.inj, e.proj, e.gpair.algebra, e.kpair.algebra, s.s)

    @cached_property
    def _varrho_omega(self):
        return extract_varrho_omega(self.total, self.inj, self.s, self.g)

    @property
    def varrho(self) -> Tuple[Matrix, ...]:
        return self._varrho_omega[0]

    @property
    def omega(self) -> AltCochain:
        return self._varrho_omega[1]

    def with_section(self, s: Matrix) -> "ExtensionContext":
        return ExtensionContext(self.total, self.inj, self.proj, self.g, self.h, s)

    @property
    def is_central(self) -> bool:
        return all(r.is_zero() for r in self.varrho)


@dataclass(frozen=True)
class DerivationPair:
    k_on_h: Derivation
    d_on_g: Derivation

    @classmethod
    def of(cls, h: LieAlgebra, k: Matrix, g: LieAlgebra, d: Matrix) -> "DerivationPair":
        return cls(Derivation(h, k), Derivation(g, d))

    @property
    def k(self) -> Matrix:
        return self.k_on_h.matrix

    @property
    def d(self) -> Matrix:
        return self.d_on_g.matrix


def gamma(ctx: ExtensionContext, dhat: Matrix) -> DerivationPair:
    """(D̂ restricted to h, p∘D̂∘s)."""
    check = is_lieder_pair(ctx.total, dhat)
    if not check:
        raise InvalidDataError(f"D̂ is not a derivation of the total algebra: {check.failure}")
    p = ctx.h.dim
    images = [dhat.apply(ctx.inj.column(a)) for a in range(p)]
    try:
        k_cols = pull_back(ctx.inj, images)
    except InvalidDataError:
        raise InvalidDataError("D̂ does not preserve h") from None
    k = Matrix.from_columns(k_cols, p) if p else Matrix.zeros(0, 0)
    d = ctx.proj @ dhat @ ctx.s
    return DerivationPair.of(ctx.h, k, ctx.g, d)


def _check_pair(ctx: ExtensionContext, pair: DerivationPair):
    if pair.k_on_h.algebra != ctx.h or pair.d_on_g.algebra != ctx.g:
        raise DimensionMismatchError("Derivation pair does not act on this extension's g and h")


def is_compatible(ctx: ExtensionContext, pair: DerivationPair) -> Optional[Matrix]:
    """A χ with ad χ(x) = K∘ϱ(x) − ϱ(Dx) − ϱ(x)∘K on every basis vector, or None."""
    _check_pair(ctx, pair)
    m, p = ctx.g.dim, ctx.h.dim
    cols = []
    for i in range(m):
        target = pair.k @ ctx.varrho[i] - rho_of(ctx.varrho, p, pair.d.column(i)) - ctx.varrho[i] @ pair.k
        u = ad_preimage(ctx.h, target)
        if u is None:
            logger.info(f"Derivation pair is not compatible: right-hand side at x{i + 1} is not inner")
            return None
        cols.append(u)
    return Matrix.from_columns(cols, p) if m else Matrix.zeros(p, 0)


@dataclass(frozen=True)
class ObstructionClass2:
    """[d^F χ + δω] in H²(g, z(h)) with the action induced by ϱ."""
    rep: Representation
    cochain: AltCochain
    h2: CohomologyResult
    class_coords: Vector
    central: bool

    @property
    def is_zero(self) -> bool:
        return vec_is_zero(self.class_coords)


def _center_rep(ctx: ExtensionContext, z: Subspace) -> Representation:
    rho = []
    for i, r in enumerate(ctx.varrho):
        cols = []
        for b in z.vectors():
            image = r.apply(b)
            if not z.contains(image):
                raise InvalidDataError(f"ϱ(x{i + 1}) does not preserve the center")
            cols.append(z.coordinates(image))
        rho.append(Matrix.from_columns(cols, z.dim) if cols else Matrix.zeros(z.dim, 0))
    return Representation(ctx.g, z.dim, tuple(rho))


def obstruction_w(ctx: ExtensionContext, pair: DerivationPair, chi: Matrix) -> ObstructionClass2:
    _check_pair(ctx, pair)
    m, p = ctx.g.dim, ctx.h.dim
    if chi.shape != (p, m):
        raise DimensionMismatchError(f"χ has shape {chi.shape}, expected {p}x{m}")
    z = center(ctx.h)
    rep = _center_rep(ctx, z)
    raw = (formal_coboundary(ctx.g, ctx.varrho, AltCochain.from_matrix(chi))
           + delta_with(pair.d, pair.k, ctx.omega))
    values = []
    for v in raw.values:
        if not z.contains(v):
            raise ClosureError("d^F χ + δω is not valued in the center; χ is not a compatibility witness")
        values.append(z.coordinates(v))
    cochain = AltCochain(m, z.dim, 2, tuple(values))
    h2 = cohomology(rep, 2, ComplexKind.CE)
    coords = h2.class_coordinates(cochain)
    logger.debug(f"W computed in H^2 of dimension {h2.dim_h}")
    return ObstructionClass2(rep, cochain, h2, coords, ctx.is_central)


def _adapted_basis(ctx: ExtensionContext) -> Matrix:
    return ctx.s.hstack(ctx.inj)


def is_extensible(ctx: ExtensionContext, pair: DerivationPair) -> Optional[Derivation]:
    """A derivation D̂ of ĝ with Γ(D̂) = (K, D), or None when none exists."""
    chi = is_compatible(ctx, pair)
    if chi is None:
        return None
    w = obstruction_w(ctx, pair, chi)
    if not w.is_zero:
        logger.info("Derivation pair is compatible but its obstruction class is nonzero")
        return None
    m, p = ctx.g.dim, ctx.h.dim
    z = center(ctx.h)
    if z.dim and m:
        theta_flat = w.h2.preimage(w.cochain)
        if theta_flat is None:
            raise ClosureError("Trivial class has no preimage")
        inclusion = Matrix.from_columns(z.vectors(), p)
        theta = inclusion @ AltCochain.from_flat(m, z.dim, 1, theta_flat).to_matrix()
        chi = chi - theta
    # D̂(s(x) + u) = s(Dx) + K u + χ(x), written on the basis (s(e_i), inj(u_a))
    image = (ctx.s @ pair.d + ctx.inj @ chi).hstack(ctx.inj @ pair.k)
    basis = _adapted_basis(ctx)
    inverse = solve(basis, Matrix.identity(basis.rows))
    dhat = image @ inverse
    if dhat @ ctx.inj != ctx.inj @ pair.k or ctx.proj @ dhat != pair.d @ ctx.proj:
        raise ClosureError("Constructed D̂ does not restrict to (K, D)")
    logger.info("Derivation pair extends to the total algebra")
    return Derivation(ctx.total, dhat)


def preserving_derivations(ctx: ExtensionContext) -> Subspace:
    """Der_h(ĝ) on row-major flattened matrices: Leibniz plus p∘D̂∘inj = 0."""
    n = ctx.total.dim
    rows = [list(r) for r in leibniz_system(ctx.total).to_rows()] if n >= 2 else []
    for r in range(ctx.g.dim):
        for a in range(ctx.h.dim):
            row = [0] * (n * n)
            for k in range(n):
                for l in range(n):
                    row[k * n + l] = ctx.proj[r, k] * ctx.inj[l, a]
            rows.append(row)
    if not rows:
        return Subspace.full(n * n)
    return kernel_basis(Matrix.from_rows(rows, n * n))


def gamma_bracket_check(ctx: ExtensionContext, dhat: Matrix, dhat2: Matrix) -> CheckResult:
    """Γ([D̂, D̂′]) = [Γ(D̂), Γ(D̂′)] componentwise."""
    lhs = gamma(ctx, commutator(dhat, dhat2))
    a, b = gamma(ctx, dhat), gamma(ctx, dhat2)
    if lhs.k != commutator(a.k, b.k):
        return CheckResult.failed("h component")
    if lhs.d != commutator(a.d, b.d):
        return CheckResult.failed("g component")
    return CheckResult.passed()
