# src/core/kernel.py
# (g,D)-kernels: outer actions of a LieDer pair on (h,K), their induced
# representation on the center, the degree-3 obstruction class and realization.

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .cochain import (
    AltCochain, CohomologyResult, LieDerCochain, LieDerRep, cohomology, cup_product, delta_with,
    formal_coboundary, lieder_coboundary, rho_of,
)
from .errors import ClosureError, DimensionMismatchError, InvalidDataError, NotACocycleError
from .exactlin import Matrix, Subspace, Vector, commutator, solve_vector, vec_is_zero
from .lie import (
    LieAlgebra, LieDerPair, ad_of, ad_preimage, center, inner_derivations, is_lieder_pair,
)
from .models import CheckResult, ComplexKind
from .nonabelian import Extension, NonAbelianCocycle, Section, extract_cocycle, verify_cocycle

logger = logging.getLogger("liederx.kernel")


@dataclass(frozen=True)
class KernelDatum:
    """Representatives K_i ∈ Der(h) of k(e_i) ∈ Out(h), one per g-basis vector."""
    gpair: LieDerPair
    hpair: LieDerPair
    reps: Tuple[Matrix, ...]

    def __post_init__(self):
        m, p = self.gpair.dim, self.hpair.dim
        if not isinstance(self.reps, tuple):
            object.__setattr__(self, "reps", tuple(self.reps))
        if len(self.reps) != m or any(r.shape != (p, p) for r in self.reps):
            raise DimensionMismatchError(f"Kernel needs {m} matrices of shape {p}x{p}")

    def rep_of(self, x: Sequence) -> Matrix:
        return rho_of(self.reps, self.hpair.dim, x)


def verify_kernel(k: KernelDatum) -> CheckResult:
    g, h = k.gpair.algebra, k.hpair.algebra
    inner = inner_derivations(h)
    for i, r in enumerate(k.reps):
        if not is_lieder_pair(h, r):
            return CheckResult.failed(f"der: K{i + 1} is not a derivation of h")
    for i, j in combinations(range(g.dim), 2):
        diff = commutator(k.reps[i], k.reps[j]) - k.rep_of(g.bracket_basis(i, j))
        if not inner.contains(diff.flatten()):
            return CheckResult.failed(f"hom: [K{i + 1},K{j + 1}] − K([x{i + 1},x{j + 1}]) is not inner")
    kk = k.hpair.d
    for i in range(g.dim):
        diff = commutator(kk, k.reps[i]) - k.rep_of(k.gpair.d.column(i))
        if not inner.contains(diff.flatten()):
            return CheckResult.failed(f"compat: [K,K{i + 1}] − K(Dx{i + 1}) is not inner")
    return CheckResult.passed()


def _require_kernel(k: KernelDatum):
    check = verify_kernel(k)
    if not check:
        raise InvalidDataError(f"Invalid (g,D)-kernel: {check.failure}")


def _center_inclusion(space: Subspace, p: int) -> Matrix:
    return Matrix.from_columns(space.vectors(), p) if space.dim else Matrix.zeros(p, 0)


def _restrict(space: Subspace, m: Matrix, label: str) -> Matrix:
    cols = []
    for b in space.vectors():
        image = m.apply(b)
        if not space.contains(image):
            raise InvalidDataError(f"{label} does not preserve the center")
        cols.append(space.coordinates(image))
    return Matrix.from_columns(cols, space.dim) if cols else Matrix.zeros(space.dim, 0)


def induced_rep(k: KernelDatum) -> LieDerRep:
    """ρ_k on z(h) in the coordinates of its RREF basis, with T = K restricted."""
    z = center(k.hpair.algebra)
    rho = tuple(_restrict(z, r, f"K{i + 1}") for i, r in enumerate(k.reps))
    t = _restrict(z, k.hpair.d, "K")
    rep = LieDerRep(k.gpair, z.dim, rho, t)
    check = rep.check_ldrep()
    if not check:
        raise InvalidDataError(f"Induced action is not a LieDer representation: {check.failure}")
    return rep


def kernel_of_extension(e: Extension, s: Section) -> KernelDatum:
    c = extract_cocycle(e, s)
    return KernelDatum(e.gpair, e.kpair, c.varrho)


def same_kernel(k: KernelDatum, k2: KernelDatum) -> bool:
    """Equal as maps into Out(h): representatives differ by inner derivations."""
    if (k.gpair, k.hpair) != (k2.gpair, k2.hpair):
        return False
    inner = inner_derivations(k.hpair.algebra)
    return all(inner.contains((a - b).flatten()) for a, b in zip(k.reps, k2.reps))


@dataclass(frozen=True)
class KernelLift:
    """ϱ with ω and χ solving ad ω(x,y) = [ϱx,ϱy] − ϱ[x,y] and ad χ(x) = Kϱ(x) − ϱ(Dx) − ϱ(x)K."""
    kernel: KernelDatum
    varrho: Tuple[Matrix, ...]
    omega: AltCochain
    chi: Matrix

    def as_cochain(self) -> NonAbelianCocycle:
        """The triple as cochain data; a cocycle only when the obstruction cochain vanishes."""
        return NonAbelianCocycle(self.kernel.gpair, self.kernel.hpair, self.varrho, self.omega, self.chi)


def _solve_ad(h: LieAlgebra, target: Matrix, free_value, label: str) -> Vector:
    u = ad_preimage(h, target, free_value)
    if u is None:
        raise InvalidDataError(f"ad(u) = {label} has no solution")
    return u


def lift_with(k: KernelDatum, varrho: Sequence[Matrix], free_value=0) -> KernelLift:
    """Solve for ω and χ given chosen representatives ϱ."""
    g, h = k.gpair.algebra, k.hpair.algebra
    m, p = g.dim, h.dim
    varrho = tuple(varrho)

    def omega_value(t):
        i, j = t
        target = commutator(varrho[i], varrho[j]) - rho_of(varrho, p, g.bracket_basis(i, j))
        return _solve_ad(h, target, free_value, f"[ϱ(x{i + 1}),ϱ(x{j + 1})] − ϱ([x{i + 1},x{j + 1}])")

    omega = AltCochain.from_function(m, p, 2, omega_value)
    kk = k.hpair.d
    chi_cols = []
    for i in range(m):
        target = kk @ varrho[i] - rho_of(varrho, p, k.gpair.d.column(i)) - varrho[i] @ kk
        chi_cols.append(_solve_ad(h, target, free_value, f"Kϱ(x{i + 1}) − ϱ(Dx{i + 1}) − ϱ(x{i + 1})K"))
    chi = Matrix.from_columns(chi_cols, p) if m else Matrix.zeros(p, 0)
    return KernelLift(k, varrho, omega, chi)


def choose_lift(k: KernelDatum, free_value=0) -> KernelLift:
    """The deterministic lift: free variables of each ad-solve set to free_value."""
    _require_kernel(k)
    return lift_with(k, k.reps, free_value)


def perturb_lift(lift: KernelLift, r: Matrix) -> KernelLift:
    """Move ϱ by ad∘r and adjust ω, χ so the lift equations still hold."""
    k = lift.kernel
    g, h = k.gpair.algebra, k.hpair.algebra
    if r.shape != (h.dim, g.dim):
        raise DimensionMismatchError(f"r has shape {r.shape}, expected {h.dim}x{g.dim}")
    r_cochain = AltCochain.from_matrix(r)
    varrho = tuple(v + ad_of(h, r.column(i)) for i, v in enumerate(lift.varrho))
    omega = (lift.omega + formal_coboundary(g, lift.varrho, r_cochain)
             + cup_product(h, r_cochain, r_cochain).scale(Fraction(1, 2)))
    chi = lift.chi - delta_with(k.gpair.d, k.hpair.d, r_cochain).to_matrix()
    return KernelLift(k, varrho, omega, chi)


def obstruction_cochain(lift: KernelLift) -> Tuple[AltCochain, AltCochain]:
    """(d^F ω, d^F χ + δω), h-valued."""
    k = lift.kernel
    g = k.gpair.algebra
    top = formal_coboundary(g, lift.varrho, lift.omega)
    lower = (formal_coboundary(g, lift.varrho, AltCochain.from_matrix(lift.chi))
             + delta_with(k.gpair.d, k.hpair.d, lift.omega))
    return top, lower


def _to_center(space: Subspace, c: AltCochain, label: str) -> AltCochain:
    values = []
    for v in c.values:
        if not space.contains(v):
            raise ClosureError(f"{label} is not valued in the center of h")
        values.append(space.coordinates(v))
    return AltCochain(c.source_dim, space.dim, c.degree, tuple(values))


def _from_center(inclusion: Matrix, c: AltCochain) -> AltCochain:
    return c.map_target(inclusion)


@dataclass(frozen=True)
class ObstructionClass3:
    kernel: KernelDatum
    rep: LieDerRep
    cochain: LieDerCochain
    h3: CohomologyResult
    class_coords: Vector

    @property
    def is_zero(self) -> bool:
        return vec_is_zero(self.class_coords)


def lift_obstruction(lift: KernelLift) -> ObstructionClass3:
    """The class of (d^F ω, d^F χ + δω) for a given lift, read in H³ of the center."""
    k = lift.kernel
    rep = induced_rep(k)
    z = center(k.hpair.algebra)
    top, lower = obstruction_cochain(lift)
    cochain = LieDerCochain(_to_center(z, top, "d^F ω"), _to_center(z, lower, "d^F χ + δω"))
    if not lieder_coboundary(rep, cochain).is_zero():
        raise ClosureError("Obstruction cochain is not closed")
    h3 = cohomology(rep, 3, ComplexKind.LIEDER)
    coords = h3.class_coordinates(cochain)
    logger.info(f"Obstruction class computed in H^3 of dimension {h3.dim_h}: {list(map(str, coords))}")
    return ObstructionClass3(k, rep, cochain, h3, coords)


def obstruction_ch(k: KernelDatum, free_value=0) -> ObstructionClass3:
    return lift_obstruction(choose_lift(k, free_value))


def realize_kernel(k: KernelDatum) -> Optional[NonAbelianCocycle]:
    """A cocycle inducing k, or None when the obstruction class is nonzero."""
    ch = obstruction_ch(k)
    if not ch.is_zero:
        logger.info("Kernel is not realizable: obstruction class is nonzero")
        return None
    lift = choose_lift(k)
    z = center(k.hpair.algebra)
    inclusion = _center_inclusion(z, k.hpair.dim)
    m = k.gpair.dim
    if z.dim == 0:
        eta, theta = AltCochain.zero(m, 0, 2), AltCochain.zero(m, 0, 1)
    else:
        pre = ch.h3.preimage(ch.cochain)
        if pre is None:
            raise ClosureError("Trivial obstruction class has no preimage")
        primitive = LieDerCochain.from_flat(m, z.dim, 2, pre)
        eta, theta = primitive.top, primitive.lower
    c = lift.as_cochain().replace(
        omega=lift.omega - _from_center(inclusion, eta),
        chi=lift.chi - _from_center(inclusion, theta).to_matrix(),
    )
    check = verify_cocycle(c)
    if not check:
        raise ClosureError(f"Realized data is not a cocycle: {check.failure}")
    return c


def torsor_act(base: NonAbelianCocycle, cls: LieDerCochain) -> NonAbelianCocycle:
    """(ϱ, ω − η, χ − θ) for a closed degree-2 LieDer cochain (η, θ) valued in z(h)."""
    kernel = KernelDatum(base.gpair, base.hpair, base.varrho)
    rep = induced_rep(kernel)
    if cls.degree != 2 or cls.top.source_dim != base.gpair.dim or cls.top.target_dim != rep.space_dim:
        raise DimensionMismatchError("Torsor action needs a degree-2 cochain valued in the center")
    if not lieder_coboundary(rep, cls).is_zero():
        raise NotACocycleError("Acting cochain is not closed")
    inclusion = _center_inclusion(center(base.h), base.hpair.dim)
    out = base.replace(
        omega=base.omega - _from_center(inclusion, cls.top),
        chi=base.chi - _from_center(inclusion, cls.lower).to_matrix(),
    )
    check = verify_cocycle(out)
    if not check:
        raise NotACocycleError(f"Torsor action left the cocycle set: {check.failure}")
    return out


def central_coboundary(base: NonAbelianCocycle, l: Matrix) -> Tuple[LieDerCochain, Matrix]:
    """∂ of a center-valued l: g → z(h) (in center coordinates) and the matching τ: g → h."""
    kernel = KernelDatum(base.gpair, base.hpair, base.varrho)
    rep = induced_rep(kernel)
    if l.shape != (rep.space_dim, base.gpair.dim):
        raise DimensionMismatchError(f"l has shape {l.shape}, expected {rep.space_dim}x{base.gpair.dim}")
    inclusion = _center_inclusion(center(base.h), base.hpair.dim)
    return lieder_coboundary(rep, LieDerCochain(AltCochain.from_matrix(l))), inclusion @ l


def _pullback_basis(k: KernelDatum) -> Matrix:
    """Columns span {(x, K′) : K′ ≡ k(x) mod ad(h)} inside g ⊕ gl(h)."""
    m, p = k.gpair.dim, k.hpair.dim
    h = k.hpair.algebra
    cols = [tuple(1 if a == i else 0 for a in range(m)) + k.reps[i].flatten() for i in range(m)]
    for v in inner_derivations(h).vectors():
        cols.append((0,) * m + tuple(v))
    return Matrix.from_columns(cols, m + p * p)


def pullback_pair(k: KernelDatum) -> LieDerPair:
    """g̃ = k*Der(h) with the bracket of g ⊕ Der(h) and D̃(x, K′) = (Dx, [K, K′])."""
    _require_kernel(k)
    g, kk = k.gpair.algebra, k.hpair.d
    m, p = g.dim, k.hpair.dim
    basis = _pullback_basis(k)
    n = basis.cols

    def split(v):
        return v[:m], Matrix.from_flat(p, p, v[m:])

    def join(x, a: Matrix):
        return tuple(x) + a.flatten()

    def coords(v, label):
        c = solve_vector(basis, v)
        if c is None:
            raise InvalidDataError(f"{label} leaves the pullback; kernel data is inconsistent")
        return c

    brackets = {}
    for i, j in combinations(range(n), 2):
        xi, ai = split(basis.column(i))
        xj, aj = split(basis.column(j))
        brackets[(i, j)] = coords(join(g.bracket(xi, xj), commutator(ai, aj)), "bracket")
    total = LieAlgebra.from_brackets(n, brackets, f"k*Der({k.hpair.algebra.name or 'h'})")
    d_cols = []
    for i in range(n):
        x, a = split(basis.column(i))
        d_cols.append(coords(join(k.gpair.d.apply(x), commutator(kk, a)), "D̃"))
    d = Matrix.from_columns(d_cols, n) if n else Matrix.zeros(0, 0)
    logger.debug(f"Pullback pair has dimension {n} = {m} + dim ad(h)")
    return LieDerPair.of(total, d)
