# src/core/lie2.py
# Strict Lie 2-algebras with strict derivations, their homomorphisms and
# 2-homomorphisms, and the translation between non-abelian 2-cocycles and
# homomorphisms into (Der(h) ← h).

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .cochain import AltCochain, rho_of
from .errors import DimensionMismatchError, InvalidDataError
from .exactlin import Matrix, Subspace, commutator, unit_vector, vec_add, vec_is_zero, vec_sub, zero_vector
from .lie import (
    LieAlgebra, LieDerPair, ad_matrix, derivation_coords, derivation_matrix, derivation_space,
    is_lieder_pair, jacobi_check,
)
from .models import CheckResult
from .nonabelian import NonAbelianCocycle

logger = logging.getLogger("liederx.lie2")


@dataclass(frozen=True)
class StrictLie2:
    """g1 --d--> g0 with g0 acting on g1; the bracket on g1 itself is zero."""
    g0: LieAlgebra
    g1_dim: int
    d: Matrix
    act: Tuple[Matrix, ...]

    def __post_init__(self):
        n0, n1 = self.g0.dim, self.g1_dim
        if self.d.shape != (n0, n1):
            raise DimensionMismatchError(f"d has shape {self.d.shape}, expected {n0}x{n1}")
        if not isinstance(self.act, tuple):
            object.__setattr__(self, "act", tuple(self.act))
        if len(self.act) != n0 or any(a.shape != (n1, n1) for a in self.act):
            raise DimensionMismatchError(f"Action needs {n0} matrices of shape {n1}x{n1}")

    @classmethod
    def from_lie(cls, g: LieAlgebra) -> "StrictLie2":
        return cls(g, 0, Matrix.zeros(g.dim, 0), tuple(Matrix.zeros(0, 0) for _ in range(g.dim)))

    def act_of(self, x: Sequence) -> Matrix:
        return rho_of(self.act, self.g1_dim, x)

    def mixed(self, x: Sequence, a: Sequence) -> tuple:
        """[x, a] for x in g0 and a in g1."""
        return self.act_of(x).apply(a)


@dataclass(frozen=True)
class StrictDer2:
    d0: Matrix
    d1: Matrix


@dataclass(frozen=True)
class Lie2DerPair:
    lie2: StrictLie2
    der: StrictDer2
    # set when g0 is Der(h) in the RREF basis of derivation_space(h)
    der_space: Optional[Subspace] = None
    origin: Optional[LieDerPair] = None

    @classmethod
    def from_lieder(cls, pair: LieDerPair) -> "Lie2DerPair":
        return cls(StrictLie2.from_lie(pair.algebra), StrictDer2(pair.d, Matrix.zeros(0, 0)), origin=pair)


def verify_lie2(L: StrictLie2) -> CheckResult:
    g0, n0, n1 = L.g0, L.g0.dim, L.g1_dim
    check = jacobi_check(g0)
    if not check:
        return CheckResult.failed(f"g0 {check.failure}")
    for i, j in combinations(range(n0), 2):
        if L.act_of(g0.bracket_basis(i, j)) != commutator(L.act[i], L.act[j]):
            return CheckResult.failed(f"mixed jacobi at (x{i + 1},x{j + 1})")
    for i in range(n0):
        for a in range(n1):
            lhs = L.d.apply(L.act[i].column(a))
            rhs = g0.bracket(unit_vector(n0, i), L.d.column(a))
            if lhs != rhs:
                return CheckResult.failed(f"d equivariance at (x{i + 1},a{a + 1})")
    for a, b in combinations(range(n1), 2):
        if L.mixed(L.d.column(a), unit_vector(n1, b)) != tuple(-x for x in L.mixed(L.d.column(b), unit_vector(n1, a))):
            return CheckResult.failed(f"peiffer at (a{a + 1},a{b + 1})")
    for a in range(n1):
        if not vec_is_zero(L.mixed(L.d.column(a), unit_vector(n1, a))):
            return CheckResult.failed(f"peiffer at (a{a + 1},a{a + 1})")
    return CheckResult.passed()


def verify_strict_der(L: StrictLie2, der: StrictDer2) -> CheckResult:
    n0, n1 = L.g0.dim, L.g1_dim
    if der.d0.shape != (n0, n0) or der.d1.shape != (n1, n1):
        return CheckResult.failed("derivation shapes do not match the Lie 2-algebra")
    if L.d @ der.d1 != der.d0 @ L.d:
        return CheckResult.failed("D0∘d ≠ d∘D1")
    check = is_lieder_pair(L.g0, der.d0)
    if not check:
        return CheckResult.failed(f"D0 {check.failure}")
    for i in range(n0):
        lhs = der.d1 @ L.act[i]
        rhs = L.act_of(der.d0.column(i)) + L.act[i] @ der.d1
        if lhs != rhs:
            return CheckResult.failed(f"mixed leibniz at x{i + 1}")
    return CheckResult.passed()


def build_hder(hpair: LieDerPair) -> Lie2DerPair:
    """(Der(h) ← h, ad) with the strict derivation (ad K, K)."""
    h = hpair.algebra
    p = h.dim
    space = derivation_space(h)
    q = space.dim
    basis = [Matrix.from_flat(p, p, v) for v in space.vectors()]
    brackets = {}
    for i, j in combinations(range(q), 2):
        brackets[(i, j)] = derivation_coords(h, commutator(basis[i], basis[j]), space)
    g0 = LieAlgebra.from_brackets(q, brackets, f"Der({h.name or 'h'})")
    d_cols = [derivation_coords(h, ad_matrix(h, a), space) for a in range(p)]
    d = Matrix.from_columns(d_cols, q) if p else Matrix.zeros(q, 0)
    lie2 = StrictLie2(g0, p, d, tuple(basis))
    k = hpair.d
    d0_cols = [derivation_coords(h, commutator(k, b), space) for b in basis]
    d0 = Matrix.from_columns(d0_cols, q) if q else Matrix.zeros(0, 0)
    out = Lie2DerPair(lie2, StrictDer2(d0, k), space, hpair)
    for label, check in (("lie2", verify_lie2(lie2)), ("derivation", verify_strict_der(lie2, out.der))):
        if not check:
            raise InvalidDataError(f"h_Der construction failed its {label} check: {check.failure}")
    logger.debug(f"h_Der built: dim g0 = {q}, dim g1 = {p}")
    return out


@dataclass(frozen=True)
class Lie2DerHom:
    source: Lie2DerPair
    target: Lie2DerPair
    phi0: Matrix
    phi1: Matrix
    phi2: AltCochain
    theta: Matrix

    def __post_init__(self):
        g, h = self.source.lie2, self.target.lie2
        if self.phi0.shape != (h.g0.dim, g.g0.dim):
            raise DimensionMismatchError(f"φ0 has shape {self.phi0.shape}")
        if self.phi1.shape != (h.g1_dim, g.g1_dim):
            raise DimensionMismatchError(f"φ1 has shape {self.phi1.shape}")
        if (self.phi2.source_dim, self.phi2.target_dim, self.phi2.degree) != (g.g0.dim, h.g1_dim, 2):
            raise DimensionMismatchError("φ2 must be a degree-2 map from g0 to h1")
        if self.theta.shape != (h.g1_dim, g.g0.dim):
            raise DimensionMismatchError(f"θ has shape {self.theta.shape}")


def verify_lie2der_hom(f: Lie2DerHom) -> CheckResult:
    g, h = f.source.lie2, f.target.lie2
    dg, dh = f.source.der, f.target.der
    n0, n1 = g.g0.dim, g.g1_dim
    phi0, phi1, phi2, theta = f.phi0, f.phi1, f.phi2, f.theta

    if phi0 @ g.d != h.d @ phi1:
        return CheckResult.failed("hom1: φ0∘d ≠ d∘φ1")
    for i, j in combinations(range(n0), 2):
        lhs = vec_sub(phi0.apply(g.g0.bracket_basis(i, j)), h.g0.bracket(phi0.column(i), phi0.column(j)))
        if lhs != h.d.apply(phi2.value((i, j))):
            return CheckResult.failed(f"hom2 at (x{i + 1},x{j + 1})")
    for i in range(n0):
        for a in range(n1):
            lhs = vec_sub(phi1.apply(g.act[i].column(a)), h.mixed(phi0.column(i), phi1.column(a)))
            if lhs != phi2.evaluate_vectors([unit_vector(n0, i), g.d.column(a)]):
                return CheckResult.failed(f"hom3 at (x{i + 1},a{a + 1})")
    for x, y, z in combinations(range(n0), 3):
        total = zero_vector(h.g1_dim)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = vec_add(total, h.mixed(phi0.column(a), phi2.evaluate((b, c))))
            total = vec_sub(total, phi2.evaluate_with_first(g.g0.bracket_basis(a, b), (c,)))
        if not vec_is_zero(total):
            return CheckResult.failed(f"hom4 at (x{x + 1},x{y + 1},x{z + 1})")

    if phi0 @ dg.d0 - dh.d0 @ phi0 != h.d @ theta:
        return CheckResult.failed("derhom1: φ0D0 − K0φ0 ≠ dθ")
    if phi1 @ dg.d1 - dh.d1 @ phi1 != theta @ g.d:
        return CheckResult.failed("derhom2: φ1D1 − K1φ1 ≠ θd")
    for i, j in combinations(range(n0), 2):
        lhs = dh.d1.apply(phi2.value((i, j)))
        lhs = vec_sub(lhs, phi2.evaluate_vectors([dg.d0.column(i), unit_vector(n0, j)]))
        lhs = vec_sub(lhs, phi2.evaluate_vectors([unit_vector(n0, i), dg.d0.column(j)]))
        rhs = vec_sub(h.mixed(phi0.column(i), theta.column(j)), h.mixed(phi0.column(j), theta.column(i)))
        rhs = vec_sub(rhs, theta.apply(g.g0.bracket_basis(i, j)))
        if lhs != rhs:
            return CheckResult.failed(f"derhom3 at (x{i + 1},x{j + 1})")
    return CheckResult.passed()


def cocycle_to_hom(c: NonAbelianCocycle) -> Lie2DerHom:
    """(φ0, φ1, φ2, θ) = (ϱ, 0, −ω, −χ), φ0 in Der(h) coordinates."""
    source = Lie2DerPair.from_lieder(c.gpair)
    target = build_hder(c.hpair)
    h = c.h
    cols = []
    for i, r in enumerate(c.varrho):
        if not target.der_space.contains(r.flatten()):
            raise InvalidDataError(f"ϱ(x{i + 1}) is not a derivation of h")
        cols.append(target.der_space.coordinates(r.flatten()))
    q = target.lie2.g0.dim
    phi0 = Matrix.from_columns(cols, q) if cols else Matrix.zeros(q, 0)
    return Lie2DerHom(source, target, phi0, Matrix.zeros(h.dim, 0), -c.omega, -c.chi)


def hom_to_cocycle(f: Lie2DerHom) -> NonAbelianCocycle:
    gpair, hpair = f.source.origin, f.target.origin
    if gpair is None or f.source.lie2.g1_dim != 0:
        raise InvalidDataError("Source must be a LieDer pair viewed as a Lie 2-algebra")
    if hpair is None or f.target.der_space is None:
        raise InvalidDataError("Target must be the h_Der construction")
    h = hpair.algebra
    varrho = tuple(derivation_matrix(h, f.phi0.column(i), f.target.der_space) for i in range(gpair.dim))
    return NonAbelianCocycle(gpair, hpair, varrho, -f.phi2, -f.theta)


@dataclass(frozen=True)
class TwoHom:
    vartheta: Matrix


def verify_two_hom(src: Lie2DerHom, dst: Lie2DerHom, t: TwoHom) -> CheckResult:
    """ϑ: src ⇒ dst, i.e. φ = src and ψ = dst."""
    if (src.source, src.target) != (dst.source, dst.target):
        return CheckResult.failed("homomorphisms have different source or target")
    g, h = src.source.lie2, src.target.lie2
    dg, dh = src.source.der, src.target.der
    vt = t.vartheta
    if vt.shape != (h.g1_dim, g.g0.dim):
        return CheckResult.failed(f"ϑ has shape {vt.shape}")
    if dst.phi0 - src.phi0 != h.d @ vt:
        return CheckResult.failed("2hom1: ψ0 − φ0 ≠ dϑ")
    if dst.phi1 - src.phi1 != vt @ g.d:
        return CheckResult.failed("2hom1: ψ1 − φ1 ≠ ϑd")
    for i, j in combinations(range(g.g0.dim), 2):
        lhs = vec_sub(dst.phi2.value((i, j)), src.phi2.value((i, j)))
        rhs = vt.apply(g.g0.bracket_basis(i, j))
        rhs = vec_sub(rhs, h.mixed(src.phi0.column(i), vt.column(j)))
        rhs = vec_add(rhs, h.mixed(dst.phi0.column(j), vt.column(i)))
        if lhs != rhs:
            return CheckResult.failed(f"2hom2 at (x{i + 1},x{j + 1})")
    if vt @ dg.d0 - dh.d1 @ vt != dst.theta - src.theta:
        return CheckResult.failed("2homder: ϑD0 − K1ϑ ≠ θψ − θφ")
    return CheckResult.passed()
