# src/core/dgla.py
# Lifted cochains on g ⊕ h, the Nijenhuis-Richardson bracket and the
# differential graded Lie algebra whose Maurer-Cartan elements are the
# non-abelian 2-cocycles.

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial
from typing import Callable, List, Optional, Sequence, Tuple

from .cochain import AltCochain, shuffles
from .errors import DimensionMismatchError, InvalidDataError, NotNilpotentError
from .exactlin import Matrix, Vector, ZERO, to_rational, vec_is_zero, zero_vector
from .lie import LieDerPair, jacobi_check
from .models import CheckResult, Target
from .nonabelian import NonAbelianCocycle

logger = logging.getLogger("liederx.dgla")

# A lifted map is an alternating map on g ⊕ h with values in g ⊕ h. The g-basis
# comes first, so a lifted AltCochain has source_dim == target_dim == m + p.
LiftedMap = AltCochain

COMPONENT_NAMES = {
    (3, 0): "Hom(∧³g,h)",
    (2, 1): "Hom(∧²g⊗h,h)",
    (1, 2): "Hom(g⊗∧²h,h)",
    (2, 0): "Hom(∧²g,h)",
    (1, 1): "Hom(g⊗h,h)",
    (1, 0): "Hom(g,h)",
}


def component_name(k: int, l: int) -> str:
    return COMPONENT_NAMES.get((k, l), f"Hom(∧^{k}g⊗∧^{l}h,h)")


@dataclass(frozen=True)
class BigradedCochain:
    """A map ∧^k g ⊗ ∧^l h → g or h.

    Values are stored per pair (increasing g-tuple, increasing h-tuple), pairs
    ordered as itertools.product of the two combinations sequences.
    """
    g_dim: int
    h_dim: int
    k: int
    l: int
    target: Target
    values: Tuple[Vector, ...]

    def __post_init__(self):
        expected = len(self.keys)
        if len(self.values) != expected:
            raise DimensionMismatchError(
                f"Bidegree ({self.k},{self.l}) cochain needs {expected} values, got {len(self.values)}"
            )
        width = self.target_dim
        if any(len(v) != width for v in self.values):
            raise DimensionMismatchError(f"Bigraded cochain values must have length {width}")

    @property
    def target_dim(self) -> int:
        return self.g_dim if self.target is Target.G else self.h_dim

    @cached_property
    def keys(self) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
        return tuple(product(combinations(range(self.g_dim), self.k), combinations(range(self.h_dim), self.l)))

    @classmethod
    def from_function(cls, g_dim: int, h_dim: int, k: int, l: int, target: Target,
                      fn: Callable[[Tuple[int, ...], Tuple[int, ...]], Sequence]) -> "BigradedCochain":
        keys = product(combinations(range(g_dim), k), combinations(range(h_dim), l))
        return cls(g_dim, h_dim, k, l, target,
                   tuple(tuple(to_rational(x) for x in fn(gt, ht)) for gt, ht in keys))

    @classmethod
    def zero(cls, g_dim: int, h_dim: int, k: int, l: int, target: Target) -> "BigradedCochain":
        width = g_dim if target is Target.G else h_dim
        return cls.from_function(g_dim, h_dim, k, l, target, lambda gt, ht: zero_vector(width))

    def value(self, gt: Tuple[int, ...], ht: Tuple[int, ...]) -> Vector:
        return self.values[self.keys.index((gt, ht))]

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.values)

    @property
    def name(self) -> str:
        return component_name(self.k, self.l)


def lift(c: BigradedCochain) -> LiftedMap:
    """The alternating map on g ⊕ h that agrees with c on (g-args, h-args)."""
    m, p = c.g_dim, c.h_dim
    n = m + p
    offset = 0 if c.target is Target.G else m
    stored = dict(zip(c.keys, c.values))

    def value(t: Tuple[int, ...]) -> Vector:
        gt = tuple(i for i in t if i < m)
        if len(gt) != c.k:
            return zero_vector(n)
        ht = tuple(i - m for i in t if i >= m)
        out = [ZERO] * n
        for a, x in enumerate(stored[(gt, ht)]):
            out[offset + a] = x
        return tuple(out)

    return AltCochain.from_function(n, n, c.k + c.l, value)


def restrict(f: LiftedMap, g_dim: int, h_dim: int, k: int, l: int, target: Target) -> BigradedCochain:
    """Inverse of lift on the (k, l, target) summand."""
    if f.source_dim != g_dim + h_dim or f.degree != k + l:
        raise DimensionMismatchError(f"Cannot read a ({k},{l}) component from a degree-{f.degree} lifted map")
    lo, hi = (0, g_dim) if target is Target.G else (g_dim, g_dim + h_dim)
    return BigradedCochain.from_function(
        g_dim, h_dim, k, l, target,
        lambda gt, ht: f.value(gt + tuple(g_dim + j for j in ht))[lo:hi],
    )


def components(f: LiftedMap, g_dim: int, h_dim: int) -> List[BigradedCochain]:
    """Nonzero bidegree summands of a lifted map."""
    out = []
    for k in range(f.degree, -1, -1):
        for target in (Target.G, Target.H):
            part = restrict(f, g_dim, h_dim, k, f.degree - k, target)
            if not part.is_zero():
                out.append(part)
    return out


def _check_same_space(a: LiftedMap, b: LiftedMap):
    n = a.source_dim
    if (a.target_dim, b.source_dim, b.target_dim) != (n, n, n):
        raise DimensionMismatchError("Lifted maps must live on the same space")
    if a.degree < 1 or b.degree < 1:
        raise DimensionMismatchError("Composition needs maps of arity at least one")


def nr_compose(a: LiftedMap, b: LiftedMap) -> LiftedMap:
    """a ∘ b: insert b into the first slot of a, summing over shuffles."""
    _check_same_space(a, b)
    n = a.source_dim
    arity = a.degree + b.degree - 1
    splits = shuffles(arity, b.degree)

    def value(t: Tuple[int, ...]) -> Vector:
        acc = [ZERO] * n
        for first, rest, sign in splits:
            inner = b.value(tuple(t[i] for i in first))
            if vec_is_zero(inner):
                continue
            outer = a.evaluate_with_first(inner, tuple(t[i] for i in rest))
            for s, x in enumerate(outer):
                if x:
                    acc[s] += sign * x
        return tuple(acc)

    return AltCochain.from_function(n, n, arity, value)


def nr_bracket(a: LiftedMap, b: LiftedMap) -> LiftedMap:
    sign = -1 if (a.degree - 1) * (b.degree - 1) % 2 else 1
    forward = nr_compose(a, b)
    backward = nr_compose(b, a)
    return forward - backward if sign == 1 else forward + backward


def _check_lgh_shape(c: AltCochain, g_dim: int, label: str):
    for t, v in zip(c.tuples, c.values):
        if vec_is_zero(v):
            continue
        if any(v[:g_dim]):
            raise InvalidDataError(f"{label} has a g-valued component")
        if not t or t[0] >= g_dim:
            raise InvalidDataError(f"{label} has a component without a g argument")


@dataclass(frozen=True)
class GradedElement:
    """(f, alpha) in degree n: f has arity n + 1 and alpha arity n; alpha is absent at n = 0."""
    degree: int
    g_dim: int
    h_dim: int
    f: LiftedMap
    alpha: Optional[LiftedMap] = None

    def __post_init__(self):
        n = self.g_dim + self.h_dim
        if self.degree < 0:
            raise DimensionMismatchError("Graded elements have non-negative degree")
        if (self.f.source_dim, self.f.target_dim, self.f.degree) != (n, n, self.degree + 1):
            raise DimensionMismatchError(f"f must be an arity-{self.degree + 1} lifted map on {n} dims")
        _check_lgh_shape(self.f, self.g_dim, "f")
        if self.degree == 0:
            if self.alpha is not None and not self.alpha.is_zero():
                raise InvalidDataError("Degree-0 elements have no alpha part")
            object.__setattr__(self, "alpha", None)
        else:
            if self.alpha is None:
                object.__setattr__(self, "alpha", AltCochain.zero(n, n, self.degree))
            elif (self.alpha.source_dim, self.alpha.target_dim, self.alpha.degree) != (n, n, self.degree):
                raise DimensionMismatchError(f"alpha must be an arity-{self.degree} lifted map on {n} dims")
            _check_lgh_shape(self.alpha, self.g_dim, "alpha")

    @classmethod
    def zero(cls, degree: int, g_dim: int, h_dim: int) -> "GradedElement":
        n = g_dim + h_dim
        return cls(degree, g_dim, h_dim, AltCochain.zero(n, n, degree + 1))

    @classmethod
    def from_parts(cls, degree: int, g_dim: int, h_dim: int,
                   f_parts: Sequence[BigradedCochain] = (),
                   alpha_parts: Sequence[BigradedCochain] = ()) -> "GradedElement":
        n = g_dim + h_dim
        f = AltCochain.zero(n, n, degree + 1)
        for part in f_parts:
            f = f + lift(part)
        alpha = None
        if degree > 0:
            alpha = AltCochain.zero(n, n, degree)
            for part in alpha_parts:
                alpha = alpha + lift(part)
        return cls(degree, g_dim, h_dim, f, alpha)

    def _check_compatible(self, other: "GradedElement"):
        if (self.degree, self.g_dim, self.h_dim) != (other.degree, other.g_dim, other.h_dim):
            raise DimensionMismatchError("Graded elements differ in degree or shape")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check_compatible(other)
        alpha = None if self.alpha is None else self.alpha + other.alpha
        return GradedElement(self.degree, self.g_dim, self.h_dim, self.f + other.f, alpha)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + other.scale(-1)

    def __neg__(self) -> "GradedElement":
        return self.scale(-1)

    def scale(self, c) -> "GradedElement":
        alpha = None if self.alpha is None else self.alpha.scale(c)
        return GradedElement(self.degree, self.g_dim, self.h_dim, self.f.scale(c), alpha)

    def is_zero(self) -> bool:
        return self.f.is_zero() and (self.alpha is None or self.alpha.is_zero())

    def components(self) -> List[Tuple[str, BigradedCochain]]:
        out = [("f", part) for part in components(self.f, self.g_dim, self.h_dim)]
        if self.alpha is not None:
            out += [("alpha", part) for part in components(self.alpha, self.g_dim, self.h_dim)]
        return out


def structure_parts(gpair: LieDerPair, hpair: LieDerPair) -> Tuple[BigradedCochain, ...]:
    """π_g, π_h, D and K as bigraded cochains."""
    g, h = gpair.algebra, hpair.algebra
    m, p = g.dim, h.dim
    return (
        BigradedCochain.from_function(m, p, 2, 0, Target.G, lambda gt, ht: g.bracket_basis(*gt)),
        BigradedCochain.from_function(m, p, 0, 2, Target.H, lambda gt, ht: h.bracket_basis(*ht)),
        BigradedCochain.from_function(m, p, 1, 0, Target.G, lambda gt, ht: gpair.d.column(gt[0])),
        BigradedCochain.from_function(m, p, 0, 1, Target.H, lambda gt, ht: hpair.d.column(ht[0])),
    )


@dataclass(frozen=True)
class LghContext:
    """The two LieDer pairs over which L^{g,h} is built."""
    gpair: LieDerPair
    hpair: LieDerPair
    gauge_cap: int = field(default=16, compare=False)

    def __post_init__(self):
        for label, pair in (("g", self.gpair), ("h", self.hpair)):
            check = jacobi_check(pair.algebra)
            if not check:
                raise InvalidDataError(f"{label} is not a Lie algebra: {check.failure}")

    @classmethod
    def of_cocycle(cls, c: NonAbelianCocycle, gauge_cap: int = 16) -> "LghContext":
        return cls(c.gpair, c.hpair, gauge_cap)

    @property
    def m(self) -> int:
        return self.gpair.dim

    @property
    def p(self) -> int:
        return self.hpair.dim

    @cached_property
    def pi(self) -> LiftedMap:
        pi_g, pi_h, _, _ = structure_parts(self.gpair, self.hpair)
        return lift(pi_g) + lift(pi_h)

    @cached_property
    def dk(self) -> LiftedMap:
        _, _, d, k = structure_parts(self.gpair, self.hpair)
        return lift(d) + lift(k)


def ambient_structure(gpair: LieDerPair, hpair: LieDerPair) -> Tuple[LiftedMap, LiftedMap]:
    ctx = LghContext(gpair, hpair)
    return ctx.pi, ctx.dk


def is_structure_mc(pi: LiftedMap, d: LiftedMap) -> CheckResult:
    """[(π, D), (π, D)] = 0 in the LieDer graded Lie algebra of a single space."""
    if not nr_bracket(pi, pi).is_zero():
        return CheckResult.failed("[π,π] ≠ 0: bracket fails Jacobi")
    if not nr_bracket(pi, d).is_zero():
        return CheckResult.failed("[π,D] ≠ 0: map is not a derivation")
    return CheckResult.passed()


def _maybe_bracket(a: Optional[LiftedMap], b: Optional[LiftedMap]) -> Optional[LiftedMap]:
    if a is None or b is None:
        return None
    return nr_bracket(a, b)


def _sum(n: int, arity: int, terms: Sequence[Tuple[int, Optional[LiftedMap]]]) -> LiftedMap:
    acc = AltCochain.zero(n, n, arity)
    for sign, term in terms:
        if term is None:
            continue
        acc = acc + term if sign == 1 else acc - term
    return acc


def lgh_bracket(a: GradedElement, b: GradedElement) -> GradedElement:
    if (a.g_dim, a.h_dim) != (b.g_dim, b.h_dim):
        raise DimensionMismatchError("Graded elements live over different spaces")
    k, l = a.degree, b.degree
    n = a.g_dim + a.h_dim
    degree = k + l
    f = nr_bracket(a.f, b.f)
    alpha = None
    if degree > 0:
        sign = -1 if k * l % 2 else 1
        alpha = _sum(n, degree, [(1, _maybe_bracket(a.f, b.alpha)), (-sign, _maybe_bracket(b.f, a.alpha))])
    return GradedElement(degree, a.g_dim, a.h_dim, f, alpha)


def lgh_differential(ctx: LghContext, e: GradedElement) -> GradedElement:
    if (e.g_dim, e.h_dim) != (ctx.m, ctx.p):
        raise DimensionMismatchError("Element does not live over the context's pairs")
    k = e.degree
    n = ctx.m + ctx.p
    f = nr_bracket(ctx.pi, e.f)
    sign = -1 if k % 2 else 1
    alpha = _sum(n, k + 1, [(1, _maybe_bracket(ctx.pi, e.alpha)), (-sign, nr_bracket(e.f, ctx.dk))])
    return GradedElement(k + 1, e.g_dim, e.h_dim, f, alpha)


def curvature(ctx: LghContext, e: GradedElement) -> GradedElement:
    """d e + ½ [e, e]."""
    return lgh_differential(ctx, e) + lgh_bracket(e, e).scale(Fraction(1, 2))


def mc_check(ctx: LghContext, e: GradedElement) -> CheckResult:
    if e.degree != 1:
        raise DimensionMismatchError("Maurer-Cartan elements have degree 1")
    curv = curvature(ctx, e)
    for label, part in curv.components():
        logger.debug(f"Curvature has a nonzero {label} component in {part.name}")
        return CheckResult.failed(f"{label} component {part.name}")
    return CheckResult.passed()


def tau_element(ctx: LghContext, tau: Matrix) -> GradedElement:
    if tau.shape != (ctx.p, ctx.m):
        raise DimensionMismatchError(f"τ has shape {tau.shape}, expected {ctx.p}x{ctx.m}")
    part = BigradedCochain.from_function(ctx.m, ctx.p, 1, 0, Target.H, lambda gt, ht: tau.column(gt[0]))
    return GradedElement.from_parts(0, ctx.m, ctx.p, [part])


def cocycle_to_mc(c: NonAbelianCocycle) -> GradedElement:
    m, p = c.gpair.dim, c.hpair.dim
    omega = BigradedCochain.from_function(m, p, 2, 0, Target.H, lambda gt, ht: c.omega.value(gt))
    varrho = BigradedCochain.from_function(m, p, 1, 1, Target.H,
                                           lambda gt, ht: c.varrho[gt[0]].column(ht[0]))
    chi = BigradedCochain.from_function(m, p, 1, 0, Target.H, lambda gt, ht: c.chi.column(gt[0]))
    return GradedElement.from_parts(1, m, p, [omega, varrho], [chi])


def mc_to_cocycle(ctx: LghContext, e: GradedElement) -> NonAbelianCocycle:
    """Read (ϱ, ω, χ) off a degree-1 element; no cocycle condition is imposed."""
    if e.degree != 1 or (e.g_dim, e.h_dim) != (ctx.m, ctx.p):
        raise DimensionMismatchError("Expected a degree-1 element over the context's pairs")
    m, p = ctx.m, ctx.p
    omega_part = restrict(e.f, m, p, 2, 0, Target.H)
    varrho_part = restrict(e.f, m, p, 1, 1, Target.H)
    chi_part = restrict(e.alpha, m, p, 1, 0, Target.H)
    omega = AltCochain(m, p, 2, omega_part.values)
    varrho = tuple(
        Matrix.from_columns([varrho_part.value((i,), (a,)) for a in range(p)], p) for i in range(m)
    )
    chi = Matrix.from_columns(list(chi_part.values), p)
    return NonAbelianCocycle(ctx.gpair, ctx.hpair, varrho, omega, chi)


def _exp_series(tau_e: GradedElement, start: GradedElement, first_denominator: int, cap: int) -> GradedElement:
    # Σ_{n≥0} ad(τ)^n(start) / (n + first_denominator - 1)! up to the first vanishing power
    total = start.scale(Fraction(1, factorial(first_denominator - 1)))
    term = total
    n = 0
    while not term.is_zero():
        n += 1
        if n > cap:
            raise NotNilpotentError(f"ad(τ) did not vanish within {cap} powers")
        term = lgh_bracket(tau_e, term).scale(Fraction(1, n + first_denominator - 1))
        total = total + term
    return total


def gauge_dgla(ctx: LghContext, e: GradedElement, tau: Matrix) -> GradedElement:
    """e^{ad τ} e - (e^{ad τ} - 1)/ad τ (d τ)."""
    if e.degree != 1:
        raise DimensionMismatchError("Gauge action is on degree-1 elements")
    tau_e = tau_element(ctx, tau)
    moved = _exp_series(tau_e, e, 1, ctx.gauge_cap)
    shift = _exp_series(tau_e, lgh_differential(ctx, tau_e), 2, ctx.gauge_cap)
    return moved - shift
