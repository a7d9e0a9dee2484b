# tests/strategies.py
# Hypothesis strategies for small exact algebraic data.

from fractions import Fraction
from math import comb

from hypothesis import strategies as st

from src.core import catalog
from src.core.cochain import AltCochain, adjoint_rep, trivial_rep
from src.core.dgla import BigradedCochain, GradedElement
from src.core.exactlin import Matrix
from src.core.kernel import KernelDatum
from src.core.lie import LieAlgebra, LieDerPair, ad_of, derivation_space
from src.core.models import Target
from src.core.nonabelian import NonAbelianCocycle, apply_gauge

small_ints = st.integers(min_value=-2, max_value=2)
rationals = st.fractions(min_value=-2, max_value=2, max_denominator=3)

SMALL_ALGEBRAS = (
    lambda: catalog.abelian(1),
    lambda: catalog.abelian(2),
    catalog.nonabelian2,
    catalog.heisenberg,
)


def matrices(rows: int, cols: int, elements=small_ints):
    return st.lists(elements, min_size=rows * cols, max_size=rows * cols).map(
        lambda flat: Matrix.from_flat(rows, cols, flat)
    )


def vectors(n: int, elements=small_ints):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def cochains(source_dim: int, target_dim: int, degree: int, elements=small_ints):
    size = comb(source_dim, degree) * target_dim
    return st.lists(elements, min_size=size, max_size=size).map(
        lambda flat: AltCochain.from_flat(source_dim, target_dim, degree, flat)
    )


@st.composite
def derivations(draw, L: LieAlgebra, elements=small_ints):
    space = derivation_space(L)
    coords = draw(st.lists(elements, min_size=space.dim, max_size=space.dim))
    return Matrix(L.dim, L.dim, space.combine(coords))


@st.composite
def algebras(draw, choices=SMALL_ALGEBRAS):
    return draw(st.sampled_from(choices))()


@st.composite
def lieder_pairs(draw, choices=SMALL_ALGEBRAS):
    L = draw(algebras(choices))
    return LieDerPair.of(L, draw(derivations(L)))


def base_cocycles():
    """Verified cocycles: the catalog plus zero cocycles over random pairs."""
    zero = st.builds(NonAbelianCocycle.zero, lieder_pairs(), lieder_pairs())
    named = st.sampled_from(sorted(catalog.COCYCLES)).map(catalog.builtin_cocycle)
    return st.one_of(named, zero)


@st.composite
def cocycles(draw):
    """A verified cocycle moved along its gauge orbit by a random τ."""
    c = draw(base_cocycles())
    tau = draw(matrices(c.hpair.dim, c.gpair.dim))
    return apply_gauge(c, tau)


@st.composite
def cochain_triples(draw):
    """(ϱ, ω, χ) data that may or may not satisfy the cocycle equations."""
    c = draw(cocycles())
    m, p = c.gpair.dim, c.hpair.dim
    which = draw(st.sampled_from(["none", "varrho", "varrho_der", "omega", "chi"]))
    if which == "varrho":
        i = draw(st.integers(0, m - 1))
        varrho = list(c.varrho)
        varrho[i] = varrho[i] + draw(matrices(p, p))
        return c.replace(varrho=varrho)
    if which == "varrho_der":
        i = draw(st.integers(0, m - 1))
        varrho = list(c.varrho)
        varrho[i] = varrho[i] + draw(derivations(c.h))
        return c.replace(varrho=varrho)
    if which == "omega":
        return c.replace(omega=c.omega + draw(cochains(m, p, 2)))
    if which == "chi":
        return c.replace(chi=c.chi + draw(matrices(p, m)))
    return c


@st.composite
def lieder_reps(draw):
    """Valid LieDer representations: adjoint, or trivial with an arbitrary T."""
    pair = draw(lieder_pairs())
    if draw(st.booleans()):
        return adjoint_rep(pair)
    n = draw(st.integers(1, 2))
    return trivial_rep(pair, n, draw(matrices(n, n)))


@st.composite
def lifted_maps(draw, n: int, arity: int):
    return draw(cochains(n, n, arity))



@st.composite
def bigraded_parts(draw, g_dim: int, h_dim: int, arity: int):
    """h-valued summands of an arity-`arity` map with at least one g argument."""
    parts = []
    for k in range(1, arity + 1):
        if k > g_dim or arity - k > h_dim:
            continue
        width = comb(g_dim, k) * comb(h_dim, arity - k)
        flat = draw(st.lists(small_ints, min_size=width * h_dim, max_size=width * h_dim))
        values = tuple(tuple(Fraction(x) for x in flat[i * h_dim:(i + 1) * h_dim]) for i in range(width))
        parts.append(BigradedCochain(g_dim, h_dim, k, arity - k, Target.H, values))
    return parts


@st.composite
def graded_elements(draw, g_dim: int, h_dim: int, degree: int):
    f_parts = draw(bigraded_parts(g_dim, h_dim, degree + 1))
    alpha_parts = draw(bigraded_parts(g_dim, h_dim, degree)) if degree > 0 else []
    return GradedElement.from_parts(degree, g_dim, h_dim, f_parts, alpha_parts)


@st.composite
def cocycle_with_gauge(draw):
    c = draw(cocycles())
    return c, draw(matrices(c.hpair.dim, c.gpair.dim))


@st.composite
def kernels(draw):
    """Kernel data read off a verified cocycle, with representatives moved by inner derivations."""
    c = draw(cocycles())
    h = c.h
    reps = tuple(r + ad_of(h, draw(vectors(h.dim))) for r in c.varrho)
    return KernelDatum(c.gpair, c.hpair, reps)
