# tests/test_kernel.py

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core import catalog
from src.core.cochain import AltCochain, LieDerCochain, cohomology
from src.core.errors import InvalidDataError, NotACocycleError
from src.core.exactlin import Matrix
from src.core.kernel import (
    KernelDatum, central_coboundary, choose_lift, induced_rep, kernel_of_extension, lift_obstruction,
    obstruction_ch, perturb_lift, pullback_pair, realize_kernel, same_kernel, torsor_act, verify_kernel,
)
from src.core.lie import LieDerPair, derivation_space, inner_derivations, is_lieder_pair, jacobi_check
from src.core.models import ComplexKind
from src.core.nonabelian import apply_gauge, build_extension, verify_cocycle, verify_equivalence_witness

from .strategies import cocycles, kernels, matrices


def test_kernel_from_an_extension_is_valid():
    c = catalog.a2_semidirect_h3()
    e, s = build_extension(c)
    k = kernel_of_extension(e, s)
    assert verify_kernel(k)
    assert k.reps == c.varrho


def test_non_derivation_representative_is_rejected(heisenberg):
    k = KernelDatum(LieDerPair.of(catalog.abelian(1)), LieDerPair.of(heisenberg), (Matrix.identity(3),))
    check = verify_kernel(k)
    assert check.failure.startswith("der")
    with pytest.raises(InvalidDataError):
        choose_lift(k)


def test_induced_rep_of_central_heisenberg():
    c = catalog.central_heisenberg()
    k = KernelDatum(c.gpair, c.hpair, (Matrix.zeros(1, 1),) * 2)
    rep = induced_rep(k)
    assert rep.space_dim == 1
    assert rep.t == Matrix.scalar(1, 2)


@settings(max_examples=60)
@given(kernels())
def test_kernels_of_cocycles_are_unobstructed(k):
    assert verify_kernel(k)
    assert obstruction_ch(k).is_zero


@settings(max_examples=40)
@given(kernels())
def test_realization_induces_the_kernel(k):
    c = realize_kernel(k)
    assert c is not None
    assert verify_cocycle(c)
    assert same_kernel(KernelDatum(c.gpair, c.hpair, c.varrho), k)


@st.composite
def heisenberg_kernels(draw):
    """Kernels on H3 with representatives drawn from Der(H3); they need not be valid."""
    g = draw(st.sampled_from([catalog.abelian(1), catalog.abelian(2), catalog.nonabelian2()]))
    k_diag = draw(st.sampled_from([(1, 1, 2), (0, 0, 0), (1, -1, 0)]))
    hpair = LieDerPair.of(catalog.heisenberg(), Matrix.diagonal(k_diag))
    der = derivation_space(hpair.algebra)
    reps = []
    for _ in range(g.dim):
        coords = draw(st.lists(st.integers(-1, 1), min_size=der.dim, max_size=der.dim))
        reps.append(Matrix.from_flat(3, 3, der.combine(coords)))
    return KernelDatum(LieDerPair.of(g), hpair, tuple(reps))


@settings(max_examples=20)
@given(st.data())
def test_obstruction_class_does_not_depend_on_the_lift(data):
    k = data.draw(st.one_of(kernels(), heisenberg_kernels()))
    if not verify_kernel(k):
        return
    base = obstruction_ch(k).class_coords
    assert obstruction_ch(k, free_value=1).class_coords == base
    lift = choose_lift(k)
    r = data.draw(matrices(k.hpair.dim, k.gpair.dim))
    assert lift_obstruction(perturb_lift(lift, r)).class_coords == base


@settings(max_examples=30)
@given(heisenberg_kernels())
def test_random_kernels_realize_exactly_when_unobstructed(k):
    if not verify_kernel(k):
        return
    ch = obstruction_ch(k)
    c = realize_kernel(k)
    assert (c is not None) == ch.is_zero
    if c is not None:
        assert verify_cocycle(c)


def test_heisenberg_torsor_clears_omega():
    base = catalog.central_heisenberg()
    eta = AltCochain.from_dict(2, 1, 2, {(0, 1): (1,)})
    moved = torsor_act(base, LieDerCochain(eta, AltCochain.zero(2, 1, 1)))
    assert moved.omega.is_zero()
    assert verify_cocycle(moved)


def test_torsor_rejects_open_cochains():
    base = catalog.n2_by_a1()
    theta = AltCochain.from_matrix(Matrix.from_rows([[0, 1]]))
    with pytest.raises(NotACocycleError):
        torsor_act(base, LieDerCochain(AltCochain.zero(2, 1, 2), theta))


@st.composite
def central_classes(draw):
    base = draw(st.sampled_from([catalog.central_heisenberg(), catalog.n2_by_a1(), catalog.a2_semidirect_h3()]))
    rep = induced_rep(KernelDatum(base.gpair, base.hpair, base.varrho))
    h2 = cohomology(rep, 2, ComplexKind.LIEDER)
    closed = h2.cocycles
    m = base.gpair.dim

    def draw_class():
        coords = draw(st.lists(st.integers(-2, 2), min_size=closed.dim, max_size=closed.dim))
        return LieDerCochain.from_flat(m, rep.space_dim, 2, closed.combine(coords))

    return base, rep, draw_class(), draw_class()


@settings(max_examples=30)
@given(central_classes())
def test_torsor_action_is_additive(case):
    base, _, a, b = case
    assert torsor_act(torsor_act(base, a), b) == torsor_act(base, a + b)


@settings(max_examples=30)
@given(st.data())
def test_central_coboundaries_act_by_gauge(data):
    base, rep, _, _ = data.draw(central_classes())
    l = data.draw(matrices(rep.space_dim, base.gpair.dim))
    boundary, tau = central_coboundary(base, l)
    moved = torsor_act(base, boundary)
    assert moved == apply_gauge(base, tau)
    assert verify_equivalence_witness(base, moved, tau)


@settings(max_examples=20)
@given(kernels())
def test_pullback_pair_is_a_lieder_pair(k):
    pair = pullback_pair(k)
    assert jacobi_check(pair.algebra)
    assert is_lieder_pair(pair.algebra, pair.d)
    assert pair.dim == k.gpair.dim + inner_derivations(k.hpair.algebra).dim


@given(cocycles(), st.data())
def test_same_kernel_ignores_inner_shifts(c, data):
    k = KernelDatum(c.gpair, c.hpair, c.varrho)
    tau = data.draw(matrices(c.hpair.dim, c.gpair.dim))
    moved = apply_gauge(c, tau)
    assert same_kernel(k, KernelDatum(moved.gpair, moved.hpair, moved.varrho))
    assert same_kernel(k, KernelDatum(c.gpair, c.hpair, c.varrho))
