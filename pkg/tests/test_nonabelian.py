# tests/test_nonabelian.py

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core import catalog
from src.core.errors import InvalidDataError, InvalidWitnessError, NotACocycleError
from src.core.exactlin import Matrix
from src.core.lie import LieDerPair
from src.core.nonabelian import (
    Extension, Section, apply_gauge, build_extension, extract_cocycle, iso_from_gauge, section_difference,
    verify_cocycle, verify_equivalence_witness, verify_extension, verify_extension_iso,
)

from .strategies import cocycle_with_gauge, cocycles, matrices


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_catalog_cocycles_verify(name):
    assert verify_cocycle(catalog.builtin_cocycle(name))


def test_wrong_k_breaks_the_last_equation():
    check = verify_cocycle(catalog.central_heisenberg(k=1))
    assert not check
    assert check.failure.startswith("nc4")


def test_non_derivation_action_is_reported():
    c = catalog.a1_semidirect_h3().replace(varrho=[Matrix.identity(3)])
    check = verify_cocycle(c)
    assert check.failure.startswith("der")


def test_build_extension_rejects_non_cocycles():
    with pytest.raises(NotACocycleError):
        build_extension(catalog.central_heisenberg(k=1))


def test_central_heisenberg_total_is_heisenberg(heisenberg):
    e, _ = build_extension(catalog.central_heisenberg())
    assert e.total.algebra == heisenberg


def test_non_exact_sequence_fails(heisenberg):
    e = Extension(
        LieDerPair.of(heisenberg),
        Matrix.from_rows([[0], [0], [1]]),
        Matrix.from_rows([[1, 0, 0], [0, 0, 1]]),
        LieDerPair.of(catalog.abelian(1)),
        LieDerPair.of(catalog.abelian(2)),
    )
    assert not verify_extension(e)


def test_section_must_split(heisenberg):
    e, _ = build_extension(catalog.central_heisenberg())
    with pytest.raises(InvalidDataError):
        Section(e, Matrix.from_rows([[1, 0], [0, 0], [0, 0]]))


@settings(max_examples=100)
@given(cocycles())
def test_cocycle_extension_round_trip(c):
    e, s = build_extension(c)
    assert verify_extension(e)
    assert extract_cocycle(e, s) == c


@settings(max_examples=25)
@given(st.data())
def test_other_sections_give_equivalent_cocycles(data):
    c = data.draw(cocycles())
    e, s = build_extension(c)
    r = data.draw(matrices(c.hpair.dim, c.gpair.dim))
    s2 = Section(e, s.s + e.inj @ r)
    tau = section_difference(e, s, s2)
    c2 = extract_cocycle(e, s2)
    assert verify_cocycle(c2)
    assert verify_equivalence_witness(extract_cocycle(e, s), c2, tau)


@settings(max_examples=100)
@given(cocycle_with_gauge())
def test_gauge_keeps_cocycles_and_is_witnessed(case):
    c, tau = case
    c2 = apply_gauge(c, tau)
    assert verify_cocycle(c2)
    assert verify_equivalence_witness(c, c2, tau)


@settings(max_examples=50)
@given(st.data())
def test_gauge_composes_additively(data):
    c = data.draw(cocycles())
    shape = (c.hpair.dim, c.gpair.dim)
    sigma, tau = data.draw(matrices(*shape)), data.draw(matrices(*shape))
    assert apply_gauge(apply_gauge(c, sigma), tau) == apply_gauge(c, sigma + tau)


@settings(max_examples=30)
@given(cocycle_with_gauge())
def test_gauge_induces_an_extension_isomorphism(case):
    c, tau = case
    c2 = apply_gauge(c, tau)
    kappa = iso_from_gauge(c, c2, tau)
    assert verify_extension_iso(build_extension(c)[0], build_extension(c2)[0], kappa)


def test_zero_map_does_not_witness_a_gauge():
    c = catalog.central_heisenberg()
    tau = Matrix.from_rows([[1, 0]])
    assert not verify_equivalence_witness(c, c, tau)
    with pytest.raises(InvalidWitnessError):
        iso_from_gauge(c, c, tau)
