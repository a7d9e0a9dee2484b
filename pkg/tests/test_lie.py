# tests/test_lie.py

import pytest
from hypothesis import given

from src.core import catalog
from src.core.errors import DimensionMismatchError, InvalidDataError
from src.core.exactlin import Matrix
from src.core.lie import (
    LieAlgebra, LieDerPair, ad_matrix, ad_of, ad_preimage, center, derivation_coords, derivation_matrix,
    derivation_space, direct_sum, inner_derivations, is_lie_hom, is_lieder_pair, jacobi_check, out_space,
)

from .oracles import der_dimension, inner_dimension
from .strategies import algebras, derivations, lieder_pairs, vectors

ALL_NAMED = [catalog.abelian(1), catalog.abelian(2), catalog.abelian(3), catalog.nonabelian2(),
             catalog.heisenberg(), catalog.sl2()]


def test_jacobi_failure_is_reported():
    bad = LieAlgebra.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {2: 1}})
    check = jacobi_check(bad)
    assert not check
    assert "jacobi" in check.failure


@pytest.mark.parametrize("L", ALL_NAMED, ids=lambda L: L.name)
def test_named_algebras_satisfy_jacobi(L):
    assert jacobi_check(L)


def test_n2_dimensions(n2):
    assert derivation_space(n2).dim == 2
    assert inner_derivations(n2).dim == 2
    assert out_space(n2).dim == 0


def test_heisenberg_dimensions(heisenberg):
    assert derivation_space(heisenberg).dim == 6
    assert inner_derivations(heisenberg).dim == 2
    assert out_space(heisenberg).dim == 4
    assert center(heisenberg).dim == 1
    assert center(heisenberg).contains((0, 0, 1))


def test_sl2_has_trivial_center_and_only_inner_derivations():
    L = catalog.sl2()
    assert center(L).dim == 0
    assert out_space(L).dim == 0


def test_ad_matrix_rejects_an_out_of_range_index(heisenberg):
    assert ad_matrix(heisenberg, 0) == Matrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    with pytest.raises(DimensionMismatchError):
        ad_matrix(heisenberg, 3)


def test_identity_is_not_a_derivation_of_n2(n2):
    assert not is_lieder_pair(n2, Matrix.identity(2))
    with pytest.raises(InvalidDataError):
        LieDerPair.of(n2, Matrix.identity(2))


@pytest.mark.parametrize("L", ALL_NAMED, ids=lambda L: L.name)
def test_derivation_dimensions_match_brute_force(L):
    assert derivation_space(L).dim == der_dimension(L.structure)
    assert inner_derivations(L).dim == inner_dimension(L.structure)


@given(algebras())
def test_inner_derivations_are_derivations(L):
    der = derivation_space(L)
    for i in range(L.dim):
        assert der.contains(ad_matrix(L, i).flatten())
        assert is_lieder_pair(L, ad_matrix(L, i))


@given(lieder_pairs())
def test_sampled_derivations_satisfy_leibniz(pair):
    assert is_lieder_pair(pair.algebra, pair.d)
    coords = derivation_coords(pair.algebra, pair.d)
    assert derivation_matrix(pair.algebra, coords) == pair.d


@given(algebras().flatmap(lambda L: vectors(L.dim).map(lambda u: (L, u))))
def test_ad_preimage_recovers_inner_targets(case):
    L, u = case
    target = ad_of(L, u)
    v = ad_preimage(L, target)
    assert v is not None
    assert ad_of(L, v) == target


def test_ad_preimage_rejects_outer(heisenberg):
    assert ad_preimage(heisenberg, Matrix.identity(3)) is None


def test_direct_sum_projections_are_homs(n2, heisenberg):
    total = direct_sum(n2, heisenberg)
    assert jacobi_check(total)
    proj_g = Matrix.from_rows([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
    assert is_lie_hom(total, n2, proj_g)


@given(algebras().flatmap(lambda L: derivations(L).map(lambda d: (L, d))))
def test_commutator_of_derivations_is_derivation(case):
    L, d = case
    ad = ad_matrix(L, 0)
    assert is_lieder_pair(L, d @ ad - ad @ d)
