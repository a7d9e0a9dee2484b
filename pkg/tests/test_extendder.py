# tests/test_extendder.py

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core import catalog
from src.core.errors import InvalidDataError
from src.core.exactlin import Matrix
from src.core.extendder import (
    DerivationPair, ExtensionContext, gamma, gamma_bracket_check, is_compatible, is_extensible,
    obstruction_w, preserving_derivations,
)
from src.core.lie import derivation_space, is_lieder_pair
from src.core.nonabelian import build_extension

from .oracles import extension_derivation_exists
from .strategies import matrices

coefficients = st.integers(-1, 1)


def _context(name):
    e, s = build_extension(catalog.builtin_cocycle(name))
    return ExtensionContext.from_extension(e, s)


@st.composite
def derivation_of(draw, L):
    space = derivation_space(L)
    coords = draw(st.lists(coefficients, min_size=space.dim, max_size=space.dim))
    return Matrix(L.dim, L.dim, space.combine(coords))


@st.composite
def derivation_pairs(draw, ctx):
    return DerivationPair.of(ctx.h, draw(derivation_of(ctx.h)), ctx.g, draw(derivation_of(ctx.g)))


def _rows(m):
    return [list(r) for r in m.to_rows()]


def _central_pair(ctx, lam, d):
    return DerivationPair.of(ctx.h, Matrix.scalar(1, lam), ctx.g, d)


def test_context_rejects_a_non_extension(heisenberg):
    with pytest.raises(InvalidDataError):
        ExtensionContext(heisenberg, Matrix.from_rows([[0], [0], [1]]), Matrix.from_rows([[1, 0, 0], [0, 0, 1]]),
                         catalog.abelian(2), catalog.abelian(1), Matrix.from_rows([[1, 0], [0, 0], [0, 1]]))


def test_trace_boundary_passes_at_two():
    ctx = _context("central-heisenberg")
    pair = _central_pair(ctx, 2, Matrix.identity(2))
    chi = is_compatible(ctx, pair)
    assert chi == Matrix.zeros(1, 2)
    assert obstruction_w(ctx, pair, chi).is_zero
    dhat = is_extensible(ctx, pair)
    assert dhat is not None
    assert gamma(ctx, dhat.matrix) == pair


def test_trace_boundary_fails_at_one():
    ctx = _context("central-heisenberg")
    pair = _central_pair(ctx, 1, Matrix.identity(2))
    w = obstruction_w(ctx, pair, is_compatible(ctx, pair))
    assert w.central
    assert w.class_coords == (1,)
    assert is_extensible(ctx, pair) is None


@given(derivation_of(catalog.abelian(2)), st.integers(-3, 3))
def test_central_class_is_trace_minus_lambda(d, lam):
    ctx = _context("central-heisenberg")
    pair = _central_pair(ctx, lam, d)
    w = obstruction_w(ctx, pair, is_compatible(ctx, pair))
    assert w.class_coords == (d.trace() - lam,)


def test_incompatible_pair_on_semidirect_product():
    ctx = _context("a1-semidirect-h3")
    pair = DerivationPair.of(ctx.h, Matrix.diagonal([1, 1, 2]), ctx.g, Matrix.identity(1))
    assert is_compatible(ctx, pair) is None
    assert is_extensible(ctx, pair) is None


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_extensibility_matches_brute_force(name):
    ctx = _context(name)
    structure = ctx.total.structure

    @settings(max_examples=200)
    @given(derivation_pairs(ctx))
    def check(pair):
        expected = extension_derivation_exists(structure, _rows(ctx.inj), _rows(ctx.proj), _rows(pair.k), _rows(pair.d))
        dhat = is_extensible(ctx, pair)
        assert (dhat is not None) == expected
        if dhat is not None:
            assert is_lieder_pair(ctx.total, dhat.matrix)
            assert gamma(ctx, dhat.matrix) == pair

    check()


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_obstruction_does_not_depend_on_the_section(name):
    ctx = _context(name)

    @settings(max_examples=20)
    @given(derivation_pairs(ctx), matrices(ctx.h.dim, ctx.g.dim))
    def check(pair, r):
        other = ctx.with_section(ctx.s + ctx.inj @ r)
        chi, chi2 = is_compatible(ctx, pair), is_compatible(other, pair)
        assert (chi is None) == (chi2 is None)
        if chi is not None:
            assert obstruction_w(ctx, pair, chi).is_zero == obstruction_w(other, pair, chi2).is_zero

    check()


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_gamma_preserves_brackets(name):
    ctx = _context(name)
    n = ctx.total.dim
    basis = [Matrix.from_flat(n, n, v) for v in preserving_derivations(ctx).vectors()]
    for a in basis:
        for b in basis:
            assert gamma_bracket_check(ctx, a, b)
