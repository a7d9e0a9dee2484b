# tests/test_exactlin.py

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import DimensionMismatchError, ParseError
from src.core.exactlin import (
    Matrix, Subspace, format_rational, image_basis, kernel_basis, quotient, rank, rref, solve, solve_vector,
    to_rational,
)

from .oracles import oracle_consistent, oracle_rank
from .strategies import matrices, rationals, vectors

shapes = st.tuples(st.integers(1, 4), st.integers(1, 4))


@st.composite
def systems(draw):
    r, c = draw(shapes)
    return draw(matrices(r, c, rationals)), draw(matrices(r, draw(st.integers(1, 2)), rationals))


def test_rref_worked_case():
    reduced, pivots = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert reduced == Matrix.from_rows([[1, 2], [0, 0]])
    assert pivots == [0]


def test_solve_pins_free_variables_to_zero():
    assert solve_vector(Matrix.from_rows([[1, 1]]), (2,)) == (2, 0)


def test_solve_with_free_value_one():
    assert solve_vector(Matrix.from_rows([[1, 1]]), (2,), free_value=1) == (1, 1)


def test_solve_inconsistent():
    assert solve_vector(Matrix.from_rows([[1, 1], [1, 1]]), (0, 1)) is None


def test_kernel_basis_worked_case():
    k = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert k.dim == 1
    assert k.contains((1, -1))
    assert not k.contains((1, 1))


def test_image_is_the_column_span():
    im = image_basis(Matrix.from_rows([[1, 2], [2, 4]]))
    assert im.dim == 1
    assert im.contains((1, 2))
    assert not im.contains((1, 0))


def test_quotient_class_coordinates():
    q = quotient(2, Subspace.span(2, [(1, 0)]))
    assert q.dim == 1
    assert q.class_coords((3, 5)) == (5,)
    assert q.is_zero_class((7, 0))


def test_rationals_parse_and_print():
    assert to_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


@pytest.mark.parametrize("bad", ["1.5.2", "x", "1/0", True, 0.5, None])
def test_bad_rationals_rejected(bad):
    with pytest.raises(ParseError):
        to_rational(bad)


def test_shape_errors():
    with pytest.raises(DimensionMismatchError):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(DimensionMismatchError):
        solve(Matrix.identity(2), Matrix.identity(3))


@given(st.data())
def test_rank_matches_oracle(data):
    r, c = data.draw(shapes)
    a = data.draw(matrices(r, c, rationals))
    assert rank(a) == oracle_rank([list(row) for row in a.to_rows()])


@given(systems())
def test_solve_matches_oracle(system):
    a, b = system
    x = solve(a, b)
    for k in range(b.cols):
        consistent = oracle_consistent([list(row) for row in a.to_rows()], list(b.column(k)))
        if not consistent:
            assert x is None
            return
    assert x is not None
    assert a @ x == b
    assert a @ solve(a, b, free_value=1) == b


@given(st.data())
def test_kernel_basis_is_kernel(data):
    r, c = data.draw(shapes)
    a = data.draw(matrices(r, c))
    k = kernel_basis(a)
    assert k.dim == c - rank(a)
    for v in k.vectors():
        assert all(x == 0 for x in a @ v)


@settings(max_examples=50)
@given(st.data())
def test_subspace_coordinates_recombine(data):
    n = data.draw(st.integers(1, 4))
    vs = data.draw(st.lists(vectors(n), min_size=1, max_size=3))
    space = Subspace.span(n, vs)
    coeffs = data.draw(st.lists(rationals, min_size=len(vs), max_size=len(vs)))
    member = tuple(sum((Fraction(c) * v[i] for c, v in zip(coeffs, vs)), Fraction(0)) for i in range(n))
    assert space.contains(member)
    assert space.combine(space.coordinates(member)) == member
