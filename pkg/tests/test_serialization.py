# tests/test_serialization.py

from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.core import catalog
from src.core.cochain import AltCochain, LieDerCochain
from src.core.dgla import cocycle_to_mc
from src.core.errors import ParseError
from src.core.exactlin import Matrix
from src.core.kernel import KernelDatum
from src.core.lie2 import cocycle_to_hom
from src.core.models import Settings
from src.core.nonabelian import build_extension
from src.core.serialization import (
    DocumentLoader, dump_algebra, dump_cocycle, dump_extension, dump_graded, dump_kernel, dump_lie2_hom,
    dump_lieder_cochain, dump_matrix, parse_cochain, parse_key, parse_lie2_hom, parse_lieder_cochain, parse_matrix,
    parse_rational,
)

from .strategies import SMALL_ALGEBRAS, cocycles


def test_rationals_travel_as_strings():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(5) == 5
    assert dump_matrix(Matrix.from_rows([[Fraction(1, 2), 0]]))["entries"] == [["1/2", "0"]]


@pytest.mark.parametrize("value", [0.5, True, None, "x/2"])
def test_bad_rationals(value):
    with pytest.raises(ParseError):
        parse_rational(value)


def test_keys_are_one_based():
    assert parse_key("1,3", 3) == (0, 2)
    assert parse_key("", 3) == ()
    with pytest.raises(ParseError):
        parse_key("0,1", 3)
    with pytest.raises(ParseError):
        parse_key("1;2", 3)


def test_matrix_forms():
    assert parse_matrix([["1", "2"], ["3", "4"]]) == Matrix.from_rows([[1, 2], [3, 4]])
    assert parse_matrix({"rows": 0, "cols": 2, "entries": []}) == Matrix.zeros(0, 2)
    with pytest.raises(ParseError):
        parse_matrix({"rows": 2, "cols": 1, "entries": [["1"]]})
    with pytest.raises(ParseError):
        parse_matrix([["1"]], shape=(2, 2))


def test_cochain_keys_must_increase():
    with pytest.raises(ParseError):
        parse_cochain({"degree": 2, "values": {"2,1": ["1"]}}, 2, 1)


@pytest.mark.parametrize("L", [make() for make in SMALL_ALGEBRAS] + [catalog.sl2()])
def test_algebra_reparses(loader, L):
    assert loader.algebra(dump_algebra(L)) == L


@pytest.mark.parametrize("name", ["h3", "Heisenberg", "n2", "sl2", "a4"])
def test_builtin_algebra_names(loader, name):
    assert loader.algebra(name) == catalog.builtin(name)
    assert loader.algebra({"builtin": name}) == catalog.builtin(name)


def test_unknown_builtin(loader):
    with pytest.raises(ParseError):
        loader.algebra("so3x")


def test_jacobi_failure_is_a_parse_error(loader):
    doc = {"dim": 3, "brackets": {"1,2": {"1": "1"}, "1,3": {"3": "1"}}}
    with pytest.raises(ParseError):
        loader.algebra(doc)
    lenient = DocumentLoader(Settings(validate_inputs=False))
    assert lenient.algebra(doc).dim == 3


def test_dimension_guard():
    loader = DocumentLoader(Settings(max_dim=2))
    with pytest.raises(ParseError):
        loader.algebra({"dim": 3})


def test_pair_defaults_to_zero_derivation(loader, n2):
    pair = loader.pair({"algebra": "n2"})
    assert pair.algebra == n2
    assert pair.d == Matrix.zeros(2, 2)


@settings(max_examples=30)
@given(cocycles())
def test_cocycle_reparses(c):
    assert DocumentLoader().cocycle(dump_cocycle(c)) == c


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_builtin_cocycles(loader, name):
    assert loader.cocycle({"builtin": name}) == catalog.builtin_cocycle(name)


def test_cocycle_defaults(loader):
    c = loader.cocycle({"g": "a2", "h": {"algebra": "a1", "derivation": [["2"]]},
                        "omega": {"degree": 2, "values": {"1,2": ["1"]}}})
    assert c.varrho == (Matrix.zeros(1, 1),) * 2
    assert c.chi == Matrix.zeros(1, 2)


def test_cocycle_with_wrong_varrho_count(loader):
    with pytest.raises(ParseError):
        loader.cocycle({"g": "a2", "h": "a1", "varrho": [[["0"]]]})


def test_extension_reparses(loader):
    e, s = build_extension(catalog.a2_semidirect_h3())
    e2, s2 = loader.extension(dump_extension(e, s))
    assert e2 == e
    assert s2.s == s.s


def test_kernel_reparses(loader):
    c = catalog.n2_by_a1()
    k = KernelDatum(c.gpair, c.hpair, c.varrho)
    assert loader.kernel(dump_kernel(k)) == k


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_graded_element_reparses(loader, name):
    c = catalog.builtin_cocycle(name)
    e = cocycle_to_mc(c)
    assert loader.graded(dump_graded(e), c.gpair.dim, c.hpair.dim) == e


def test_references_follow_relative_paths(loader, write_json, tmp_path):
    write_json("d.json", [["1", "0"], ["0", "1"]])
    path = write_json("pair.json", {"algebra": "a2", "derivation": "d.json"})
    pair = loader.pair(*loader.read(path))
    assert pair.d == Matrix.identity(2)


def test_bad_json(loader, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ParseError):
        loader.read(str(path))
    with pytest.raises(ParseError):
        loader.read(str(tmp_path / "missing.json"))


def test_lieder_cochain_reparses(loader):
    top = AltCochain.from_dict(2, 1, 2, {(0, 1): (Fraction(1, 3),)})
    lower = AltCochain.from_dict(2, 1, 1, {(1,): (-2,)})
    c = LieDerCochain(top, lower)
    assert loader.lieder_cochain(dump_lieder_cochain(c), 2, 1, 2) == c
    with pytest.raises(ParseError):
        loader.lieder_cochain(["1"], 2, 1, 2)


@pytest.mark.parametrize("name", sorted(catalog.COCYCLES))
def test_lie2_hom_reparses(name):
    f = cocycle_to_hom(catalog.builtin_cocycle(name))
    assert parse_lie2_hom(dump_lie2_hom(f), f.source, f.target) == f


@pytest.mark.parametrize("doc", [[1], {"dim": "x"}, {"dim": True}, {"dim": 1, "rho": "none"}, {"dim": 1, "t": 3}])
def test_malformed_representations(loader, doc):
    with pytest.raises(ParseError):
        loader.rep(doc, loader.pair("a1"))


@pytest.mark.parametrize("doc", [{"degree": "x"}, {"degree": 1, "alpha": 4},
                                 {"degree": 1, "f": [{"k": 1, "l": 0, "target": "h", "values": "1"}]}])
def test_malformed_graded_elements(loader, doc):
    with pytest.raises(ParseError):
        loader.graded(doc, 1, 1)


def test_malformed_lieder_cochain_parts():
    with pytest.raises(ParseError):
        parse_lieder_cochain({"top": [1]}, 2, 1, 2)
    with pytest.raises(ParseError):
        parse_lieder_cochain({"top": {"degree": 2}, "lower": {"degree": 1, "values": ["1"]}}, 2, 1, 2)
