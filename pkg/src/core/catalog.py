# src/core/catalog.py
# Named algebras and ready-made cocycles used by the command line and tests.

from typing import Callable, Dict, Sequence

from .cochain import AltCochain
from .errors import InvalidDataError
from .exactlin import Matrix
from .lie import LieAlgebra, LieDerPair
from .nonabelian import NonAbelianCocycle


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.abelian(n, f"A{n}")


def heisenberg() -> LieAlgebra:
    """[e1, e2] = e3."""
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}}, "H3")


def nonabelian2() -> LieAlgebra:
    """[e1, e2] = e2."""
    return LieAlgebra.from_brackets(2, {(0, 1): {1: 1}}, "N2")


def sl2() -> LieAlgebra:
    """Basis (h, e, f)."""
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, "sl2")


_NAMED: Dict[str, Callable[[], LieAlgebra]] = {
    "h3": heisenberg,
    "heisenberg": heisenberg,
    "n2": nonabelian2,
    "sl2": sl2,
}


def builtin(name: str) -> LieAlgebra:
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key]()
    if key[:1] == "a" and key[1:].isdigit():
        return abelian(int(key[1:]))
    raise InvalidDataError(f"Unknown algebra '{name}'")


def _omega(m: int, p: int, values: Dict[tuple, Sequence]) -> AltCochain:
    return AltCochain.from_dict(m, p, 2, values)


def central_heisenberg(d: Matrix = None, k=2) -> NonAbelianCocycle:
    """H3 as a central extension of A2 by a line: ω(e1, e2) = u. Needs k = tr D."""
    d = d if d is not None else Matrix.identity(2)
    gpair = LieDerPair.of(abelian(2), d)
    hpair = LieDerPair.of(abelian(1), Matrix.scalar(1, k))
    return NonAbelianCocycle(gpair, hpair, (Matrix.zeros(1, 1),) * 2,
                             _omega(2, 1, {(0, 1): (1,)}), Matrix.zeros(1, 2))


def n2_over_a1(k=1) -> NonAbelianCocycle:
    """N2 as A1 acting on a line by ϱ(x) = 1."""
    gpair = LieDerPair.of(abelian(1))
    hpair = LieDerPair.of(abelian(1), Matrix.scalar(1, k))
    return NonAbelianCocycle(gpair, hpair, (Matrix.identity(1),), AltCochain.zero(1, 1, 2), Matrix.zeros(1, 1))


def a1_semidirect_h3() -> NonAbelianCocycle:
    gpair = LieDerPair.of(abelian(1))
    hpair = LieDerPair.of(heisenberg(), Matrix.diagonal([1, 1, 2]))
    return NonAbelianCocycle(gpair, hpair, (Matrix.diagonal([1, 0, 1]),),
                             AltCochain.zero(1, 3, 2), Matrix.zeros(3, 1))


def a2_semidirect_h3() -> NonAbelianCocycle:
    gpair = LieDerPair.of(abelian(2))
    hpair = LieDerPair.of(heisenberg(), Matrix.diagonal([1, -1, 0]))
    varrho = (Matrix.diagonal([1, 0, 1]), Matrix.diagonal([0, 1, 1]))
    return NonAbelianCocycle(gpair, hpair, varrho, _omega(2, 3, {(0, 1): (0, 0, 1)}), Matrix.zeros(3, 2))


def n2_by_a1() -> NonAbelianCocycle:
    """A line extended by N2 with D = diag(0, 1), K = 1 and ω(e1, e2) = 1."""
    gpair = LieDerPair.of(nonabelian2(), Matrix.diagonal([0, 1]))
    hpair = LieDerPair.of(abelian(1), Matrix.identity(1))
    return NonAbelianCocycle(gpair, hpair, (Matrix.zeros(1, 1),) * 2,
                             _omega(2, 1, {(0, 1): (1,)}), Matrix.zeros(1, 2))


COCYCLES: Dict[str, Callable[[], NonAbelianCocycle]] = {
    "central-heisenberg": central_heisenberg,
    "n2-over-a1": n2_over_a1,
    "a1-semidirect-h3": a1_semidirect_h3,
    "a2-semidirect-h3": a2_semidirect_h3,
    "n2-by-a1": n2_by_a1,
}


def builtin_cocycle(name: str) -> NonAbelianCocycle:
    try:
        return COCYCLES[name.strip().lower()]()
    except KeyError:
        raise InvalidDataError(f"Unknown example cocycle '{name}'") from None
