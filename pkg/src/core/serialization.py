# src/core/serialization.py
# JSON reading and writing for every object the command line exchanges.
# Rationals travel as strings and indices are 1-based on the wire.

import json
import logging
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .catalog import builtin, builtin_cocycle
from .cochain import AltCochain, LieDerCochain, LieDerRep
from .dgla import BigradedCochain, GradedElement, LghContext
from .errors import LiederError, ParseError
from .exactlin import Matrix, format_rational, to_rational
from .kernel import KernelDatum
from .lie import LieAlgebra, LieDerPair, jacobi_check
from .lie2 import Lie2DerHom, Lie2DerPair, StrictLie2
from .models import Settings, Target
from .nonabelian import Extension, NonAbelianCocycle, Section

logger = logging.getLogger("liederx.serialization")


def _field(doc, key: str):
    if not isinstance(doc, dict):
        raise ParseError(f"Expected an object with '{key}'")
    try:
        return doc[key]
    except KeyError:
        raise ParseError(f"Missing field '{key}'") from None


def _optional(doc, key: str, default, kind):
    """doc[key] if present, checked to be of the given JSON shape."""
    if not isinstance(doc, dict):
        raise ParseError(f"Expected an object with '{key}'")
    value = doc.get(key, default)
    if not isinstance(value, kind):
        raise ParseError(f"Field '{key}' must be {'an object' if kind is dict else 'a list'}")
    return value


def _int(value, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{label} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{label} must be an integer, got {value!r}") from None


def dump_rational(q: Fraction) -> str:
    return format_rational(q)


def parse_rational(value) -> Fraction:
    if isinstance(value, (bool, float)):
        raise ParseError(f"Rationals must be strings or integers, got {value!r}")
    return to_rational(value)


def dump_vector(v: Sequence[Fraction]) -> List[str]:
    return [dump_rational(x) for x in v]


def parse_vector(doc, length: Optional[int] = None) -> Tuple[Fraction, ...]:
    if not isinstance(doc, list):
        raise ParseError(f"Expected a list of rationals, got {type(doc).__name__}")
    if length is not None and len(doc) != length:
        raise ParseError(f"Expected {length} entries, got {len(doc)}")
    return tuple(parse_rational(x) for x in doc)


def dump_matrix(m: Matrix) -> Dict[str, Any]:
    return {"rows": m.rows, "cols": m.cols, "entries": [dump_vector(r) for r in m.to_rows()]}


def parse_matrix(doc, shape: Optional[Tuple[int, int]] = None) -> Matrix:
    if isinstance(doc, list):
        if not doc and shape is None:
            raise ParseError("An empty matrix needs an explicit shape")
        rows = [parse_vector(r) for r in doc]
        m = Matrix.from_rows(rows, len(rows[0]) if rows else shape[1])
    elif isinstance(doc, dict):
        r, c = _int(_field(doc, "rows"), "Matrix rows"), _int(_field(doc, "cols"), "Matrix cols")
        entries = _optional(doc, "entries", [], list)
        if len(entries) != r:
            raise ParseError(f"Matrix declares {r} rows but lists {len(entries)}")
        m = Matrix.from_rows([parse_vector(row, c) for row in entries], c)
    else:
        raise ParseError(f"Expected a matrix, got {type(doc).__name__}")
    if shape is not None and m.shape != shape:
        raise ParseError(f"Matrix has shape {m.shape}, expected {shape}")
    return m


def dump_key(t: Sequence[int]) -> str:
    return ",".join(str(i + 1) for i in t)


def parse_key(key: str, bound: int) -> Tuple[int, ...]:
    if not isinstance(key, str):
        raise ParseError(f"Index keys must be strings, got {key!r}")
    if not key.strip():
        return ()
    try:
        out = tuple(int(p) - 1 for p in key.split(","))
    except ValueError:
        raise ParseError(f"Malformed index key '{key}'") from None
    if any(not 0 <= i < bound for i in out):
        raise ParseError(f"Index key '{key}' out of range 1..{bound}")
    return out


def dump_algebra(L: LieAlgebra) -> Dict[str, Any]:
    brackets = {}
    for (i, j), v in L.upper_brackets().items():
        brackets[dump_key((i, j))] = {str(k + 1): dump_rational(x) for k, x in enumerate(v) if x}
    return {"name": L.name, "dim": L.dim, "brackets": brackets}


def dump_cochain(c: AltCochain) -> Dict[str, Any]:
    values = {dump_key(t): dump_vector(v) for t, v in zip(c.tuples, c.values) if any(v)}
    return {"degree": c.degree, "values": values}


def parse_cochain(doc, source_dim: int, target_dim: int, degree: Optional[int] = None) -> AltCochain:
    if not isinstance(doc, dict):
        raise ParseError("Expected a cochain object")
    k = _int(doc.get("degree", degree if degree is not None else -1), "Cochain degree")
    if k < 0 or (degree is not None and k != degree):
        raise ParseError(f"Cochain degree {doc.get('degree')!r} does not match the expected {degree}")
    data = {}
    for key, value in _optional(doc, "values", {}, dict).items():
        t = parse_key(key, source_dim)
        if len(t) != k or list(t) != sorted(set(t)):
            raise ParseError(f"Cochain key '{key}' is not an increasing {k}-tuple")
        data[t] = parse_vector(value, target_dim)
    return AltCochain.from_dict(source_dim, target_dim, k, data)


def dump_lieder_cochain(c: LieDerCochain) -> Dict[str, Any]:
    out = {"top": dump_cochain(c.top)}
    if c.lower is not None:
        out["lower"] = dump_cochain(c.lower)
    return out


def parse_lieder_cochain(doc, source_dim: int, target_dim: int, degree: int) -> LieDerCochain:
    if not isinstance(doc, dict):
        raise ParseError("Expected a cochain object with 'top' and 'lower'")
    top = parse_cochain(doc.get("top", {}), source_dim, target_dim, degree)
    lower = parse_cochain(doc.get("lower", {}), source_dim, target_dim, degree - 1) if degree > 1 else None
    return LieDerCochain(top, lower)


def dump_pair(pair: LieDerPair) -> Dict[str, Any]:
    return {"algebra": dump_algebra(pair.algebra), "derivation": dump_matrix(pair.d)}


def dump_cocycle(c: NonAbelianCocycle) -> Dict[str, Any]:
    return {
        "g": dump_pair(c.gpair),
        "h": dump_pair(c.hpair),
        "varrho": [dump_matrix(r) for r in c.varrho],
        "omega": dump_cochain(c.omega),
        "chi": dump_matrix(c.chi),
    }


def dump_extension(e: Extension, s: Optional[Section] = None) -> Dict[str, Any]:
    out = {
        "total": dump_algebra(e.total.algebra),
        "derivation": dump_matrix(e.total.d),
        "inj": dump_matrix(e.inj),
        "proj": dump_matrix(e.proj),
        "g": dump_pair(e.gpair),
        "h": dump_pair(e.kpair),
    }
    if s is not None:
        out["section"] = dump_matrix(s.s)
    return out


def dump_bigraded(c: BigradedCochain) -> Dict[str, Any]:
    values = {f"{dump_key(gt)}|{dump_key(ht)}": dump_vector(v) for (gt, ht), v in zip(c.keys, c.values) if any(v)}
    return {"k": c.k, "l": c.l, "target": c.target.value, "values": values}


def dump_graded(e: GradedElement) -> Dict[str, Any]:
    out = {"degree": e.degree, "g_dim": e.g_dim, "h_dim": e.h_dim, "f": [], "alpha": []}
    for label, part in e.components():
        out[label].append(dump_bigraded(part))
    return out


def dump_kernel(k: KernelDatum) -> Dict[str, Any]:
    return {"g": dump_pair(k.gpair), "h": dump_pair(k.hpair), "reps": [dump_matrix(r) for r in k.reps]}


def dump_lie2(L: StrictLie2) -> Dict[str, Any]:
    return {"g0": dump_algebra(L.g0), "g1_dim": L.g1_dim, "d": dump_matrix(L.d), "act": [dump_matrix(a) for a in L.act]}


def dump_lie2_hom(f: Lie2DerHom) -> Dict[str, Any]:
    return {
        "target": {"lie2": dump_lie2(f.target.lie2), "k0": dump_matrix(f.target.der.d0),
                   "k1": dump_matrix(f.target.der.d1)},
        "phi0": dump_matrix(f.phi0),
        "phi1": dump_matrix(f.phi1),
        "phi2": dump_cochain(f.phi2),
        "theta": dump_matrix(f.theta),
    }


def parse_lie2_hom(doc, source: Lie2DerPair, target: Lie2DerPair) -> Lie2DerHom:
    g, h = source.lie2, target.lie2
    return Lie2DerHom(
        source, target,
        parse_matrix(_field(doc, "phi0"), (h.g0.dim, g.g0.dim)),
        parse_matrix(_field(doc, "phi1"), (h.g1_dim, g.g1_dim)),
        parse_cochain(_field(doc, "phi2"), g.g0.dim, h.g1_dim, 2),
        parse_matrix(_field(doc, "theta"), (h.g1_dim, g.g0.dim)),
    )


class DocumentLoader:
    """Reads documents, following string references to other files or builtin names."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def read(self, path: str) -> Tuple[Any, str]:
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON ({e})") from None
        except OSError as e:
            raise ParseError(f"{path}: cannot read ({e.strerror})") from None
        logger.debug(f"Read {path}")
        return doc, os.path.dirname(os.path.abspath(path))

    def _deref(self, doc, base: str) -> Tuple[Any, str]:
        if isinstance(doc, str) and doc.endswith(".json"):
            return self.read(doc if os.path.isabs(doc) else os.path.join(base, doc))
        return doc, base

    def _guard_dim(self, n: int, label: str):
        if n < 0 or n > self.settings.max_dim:
            raise ParseError(f"{label} has dimension {n}; allowed range is 0..{self.settings.max_dim}")

    def algebra(self, doc, base: str = ".") -> LieAlgebra:
        doc, base = self._deref(doc, base)
        if isinstance(doc, str):
            try:
                return builtin(doc)
            except LiederError as e:
                raise ParseError(str(e)) from None
        if not isinstance(doc, dict):
            raise ParseError("Expected an algebra object")
        if "builtin" in doc:
            return self.algebra(doc["builtin"], base)
        n = _int(_field(doc, "dim"), "Algebra dim")
        self._guard_dim(n, "Algebra")
        brackets = {}
        for key, value in _optional(doc, "brackets", {}, dict).items():
            i, j = self._bracket_key(key, n)
            if isinstance(value, dict):
                vec = {self._index(k, n): parse_rational(x) for k, x in value.items()}
            else:
                vec = parse_vector(value, n)
            brackets[(i, j)] = vec
        L = LieAlgebra.from_brackets(n, brackets, str(doc.get("name", "")))
        if self.settings.validate_inputs:
            check = jacobi_check(L)
            if not check:
                raise ParseError(f"Algebra '{L.name}' fails the Jacobi identity: {check.failure}")
        return L

    @staticmethod
    def _index(key: str, n: int) -> int:
        t = parse_key(key, n)
        if len(t) != 1:
            raise ParseError(f"Expected a single index, got '{key}'")
        return t[0]

    @staticmethod
    def _bracket_key(key: str, n: int) -> Tuple[int, int]:
        t = parse_key(key, n)
        if len(t) != 2 or t[0] >= t[1]:
            raise ParseError(f"Bracket key '{key}' must be 'i,j' with i < j")
        return t

    def pair(self, doc, base: str = ".") -> LieDerPair:
        doc, base = self._deref(doc, base)
        if isinstance(doc, str) or (isinstance(doc, dict) and "algebra" not in doc):
            return LieDerPair.of(self.algebra(doc, base))
        L = self.algebra(_field(doc, "algebra"), base)
        d_doc = doc.get("derivation")
        if d_doc is None:
            return LieDerPair.of(L)
        d_doc, _ = self._deref(d_doc, base)
        return LieDerPair.of(L, parse_matrix(d_doc, (L.dim, L.dim)))

    def matrix(self, doc, base: str = ".", shape: Optional[Tuple[int, int]] = None) -> Matrix:
        doc, _ = self._deref(doc, base)
        return parse_matrix(doc, shape)

    def rep(self, doc, pair: LieDerPair, base: str = ".") -> LieDerRep:
        doc, base = self._deref(doc, base)
        if not isinstance(doc, dict):
            raise ParseError("Expected a representation object with 'dim'")
        n = _int(doc.get("dim", 0), "Representation dim")
        self._guard_dim(n, "Representation")
        rho_doc = _optional(doc, "rho", None, (list, type(None)))
        if rho_doc is None:
            rho = tuple(Matrix.zeros(n, n) for _ in range(pair.dim))
        else:
            if len(rho_doc) != pair.dim:
                raise ParseError(f"rho lists {len(rho_doc)} matrices for a {pair.dim}-dim algebra")
            rho = tuple(self.matrix(r, base, (n, n)) for r in rho_doc)
        t = self.matrix(_field(doc, "t"), base, (n, n)) if "t" in doc else Matrix.zeros(n, n)
        return LieDerRep(pair, n, rho, t)

    def cocycle(self, doc, base: str = ".") -> NonAbelianCocycle:
        doc, base = self._deref(doc, base)
        if isinstance(doc, dict) and "builtin" in doc:
            try:
                return builtin_cocycle(doc["builtin"])
            except LiederError as e:
                raise ParseError(str(e)) from None
        gpair, hpair = self.pair(_field(doc, "g"), base), self.pair(_field(doc, "h"), base)
        m, p = gpair.dim, hpair.dim
        varrho_doc = _optional(doc, "varrho", None, (list, type(None)))
        varrho = (tuple(Matrix.zeros(p, p) for _ in range(m)) if varrho_doc is None
                  else tuple(self.matrix(r, base, (p, p)) for r in varrho_doc))
        if len(varrho) != m:
            raise ParseError(f"varrho lists {len(varrho)} matrices, g has dimension {m}")
        omega = parse_cochain(doc.get("omega", {"degree": 2}), m, p, 2)
        chi = self.matrix(_field(doc, "chi"), base, (p, m)) if "chi" in doc else Matrix.zeros(p, m)
        return NonAbelianCocycle(gpair, hpair, varrho, omega, chi)

    def extension(self, doc, base: str = ".") -> Tuple[Extension, Optional[Section]]:
        doc, base = self._deref(doc, base)
        total = self.algebra(_field(doc, "total"), base)
        n = total.dim
        dhat = self.matrix(_field(doc, "derivation"), base, (n, n)) if "derivation" in doc else Matrix.zeros(n, n)
        gpair, hpair = self.pair(_field(doc, "g"), base), self.pair(_field(doc, "h"), base)
        inj = self.matrix(_field(doc, "inj"), base, (n, hpair.dim))
        proj = self.matrix(_field(doc, "proj"), base, (gpair.dim, n))
        e = Extension(LieDerPair.of(total, dhat), inj, proj, hpair, gpair)
        s = self.section(_field(doc, "section"), e, base) if "section" in doc else None
        return e, s

    def section(self, doc, e: Extension, base: str = ".") -> Section:
        doc, base = self._deref(doc, base)
        if isinstance(doc, dict) and "s" in doc:
            doc = doc["s"]
        return Section(e, self.matrix(doc, base, (e.total.dim, e.gpair.dim)))

    def lgh_context(self, doc, base: str = ".") -> LghContext:
        doc, base = self._deref(doc, base)
        return LghContext(self.pair(_field(doc, "g"), base), self.pair(_field(doc, "h"), base), self.settings.gauge_series_cap)

    def graded(self, doc, g_dim: int, h_dim: int, base: str = ".") -> GradedElement:
        doc, base = self._deref(doc, base)
        degree = _int(_field(doc, "degree"), "Graded degree")
        f_parts = [self._bigraded(b, g_dim, h_dim) for b in _optional(doc, "f", [], list)]
        alpha_parts = [self._bigraded(b, g_dim, h_dim) for b in _optional(doc, "alpha", [], list)]
        return GradedElement.from_parts(degree, g_dim, h_dim, f_parts, alpha_parts)

    @staticmethod
    def _bigraded(doc, g_dim: int, h_dim: int) -> BigradedCochain:
        try:
            k, l, target = int(doc["k"]), int(doc["l"]), Target(doc["target"])
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"Malformed bigraded block: {e}") from None
        width = g_dim if target is Target.G else h_dim
        data = {}
        for key, value in _optional(doc, "values", {}, dict).items():
            g_key, _, h_key = key.partition("|")
            gt, ht = parse_key(g_key, g_dim), parse_key(h_key, h_dim)
            if (len(gt), len(ht)) != (k, l) or list(gt) != sorted(set(gt)) or list(ht) != sorted(set(ht)):
                raise ParseError(f"Bigraded key '{key}' does not fit bidegree ({k},{l})")
            data[(gt, ht)] = parse_vector(value, width)
        zero = tuple(Fraction(0) for _ in range(width))
        return BigradedCochain.from_function(g_dim, h_dim, k, l, target, lambda gt, ht: data.get((gt, ht), zero))

    def kernel(self, doc, base: str = ".") -> KernelDatum:
        doc, base = self._deref(doc, base)
        gpair, hpair = self.pair(_field(doc, "g"), base), self.pair(_field(doc, "h"), base)
        p = hpair.dim
        reps = tuple(self.matrix(r, base, (p, p)) for r in _optional(doc, "reps", [], list))
        if len(reps) != gpair.dim:
            raise ParseError(f"Kernel lists {len(reps)} matrices, g has dimension {gpair.dim}")
        return KernelDatum(gpair, hpair, reps)

    def lieder_cochain(self, doc, source_dim: int, target_dim: int, degree: int, base: str = ".") -> LieDerCochain:
        doc, _ = self._deref(doc, base)
        return parse_lieder_cochain(doc, source_dim, target_dim, degree)
