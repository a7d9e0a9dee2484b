# src/cli/commands.py
# One handler per subcommand. Each returns (exit code, JSON document).

import logging
from dataclasses import replace
from typing import Any, Dict, Optional, Tuple

from ..core.cochain import AltCochain, LieDerCochain, cohomology
from ..core.dgla import cocycle_to_mc, mc_check
from ..core.errors import InvalidDataError
from ..core.exactlin import Matrix, solve
from ..core.extendder import DerivationPair, ExtensionContext, is_compatible, is_extensible, obstruction_w
from ..core.kernel import obstruction_ch, realize_kernel, verify_kernel
from ..core.lie import center, derivation_space, inner_derivations, jacobi_check, out_space
from ..core.lie2 import TwoHom, cocycle_to_hom, verify_lie2der_hom, verify_two_hom
from ..core.models import ComplexKind
from ..core.nonabelian import (
    Section, apply_gauge, build_extension, extract_cocycle, verify_cocycle, verify_equivalence_witness,
    verify_extension,
)
from ..core.serialization import (
    DocumentLoader, dump_cochain, dump_cocycle, dump_extension, dump_graded,
    dump_lie2_hom, dump_lieder_cochain, dump_matrix, dump_vector,
)
from ..utils.constants import EXIT_FAILED, EXIT_OK

logger = logging.getLogger("liederx.cli")

Result = Tuple[int, Dict[str, Any]]


def _verdict(key: str, check) -> Result:
    doc = {key: check.ok}
    if check.failure:
        doc["failure"] = check.failure
    return (EXIT_OK if check.ok else EXIT_FAILED), doc


def cmd_check(args, loader: DocumentLoader) -> Result:
    # Parse without validation so a failing algebra reports instead of aborting
    lenient = DocumentLoader(replace(loader.settings, validate_inputs=False))
    doc, base = lenient.read(args.algebra)
    return _verdict("jacobi", jacobi_check(lenient.algebra(doc, base)))


def cmd_der(args, loader: DocumentLoader) -> Result:
    L = loader.algebra(*loader.read(args.algebra))
    space = derivation_space(L)
    basis = [dump_matrix(Matrix(L.dim, L.dim, v)) for v in space.vectors()]
    return EXIT_OK, {"dim": space.dim, "basis": basis}


def cmd_center(args, loader: DocumentLoader) -> Result:
    L = loader.algebra(*loader.read(args.algebra))
    z = center(L)
    return EXIT_OK, {"dim": z.dim, "basis": [dump_vector(v) for v in z.vectors()]}


def cmd_out(args, loader: DocumentLoader) -> Result:
    L = loader.algebra(*loader.read(args.algebra))
    der, inner, out = derivation_space(L), inner_derivations(L), out_space(L)
    return EXIT_OK, {"dim_der": der.dim, "dim_inner": inner.dim, "dim_out": out.dim}


def cmd_cohomology(args, loader: DocumentLoader) -> Result:
    pair = loader.pair(*loader.read(args.pair))
    doc, base = loader.read(args.rep)
    rep = loader.rep(doc, pair, base)
    kind = ComplexKind(args.complex)
    result = cohomology(rep, args.degree, kind)
    m, r = pair.dim, rep.space_dim
    if kind is ComplexKind.CE:
        reps = [dump_cochain(AltCochain.from_flat(m, r, args.degree, v)) for v in result.representatives]
    else:
        reps = [dump_lieder_cochain(LieDerCochain.from_flat(m, r, args.degree, v)) for v in result.representatives]
    return EXIT_OK, {
        "degree": result.degree,
        "complex": kind.value,
        "dim_cocycles": result.dim_cocycles,
        "dim_coboundaries": result.dim_coboundaries,
        "dim_h": result.dim_h,
        "representatives": reps,
    }


def cmd_cocycle_verify(args, loader: DocumentLoader) -> Result:
    return _verdict("cocycle", verify_cocycle(loader.cocycle(*loader.read(args.cocycle))))


def _tau(loader: DocumentLoader, path: str, c) -> Matrix:
    doc, base = loader.read(path)
    return loader.matrix(doc, base, (c.hpair.dim, c.gpair.dim))


def cmd_cocycle_gauge(args, loader: DocumentLoader) -> Result:
    c = loader.cocycle(*loader.read(args.cocycle))
    return EXIT_OK, dump_cocycle(apply_gauge(c, _tau(loader, args.tau, c)))


def cmd_cocycle_witness(args, loader: DocumentLoader) -> Result:
    c = loader.cocycle(*loader.read(args.cocycle))
    c2 = loader.cocycle(*loader.read(args.other))
    return _verdict("witness", verify_equivalence_witness(c, c2, _tau(loader, args.tau, c)))


def cmd_extend(args, loader: DocumentLoader) -> Result:
    c = loader.cocycle(*loader.read(args.cocycle))
    check = verify_cocycle(c)
    if not check:
        return _verdict("cocycle", check)
    e, s = build_extension(c)
    doc = dump_extension(e, s)
    doc["verified"] = verify_extension(e).ok
    return EXIT_OK, doc


def cmd_extract(args, loader: DocumentLoader) -> Result:
    e, _ = loader.extension(*loader.read(args.extension))
    doc, base = loader.read(args.section)
    s = loader.section(doc, e, base)
    check = verify_extension(e)
    if not check:
        return _verdict("extension", check)
    return EXIT_OK, dump_cocycle(extract_cocycle(e, s))


def cmd_mc_verify(args, loader: DocumentLoader) -> Result:
    ctx = loader.lgh_context(*loader.read(args.context))
    doc, base = loader.read(args.element)
    e = loader.graded(doc, ctx.m, ctx.p, base)
    return _verdict("mc", mc_check(ctx, e))


def cmd_mc_translate(args, loader: DocumentLoader) -> Result:
    return EXIT_OK, dump_graded(cocycle_to_mc(loader.cocycle(*loader.read(args.cocycle))))


def cmd_kernel_verify(args, loader: DocumentLoader) -> Result:
    return _verdict("kernel", verify_kernel(loader.kernel(*loader.read(args.kernel))))


def cmd_kernel_obstruction(args, loader: DocumentLoader) -> Result:
    ch = obstruction_ch(loader.kernel(*loader.read(args.kernel)))
    doc = {
        "dim_h3": ch.h3.dim_h,
        "obstruction_class": dump_vector(ch.class_coords),
        "cochain": dump_lieder_cochain(ch.cochain),
    }
    return (EXIT_OK if ch.is_zero else EXIT_FAILED), doc


def cmd_kernel_realize(args, loader: DocumentLoader) -> Result:
    k = loader.kernel(*loader.read(args.kernel))
    c = realize_kernel(k)
    if c is None:
        return EXIT_FAILED, {"realizable": False, "obstruction_class": dump_vector(obstruction_ch(k).class_coords)}
    return EXIT_OK, {"realizable": True, "cocycle": dump_cocycle(c)}


def _default_section(proj: Matrix) -> Optional[Matrix]:
    return solve(proj, Matrix.identity(proj.rows))


def cmd_extensible(args, loader: DocumentLoader) -> Result:
    e, s = loader.extension(*loader.read(args.extension))
    if s is None:
        smat = _default_section(e.proj)
        if smat is None:
            raise InvalidDataError("Projection is not surjective, so the input is not an extension")
        s = Section(e, smat)
    ctx = ExtensionContext.from_extension(e, s)
    k_doc, k_base = loader.read(args.k)
    d_doc, d_base = loader.read(args.d)
    pair = DerivationPair.of(
        ctx.h, loader.matrix(k_doc, k_base, (ctx.h.dim, ctx.h.dim)),
        ctx.g, loader.matrix(d_doc, d_base, (ctx.g.dim, ctx.g.dim)),
    )
    chi = is_compatible(ctx, pair)
    if chi is None:
        return EXIT_FAILED, {"compatible": False}
    w = obstruction_w(ctx, pair, chi)
    doc = {"compatible": True, "obstruction_class": dump_vector(w.class_coords)}
    if not w.is_zero:
        return EXIT_FAILED, doc
    dhat = is_extensible(ctx, pair)
    doc["derivation"] = dump_matrix(dhat.matrix)
    return EXIT_OK, doc


def cmd_lie2_translate(args, loader: DocumentLoader) -> Result:
    c = loader.cocycle(*loader.read(args.cocycle))
    f = cocycle_to_hom(c)
    doc = dump_lie2_hom(f)
    check = verify_lie2der_hom(f)
    doc["verified"] = check.ok
    return (EXIT_OK if check.ok else EXIT_FAILED), doc


def cmd_lie2_verify_2hom(args, loader: DocumentLoader) -> Result:
    """The 2-morphism τ runs from the image of the gauged cocycle to the image of the original."""
    c = loader.cocycle(*loader.read(args.cocycle))
    c2 = loader.cocycle(*loader.read(args.other))
    tau = _tau(loader, args.tau, c)
    return _verdict("two_hom", verify_two_hom(cocycle_to_hom(c2), cocycle_to_hom(c), TwoHom(tau)))
