# src/cli/app.py
# Argument parsing and dispatch for the command line.

import argparse
import json
import sys
from typing import List, Optional

from ..core.errors import LiederError
from ..core.manager import SettingsManager
from ..core.serialization import DocumentLoader
from ..utils.constants import APP_DESCRIPTION, APP_NAME, APP_VERSION, EXIT_BAD_INPUT
from ..utils.logger import refresh_logger
from . import commands


def _add(sub, name: str, handler, help_text: str, *positional: str):
    p = sub.add_parser(name, help=help_text, description=help_text)
    for arg in positional:
        p.add_argument(arg)
    p.set_defaults(handler=handler)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument("--settings", help="settings JSON file")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    _add(sub, "check", commands.cmd_check, "Jacobi identity of an algebra", "algebra")
    _add(sub, "der", commands.cmd_der, "basis of Der(L)", "algebra")
    _add(sub, "center", commands.cmd_center, "basis of the center", "algebra")
    _add(sub, "out", commands.cmd_out, "dimensions of Der, ad and Out", "algebra")
    coh = _add(sub, "cohomology", commands.cmd_cohomology, "cohomology of a pair with coefficients", "pair", "rep")
    coh.add_argument("--degree", type=int, required=True)
    coh.add_argument("--complex", choices=["ce", "lieder"], default="lieder")

    cocycle = sub.add_parser("cocycle", help="non-abelian 2-cocycles").add_subparsers(dest="action", metavar="action")
    cocycle.required = True
    _add(cocycle, "verify", commands.cmd_cocycle_verify, "check the cocycle conditions", "cocycle")
    _add(cocycle, "gauge", commands.cmd_cocycle_gauge, "apply a gauge map τ", "cocycle", "tau")
    _add(cocycle, "witness", commands.cmd_cocycle_witness, "check that τ carries one cocycle to another",
         "cocycle", "other", "tau")

    _add(sub, "extend", commands.cmd_extend, "build the extension of a cocycle", "cocycle")
    _add(sub, "extract", commands.cmd_extract, "read the cocycle of an extension through a section",
         "extension", "section")

    mc = sub.add_parser("mc", help="Maurer-Cartan elements").add_subparsers(dest="action", metavar="action")
    mc.required = True
    _add(mc, "verify", commands.cmd_mc_verify, "check the Maurer-Cartan equation", "context", "element")
    _add(mc, "translate", commands.cmd_mc_translate, "the Maurer-Cartan element of a cocycle", "cocycle")

    kernel = sub.add_parser("kernel", help="LieDer kernels").add_subparsers(dest="action", metavar="action")
    kernel.required = True
    _add(kernel, "verify", commands.cmd_kernel_verify, "check the kernel axioms", "kernel")
    _add(kernel, "obstruction", commands.cmd_kernel_obstruction, "obstruction class in H^3", "kernel")
    _add(kernel, "realize", commands.cmd_kernel_realize, "a cocycle inducing the kernel", "kernel")

    _add(sub, "extensible", commands.cmd_extensible, "extend a derivation pair to the total algebra",
         "extension", "k", "d")

    lie2 = sub.add_parser("lie2", help="strict Lie 2-algebra dictionary").add_subparsers(dest="action", metavar="action")
    lie2.required = True
    _add(lie2, "translate", commands.cmd_lie2_translate, "the homomorphism of a cocycle", "cocycle")
    _add(lie2, "verify-2hom", commands.cmd_lie2_verify_2hom, "check τ as a 2-morphism", "cocycle", "other", "tau")
    return parser


def _emit(doc, indent: int):
    sys.stdout.write(json.dumps(doc, indent=indent, ensure_ascii=False) + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_BAD_INPUT

    manager = SettingsManager(args.settings)
    logger = refresh_logger(manager.settings, manager.log_dir, args.log_level)
    loader = DocumentLoader(manager.settings)
    indent = manager.settings.json_indent

    try:
        code, doc = args.handler(args, loader)
    except (LiederError, OSError) as e:
        logger.warning(f"{args.command}: {e}")
        _emit({"error": str(e)}, indent)
        return EXIT_BAD_INPUT
    logger.debug(f"{args.command} finished with exit code {code}")
    _emit(doc, indent)
    return code
