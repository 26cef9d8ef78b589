#!/usr/bin/env python3
"""
planecolour - command line entry point

Every command prints one JSON document on stdout. Exit codes:
    0  success, colourable, valid
    1  not colourable, invalid profile, failed verification, no hitting clique
    2  usage, parse, consistency and hypothesis errors, exhausted node budget
"""

import argparse
import logging
import os
import sys
from typing import Any, List, Optional, Sequence

from pydantic import ValidationError

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from assignments import (
    SeparationSpec,
    identity_correspondence,
    offensive_triangles,
    validate_corr_profile,
    validate_list_profile,
)
from constructive_solver import (
    ExtensionInstance,
    HittingClique,
    PrecolouredPath,
    colour_no_offensive,
    colour_with_clique,
    extend_precoloured,
    find_hitting_clique,
)
from errors import ColouringError, VerificationFailed
from exact_solver import solve_corr, solve_list
from formats import Instance, dumps, load_bundle, serialize_bundle
from gadgets import (
    build_counterexample_g42,
    build_gadget_h,
    explain_gadget,
    verify_counterexample,
    verify_gadget_h,
    verify_not_43_choosable,
)
from generators import gen_random_assignment, gen_random_plane
from settings import DEFAULT_ENV_FILE, SolverSettings, load_solver_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _emit(doc: Any) -> None:
    print(dumps(doc))


def _spec(instance: Instance, override: Optional[Sequence[int]]) -> SeparationSpec:
    if override:
        return SeparationSpec.of(*override)
    return instance.spec or SeparationSpec.of(4, 2)


# =============================================================================
# Commands
# =============================================================================

def cmd_validate(args: argparse.Namespace, settings: SolverSettings) -> int:
    inst = load_bundle(args.bundle)
    spec = _spec(inst, args.spec)
    if inst.correspondence is not None and not args.lists_only:
        report = validate_corr_profile(inst.graph, inst.correspondence, spec)
    else:
        report = validate_list_profile(inst.graph, inst.lists, spec)
    _emit(report.model_dump())
    return EXIT_OK if report.valid else EXIT_NEGATIVE


def _solve_constructive(args: argparse.Namespace, inst: Instance) -> int:
    clique: Optional[HittingClique] = None
    if args.clique is not None:
        clique = HittingClique(tuple(args.clique)) if args.clique else find_hitting_clique(inst.graph, inst.lists)
        if clique is None:
            _emit({"status": "no-hitting-clique", "offensive_triangles": offensive_triangles(inst.graph, inst.lists)})
            return EXIT_NEGATIVE
    if clique is None:
        phi = colour_no_offensive(inst.graph, inst.lists)
    else:
        phi = colour_with_clique(inst.graph, inst.lists, clique)
    _emit({
        "status": "colourable",
        "method": "constructive",
        "clique": list(clique.vertices) if clique is not None else None,
        "witness": phi,
    })
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, settings: SolverSettings) -> int:
    inst = load_bundle(args.bundle)
    if args.constructive:
        return _solve_constructive(args, inst)
    if inst.correspondence is not None and not args.lists_only:
        outcome = solve_corr(inst.graph, inst.correspondence, budget=settings.node_budget)
    else:
        outcome = solve_list(inst.graph, inst.lists, budget=settings.node_budget)
    _emit(outcome.model_dump())
    if outcome.status == "budget-exceeded":
        return EXIT_USAGE
    return EXIT_OK if outcome.colourable else EXIT_NEGATIVE


def cmd_extend(args: argparse.Namespace, settings: SolverSettings) -> int:
    inst = load_bundle(args.bundle)
    path = PrecolouredPath.of(tuple(p) for p in args.pin) if args.pin else inst.path
    phi = extend_precoloured(ExtensionInstance(inst.graph, path, inst.lists))
    _emit({"status": "colourable", "path": [list(p) for p in path.pins], "witness": phi})
    return EXIT_OK


def cmd_offensive(args: argparse.Namespace, settings: SolverSettings) -> int:
    inst = load_bundle(args.bundle)
    _emit({"offensive_triangles": [list(t) for t in offensive_triangles(inst.graph, inst.lists)]})
    return EXIT_OK


def cmd_hitting_clique(args: argparse.Namespace, settings: SolverSettings) -> int:
    inst = load_bundle(args.bundle)
    clique = find_hitting_clique(inst.graph, inst.lists)
    _emit({"clique": list(clique.vertices) if clique is not None else None})
    return EXIT_OK if clique is not None else EXIT_NEGATIVE


def _gadget_instance(args: argparse.Namespace):
    if args.which == "h":
        return build_gadget_h(args.a, args.b)
    return build_counterexample_g42()


def cmd_gadget(args: argparse.Namespace, settings: SolverSettings) -> int:
    gadget = _gadget_instance(args)
    # H alone pins its hubs to single colours, so only the full graph is a (4,2) instance
    spec = SeparationSpec.of(4, 2) if args.which == "g42" else None
    inst = Instance(gadget.graph, gadget.assignment.base, gadget.assignment, spec)
    _emit(serialize_bundle(inst))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: SolverSettings) -> int:
    if args.which == "h":
        report = verify_gadget_h(args.a, args.b, settings.enum_limit)
        forcing = explain_gadget(build_gadget_h(args.a, args.b), settings.enum_limit)
        _emit({"gadget": report.model_dump(), "forcing": forcing.model_dump()})
        return EXIT_OK if forcing.overall_status == "PASS" else EXIT_NEGATIVE
    g42 = build_counterexample_g42()
    if args.which == "g43":
        _emit(verify_not_43_choosable(g42, settings.node_budget).model_dump())
    else:
        _emit(verify_counterexample(g42, settings.workers, settings.enum_limit, settings.node_budget).model_dump())
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, settings: SolverSettings) -> int:
    g = gen_random_plane(args.n, args.seed, triangle_free=args.triangle_free, deletions=args.deletions)
    spec = SeparationSpec.of(*args.spec)
    lists = gen_random_assignment(g, spec, args.palette, args.seed, args.forbid_offensive, settings.retry_budget)
    corr = identity_correspondence(g, lists) if args.correspondence else None
    _emit(serialize_bundle(Instance(g, lists, corr, spec)))
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planecolour",
        description="List and correspondence colouring of plane graphs with separated lists",
    )
    parser.add_argument("--config", default=DEFAULT_ENV_FILE, help="settings file (dotenv format)")
    parser.add_argument("--budget", type=int, help="exact search node budget")
    parser.add_argument("--workers", type=int,
                        help="threads for per-copy verification; the enumeration holds the GIL, so expect little speedup")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a bundle against an (ell,k) profile")
    p.add_argument("bundle")
    p.add_argument("--spec", type=int, nargs=2, metavar=("ELL", "K"))
    p.add_argument("--lists-only", action="store_true", help="ignore the correspondence")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="colour a bundle")
    p.add_argument("bundle")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--constructive", action="store_true")
    p.add_argument("--clique", nargs="*", metavar="V",
                   help="clique meeting every offensive triangle; with no vertices one is searched for")
    p.add_argument("--lists-only", action="store_true", help="ignore the correspondence")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extend", help="extend a precoloured outer path")
    p.add_argument("bundle")
    p.add_argument("--pin", nargs=2, action="append", metavar=("V", "COLOUR"))
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("offensive", help="list offensive triangles")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_offensive)

    p = sub.add_parser("hitting-clique", help="find a clique meeting every offensive triangle")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_hitting_clique)

    for name, choices, helptext in (
        ("gadget", ("h", "g42"), "print a gadget instance bundle"),
        ("verify", ("h", "g42", "g43"), "exhaustively verify a gadget"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("which", choices=choices)
        p.add_argument("--a", default="7")
        p.add_argument("--b", default="11")
        p.set_defaults(func=cmd_gadget if name == "gadget" else cmd_verify)

    p = sub.add_parser("gen", help="random instance bundle")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--triangle-free", action="store_true")
    p.add_argument("--deletions", type=int, default=0)
    p.add_argument("--spec", type=int, nargs=2, default=[4, 2], metavar=("ELL", "K"))
    p.add_argument("--palette", type=int)
    p.add_argument("--forbid-offensive", action="store_true")
    p.add_argument("--correspondence", action="store_true", help="also emit the identity correspondence")
    p.set_defaults(func=cmd_gen)
    return parser


def _error_code(exc: ColouringError) -> int:
    if isinstance(exc, VerificationFailed):
        return EXIT_NEGATIVE
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_solver_settings(args.config).with_overrides(
            node_budget=args.budget, workers=args.workers,
            log_level=args.log_level.upper() if args.log_level else None,
        )
    except ValidationError as e:
        parser.error(f"bad option value: {e.errors()[0]['msg']}")
    if not isinstance(logging.getLevelName(settings.log_level), int):
        parser.error(f"unknown log level {settings.log_level}")
    logging.basicConfig(
        level=settings.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )
    try:
        return args.func(args, settings)
    except ColouringError as e:
        logger.error(f"❌ {e.code}: {e.message}")
        _emit(e.to_dict())
        return _error_code(e)
    except ValidationError as e:
        parser.error(f"bad parameters: {e.errors()[0]['msg']}")


if __name__ == "__main__":
    sys.exit(main())
