"""
Alon-Tarsi Certificate Toolkit - Command Line
Entry point with subcommands for generating graphs, emitting and verifying
certificates, and running the brute-force oracles.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource cap exceeded.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__
from .certify.at_core import EulerianCount, Orientation, at_number, diff_coeff, diff_enum
from .certify.at_planar import Matching, build_certificate, certificate_budget
from .certify.coloring import sampled_choosability_check
from .certify.verify import check_certificate
from .config import get_settings, override_settings
from .exceptions import (
    CertificateViolation,
    EmbeddingError,
    InvalidInputError,
    NotTwoConnectedError,
    OracleTooLargeError,
    PreconditionError,
)
from .graph.generators import KINDS, NAMED_GRAPHS, generate
from .schemas import EulerianCountFile, GraphFile, OrientationFile
from .services.export_service import STDIO, get_export_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_TOO_LARGE = 3


def _emit_json(payload: Dict, path: Optional[str] = None) -> None:
    get_export_service().write_text(json.dumps(payload, indent=2) + "\n", path)


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(args.kind, n=args.n, seed=args.seed, name=args.name)
    metadata = {"kind": args.kind, "n": args.n, "seed": args.seed}
    if args.name:
        metadata["name"] = args.name
    logger.info(f"Generated {args.kind}: |V|={len(g.vertices)}, |E|={len(g.edges)}")
    exporter = get_export_service()
    exporter.save_model(GraphFile.from_plane_graph(g, metadata), args.output)
    if args.dot:
        exporter.write_text(exporter.graph_to_dot(g), args.dot)
    return EXIT_OK


def _certify(args: argparse.Namespace, kind: str) -> int:
    exporter = get_export_service()
    g, graph_file = exporter.load_graph(args.graph)
    certificate = build_certificate(g, kind)
    if not args.no_embed_graph:
        certificate = certificate.model_copy(update={"graph": graph_file})
    exporter.save_model(certificate, args.output)
    if args.dot:
        exporter.write_text(exporter.certificate_to_dot(certificate, g), args.dot)
    return EXIT_OK


def cmd_at5(args: argparse.Namespace) -> int:
    return _certify(args, "AT5")


def cmd_at4m(args: argparse.Namespace) -> int:
    return _certify(args, "AT4M")


def _graph_and_certificate(paths: Sequence[str]) -> tuple:
    """``[graph, cert]``, or a single certificate carrying its own graph (``-`` by default)."""
    exporter = get_export_service()
    if len(paths) > 2:
        raise InvalidInputError("Expected at most a graph file and a certificate file")
    if len(paths) == 2:
        g, _ = exporter.load_graph(paths[0])
        return g, exporter.load_certificate(paths[1])
    certificate = exporter.load_certificate(paths[0] if paths else STDIO)
    if certificate.graph is None:
        raise InvalidInputError("Certificate does not embed its graph; pass the graph file too")
    return certificate.graph.to_plane_graph(), certificate


def cmd_verify(args: argparse.Namespace) -> int:
    g, certificate = _graph_and_certificate(args.files)
    verdict = check_certificate(certificate, g)
    get_export_service().save_model(verdict, args.output)
    if not verdict.ok:
        logger.error(f"Verification failed: {', '.join(verdict.failures)}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    exporter = get_export_service()
    g, _ = exporter.load_graph(args.graph)
    arcs = exporter.load_model(args.orientation, OrientationFile).arcs
    orientation = Orientation(g.graph, frozenset((t, h) for t, h in arcs))
    result: Dict = {}
    if args.oracle in ("enum", "both"):
        count: EulerianCount = diff_enum(orientation)
        result["enum"] = EulerianCountFile(even=count.even_count, odd=count.odd_count, diff=count.diff).model_dump()
    if args.oracle in ("coeff", "both"):
        result["coeff"] = diff_coeff(orientation)
    _emit_json(result, args.output)
    if args.oracle == "both" and result["enum"]["diff"] != result["coeff"]:
        logger.error(f"Oracles disagree: enumeration {result['enum']['diff']}, coefficient {result['coeff']}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_atnum(args: argparse.Namespace) -> int:
    g, _ = get_export_service().load_graph(args.graph)
    value = at_number(g.graph)
    _emit_json({"at_number": value, "vertices": len(g.vertices), "edges": len(g.edges)}, args.output)
    return EXIT_OK


def cmd_color_sample(args: argparse.Namespace) -> int:
    g, certificate = _graph_and_certificate(args.files)
    matching = Matching(certificate.matching) if certificate.kind == "AT4M" else None
    budget = certificate_budget(g, certificate.kind, certificate.e1, matching)
    target = g.graph.remove_edges(matching.edges) if matching is not None else g.graph
    report = sampled_choosability_check(target, budget, samples=args.samples, seed=args.seed)
    get_export_service().save_model(report, args.output)
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atcert",
        description="Certifying Alon-Tarsi orientations for plane graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Logging level (default from ATCERT_LOG_LEVEL)")
    parser.add_argument("--enum-arc-cap", type=int, default=None, help="Override the enumeration arc cap")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a plane graph")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--n", type=int, default=None, help="Order of the parametric families")
    gen.add_argument("--seed", type=int, default=0, help="Seed for stacked triangulations")
    gen.add_argument("--name", choices=NAMED_GRAPHS, default=None, help="Name for kind 'named'")
    gen.add_argument("-o", "--output", default=STDIO)
    gen.add_argument("--dot", default=None, help="Also write an undirected DOT rendering here")
    gen.set_defaults(handler=cmd_gen)

    for name, handler, summary in (
        ("at5", cmd_at5, "Emit an AT <= 5 certificate"),
        ("at4m", cmd_at4m, "Emit a matching AT <= 4 certificate"),
    ):
        cert = sub.add_parser(name, help=summary)
        cert.add_argument("graph", nargs="?", default=STDIO)
        cert.add_argument("-o", "--output", default=STDIO)
        cert.add_argument("--dot", default=None, help="Also write a DOT rendering here")
        cert.add_argument("--no-embed-graph", action="store_true", help="Do not copy the graph into the certificate")
        cert.set_defaults(handler=handler)

    verify = sub.add_parser("verify", help="Verify a certificate: verify [graph.json] cert.json")
    verify.add_argument("files", nargs="*")
    verify.add_argument("-o", "--output", default=STDIO)
    verify.set_defaults(handler=cmd_verify)

    diff = sub.add_parser("diff", help="Compute diff(D) of an orientation")
    diff.add_argument("graph")
    diff.add_argument("orientation")
    diff.add_argument("--oracle", choices=("enum", "coeff", "both"), default="both")
    diff.add_argument("-o", "--output", default=STDIO)
    diff.set_defaults(handler=cmd_diff)

    atnum = sub.add_parser("atnum", help="Brute-force Alon-Tarsi number")
    atnum.add_argument("graph", nargs="?", default=STDIO)
    atnum.add_argument("-o", "--output", default=STDIO)
    atnum.set_defaults(handler=cmd_atnum)

    color = sub.add_parser("color-sample", help="Sample list assignments sized by a certificate budget")
    color.add_argument("files", nargs="*")
    color.add_argument("--samples", type=int, default=200)
    color.add_argument("--seed", type=int, default=0)
    color.add_argument("-o", "--output", default=STDIO)
    color.set_defaults(handler=cmd_color_sample)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


_EXIT_CODES: Dict[type, int] = {
    CertificateViolation: EXIT_FAILED,
    InvalidInputError: EXIT_INVALID,
    EmbeddingError: EXIT_INVALID,
    NotTwoConnectedError: EXIT_INVALID,
    PreconditionError: EXIT_INVALID,
    ValidationError: EXIT_INVALID,
    json.JSONDecodeError: EXIT_INVALID,
    OracleTooLargeError: EXIT_TOO_LARGE,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.log_level)
    if args.enum_arc_cap is not None:
        override_settings(enum_arc_cap=args.enum_arc_cap)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except tuple(_EXIT_CODES) as exc:
        code = next(c for kind, c in _EXIT_CODES.items() if isinstance(exc, kind))
        logger.error(f"{args.command} failed ({type(exc).__name__}): {exc}")
        return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
