"""Command-line surface tying the library together.

Every verb maps to exactly one library operation; inputs and outputs use the
plain-text encodings of the owning modules.  Exit codes distinguish three
cases: 0 for success, 1 for a mathematical failure (a check that ran fine but
answered "no"), 2 for an input or usage error.  All output is deterministic:
terms are emitted sorted by canonical key, and ``--jobs`` never changes bytes.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .complexes import (
    GraphSum,
    cocycle_kernel,
    differential,
    format_graph_sum,
    is_cocycle,
    parse_graph_sum,
)
from .graphs import ParseError, parse_graph, significant_lines
from .multivectors import (
    Multivector,
    evaluate_orgraph,
    format_poisson,
    parse_poisson,
    schouten,
    verify_corollary,
)
from .orient import (
    SkewSymmetryError,
    crosscheck_rules,
    fold_sink_swap,
    format_orgraph,
    format_orgraph_sum,
    normalize_orgraph,
    orient,
    parse_orgraph,
    parse_orgraph_sum,
)

__all__ = ["main", "FORMAT_VERSION"]

FORMAT_VERSION = "gckit-fmt/1"

_EXIT_OK = 0
_EXIT_FALSE = 1
_EXIT_INPUT = 2


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        reason = exc.strerror or str(exc)
        raise ParseError(f"cannot read {path}: {reason}") from None


def _emit(text: str) -> None:
    """Write ``text`` with exactly one trailing newline; nothing when empty."""
    if text:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_graph_or_sum(text: str) -> GraphSum:
    """Accept either a bare graph file or a graph-sum file.

    A bare graph starts with the ``g <n> <m>`` header; anything else is read
    as a sum (the empty file is the zero sum).
    """
    for _, line in significant_lines(text):
        if line.split()[0] == "g":
            total = GraphSum()
            total.add_graph(parse_graph(text), Fraction(1))
            return total
        break
    return parse_graph_sum(text)


def _load_poisson(path: str, dim: int | None) -> Multivector:
    p = parse_poisson(_read_text(path))
    if dim is not None and p.dimension != dim:
        raise ParseError(
            f"{path}: declared dimension {p.dimension} does not match --dim {dim}"
        )
    return p


# ---------------------------------------------------------------------------
# Verb handlers (each returns the process exit code)


def _cmd_d(args: argparse.Namespace) -> int:
    total = _parse_graph_or_sum(_read_text(args.input))
    _emit(format_graph_sum(differential(total)))
    return _EXIT_OK


def _cmd_cocycle(args: argparse.Namespace) -> int:
    total = _parse_graph_or_sum(_read_text(args.input))
    if is_cocycle(total):
        print("cocycle: yes")
        return _EXIT_OK
    print("cocycle: no")
    return _EXIT_FALSE


def _cmd_kernel(args: argparse.Namespace) -> int:
    if args.vertices < 1 or args.edges < 0:
        raise ParseError("--vertices must be >= 1 and --edges >= 0")
    basis = cocycle_kernel(args.vertices, args.edges)
    lines = [f"dimension: {len(basis)}"]
    for index, vector in enumerate(basis, start=1):
        lines.append(f"# basis {index}")
        lines.append(format_graph_sum(vector))
    _emit("\n".join(lines))
    return _EXIT_OK


def _cmd_orient(args: argparse.Namespace) -> int:
    total = orient(_parse_graph_or_sum(_read_text(args.input)))
    if args.reduce:
        total = total.reduce()
    _emit(format_orgraph_sum(total))
    return _EXIT_OK


def _cmd_normalize(args: argparse.Namespace) -> int:
    g = parse_orgraph(_read_text(args.input))
    norm = normalize_orgraph(g)
    if norm.is_zero:
        print("note: orgraph normalizes to zero", file=sys.stderr)
        return _EXIT_OK
    print(f"{norm.sign} * {format_orgraph(norm.orgraph)}")
    return _EXIT_OK


def _cmd_rules_check(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.input))
    report = crosscheck_rules(g)
    _emit(report.format())
    return _EXIT_OK if report.consistent else _EXIT_FALSE


def _cmd_eval(args: argparse.Namespace) -> int:
    p = _load_poisson(args.poisson, args.dim)
    total = parse_orgraph_sum(_read_text(args.input))
    _emit(format_poisson(evaluate_orgraph(total, p)))
    return _EXIT_OK


def _cmd_schouten(args: argparse.Namespace) -> int:
    f = parse_poisson(_read_text(args.f))
    g = parse_poisson(_read_text(args.g))
    if f.dimension != g.dimension:
        raise ParseError(
            f"dimension mismatch: {args.f} has dim {f.dimension},"
            f" {args.g} has dim {g.dimension}"
        )
    _emit(format_poisson(schouten(f, g)))
    return _EXIT_OK


def _cmd_verify_corollary(args: argparse.Namespace) -> int:
    gamma = _parse_graph_or_sum(_read_text(args.graph))
    p = _load_poisson(args.poisson, args.dim)
    if verify_corollary(gamma, p):
        print("corollary: yes")
        return _EXIT_OK
    print("corollary: no")
    return _EXIT_FALSE


def _cmd_fold(args: argparse.Namespace) -> int:
    total = fold_sink_swap(parse_orgraph_sum(_read_text(args.input)))
    _emit(format_orgraph_sum(total))
    return _EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _add_jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        metavar="N",
        help="worker budget hint; affects speed only, never output bytes",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gckit",
        description=(
            "Exact calculator for the unoriented graph complex, the"
            " orientation morphism, and oriented-graph flows on polynomial"
            " Poisson bivectors."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=FORMAT_VERSION
    )
    sub = parser.add_subparsers(dest="verb", metavar="verb", required=True)

    p = sub.add_parser("d", help="differential of a graph or graph sum")
    p.add_argument("input", help="graph or graph-sum file")
    p.set_defaults(handler=_cmd_d)

    p = sub.add_parser("cocycle", help="test whether the differential vanishes")
    p.add_argument("input", help="graph or graph-sum file")
    p.set_defaults(handler=_cmd_cocycle)

    p = sub.add_parser(
        "kernel", help="basis of the cocycle space in a fixed bigrading"
    )
    p.add_argument("--vertices", type=int, required=True, metavar="N")
    p.add_argument("--edges", type=int, required=True, metavar="M")
    _add_jobs(p)
    p.set_defaults(handler=_cmd_kernel)

    p = sub.add_parser("orient", help="orientation morphism of a graph or sum")
    p.add_argument(
        "--reduce",
        action="store_true",
        help="divide all coefficients by their positive rational content",
    )
    _add_jobs(p)
    p.add_argument("input", help="graph or graph-sum file")
    p.set_defaults(handler=_cmd_orient)

    p = sub.add_parser("normalize", help="canonical form and sign of one orgraph")
    p.add_argument("input", help="orgraph file (one 'o ...' line)")
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser(
        "rules-check",
        help="cross-check the sign rules against witness parities",
    )
    _add_jobs(p)
    p.add_argument("input", help="graph file")
    p.set_defaults(handler=_cmd_rules_check)

    p = sub.add_parser("eval", help="evaluate an orgraph sum on a bivector")
    p.add_argument("--poisson", required=True, metavar="FILE")
    p.add_argument("--dim", type=int, metavar="D",
                   help="expected dimension of the bivector file")
    _add_jobs(p)
    p.add_argument("input", help="orgraph-sum file")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("schouten", help="Schouten bracket of two multivectors")
    p.add_argument("f", help="multivector file")
    p.add_argument("g", help="multivector file")
    p.set_defaults(handler=_cmd_schouten)

    p = sub.add_parser(
        "verify-corollary",
        help="check the differential-to-bracket identity on a bivector",
    )
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--poisson", required=True, metavar="FILE")
    p.add_argument("--dim", type=int, metavar="D",
                   help="expected dimension of the bivector file")
    _add_jobs(p)
    p.set_defaults(handler=_cmd_verify_corollary)

    p = sub.add_parser(
        "fold", help="collapse sink-swapped pairs of an orgraph sum"
    )
    p.add_argument("input", help="orgraph-sum file")
    p.set_defaults(handler=_cmd_fold)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SkewSymmetryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_FALSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
