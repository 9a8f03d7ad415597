"""CLI for graph-decomp."""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from graph_decomp import __version__
from graph_decomp.coloring import chromatic_index_color, overfull_criterion
from graph_decomp.cycles import (
    decompose_cycles_directed,
    decompose_cycles_plus_matching,
    decompose_cycles_undirected,
)
from graph_decomp.errors import DecompositionError, UsageError
from graph_decomp.graph import Digraph, Graph, degree_profile
from graph_decomp.graph_io import (
    format_coloring,
    format_decomposition,
    format_graph,
    load_coloring,
    load_decomposition,
    load_graph,
    load_pairs,
    load_params,
)
from graph_decomp.hamilton import HamiltonEngine
from graph_decomp.models import Decomposition, DecompositionKind, PairList
from graph_decomp.orientation import eulerian_orientation_quasirandom
from graph_decomp.paths import (
    arboricity_regular_large,
    decompose_linear_forests,
    decompose_paths,
)
from graph_decomp.randgen import (
    EXACT_LIMIT,
    gen_gnp,
    gnp_diagnostics,
    lower_regularity_check,
    robust_expander_check,
)
from graph_decomp.sweep import experiment_sweep, format_sweep_jsonl, format_sweep_text
from graph_decomp.verify import verify

logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 2
EXIT_EXTRA_COLOR = 5


def setup_logging(debug: bool = False, verbose: bool = False):
    """Setup logging configuration."""
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr
    )


def output(fmt: str, data: dict, text: str):
    if fmt == "json":
        print(json.dumps(data, indent=2))
    elif fmt == "text":
        print(text)
    elif fmt == "none":
        pass
    else:
        raise ValueError(f"Unknown output format: {fmt}")


def output_error(message: str, output_format: str = "text", **extra_data):
    """Output error message to stderr.

    Args:
        message: Error message
        output_format: Output format (json, text, none)
        **extra_data: Additional fields to include in JSON output
    """
    if output_format == "json":
        data = {"success": False, "error": message}
        data.update(extra_data)
        print(json.dumps(data, indent=2), file=sys.stderr)
    elif output_format == "text":
        print(f"Error: {message}", file=sys.stderr)


def _fail(error: DecompositionError, args) -> int:
    """Report a package error and map it to its exit code."""
    if error.exit_code == 3:
        logger.error(f"hypothesis violated: {error}")
    extra = {"error_type": type(error).__name__}
    for name in ("reason", "condition", "line"):
        value = getattr(error, name, None)
        if value is not None:
            extra[name] = value
    output_error(str(error), args.output, **extra)
    return error.exit_code


def _rng(args) -> np.random.Generator:
    return np.random.default_rng(args.seed)


def _params(args):
    return load_params(args.params, args.p)


def _engine(params, rng) -> HamiltonEngine:
    return HamiltonEngine(rng, params.retry_budget, params.backtrack_depth)


def _undirected(graph, verb: str) -> Graph:
    if isinstance(graph, Digraph):
        raise UsageError(f"{verb} needs an undirected graph")
    return graph


def _emit(args, body: str) -> bool:
    """Write body to --out if given; True when it was written to a file."""
    if args.out:
        Path(args.out).write_text(body)
        return True
    return False


def _finish_decomposition(args, graph, decomposition: Decomposition, label: str) -> int:
    """Verify, write and report a decomposition; exit 2 if verification fails."""
    report = verify(graph, decomposition)
    body = format_decomposition(decomposition)
    written = _emit(args, body)
    data = {
        "success": report.ok,
        "kind": decomposition.kind.value,
        "count": decomposition.count,
        "expected": report.expected_count,
        "best_effort": decomposition.best_effort,
        "matching_size": len(decomposition.matching),
        "report": report.to_dict(),
    }
    if args.out:
        data["out"] = str(args.out)
    lines = [f"{decomposition.count} {label} (expected {report.expected_count})"]
    if decomposition.matching:
        lines[0] += f" plus a matching of {len(decomposition.matching)} edges"
    if decomposition.best_effort:
        lines.append("best effort: input outside the regime, count not guaranteed")
    lines.append("verified" if report.ok else "VERIFICATION FAILED")
    lines.extend(f"  {v.invariant}: {v.witness}" for v in report.violations)
    if not written:
        lines.append(body.rstrip("\n"))
    output(args.output, data, "\n".join(lines))
    return 0 if report.ok else EXIT_VERIFY_FAILED


def cmd_gen(args):
    """Generate a seeded G(n, p)."""
    try:
        if args.p is None:
            raise UsageError("gen needs --p")
        graph = gen_gnp(args.n, args.p, args.seed)
    except DecompositionError as e:
        return _fail(e, args)
    body = format_graph(graph)
    written = _emit(args, body)
    data = {"n": graph.n, "m": graph.edge_count, "p": args.p, "seed": args.seed}
    if written:
        data["out"] = str(args.out)
    text = f"G({graph.n}, {args.p}) seed {args.seed}: {graph.edge_count} edges"
    output(args.output, data, text if written else body.rstrip("\n"))
    return 0


def cmd_diag(args):
    """Degree and quasirandomness diagnostics."""
    try:
        graph = _undirected(load_graph(args.input), "diag")
        params, _ = _params(args)
        diag = gnp_diagnostics(graph, params.p)
        data = asdict(diag)
        mode = "exact" if args.exact and graph.n <= EXACT_LIMIT else "sampled"
        regular, witness = lower_regularity_check(
            graph, params.p, params.eps, mode=mode, rng=_rng(args)
        )
        data["lower_regular"] = regular
        data["regularity_mode"] = mode
        if witness is not None:
            data["regularity_witness"] = {"S": witness[0], "T": witness[1]}
        if graph.n <= EXACT_LIMIT:
            expander, members = robust_expander_check(graph, params.nu, params.tau)
            data["robust_expander"] = expander
            if members is not None:
                data["expander_witness"] = members
    except DecompositionError as e:
        return _fail(e, args)

    lines = [
        f"n={diag.n} e={diag.edge_count} Δ={diag.max_degree} δ={diag.min_degree}",
        f"spread {diag.spread} (bound {diag.spread_bound:.1f}, {'ok' if diag.spread_ok else 'exceeded'})",
        f"unique maximum degree: {'yes' if diag.unique_max else 'no'}",
        f"odd-degree vertices: {diag.odd_count} ({diag.odd_fraction:.2f})",
        f"lower-({params.p}, {params.eps})-regular ({mode}): {'yes' if regular else 'no'}",
    ]
    if "robust_expander" in data:
        lines.append(
            f"robust ({params.nu}, {params.tau})-expander: {'yes' if data['robust_expander'] else 'no'}"
        )
    output(args.output, data, "\n".join(lines))
    return 0


def cmd_cycles(args):
    """Cycle decomposition, with a matching when some degrees are odd."""
    try:
        graph = load_graph(args.input)
        params, config = _params(args)
        rng = _rng(args)
        engine = _engine(params, rng)
        pairs = load_pairs(args.pairs) if args.pairs else PairList()
        strict = args.strict
        if isinstance(graph, Digraph):
            result = decompose_cycles_directed(graph, pairs, params, rng, engine, strict)
        elif degree_profile(graph).odd_count:
            if len(pairs):
                raise UsageError("pairs are only supported when every degree is even")
            result = decompose_cycles_plus_matching(graph, params, rng, engine, strict)
        else:
            result = decompose_cycles_undirected(
                graph, pairs, params, rng, engine, strict, route=args.route, config=config
            )
    except DecompositionError as e:
        return _fail(e, args)
    return _finish_decomposition(args, graph, result, "cycles")


def cmd_paths(args):
    """Path decomposition."""
    try:
        graph = _undirected(load_graph(args.input), "paths")
        params, config = _params(args)
        rng = _rng(args)
        result = decompose_paths(graph, params, rng, _engine(params, rng), config)
    except DecompositionError as e:
        return _fail(e, args)
    return _finish_decomposition(args, graph, result, "paths")


def cmd_forests(args):
    """Linear forest decomposition."""
    try:
        graph = _undirected(load_graph(args.input), "forests")
        params, config = _params(args)
        rng = _rng(args)
        result = decompose_linear_forests(graph, params, rng, _engine(params, rng), config)
    except DecompositionError as e:
        return _fail(e, args)
    return _finish_decomposition(args, graph, result, "linear forests")


def cmd_arboricity(args):
    """Linear forests of a dense regular graph."""
    try:
        graph = _undirected(load_graph(args.input), "arboricity")
        params, _ = _params(args)
        rng = _rng(args)
        result = arboricity_regular_large(graph, rng, _engine(params, rng))
    except DecompositionError as e:
        return _fail(e, args)
    return _finish_decomposition(args, graph, result, "linear forests")


def cmd_hamdec(args):
    """Hamilton decomposition of an even-regular graph or a regular digraph."""
    try:
        graph = load_graph(args.input)
        params, _ = _params(args)
        rng = _rng(args)
        engine = _engine(params, rng)
        directed = isinstance(graph, Digraph)
        if directed:
            cycles = engine.hamilton_decompose_digraph(graph)
        else:
            cycles = engine.hamilton_decompose(graph)
    except DecompositionError as e:
        return _fail(e, args)

    parts = []
    for cycle in cycles:
        closed = list(zip(cycle, cycle[1:] + cycle[:1], strict=True))
        parts.append(frozenset(closed if directed else (tuple(sorted(e)) for e in closed)))
    result = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=tuple(parts),
        n=graph.n,
        directed=directed,
        sequences=tuple(tuple(c) for c in cycles),
    )
    return _finish_decomposition(args, graph, result, "Hamilton cycles")


def cmd_orient(args):
    """Balanced orientation of an even-degree graph."""
    try:
        graph = _undirected(load_graph(args.input), "orient")
        params, config = _params(args)
        digraph = eulerian_orientation_quasirandom(
            graph, params, config, _rng(args), strict=args.strict
        )
    except DecompositionError as e:
        return _fail(e, args)
    body = format_graph(digraph)
    written = _emit(args, body)
    balanced = all(
        digraph.in_degree(v) == digraph.out_degree(v) for v in digraph.vertices
    )
    data = {"success": balanced, "n": digraph.n, "arcs": digraph.edge_count}
    if written:
        data["out"] = str(args.out)
    text = f"oriented {digraph.edge_count} edges, {'balanced' if balanced else 'UNBALANCED'}"
    output(args.output, data, text if written else f"{text}\n{body.rstrip()}")
    return 0 if balanced else EXIT_VERIFY_FAILED


def cmd_color(args):
    """Edge colouring with Δ colours where possible."""
    try:
        graph = _undirected(load_graph(args.input), "color")
        params, _ = _params(args)
        rng = _rng(args)
        verdict = overfull_criterion(graph)
        coloring = chromatic_index_color(graph, params, rng, _engine(params, rng))
    except DecompositionError as e:
        return _fail(e, args)

    delta = degree_profile(graph).max_degree
    report = verify(graph, coloring.as_decomposition())
    body = format_coloring(coloring)
    written = _emit(args, body)
    data = {
        "success": report.ok,
        "colors": coloring.num_colors,
        "max_degree": delta,
        "class": verdict.value,
        "method": coloring.method,
        "trusted": coloring.trusted,
        "report": report.to_dict(),
    }
    if written:
        data["out"] = str(args.out)
    lines = [
        f"{coloring.num_colors} colours (Δ={delta}, {verdict.value}, method {coloring.method})",
        "verified" if report.ok else "VERIFICATION FAILED",
    ]
    if not coloring.trusted:
        lines.append("input fails the regime diagnostics; the class decision is untrusted")
    if not written:
        lines.append(body.rstrip("\n"))
    output(args.output, data, "\n".join(lines))
    if not report.ok:
        return EXIT_VERIFY_FAILED
    return EXIT_EXTRA_COLOR if coloring.num_colors > delta else 0


def cmd_verify(args):
    """Check a decomposition or colouring file against a graph."""
    try:
        graph = load_graph(args.input)
        if bool(args.decomposition) == bool(args.coloring):
            raise UsageError("verify needs exactly one of --decomposition or --coloring")
        if args.decomposition:
            decomposition = load_decomposition(args.decomposition)
        else:
            decomposition = load_coloring(args.coloring, graph.n).as_decomposition()
    except DecompositionError as e:
        return _fail(e, args)

    report = verify(graph, decomposition)
    lines = [
        f"{report.kind.value}: {report.actual_count} parts, expected {report.expected_count}",
        "ok" if report.ok else "FAILED",
    ]
    lines.extend(f"  {v.invariant}: {v.witness}" for v in report.violations)
    output(args.output, report.to_dict(), "\n".join(lines))
    return 0 if report.ok else EXIT_VERIFY_FAILED


def _int_list(text: str) -> list[int]:
    """Comma list with optional ranges: "30,60" or "0-19"."""
    result = []
    for chunk in text.split(","):
        low, sep, high = chunk.partition("-")
        try:
            if sep:
                result.extend(range(int(low), int(high) + 1))
            else:
                result.append(int(chunk))
        except ValueError:
            raise UsageError(f"cannot read {chunk!r} as an integer or range") from None
    return result


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a list of numbers") from None


def cmd_sweep(args):
    """Run the G(n, p) experiment grid."""
    try:
        params, _ = _params(args)
        result = experiment_sweep(
            ns=_int_list(args.ns),
            ps=_float_list(args.ps),
            seeds=_int_list(args.seeds),
            tasks=args.tasks.split(",") if args.tasks else None,
            params=params,
            workers=args.workers,
        )
    except DecompositionError as e:
        return _fail(e, args)

    if args.out:
        formatter = format_sweep_jsonl if args.jsonl else format_sweep_text
        Path(args.out).write_text(formatter(result, timings=False) + "\n")
    data = {
        "rows": [asdict(r) for r in result.rows],
        "summaries": [
            asdict(s) | {"success_rate": s.success_rate} for s in result.summaries
        ],
    }
    text = format_sweep_jsonl(result) if args.jsonl else format_sweep_text(result)
    output(args.output, data, text)
    return 0


def main():
    """Main CLI entry point."""
    parser = argparse.ArgumentParser(
        prog="graph-decomp",
        description="Cycle, path, linear forest and edge-colouring decompositions of dense graphs",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Common arguments for all commands
    def add_common_args(subparser):
        subparser.add_argument(
            "--output",
            choices=["json", "text", "none"],
            default="text",
            help="Output format (default: text)",
        )
        subparser.add_argument(
            "--debug", action="store_true", help="Enable debug logging"
        )
        subparser.add_argument(
            "--verbose", action="store_true", help="Log progress at info level"
        )
        subparser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
        subparser.add_argument("--params", help="JSON parameter profile")
        subparser.add_argument("--p", type=float, help="Edge density, overrides the profile")
        subparser.add_argument("--out", help="Write the result file here")
        subparser.add_argument(
            "--strict",
            action="store_true",
            help="Fail instead of falling back when an input leaves the regime",
        )

    def add_input(subparser):
        subparser.add_argument("--in", dest="input", required=True, help="Edge list file")

    gen_parser = subparsers.add_parser("gen", help="Generate a seeded G(n, p)")
    add_common_args(gen_parser)
    gen_parser.add_argument("--n", type=int, required=True, help="Number of vertices")

    diag_parser = subparsers.add_parser("diag", help="Quasirandomness diagnostics")
    add_common_args(diag_parser)
    add_input(diag_parser)
    diag_parser.add_argument(
        "--exact",
        action="store_true",
        help=f"Exhaustive regularity check (n <= {EXACT_LIMIT})",
    )

    cycles_parser = subparsers.add_parser("cycles", help="Cycles (plus a matching)")
    add_common_args(cycles_parser)
    add_input(cycles_parser)
    cycles_parser.add_argument("--pairs", help="File of vertex pairs to keep together")
    cycles_parser.add_argument(
        "--route",
        choices=["direct", "oriented"],
        default="direct",
        help="Decompose the graph directly or via a balanced orientation",
    )

    for verb, help_text in (
        ("paths", "Path decomposition"),
        ("forests", "Linear forest decomposition"),
        ("arboricity", "Linear forests of a dense regular graph"),
        ("hamdec", "Hamilton decomposition"),
        ("orient", "Balanced orientation"),
        ("color", "Edge colouring"),
    ):
        verb_parser = subparsers.add_parser(verb, help=help_text)
        add_common_args(verb_parser)
        add_input(verb_parser)

    verify_parser = subparsers.add_parser("verify", help="Verify a result file")
    add_common_args(verify_parser)
    add_input(verify_parser)
    verify_parser.add_argument("--decomposition", help="Decomposition file")
    verify_parser.add_argument("--coloring", help="Colouring file")

    sweep_parser = subparsers.add_parser("sweep", help="G(n, p) experiment grid")
    add_common_args(sweep_parser)
    sweep_parser.add_argument("--ns", default="30,60,100", help="Orders, e.g. 30,60")
    sweep_parser.add_argument("--ps", default="0.3,0.5,0.7", help="Densities, e.g. 0.3,0.7")
    sweep_parser.add_argument("--seeds", default="0-19", help="Seeds, e.g. 0-19 or 1,2,3")
    sweep_parser.add_argument("--tasks", help="Subset of cycles,paths,forests,color")
    sweep_parser.add_argument("--workers", type=int, default=1, help="Worker threads")
    sweep_parser.add_argument("--jsonl", action="store_true", help="JSON lines instead of a table")

    args = parser.parse_args()

    # Setup logging
    setup_logging(
        debug=args.debug if hasattr(args, "debug") else False,
        verbose=args.verbose if hasattr(args, "verbose") else False,
    )

    # Execute command
    commands = {
        "gen": cmd_gen,
        "diag": cmd_diag,
        "cycles": cmd_cycles,
        "paths": cmd_paths,
        "forests": cmd_forests,
        "arboricity": cmd_arboricity,
        "hamdec": cmd_hamdec,
        "orient": cmd_orient,
        "color": cmd_color,
        "verify": cmd_verify,
        "sweep": cmd_sweep,
    }
    if args.command in commands:
        return commands[args.command](args)
    parser.print_help()
    return 1


if __name__ == "__main__":
    sys.exit(main())
