# bench/cli.py
"""
graphmat command line: generate, convert, run, scale-sweep, list
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from time import perf_counter
from typing import List, Optional, Sequence

from algorithms import ALL_ALGORITHMS, ENABLED_ALGORITHMS, get_algorithm
from config.settings import LOG_LEVELS, get_settings
from core.dcsc import build_graph
from core.errors import GraphBuildError, GraphMatError, InputDataError, UsageError, VertexRangeError
from core.sparse import SPARSE_VECTOR_KINDS
from core.types import EdgeList
from graphio import (
    FORMATS,
    RMAT_PRESETS,
    PreprocessMode,
    RmatParams,
    bipartite_generate,
    load_graph,
    preprocess,
    rmat_generate,
    save_graph,
)
from utils.logging_config import setup_logging

from .report import RunReport, results_checksum, system_facts, write_report, write_results

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_RUNTIME = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _thread_list(text: str) -> List[int]:
    try:
        counts = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad thread list {text!r}") from e
    if not counts or min(counts) < 1:
        raise argparse.ArgumentTypeError(f"thread counts must be >= 1, got {text!r}")
    return counts


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("algorithm", help="algorithm name, see `graphmat list`")
    parser.add_argument("--graph", required=True, help="input graph path")
    parser.add_argument("--format", choices=FORMATS, help="input format (default: by suffix)")
    parser.add_argument("--weighted", action="store_true", help="edge list carries weights")
    parser.add_argument("--partitions-per-thread", type=int, help="row partitions per thread")
    parser.add_argument("--max-iters", type=int, help="superstep / iteration budget")
    parser.add_argument("--source", type=int, help="1-based source vertex (bfs, sssp)")
    parser.add_argument("--damping", type=float, help="PageRank random-surf probability r")
    parser.add_argument("--tolerance", type=float, help="PageRank early-stop threshold")
    parser.add_argument("--k", type=int, help="CF latent dimension")
    parser.add_argument("--gamma", type=float, help="CF step size")
    parser.add_argument("--lambda", dest="lam", type=float, help="CF regularization")
    parser.add_argument("--schedule", choices=("simultaneous", "alternating"))
    parser.add_argument("--auto-gamma", action="store_true", help="halve gamma until stable")
    parser.add_argument("--users", type=int, help="CF: ids below this are users")
    parser.add_argument("--seed", type=int, help="CF initialization seed")
    parser.add_argument("--sparse-vector", choices=SPARSE_VECTOR_KINDS)
    parser.add_argument(
        "--nondeterministic", action="store_true", help="unordered reduction (faster)"
    )
    parser.add_argument("--out", help="results file (TSV)")
    parser.add_argument("--report", help="report file (key=value)")


def build_parser() -> CliParser:
    """Argument parser for every subcommand"""
    parser = CliParser(prog="graphmat", description="Vertex programs on sparse matrices")
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, type=str.upper, help="override LOG_LEVEL"
    )
    parser.add_argument("--debug", action="store_true", help="per-superstep engine logging")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="synthetic graphs")
    kinds = generate.add_subparsers(dest="kind", required=True)

    rmat = kinds.add_parser("rmat", help="recursive-matrix graph")
    rmat.add_argument("--scale", type=int, required=True)
    rmat.add_argument("--edgefactor", type=int, default=16)
    rmat.add_argument("--preset", choices=sorted(RMAT_PRESETS))
    rmat.add_argument("--a", type=float)
    rmat.add_argument("--b", type=float)
    rmat.add_argument("--c", type=float)
    rmat.add_argument("--seed", type=int, default=0)
    rmat.add_argument("--raw", action="store_true", help="keep duplicates and self-loops")
    rmat.add_argument("--out", required=True)
    rmat.add_argument("--format", choices=("edgelist", "bin"))

    bipartite = kinds.add_parser("bipartite", help="skewed user x item ratings")
    bipartite.add_argument("--users", type=int, required=True)
    bipartite.add_argument("--items", type=int, required=True)
    bipartite.add_argument("--ratings", type=int, required=True)
    bipartite.add_argument("--seed", type=int, default=0)
    bipartite.add_argument("--out", required=True)
    bipartite.add_argument("--format", choices=("edgelist", "bin"))

    convert = commands.add_parser("convert", help="change graph file format")
    convert.add_argument("--in", dest="input", required=True)
    convert.add_argument("--in-format", choices=FORMATS)
    convert.add_argument("--out", required=True)
    convert.add_argument("--out-format", choices=("edgelist", "bin"))
    convert.add_argument("--weighted", action="store_true")

    run = commands.add_parser("run", help="run one algorithm")
    _add_run_arguments(run)
    run.add_argument("--threads", type=int, help="worker threads")

    sweep = commands.add_parser("scale-sweep", help="repeat a run over thread counts")
    sweep_commands = sweep.add_subparsers(dest="sweep_command", required=True)
    sweep_run = sweep_commands.add_parser("run", help="run one algorithm per thread count")
    _add_run_arguments(sweep_run)
    sweep_run.add_argument("--threads", type=_thread_list, default=[1, 2, 4, 8])

    commands.add_parser("list", help="list algorithms")
    return parser


def _write_generated(
    args, edges: EdgeList, num_vertices: int, weighted: Optional[bool] = None
) -> None:
    save_graph(args.out, edges, num_vertices, args.format, weighted)
    print(f"wrote {len(edges)} edges, {num_vertices} vertices to {args.out}")


def cmd_generate(args) -> int:
    """generate rmat | bipartite"""
    if args.kind == "rmat":
        a, b, c = RMAT_PRESETS[args.preset or "graph500"]
        params = RmatParams(
            scale=args.scale,
            edge_factor=args.edgefactor,
            a=a if args.a is None else args.a,
            b=b if args.b is None else args.b,
            c=c if args.c is None else args.c,
            seed=args.seed,
        )
        edges = rmat_generate(params)
        if not args.raw:
            edges = preprocess(edges, PreprocessMode.NONE)
        _write_generated(args, edges, params.num_vertices)
    else:
        edges = bipartite_generate(args.users, args.items, args.ratings, args.seed)
        _write_generated(args, edges, args.users + args.items, weighted=True)
    return EXIT_OK


def cmd_convert(args) -> int:
    """convert between edge list, Matrix Market and GMB1"""
    edges, num_vertices = load_graph(args.input, args.in_format, args.weighted)
    save_graph(args.out, edges, num_vertices, args.out_format, args.weighted or None)
    print(f"converted {len(edges)} edges, {num_vertices} vertices to {args.out}")
    return EXIT_OK


def cmd_list(_args) -> int:
    """Print discovered algorithms"""
    if not ALL_ALGORITHMS:
        print("No algorithms discovered.")
        return EXIT_OK
    for meta in ALL_ALGORITHMS:
        state = "enabled" if meta["name"] in ENABLED_ALGORITHMS else "disabled"
        version = f" v{meta['version']}" if meta["version"] else ""
        requires = ", ".join(f"--{r}" for r in meta["requires"]) or "-"
        print(
            f"{meta['name']}{version} [{state}] "
            f"preprocess={meta['preprocess']} requires={requires}"
        )
        if meta["description"]:
            print(f"    {meta['description']}")
    return EXIT_OK


def _algorithm_options(args, meta) -> dict:
    for required in meta["requires"]:
        if getattr(args, required, None) is None:
            raise UsageError(f"run {meta['name']}: --{required} is required")
    options = vars(args).copy()
    if args.source is not None:
        if args.source < 1:
            raise UsageError(f"--source is 1-based, got {args.source}")
        options["source"] = args.source - 1
    return options


def _load_for(args, meta):
    t0 = perf_counter()
    edges, num_vertices = load_graph(args.graph, args.format, args.weighted)
    edges = preprocess(edges, PreprocessMode(meta["preprocess"]), args.users)
    logger.info("Loaded and preprocessed %s in %.3fs", args.graph, perf_counter() - t0)
    return edges, num_vertices


def _run_once(
    args, meta, edges: EdgeList, num_vertices: int, threads: int, out: Optional[str] = None
) -> RunReport:
    engine_config = get_settings().engine_config(
        thread_count=threads,
        partitions_per_thread=args.partitions_per_thread,
        sparse_vector=args.sparse_vector,
        deterministic_reduction=False if args.nondeterministic else None,
        max_iterations=args.max_iters,
    )
    options = _algorithm_options(args, meta)
    graph = build_graph(edges, num_vertices, engine_config.total_partitions)

    t0 = perf_counter()
    result = meta["run"](graph, options, engine_config)
    elapsed = perf_counter() - t0

    checksum = write_results(result.values, out) if out else results_checksum(result.values)
    report = RunReport(
        algorithm=meta["name"],
        graph=str(args.graph),
        threads=threads,
        partitions_per_thread=engine_config.partitions_per_thread,
        partitions=engine_config.total_partitions,
        history=result.history,
        total_seconds=elapsed,
        checksum=checksum,
        summary=result.summary,
        facts=system_facts(),
    )
    logger.info(
        "%s: %d iterations in %.4fs with %d threads (checksum %016x)",
        meta["name"],
        report.iterations,
        elapsed,
        threads,
        report.checksum,
    )
    return report


def _emit(report: RunReport, report_path: Optional[str]) -> None:
    if report_path:
        write_report(report, report_path)
    print(
        f"{report.algorithm} threads={report.threads} iterations={report.iterations} "
        f"total_seconds={report.total_seconds:.6f} checksum={report.checksum:016x}"
    )


def _lookup(name: str):
    try:
        return get_algorithm(name)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from e


def cmd_run(args) -> int:
    """run <algorithm>"""
    meta = _lookup(args.algorithm)
    edges, num_vertices = _load_for(args, meta)
    threads = args.threads if args.threads is not None else get_settings().threads
    report = _run_once(args, meta, edges, num_vertices, threads, args.out)
    _emit(report, args.report)
    return EXIT_OK


def sweep_path(path: Optional[str], threads: int) -> Optional[str]:
    """report.txt -> report.t4.txt"""
    if not path:
        return None
    p = Path(path)
    return str(p.with_name(f"{p.stem}.t{threads}{p.suffix}"))


def cmd_scale_sweep(args) -> int:
    """scale-sweep run <algorithm> --threads 1,2,4,8"""
    meta = _lookup(args.algorithm)
    edges, num_vertices = _load_for(args, meta)
    checksums = set()
    for threads in args.threads:
        report = _run_once(args, meta, edges, num_vertices, threads, sweep_path(args.out, threads))
        checksums.add(report.checksum)
        _emit(report, sweep_path(args.report, threads))
    if len(checksums) > 1:
        logger.warning("Checksums differ across thread counts: %s", sorted(checksums))
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "convert": cmd_convert,
    "run": cmd_run,
    "scale-sweep": cmd_scale_sweep,
    "list": cmd_list,
}


def _fail(code: int, message: str) -> int:
    print(f"graphmat: error: {message}", file=sys.stderr)
    return code


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and map failures to exit codes"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = get_settings()
    except (UsageError, ValueError) as e:
        return _fail(EXIT_USAGE, str(e))
    except SystemExit as e:  # --help
        return int(e.code or 0)

    if args.log_level or args.debug:
        settings = replace(
            settings,
            log_level=args.log_level or settings.log_level,
            debug_mode=args.debug or settings.debug_mode,
        )
    setup_logging(settings)
    logger.info("Starting graphmat %s...", args.command)

    try:
        code = COMMANDS[args.command](args)
    except (UsageError, VertexRangeError) as e:
        return _fail(EXIT_USAGE, str(e))
    except (InputDataError, GraphBuildError) as e:
        logger.error("❌ %s", e)
        return _fail(EXIT_INPUT, str(e))
    except OSError as e:
        return _fail(EXIT_INPUT, f"{getattr(e, 'filename', '') or ''} {e.strerror or e}".strip())
    except ValueError as e:
        return _fail(EXIT_USAGE, str(e))
    except GraphMatError as e:
        logger.error("❌ Run failed: %s", e, exc_info=True)
        return _fail(EXIT_RUNTIME, str(e))
    except Exception as e:  # pylint: disable=broad-exception-caught
        logger.error("❌ Unhandled error in %s: %s", args.command, e, exc_info=True)
        return _fail(EXIT_RUNTIME, f"unexpected error: {e}")
    logger.info("✅ graphmat %s complete", args.command)
    return code


def console_main() -> None:
    """Console script entry"""
    sys.exit(cli_main())
