"""G(n, p) experiment sweep: run every task on every (n, p, seed) cell and tabulate."""

import json
import logging
import math
import time
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, replace
from itertools import product

import numpy as np

from graph_decomp.coloring import chromatic_index_color
from graph_decomp.cycles import decompose_cycles_plus_matching
from graph_decomp.errors import UsageError
from graph_decomp.models import (
    Decomposition,
    QuasirandomParams,
    SweepResult,
    SweepRow,
    SweepSummary,
)
from graph_decomp.paths import decompose_linear_forests, decompose_paths
from graph_decomp.randgen import gen_gnp, gnp_diagnostics
from graph_decomp.verify import verify

logger = logging.getLogger(__name__)

TASKS = ("cycles", "paths", "forests", "color")


def dominant_term(odd_count: int, max_degree: int) -> str:
    """Which side of max{odd/2, ⌈Δ/2⌉} is larger."""
    odd_half, delta_half = odd_count // 2, math.ceil(max_degree / 2)
    if odd_half > delta_half:
        return "odd"
    if delta_half > odd_half:
        return "delta"
    return "tie"


def _cell_rng(n: int, p: float, seed: int, task: str) -> np.random.Generator:
    return np.random.default_rng([seed, n, round(p * 1000), TASKS.index(task)])


def _run_task(task: str, graph, params: QuasirandomParams, rng: np.random.Generator) -> Decomposition:
    if task == "cycles":
        return decompose_cycles_plus_matching(graph, params, rng, strict=False)
    if task == "paths":
        return decompose_paths(graph, params, rng)
    if task == "forests":
        return decompose_linear_forests(graph, params, rng)
    return chromatic_index_color(graph, params, rng).as_decomposition()


def run_cell(n: int, p: float, seed: int, task: str, params: QuasirandomParams) -> SweepRow:
    """One task on one seeded graph; failures become rows, never exceptions."""
    graph = gen_gnp(n, p, seed)
    diag = gnp_diagnostics(graph, p)
    dominant = dominant_term(diag.odd_count, diag.max_degree)
    start = time.perf_counter()
    try:
        decomposition = _run_task(task, graph, params, _cell_rng(n, p, seed, task))
        report = verify(graph, decomposition)
    except Exception as e:
        logger.debug(f"n={n} p={p} seed={seed} {task}: {type(e).__name__}: {e}")
        return SweepRow(
            n=n, p=p, seed=seed, task=task, success=False, count=None, bound=None,
            dominant=dominant, unique_max=diag.unique_max,
            seconds=time.perf_counter() - start, error=f"{type(e).__name__}: {e}",
        )
    error = None
    if not report.ok:
        first = report.violations[0]
        error = f"{first.invariant}: {first.witness}"
    return SweepRow(
        n=n, p=p, seed=seed, task=task, success=report.ok,
        count=report.actual_count, bound=report.expected_count,
        dominant=dominant, unique_max=diag.unique_max,
        seconds=time.perf_counter() - start, error=error,
    )


def summarize(rows: Iterable[SweepRow]) -> tuple[SweepSummary, ...]:
    groups: dict[tuple[int, float, str], list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.n, row.p, row.task), []).append(row)
    summaries = []
    for (n, p, task), cell in sorted(groups.items()):
        summaries.append(
            SweepSummary(
                n=n, p=p, task=task, runs=len(cell),
                successes=sum(r.success for r in cell),
                mean_seconds=sum(r.seconds for r in cell) / len(cell),
                odd_dominant=sum(r.dominant == "odd" for r in cell),
                delta_dominant=sum(r.dominant == "delta" for r in cell),
            )
        )
    return tuple(summaries)


def experiment_sweep(
    ns: list[int],
    ps: list[float],
    seeds: list[int],
    tasks: list[str] | None = None,
    params: QuasirandomParams | None = None,
    workers: int = 1,
) -> SweepResult:
    """Every task on G(n, p, seed) for each combination.

    Colouring cells with odd n are skipped. Rows come back in (n, p, seed,
    task) order whatever the worker count.
    """
    tasks = list(tasks or TASKS)
    unknown = sorted(set(tasks) - set(TASKS))
    if unknown:
        raise UsageError(f"unknown sweep tasks: {', '.join(unknown)}")
    if workers < 1:
        raise UsageError("workers must be at least 1")

    cells = []
    for n, p, seed, task in product(ns, ps, seeds, tasks):
        if task == "color" and n % 2:
            logger.debug(f"skipping colouring at odd n={n}")
            continue
        cell_params = replace(params, p=p, alpha=None) if params is not None else QuasirandomParams(p=p)
        cells.append((n, p, seed, task, cell_params))
    logger.info(f"sweeping {len(cells)} cells with {workers} worker(s)")

    if workers == 1:
        rows = [run_cell(*cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda cell: run_cell(*cell), cells))
    return SweepResult(rows=tuple(rows), summaries=summarize(rows))


def format_sweep_text(result: SweepResult, timings: bool = True) -> str:
    """Row table then summary table; without timings the text is reproducible."""
    secs = f" {'secs':>7}" if timings else ""
    lines = [
        f"{'n':>4} {'p':>5} {'seed':>5} {'task':<8} {'ok':<3} {'count':>5} {'bound':>5} {'dominant':<8}{secs}"
    ]
    for r in result.rows:
        count = "-" if r.count is None else str(r.count)
        bound = "-" if r.bound is None else str(r.bound)
        ok = "yes" if r.success else "no"
        line = (
            f"{r.n:>4} {r.p:>5.2f} {r.seed:>5} {r.task:<8} {ok:<3} "
            f"{count:>5} {bound:>5} {r.dominant or '-':<8}"
        )
        lines.append(line + (f" {r.seconds:>7.3f}" if timings else ""))

    mean = f" {'mean s':>7}" if timings else ""
    lines.append("")
    lines.append(f"{'n':>4} {'p':>5} {'task':<8} {'runs':>4} {'rate':>6} {'odd':>4} {'delta':>5}{mean}")
    for s in result.summaries:
        line = (
            f"{s.n:>4} {s.p:>5.2f} {s.task:<8} {s.runs:>4} {s.success_rate:>6.1%} "
            f"{s.odd_dominant:>4} {s.delta_dominant:>5}"
        )
        lines.append(line + (f" {s.mean_seconds:>7.3f}" if timings else ""))
    return "\n".join(lines)


def format_sweep_jsonl(result: SweepResult, timings: bool = True) -> str:
    """One JSON object per row, then one per summary tagged with "summary": true."""
    lines = []
    for r in result.rows:
        data = asdict(r)
        if not timings:
            del data["seconds"]
        lines.append(json.dumps(data, sort_keys=True))
    for s in result.summaries:
        data = asdict(s)
        data["success_rate"] = s.success_rate
        data["summary"] = True
        if not timings:
            del data["mean_seconds"]
        lines.append(json.dumps(data, sort_keys=True))
    return "\n".join(lines)
