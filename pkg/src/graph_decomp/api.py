"""
Python-importable equivalents of cli commands. Each function takes a seed
instead of a generator so that a call is reproducible on its own, mirroring
the ``--seed`` flag.
"""

import numpy as np

from .coloring import chromatic_index_color as _color
from .cycles import decompose_cycles_plus_matching as _cycles_plus_matching
from .cycles import decompose_cycles_directed, decompose_cycles_undirected
from .graph import AnyGraph, Digraph, Graph
from .hamilton import HamiltonEngine
from .models import (
    Decomposition,
    EdgeColoring,
    GnpDiagnostics,
    OrientationConfig,
    PairList,
    QuasirandomParams,
    SweepResult,
    VerificationReport,
)
from .orientation import eulerian_orientation_quasirandom
from .paths import arboricity_regular_large
from .paths import decompose_linear_forests as _forests
from .paths import decompose_paths as _paths
from .randgen import gen_gnp, gnp_diagnostics
from .sweep import experiment_sweep
from .verify import verify as _verify


def _defaults(params: QuasirandomParams | None, p: float = 0.5) -> QuasirandomParams:
    return params if params is not None else QuasirandomParams(p=p)


def generate(n: int, p: float, seed: int = 0) -> Graph:
    return gen_gnp(n, p, seed)


def diagnostics(graph: Graph, p: float) -> GnpDiagnostics:
    return gnp_diagnostics(graph, p)


def decompose_cycles(
    graph: AnyGraph,
    pairs: PairList | None = None,
    params: QuasirandomParams | None = None,
    seed: int = 0,
    strict: bool = True,
    route: str = "direct",
) -> Decomposition:
    rng = np.random.default_rng(seed)
    pairs = pairs if pairs is not None else PairList()
    if isinstance(graph, Digraph):
        return decompose_cycles_directed(graph, pairs, _defaults(params), rng, strict=strict)
    return decompose_cycles_undirected(
        graph, pairs, _defaults(params), rng, strict=strict, route=route
    )


def decompose_cycles_plus_matching(
    graph: Graph,
    params: QuasirandomParams | None = None,
    seed: int = 0,
    strict: bool = True,
) -> Decomposition:
    return _cycles_plus_matching(
        graph, _defaults(params), np.random.default_rng(seed), strict=strict
    )


def decompose_paths(
    graph: Graph, params: QuasirandomParams | None = None, seed: int = 0
) -> Decomposition:
    return _paths(graph, _defaults(params), np.random.default_rng(seed))


def decompose_linear_forests(
    graph: Graph, params: QuasirandomParams | None = None, seed: int = 0
) -> Decomposition:
    return _forests(graph, _defaults(params), np.random.default_rng(seed))


def linear_arboricity_regular(graph: Graph, seed: int = 0) -> Decomposition:
    return arboricity_regular_large(graph, np.random.default_rng(seed))


def chromatic_index_color(
    graph: Graph, params: QuasirandomParams | None = None, seed: int = 0
) -> EdgeColoring:
    return _color(graph, _defaults(params), np.random.default_rng(seed))


def hamilton_decompose(graph: AnyGraph, seed: int = 0) -> list[list[int]]:
    engine = HamiltonEngine(np.random.default_rng(seed))
    if isinstance(graph, Digraph):
        return engine.hamilton_decompose_digraph(graph)
    return engine.hamilton_decompose(graph)


def orient(
    graph: Graph,
    config: OrientationConfig | None = None,
    seed: int = 0,
    strict: bool = True,
) -> Digraph:
    return eulerian_orientation_quasirandom(
        graph, None, config or OrientationConfig(), np.random.default_rng(seed), strict
    )


def verify(graph: AnyGraph, decomposition: Decomposition) -> VerificationReport:
    return _verify(graph, decomposition)


def sweep(
    ns: list[int],
    ps: list[float],
    seeds: list[int],
    tasks: list[str] | None = None,
    workers: int = 1,
) -> SweepResult:
    return experiment_sweep(ns, ps, seeds, tasks, workers=workers)


__all__ = [
    "generate",
    "diagnostics",
    "decompose_cycles",
    "decompose_cycles_plus_matching",
    "decompose_paths",
    "decompose_linear_forests",
    "linear_arboricity_regular",
    "chromatic_index_color",
    "hamilton_decompose",
    "orient",
    "verify",
    "sweep",
]
