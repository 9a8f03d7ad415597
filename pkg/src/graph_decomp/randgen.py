"""Seeded G(n, p) generation and quasirandomness diagnostics.

The generator is numpy's PCG64 ``Generator`` seeded with ``default_rng(seed)``.
One uniform draw is consumed per vertex pair, in canonical order
(0,1), (0,2), ..., (0,n-1), (1,2), ...; a pair becomes an edge when its draw
is below p.
"""

import logging
import math
from itertools import combinations

import numpy as np

from graph_decomp.errors import UsageError
from graph_decomp.graph import AnyGraph, Digraph, Graph, degree_profile
from graph_decomp.models import GnpDiagnostics

logger = logging.getLogger(__name__)

EXACT_LIMIT = 18


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 1:
        raise UsageError(f"n must be at least 1, got {n}")
    if not 0 <= p <= 1:
        raise UsageError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    draws = rng.random(rows.shape[0])
    chosen = draws < p
    edges = frozenset(
        zip(rows[chosen].tolist(), cols[chosen].tolist(), strict=True)
    )
    logger.debug(f"G({n}, {p}) seed={seed}: {len(edges)} edges")
    return Graph(n, edges)


def _in_masks(graph: AnyGraph) -> list[int]:
    """Bitmask of in-neighbours (neighbours for graphs) per vertex."""
    if isinstance(graph, Digraph):
        sets = graph.in_adjacency
    else:
        sets = graph.adjacency
    return [sum(1 << u for u in s) for s in sets]


def _worst_target(
    masks: list[int], s_mask: int, n: int, min_size: int, threshold: float
) -> list[int] | None:
    """Smallest-count T outside S of some size >= min_size violating the bound.

    For a fixed S, e(S, T) is the sum of |N^-(v) & S| over v in T, so the
    t vertices with the fewest in-neighbours in S minimise it for every t.
    """
    s_size = s_mask.bit_count()
    outside = sorted(
        (((masks[v] & s_mask).bit_count(), v) for v in range(n) if not s_mask >> v & 1)
    )
    total = 0
    for t, (count, _) in enumerate(outside, start=1):
        total += count
        if t >= min_size and total < threshold * s_size * t:
            return [v for _, v in outside[:t]]
    return None


def lower_regularity_check(
    graph: AnyGraph,
    p: float,
    eps: float,
    mode: str = "exact",
    sample_count: int = 10_000,
    rng: np.random.Generator | None = None,
) -> tuple[bool, tuple[list[int], list[int]] | None]:
    """Check e(S,T) >= (p - eps)|S||T| for disjoint S, T of size >= eps*n.

    Exact mode enumerates every S and the adversarial T for it. Sampled mode
    draws random S and reports only genuine violations.
    """
    n = graph.n
    min_size = max(1, math.ceil(eps * n - 1e-9))
    threshold = p - eps
    masks = _in_masks(graph)

    if mode == "exact":
        if n > EXACT_LIMIT:
            raise UsageError(f"exact regularity check needs n <= {EXACT_LIMIT}, got {n}")
        for s_mask in range(1, 1 << n):
            size = s_mask.bit_count()
            if size < min_size or n - size < min_size:
                continue
            target = _worst_target(masks, s_mask, n, min_size, threshold)
            if target is not None:
                members = [v for v in range(n) if s_mask >> v & 1]
                return False, (members, target)
        return True, None

    if mode != "sampled":
        raise UsageError(f"unknown mode {mode!r}, expected exact or sampled")
    if 2 * min_size > n:
        return True, None
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(sample_count):
        size = int(rng.integers(min_size, n - min_size + 1))
        members = rng.choice(n, size=size, replace=False)
        s_mask = sum(1 << int(v) for v in members)
        target = _worst_target(masks, s_mask, n, min_size, threshold)
        if target is not None:
            return False, (sorted(int(v) for v in members), target)
    return True, None


def robust_expander_check(
    graph: AnyGraph, nu: float, tau: float
) -> tuple[bool, list[int] | None]:
    """Brute-force robust (nu, tau)-(out)expansion over every qualifying S."""
    n = graph.n
    if n > EXACT_LIMIT:
        raise UsageError(f"robust expansion check needs n <= {EXACT_LIMIT}, got {n}")
    masks = _in_masks(graph)
    low = math.ceil(tau * n - 1e-9)
    high = math.floor((1 - tau) * n + 1e-9)
    for size in range(max(low, 1), high + 1):
        for members in combinations(range(n), size):
            s_mask = sum(1 << v for v in members)
            robust = sum(
                1 for x in range(n) if (masks[x] & s_mask).bit_count() >= nu * n
            )
            if robust < size + nu * n:
                return False, list(members)
    return True, None


def gnp_diagnostics(graph: Graph, p: float) -> GnpDiagnostics:
    profile = degree_profile(graph)
    n = graph.n
    bound = 4 * math.sqrt(n * math.log(n)) if n > 1 else 0.0
    return GnpDiagnostics(
        n=n,
        edge_count=graph.edge_count,
        max_degree=profile.max_degree,
        min_degree=profile.min_degree,
        spread=profile.spread,
        spread_bound=bound,
        spread_ok=profile.spread <= bound,
        unique_max=profile.unique_max,
        odd_count=profile.odd_count,
        odd_fraction=profile.odd_count / n if n else 0.0,
        p=p,
    )
