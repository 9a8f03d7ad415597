"""Tests for seeded G(n, p) generation and the regularity diagnostics."""

import math

import numpy as np
import pytest

from graph_decomp.errors import UsageError
from graph_decomp.graph import Digraph, Graph
from graph_decomp.randgen import (
    gen_gnp,
    gnp_diagnostics,
    lower_regularity_check,
    robust_expander_check,
)


def test_gen_gnp_is_deterministic():
    """Test the same seed gives the same graph."""
    assert gen_gnp(30, 0.5, 3) == gen_gnp(30, 0.5, 3)


def test_gen_gnp_consumes_one_draw_per_pair():
    """Test edges match the canonical draw order of default_rng(seed)."""
    draws = np.random.default_rng(11).random(10)
    pairs = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    expected = {pair for pair, x in zip(pairs, draws, strict=True) if x < 0.4}
    assert gen_gnp(5, 0.4, 11).edges == frozenset(expected)


def test_gen_gnp_extremes():
    """Test p=0 and p=1."""
    assert gen_gnp(6, 0.0, 0).edge_count == 0
    assert gen_gnp(6, 1.0, 0) == Graph.complete(6)


def test_gen_gnp_rejects_bad_arguments():
    """Test invalid n and p."""
    with pytest.raises(UsageError):
        gen_gnp(0, 0.5, 0)
    with pytest.raises(UsageError):
        gen_gnp(5, 1.5, 0)


def test_complete_graph_is_lower_regular():
    """Test K8 passes the exact check for any p below one."""
    ok, witness = lower_regularity_check(Graph.complete(8), 0.9, 0.05)
    assert ok
    assert witness is None


def test_empty_graph_fails_with_witness():
    """Test the empty graph fails and the witness sets are disjoint."""
    ok, witness = lower_regularity_check(Graph.empty(6), 0.5, 0.1)
    assert not ok
    s, t = witness
    assert s and t
    assert not set(s) & set(t)


def test_sampled_mode_finds_gap():
    """Test sampling catches a disconnected union of cliques."""
    graph = Graph.from_edges(
        8,
        [(u, v) for u in range(4) for v in range(u + 1, 4)]
        + [(u, v) for u in range(4, 8) for v in range(u + 1, 8)],
    )
    ok, _ = lower_regularity_check(
        graph, 0.5, 0.25, mode="sampled", rng=np.random.default_rng(0)
    )
    assert not ok


def test_exact_mode_rejects_large_graph():
    """Test the exhaustive check refuses large n."""
    with pytest.raises(UsageError):
        lower_regularity_check(Graph.empty(19), 0.5, 0.1)


def test_unknown_mode():
    """Test an unknown mode is a usage error."""
    with pytest.raises(UsageError, match="unknown mode"):
        lower_regularity_check(Graph.complete(4), 0.5, 0.1, mode="fast")


def test_digraph_regularity_uses_arcs():
    """Test a complete digraph is lower-regular."""
    ok, _ = lower_regularity_check(Digraph.complete(6), 0.8, 0.2)
    assert ok


def test_robust_expander():
    """Test K8 expands robustly and the empty graph does not."""
    assert robust_expander_check(Graph.complete(8), 0.1, 0.3) == (True, None)
    ok, members = robust_expander_check(Graph.empty(8), 0.1, 0.3)
    assert not ok
    assert len(members) >= math.ceil(0.3 * 8)


def test_gnp_diagnostics():
    """Test the diagnostic fields on a small cycle."""
    diag = gnp_diagnostics(Graph.cycle(6), 0.4)
    assert diag.n == 6
    assert diag.edge_count == 6
    assert diag.max_degree == diag.min_degree == 2
    assert diag.spread == 0
    assert diag.spread_ok
    assert not diag.unique_max
    assert diag.odd_count == 0
    assert diag.spread_bound == pytest.approx(4 * math.sqrt(6 * math.log(6)))
