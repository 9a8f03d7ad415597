"""Tests for cycle and cycles-plus-matching decompositions."""

import pytest
from conftest import bowtie

from graph_decomp.cycles import (
    cycle_decomposition,
    decompose_cycles_directed,
    decompose_cycles_plus_matching,
    decompose_cycles_undirected,
)
from graph_decomp.errors import HypothesisViolatedError, UsageError
from graph_decomp.graph import Digraph, Graph
from graph_decomp.models import DecompositionKind, PairList
from graph_decomp.verify import verify


@pytest.mark.parametrize("n", [5, 7])
def test_complete_odd_graph_gives_hamilton_cycles(n, params, rng):
    """Test K_n for odd n decomposes into (n-1)/2 spanning cycles."""
    graph = Graph.complete(n)
    result = decompose_cycles_undirected(graph, PairList(), params, rng)
    assert result.kind is DecompositionKind.CYCLES
    assert result.count == (n - 1) // 2
    assert all(len(seq) == n for seq in result.sequences)
    assert not result.best_effort
    assert verify(graph, result).ok


def test_k4_cycles_plus_matching(params, rng):
    """Test K4 gives one cycle and a two-edge matching."""
    graph = Graph.complete(4)
    result = decompose_cycles_plus_matching(graph, params, rng)
    assert result.count == 1
    assert len(result.matching) == 2
    assert {v for e in result.matching for v in e} == {0, 1, 2, 3}
    assert verify(graph, result).ok


def test_k6_cycles_plus_matching(params, rng):
    """Test K6 gives two cycles and a perfect matching."""
    graph = Graph.complete(6)
    result = decompose_cycles_plus_matching(graph, params, rng)
    assert result.count == 2
    assert len(result.matching) == 3
    report = verify(graph, result)
    assert report.ok
    assert report.expected_count == 2


def test_even_graph_needs_no_matching(params, rng):
    """Test an Eulerian input gets an empty matching."""
    result = decompose_cycles_plus_matching(Graph.complete(5), params, rng)
    assert result.matching == ()
    assert result.count == 2


def test_directed_complete_digraph(params, rng):
    """Test the complete digraph on five vertices gives four directed cycles."""
    digraph = Digraph.complete(5)
    result = decompose_cycles_directed(digraph, PairList(), params, rng)
    assert result.directed
    assert result.count == 4
    assert verify(digraph, result).ok


def test_rejects_odd_degrees(params, rng):
    """Test an input with odd degrees violates the hypothesis."""
    with pytest.raises(HypothesisViolatedError, match="odd-degree"):
        cycle_decomposition(Graph.complete(4), PairList(), params, rng)


def test_rejects_unbalanced_digraph(params, rng):
    """Test an unbalanced digraph violates the hypothesis."""
    with pytest.raises(HypothesisViolatedError, match="not Eulerian"):
        cycle_decomposition(Digraph.from_arcs(3, [(0, 1), (1, 2)]), PairList(), params, rng)


def test_strict_rejects_wide_degree_spread(params, rng):
    """Test strict mode refuses a bowtie, whose spread is far above eta*n."""
    with pytest.raises(HypothesisViolatedError, match="spread"):
        decompose_cycles_undirected(bowtie(), PairList(), params, rng)


def test_best_effort_bowtie(params, rng):
    """Test best-effort mode still splits the bowtie into its two triangles."""
    graph = bowtie()
    result = decompose_cycles_undirected(graph, PairList(), params, rng, strict=False)
    assert result.best_effort
    assert result.count == 2
    assert sorted(len(seq) for seq in result.sequences) == [3, 3]
    assert verify(graph, result).ok


def test_cycles_keep_pairs_together(params, rng):
    """Test every cycle holding one end of a pair holds the other."""
    pairs = PairList(((0, 3), (1, 5)))
    result = decompose_cycles_undirected(Graph.complete(7), pairs, params, rng)
    for seq in result.sequences:
        assert pairs.inconsistency(frozenset(seq)) is None


def test_oriented_route(params, rng):
    """Test the orientation route returns undirected cycles of K5."""
    graph = Graph.complete(5)
    result = decompose_cycles_undirected(
        graph, PairList(), params, rng, strict=False, route="oriented"
    )
    assert not result.directed
    assert result.count == 2
    assert verify(graph, result).ok


def test_unknown_route(params, rng):
    """Test an unknown route is a usage error."""
    with pytest.raises(UsageError, match="unknown route"):
        decompose_cycles_undirected(Graph.complete(5), PairList(), params, rng, route="sideways")


def test_empty_graph(params, rng):
    """Test an edgeless graph gives no cycles."""
    result = decompose_cycles_undirected(Graph.empty(4), PairList(), params, rng)
    assert result.count == 0
