"""Tests for splits, degree-prescribed subdigraphs and balanced orientations."""

import numpy as np
import pytest

from graph_decomp.errors import (
    HypothesisViolatedError,
    InfeasibleError,
    RetryExhaustedError,
    UsageError,
)
from graph_decomp.graph import Digraph, Graph, is_eulerian
from graph_decomp.models import DegreePrescription, OrientationConfig, PairList
from graph_decomp.orientation import (
    cycle_peel_orientation,
    degree_prescribed_subdigraph,
    eulerian_orientation_quasirandom,
    split_partition,
    split_violation,
)


def test_split_violation_size():
    """Test a lopsided S is reported."""
    problem = split_violation(Graph.complete(6), frozenset({0}), PairList(), 0.2)
    assert "outside" in problem


def test_split_violation_separated_pair():
    """Test a pair straddling S is reported."""
    pairs = PairList(((0, 5),))
    problem = split_violation(Graph.complete(6), frozenset({0, 1, 2}), pairs, 0.2)
    assert problem == "pair (0, 5) is separated"


def test_split_violation_none_on_complete_graph():
    """Test a balanced split of K6 passes."""
    assert split_violation(Graph.complete(6), frozenset({0, 1, 2}), PairList(), 0.2) is None


def test_split_partition_keeps_pairs(rng):
    """Test every pair lands on one side."""
    pairs = PairList(((0, 1), (2, 7), (5, 9)))
    split = split_partition(Graph.complete(12), pairs, 0.25, rng)
    assert 4 <= len(split.members) <= 8
    for x, y in pairs:
        assert (x in split.members) == (y in split.members)
    assert split.members | split.complement == frozenset(range(12))


def test_split_partition_exhausts_on_path(rng):
    """Test a leaf can never see both sides."""
    with pytest.raises(RetryExhaustedError):
        split_partition(Graph.path(6), PairList(), 0.5, rng, retry_budget=5)


def test_degree_prescribed_subdigraph():
    """Test a 1-factor of the complete digraph on four vertices."""
    presc = DegreePrescription((1, 1, 1, 1), (1, 1, 1, 1))
    sub = degree_prescribed_subdigraph(Digraph.complete(4), presc)
    assert all(sub.out_degree(v) == 1 and sub.in_degree(v) == 1 for v in range(4))
    assert sub.arcs <= Digraph.complete(4).arcs


def test_degree_prescribed_subdigraph_over_degree():
    """Test prescribing more than a vertex has is infeasible."""
    presc = DegreePrescription((2, 0, 0), (0, 1, 1))
    with pytest.raises(InfeasibleError) as excinfo:
        degree_prescribed_subdigraph(Digraph.cycle(3), presc)
    assert excinfo.value.condition == "degree"


def test_degree_prescribed_subdigraph_flow_shortfall():
    """Test a prescription the arcs cannot carry."""
    presc = DegreePrescription((1, 1, 0), (1, 1, 0))
    with pytest.raises(InfeasibleError) as excinfo:
        degree_prescribed_subdigraph(Digraph.cycle(3), presc)
    assert excinfo.value.condition == "flow"


def test_degree_prescription_sums_must_match():
    """Test unequal out and in totals are a usage error."""
    with pytest.raises(UsageError):
        DegreePrescription((1, 0), (0, 0))


def test_cycle_peel_orientation():
    """Test peeling orients K5 into a balanced digraph."""
    digraph = cycle_peel_orientation(Graph.complete(5))
    assert is_eulerian(digraph)
    assert digraph.underlying() == Graph.complete(5)


def test_cycle_peel_rejects_odd_degrees():
    """Test odd degrees are refused."""
    with pytest.raises(UsageError):
        cycle_peel_orientation(Graph.path(3))


def test_orientation_is_balanced(rng):
    """Test the random-halves orientation of K9 is balanced and covers every edge."""
    graph = Graph.complete(9)
    digraph = eulerian_orientation_quasirandom(graph, None, OrientationConfig(), rng, strict=False)
    assert is_eulerian(digraph)
    assert digraph.underlying() == graph


def test_orientation_is_reproducible():
    """Test equal seeds give equal orientations."""
    graph = Graph.complete(7)
    first = eulerian_orientation_quasirandom(
        graph, None, OrientationConfig(), np.random.default_rng(4), strict=False
    )
    second = eulerian_orientation_quasirandom(
        graph, None, OrientationConfig(), np.random.default_rng(4), strict=False
    )
    assert first == second


def test_orientation_rejects_odd_degrees(rng):
    """Test an odd-degree input violates the hypothesis."""
    with pytest.raises(HypothesisViolatedError):
        eulerian_orientation_quasirandom(Graph.complete(4), None, OrientationConfig(), rng)


def test_orientation_of_empty_graph(rng):
    """Test no edges give no arcs."""
    digraph = eulerian_orientation_quasirandom(Graph.empty(3), None, OrientationConfig(), rng)
    assert digraph == Digraph(3, frozenset())


def test_orientation_strict_exhausts_retries(monkeypatch, rng):
    """Test strict mode raises RetryExhaustedError once every split is infeasible."""

    def infeasible(digraph, presc):
        raise InfeasibleError("no flow", condition="flow")

    monkeypatch.setattr("graph_decomp.orientation.degree_prescribed_subdigraph", infeasible)
    config = OrientationConfig(retry_budget=1, xi=0.99)
    with pytest.raises(RetryExhaustedError, match="in 1 attempts") as excinfo:
        eulerian_orientation_quasirandom(Graph.cycle(4), None, config, rng)
    assert excinfo.value.exit_code == 4


def test_orientation_best_effort_falls_back_to_cycle_peeling(monkeypatch, rng):
    """Test best-effort mode still returns a balanced orientation."""

    def infeasible(digraph, presc):
        raise InfeasibleError("no flow", condition="flow")

    monkeypatch.setattr("graph_decomp.orientation.degree_prescribed_subdigraph", infeasible)
    config = OrientationConfig(retry_budget=1)
    digraph = eulerian_orientation_quasirandom(Graph.cycle(4), None, config, rng, strict=False)
    assert is_eulerian(digraph)
    assert digraph.underlying() == Graph.cycle(4)


def test_orientation_config_bounds():
    """Test gamma and xi must lie strictly between 0 and 1."""
    with pytest.raises(UsageError):
        OrientationConfig(gamma=0)
    with pytest.raises(UsageError):
        OrientationConfig(xi=1.5)
