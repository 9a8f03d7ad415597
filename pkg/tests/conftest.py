"""Shared fixtures and fakes for tests."""

import argparse
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from graph_decomp.graph import AnyGraph, Graph
from graph_decomp.graph_io import format_graph
from graph_decomp.hamilton.base import HamiltonSearch
from graph_decomp.models import QuasirandomParams


def complete(n: int) -> Graph:
    return Graph.complete(n)


def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def two_triangles() -> Graph:
    """Two disjoint triangles; overfull although every deficiency is zero."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def k4_minus_edge() -> Graph:
    return Graph.complete(4).remove_edges([(2, 3)])


def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


class FakeSearch(HamiltonSearch):
    """Search that replays canned cycles and records what it was asked."""

    def __init__(self, cycles=None, handles=True):
        super().__init__(np.random.default_rng(0))
        self.cycles = list(cycles or [])
        self.handles = handles
        self.calls = []

    @property
    def display_name(self) -> str:
        return "Fake"

    def detect(self, graph: AnyGraph) -> bool:
        return self.handles

    def attempt_cycle(self, graph: AnyGraph, start: int) -> list[int] | None:
        self.calls.append(("cycle", graph.n, start))
        return self.cycles.pop(0) if self.cycles else None


@pytest.fixture
def rng():
    """Seeded generator; every test starts from the same state."""
    return np.random.default_rng(7)


@pytest.fixture
def params():
    return QuasirandomParams(p=0.5)


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to an edge-list file and return its path."""

    def _write(graph: AnyGraph, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(format_graph(graph))
        return path

    return _write


@pytest.fixture
def mock_args():
    """Factory for creating mock argument namespaces."""

    def _make_args(**kwargs):
        defaults = {
            "output": "text",
            "debug": False,
            "verbose": False,
            "seed": 0,
            "params": None,
            "p": None,
            "out": None,
            "strict": False,
            "input": None,
            "n": None,
            "pairs": None,
            "route": "direct",
            "exact": False,
            "decomposition": None,
            "coloring": None,
            "ns": "30",
            "ps": "0.5",
            "seeds": "0",
            "tasks": None,
            "workers": 1,
            "jsonl": False,
        }
        defaults.update(kwargs)
        return argparse.Namespace(**defaults)

    return _make_args


@pytest.fixture(autouse=True)
def no_params_profile(monkeypatch):
    """Keep a developer's GRAPH_DECOMP_PARAMS out of the tests."""
    monkeypatch.delenv("GRAPH_DECOMP_PARAMS", raising=False)
