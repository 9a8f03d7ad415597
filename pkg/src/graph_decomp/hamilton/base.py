"""Base Hamilton search implementation."""

import logging
from abc import ABC, abstractmethod

import numpy as np

from graph_decomp.graph import AnyGraph

logger = logging.getLogger(__name__)


class HamiltonSearch(ABC):
    def __init__(self, rng: np.random.Generator, step_factor: int = 50):
        self.rng = rng
        self.step_factor = step_factor

    @property
    @abstractmethod
    def display_name(self) -> str:
        pass

    @abstractmethod
    def detect(self, graph: AnyGraph) -> bool:
        """Whether this search handles the given kind of graph."""
        pass

    @abstractmethod
    def attempt_cycle(self, graph: AnyGraph, start: int) -> list[int] | None:
        """One randomized attempt at a Hamilton cycle starting from start."""
        pass

    def attempt_path(
        self, graph: AnyGraph, a: int, b: int
    ) -> list[int] | None:
        """One randomized attempt at a Hamilton path from a to b, if supported."""
        return None

    def step_limit(self, n: int) -> int:
        return self.step_factor * n + 1000

    def find_cycle(self, graph: AnyGraph, restarts: int) -> list[int] | None:
        for attempt in range(restarts):
            start = int(self.rng.integers(graph.n))
            cycle = self.attempt_cycle(graph, start)
            if cycle is not None:
                logger.debug(
                    f"{self.display_name}: cycle on {graph.n} vertices after {attempt + 1} attempts"
                )
                return cycle
        logger.debug(f"{self.display_name}: gave up after {restarts} attempts")
        return None

    def find_path(
        self, graph: AnyGraph, a: int, b: int, restarts: int
    ) -> list[int] | None:
        for attempt in range(restarts):
            path = self.attempt_path(graph, a, b)
            if path is not None:
                logger.debug(
                    f"{self.display_name}: {a}-{b} path after {attempt + 1} attempts"
                )
                return path
        return None
