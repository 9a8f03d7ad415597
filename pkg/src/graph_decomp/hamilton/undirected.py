"""Rotation-extension (Posa) search for undirected Hamilton cycles and paths."""

import logging

from graph_decomp.graph import AnyGraph, Graph
from graph_decomp.hamilton.base import HamiltonSearch

logger = logging.getLogger(__name__)


class PosaSearch(HamiltonSearch):
    @property
    def display_name(self) -> str:
        return "rotation-extension"

    def detect(self, graph: AnyGraph) -> bool:
        return isinstance(graph, Graph)

    def _pick(self, options: list[int]) -> int:
        return options[int(self.rng.integers(len(options)))]

    def _fresh(self, adj, v: int, pos: dict[int, int]) -> list[int]:
        return sorted(u for u in adj[v] if u not in pos)

    def _rotate(self, path: list[int], pos: dict[int, int], pivot: int) -> None:
        """Reverse the segment after path[pivot]; the tail becomes path[pivot + 1]."""
        path[pivot + 1 :] = path[pivot + 1 :][::-1]
        for i in range(pivot + 1, len(path)):
            pos[path[i]] = i

    def _extend(self, adj, path: list[int], pos: dict[int, int], options: list[int]):
        # Prefer the neighbour with the fewest unvisited neighbours of its own.
        scores = [sum(1 for x in adj[u] if x not in pos) for u in options]
        best = min(scores)
        u = self._pick([u for u, s in zip(options, scores, strict=True) if s == best])
        pos[u] = len(path)
        path.append(u)

    def attempt_cycle(self, graph: Graph, start: int) -> list[int] | None:
        n = graph.n
        adj = graph.adjacency
        path = [start]
        pos = {start: 0}
        for _ in range(self.step_limit(n)):
            tail = path[-1]
            fresh = self._fresh(adj, tail, pos)
            if fresh:
                self._extend(adj, path, pos, fresh)
                continue
            head = path[0]
            if self._fresh(adj, head, pos):
                path.reverse()
                pos = {v: i for i, v in enumerate(path)}
                continue
            closes = len(path) >= 3 and head in adj[tail]
            if len(path) == n:
                if closes:
                    return path
            elif closes:
                # Closed a cycle that misses vertices: reopen it next to an
                # outside neighbour so the tail can extend again.
                exits = [i for i, v in enumerate(path) if self._fresh(adj, v, pos)]
                if not exits:
                    return None
                i = self._pick(exits)
                path = path[i + 1 :] + path[: i + 1]
                pos = {v: j for j, v in enumerate(path)}
                continue
            pivots = sorted(pos[u] for u in adj[tail] if pos[u] < len(path) - 2)
            if not pivots:
                return None
            self._rotate(path, pos, self._pick(pivots))
        return None

    def attempt_path(self, graph: Graph, a: int, b: int) -> list[int] | None:
        """Rotations keep path[0] == a pinned; stop once b is the spanning tail."""
        n = graph.n
        adj = graph.adjacency
        if n == 2:
            return [a, b] if b in adj[a] else None
        path = [a]
        pos = {a: 0}
        for _ in range(self.step_limit(n)):
            tail = path[-1]
            if len(path) == n and tail == b:
                return path
            fresh = self._fresh(adj, tail, pos)
            if len(path) < n - 1:
                fresh = [u for u in fresh if u != b]
            if fresh:
                self._extend(adj, path, pos, fresh)
                continue
            pivots = sorted(pos[u] for u in adj[tail] if pos[u] < len(path) - 2)
            if not pivots:
                return None
            # Rotating at pivot i makes path[i + 1] the tail; take b when offered.
            steer = [i for i in pivots if path[i + 1] == b and len(path) == n]
            self._rotate(path, pos, steer[0] if steer else self._pick(pivots))
        return None
