"""Depth-first search for directed Hamilton cycles."""

import logging

from graph_decomp.graph import AnyGraph, Digraph
from graph_decomp.hamilton.base import HamiltonSearch

logger = logging.getLogger(__name__)


class DirectedSearch(HamiltonSearch):
    """Backtracking DFS ordered by fewest unvisited out-neighbours.

    Each attempt expands at most step_limit(n) vertices before giving up, so a
    restart with a new random start and new tie-breaks is cheap.
    """

    @property
    def display_name(self) -> str:
        return "directed-dfs"

    def detect(self, graph: AnyGraph) -> bool:
        return isinstance(graph, Digraph)

    def _order(self, out_adj, v: int, visited: set[int]) -> list[int]:
        options = [u for u in sorted(out_adj[v]) if u not in visited]
        if not options:
            return options
        noise = self.rng.random(len(options))
        keys = [
            (sum(1 for x in out_adj[u] if x not in visited), float(noise[i]))
            for i, u in enumerate(options)
        ]
        return [u for _, u in sorted(zip(keys, options, strict=True))]

    def attempt_cycle(self, graph: Digraph, start: int) -> list[int] | None:
        n = graph.n
        out_adj = graph.out_adjacency
        in_adj = graph.in_adjacency
        if n == 1:
            return None
        path = [start]
        visited = {start}
        stack = [iter(self._order(out_adj, start, visited))]
        budget = self.step_limit(n)
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                visited.discard(path.pop())
                continue
            if nxt in visited:
                continue
            budget -= 1
            if budget < 0:
                return None
            path.append(nxt)
            visited.add(nxt)
            if len(path) == n:
                if start in out_adj[nxt]:
                    return path
                visited.discard(path.pop())
                continue
            # The start must stay reachable: the tail or some unvisited
            # vertex has to point back into it.
            if not any(u == nxt or u not in visited for u in in_adj[start]):
                visited.discard(path.pop())
                continue
            stack.append(iter(self._order(out_adj, nxt, visited)))
        return None
