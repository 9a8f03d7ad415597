from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any

from graph_decomp.errors import UsageError

Edge = tuple[int, int]


@dataclass(frozen=True)
class DegreeProfile:
    max_degree: int
    """Δ(G)"""

    min_degree: int
    """δ(G)"""

    odd_count: int
    """Number of odd-degree vertices; always even"""

    odd_set: frozenset[int]
    """The odd-degree vertices themselves"""

    max_degree_vertices: frozenset[int]
    """Vertices attaining Δ(G)"""

    @property
    def spread(self) -> int:
        return self.max_degree - self.min_degree

    @property
    def unique_max(self) -> bool:
        return len(self.max_degree_vertices) == 1


@dataclass(frozen=True)
class PairList:
    """Disjoint vertex pairs (x, y), conventionally with d(x) <= d(y)."""

    pairs: tuple[Edge, ...] = ()

    def __post_init__(self):
        seen: set[int] = set()
        for x, y in self.pairs:
            if x == y:
                raise UsageError(f"pair ({x}, {y}) repeats a vertex")
            if x in seen or y in seen:
                raise UsageError(f"pairs are not disjoint at ({x}, {y})")
            seen.update((x, y))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for pair in self.pairs for v in pair)

    def oriented(self, degrees: list[int]) -> "PairList":
        """Reorder each pair so the lower-degree endpoint comes first."""
        return PairList(
            tuple((y, x) if degrees[x] > degrees[y] else (x, y) for x, y in self.pairs)
        )

    def separated_by(self, members: frozenset[int]) -> Edge | None:
        """First pair with exactly one endpoint in members, if any."""
        for x, y in self.pairs:
            if (x in members) != (y in members):
                return (x, y)
        return None

    def inconsistency(self, part_vertices: frozenset[int]) -> Edge | None:
        """First pair with x in the part but y outside it."""
        for x, y in self.pairs:
            if x in part_vertices and y not in part_vertices:
                return (x, y)
        return None


class DecompositionKind(str, Enum):
    CYCLES = "cycles"
    PATHS = "paths"
    LINEAR_FORESTS = "forests"
    EDGE_COLORING = "coloring"


@dataclass(frozen=True)
class Decomposition:
    kind: DecompositionKind
    parts: tuple[frozenset[Edge], ...]
    """Edge sets; canonical (min, max) pairs or arcs when directed"""

    n: int
    """Vertex count of the host"""

    directed: bool = False

    sequences: tuple[tuple[int, ...], ...] | None = None
    """Vertex sequence per part for cycles and paths"""

    matching: tuple[Edge, ...] = ()
    """Leftover matching edges of a cycles-plus-matching decomposition"""

    best_effort: bool = False
    """Set when the input was outside the regime the count guarantee needs"""

    @property
    def count(self) -> int:
        return len(self.parts)

    def all_edges(self) -> list[Edge]:
        result = [e for part in self.parts for e in part]
        result.extend(self.matching)
        return result


@dataclass(frozen=True)
class EdgeColoring:
    colors: dict[Edge, int]
    """Canonical edge -> colour index in 1..K"""

    n: int

    method: str = "pipeline"
    """One of pipeline, exact, vizing"""

    trusted: bool = True
    """Whether the input passed the regime diagnostics"""

    @property
    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def color_classes(self) -> dict[int, frozenset[Edge]]:
        classes: dict[int, set[Edge]] = {}
        for e, c in self.colors.items():
            classes.setdefault(c, set()).add(e)
        return {c: frozenset(es) for c, es in sorted(classes.items())}

    def as_decomposition(self) -> Decomposition:
        """Colour classes as parts; a Vizing colouring carries no Δ guarantee."""
        return Decomposition(
            kind=DecompositionKind.EDGE_COLORING,
            parts=tuple(self.color_classes().values()),
            n=self.n,
            best_effort=self.method == "vizing",
        )


@dataclass(frozen=True)
class QuasirandomParams:
    p: float
    """Edge density"""

    eps: float = 0.1
    """Regularity slack"""

    eta: float = 0.1
    """Degree-spread bound: Δ - δ <= eta * n"""

    alpha: float | None = None
    """Min-degree fraction; defaults to p / 2"""

    nu: float | None = None
    """Robust-expansion threshold; defaults to eps"""

    tau: float = 0.2
    """Robust-expansion set-size fraction"""

    retry_budget: int = 100
    backtrack_depth: int = 3

    def __post_init__(self):
        if self.alpha is None:
            object.__setattr__(self, "alpha", self.p / 2)
        if self.nu is None:
            object.__setattr__(self, "nu", self.eps)
        if not 0 < self.p < 1:
            raise UsageError(f"density p must lie in (0, 1), got {self.p}")
        if not 0 < self.eps <= self.eta < self.p:
            raise UsageError(
                f"need 0 < eps <= eta < p, got eps={self.eps} eta={self.eta} p={self.p}"
            )
        if not 0 < self.nu <= self.tau < 1:
            raise UsageError(f"need 0 < nu <= tau < 1, got nu={self.nu} tau={self.tau}")
        if not 0 < self.alpha < 1:
            raise UsageError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.retry_budget < 1:
            raise UsageError("retry_budget must be at least 1")
        if self.backtrack_depth < 0:
            raise UsageError("backtrack_depth must be non-negative")


@dataclass(frozen=True)
class OrientationConfig:
    gamma: float = 0.1
    """Imbalance tolerance"""

    xi: float = 0.05
    """Target degree fraction for the flow-corrected part"""

    retry_budget: int = 100

    def __post_init__(self):
        if not 0 < self.gamma < 1 or not 0 < self.xi < 1:
            raise UsageError("gamma and xi must lie in (0, 1)")
        if self.retry_budget < 1:
            raise UsageError("retry_budget must be at least 1")


@dataclass(frozen=True)
class DegreePrescription:
    n_plus: tuple[int, ...]
    n_minus: tuple[int, ...]

    def __post_init__(self):
        if len(self.n_plus) != len(self.n_minus):
            raise UsageError("prescription vectors differ in length")
        if any(x < 0 for x in self.n_plus) or any(x < 0 for x in self.n_minus):
            raise UsageError("prescribed degrees must be non-negative")
        if sum(self.n_plus) != sum(self.n_minus):
            raise UsageError(
                f"out-targets sum to {sum(self.n_plus)}, in-targets to {sum(self.n_minus)}"
            )


@dataclass(frozen=True)
class SplitPartition:
    members: frozenset[int]
    """S; the complement is implicit"""

    n: int

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.members


@dataclass(frozen=True)
class OddPairing:
    pairs: PairList
    e_star: tuple[Edge, ...] = ()
    """Pairs that are edges of G"""

    e_circ: tuple[Edge, ...] = ()
    """Pairs that are non-edges of G"""

    w_pairs: tuple[Edge, ...] = ()
    """Pairs joined to the auxiliary vertex (odd >= Δ only)"""


@dataclass(frozen=True)
class DeficiencyVector:
    values: tuple[int, ...]
    """Δ(G) - d(v) per vertex"""

    @property
    def order(self) -> list[int]:
        """Vertices by descending deficiency, ties by id."""
        return sorted(range(len(self.values)), key=lambda v: (-self.values[v], v))

    @property
    def sorted_desc(self) -> tuple[int, ...]:
        return tuple(self.values[v] for v in self.order)


class ColorClass(str, Enum):
    CLASS_1_CANDIDATE = "class-1-candidate"
    CLASS_2 = "class-2"


@dataclass(frozen=True)
class Violation:
    invariant: str
    witness: str


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    kind: DecompositionKind
    expected_count: int
    actual_count: int
    violations: tuple[Violation, ...] = ()
    best_effort: bool = False
    """Count mismatches are tolerated and reported only"""

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["kind"] = self.kind.value
        data["violations"] = [[v.invariant, v.witness] for v in self.violations]
        return data


@dataclass(frozen=True)
class GnpDiagnostics:
    n: int
    edge_count: int
    max_degree: int
    min_degree: int
    spread: int
    spread_bound: float
    """4 sqrt(n log n)"""

    spread_ok: bool
    unique_max: bool
    odd_count: int
    odd_fraction: float
    p: float


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: float
    seed: int
    task: str
    success: bool
    count: int | None
    bound: int | None
    dominant: str | None
    """Which term of the path bound is larger: odd, delta or tie"""

    unique_max: bool
    seconds: float
    error: str | None = None


@dataclass(frozen=True)
class SweepSummary:
    n: int
    p: float
    task: str
    runs: int
    successes: int
    mean_seconds: float
    odd_dominant: int
    delta_dominant: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.runs if self.runs else 0.0


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    summaries: tuple[SweepSummary, ...] = field(default=())
