"""Cycle, path, linear forest and edge-colouring decompositions of dense graphs."""

__version__ = "0.1.0"

from .api import (
    chromatic_index_color,
    decompose_cycles,
    decompose_cycles_plus_matching,
    decompose_linear_forests,
    decompose_paths,
    diagnostics,
    generate,
    hamilton_decompose,
    linear_arboricity_regular,
    orient,
    sweep,
    verify,
)
from .errors import (
    DecompositionError,
    HypothesisViolatedError,
    NotFoundError,
    UsageError,
)
from .graph import Digraph, Graph, Multigraph
from .models import (
    Decomposition,
    DecompositionKind,
    EdgeColoring,
    OrientationConfig,
    PairList,
    QuasirandomParams,
    VerificationReport,
)

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
    "Graph",
    "Digraph",
    "Multigraph",
    "Decomposition",
    "DecompositionKind",
    "EdgeColoring",
    "OrientationConfig",
    "PairList",
    "QuasirandomParams",
    "VerificationReport",
    "DecompositionError",
    "HypothesisViolatedError",
    "NotFoundError",
    "UsageError",
    "__version__",
]
