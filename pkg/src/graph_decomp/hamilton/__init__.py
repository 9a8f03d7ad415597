from graph_decomp.hamilton.engine import HamiltonEngine, create_search
from graph_decomp.hamilton.factors import (
    merge_factors,
    one_factorization,
    two_factorization,
)

__all__ = [
    "HamiltonEngine",
    "create_search",
    "merge_factors",
    "one_factorization",
    "two_factorization",
]
