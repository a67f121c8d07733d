"""QUBO formulations and solvers for snake-in-the-box style problems."""

from .errors import CapExceededError, SnakeboxError, ValidationError
from .graphs import (CitbHostGraph, Graph, citb_host_graph, cycle_graph,
                     cycle_search_host, hypercube_graph, path_graph)
from .qubo import Qubo
from .formulations import (PenaltyWeights, ProblemInstance, VariableLayout,
                           build_citb, build_induced_subgraph,
                           build_longest_induced_cycle,
                           build_longest_induced_path, build_mcis, build_qubo,
                           build_sitb, default_weights, instance_from_meta,
                           validate_weights)
from .solver import AnnealConfig, SolveResult, anneal, exact_solve
from .decode import (DecodedSolution, decode, is_induced_cycle,
                     is_induced_path, solution_report, verify_sequence)
from .oracle import (OracleResult, longest_induced_cycle,
                     longest_induced_path, max_common_induced_subgraph)
from .tables import BEST_KNOWN, best_known

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig", "BEST_KNOWN", "CapExceededError", "CitbHostGraph",
    "DecodedSolution", "Graph", "OracleResult", "PenaltyWeights",
    "ProblemInstance", "Qubo", "SnakeboxError", "SolveResult",
    "ValidationError", "VariableLayout", "anneal", "best_known",
    "build_citb", "build_induced_subgraph", "build_longest_induced_cycle",
    "build_longest_induced_path", "build_mcis", "build_qubo", "build_sitb",
    "citb_host_graph", "cycle_graph", "cycle_search_host", "decode",
    "default_weights", "exact_solve", "hypercube_graph", "instance_from_meta",
    "is_induced_cycle", "is_induced_path", "longest_induced_cycle",
    "longest_induced_path", "max_common_induced_subgraph", "path_graph",
    "solution_report", "validate_weights", "verify_sequence",
]
