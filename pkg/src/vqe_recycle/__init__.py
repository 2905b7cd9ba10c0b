"""Parameter recycling and accelerated training for VQE on MaxCut.

Pipeline: ingest a road-network edge list, sample source/target subgraph
pairs bucketed by the Hamming distance between their optimal MaxCut
solutions, pre-train circuit angles on each source, recycle them on the
target, and compare convergence and solution quality against near-zero
and random baselines at full and reduced evaluation budgets.
"""

from .graphs import Graph, Network, induced_subgraph, is_connected, load_network, parse_edge_list
from .maxcut import OptimaSet, brute_force_optima, cut_value, hamming, min_hamming_distance
from .optimize import OptimizerConfig, OptimizeResult, minimize
from .sampling import Dataset, GraphPair, build_dataset, sample_pair, sample_subgraph
from .simulator import AnsatzSpec, build_ansatz_state, diagonal_hamiltonian, expectation
from .vqe import InitStrategy, RunRecord, approximation_ratio, run_vqe
from .experiment import AggregateStats, ExperimentConfig, PairResult, aggregate, run_experiment

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "AnsatzSpec",
    "Dataset",
    "ExperimentConfig",
    "Graph",
    "GraphPair",
    "InitStrategy",
    "Network",
    "OptimaSet",
    "OptimizeResult",
    "OptimizerConfig",
    "PairResult",
    "RunRecord",
    "aggregate",
    "approximation_ratio",
    "brute_force_optima",
    "build_ansatz_state",
    "build_dataset",
    "cut_value",
    "diagonal_hamiltonian",
    "expectation",
    "hamming",
    "induced_subgraph",
    "is_connected",
    "load_network",
    "min_hamming_distance",
    "minimize",
    "parse_edge_list",
    "run_experiment",
    "run_vqe",
    "sample_pair",
    "sample_subgraph",
]
