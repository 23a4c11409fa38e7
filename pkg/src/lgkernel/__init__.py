"""Line-graph recognition and a polynomial kernel for Line-Graph Edge Deletion."""

from .generators import GenerationError, GenSpec, SplitMix64, chain_instance, planted_instance, random_root
from .graph import Graph, MalformedInputError, line_graph_of, parse_edge_list, read_edge_list, write_edge_list
from .kernel import KernelInvariantError, KernelOutcome, build_levels, kernel_bound, kernelize
from .patterns import Modulator, TooManyPacked, beineke_patterns, build_modulator, find_forbidden_subgraph
from .recognition import (
    CliquePartitionWitness,
    InvalidWitnessError,
    RootGraph,
    is_line_graph,
    recognize,
    recognize_via_odd_triangles,
    root_graph,
    validate_witness,
)
from .solver import InstanceTooLargeError, Solution, min_deletion, solve_branching, solve_bruteforce

__all__ = [
    "CliquePartitionWitness", "GenSpec", "GenerationError", "Graph", "InstanceTooLargeError",
    "InvalidWitnessError", "KernelInvariantError", "KernelOutcome", "MalformedInputError", "Modulator",
    "RootGraph", "Solution", "SplitMix64", "TooManyPacked", "beineke_patterns", "build_levels",
    "build_modulator", "chain_instance", "find_forbidden_subgraph", "is_line_graph", "kernel_bound",
    "kernelize", "line_graph_of", "min_deletion", "parse_edge_list", "planted_instance", "random_root",
    "read_edge_list", "recognize", "recognize_via_odd_triangles", "root_graph", "solve_branching",
    "solve_bruteforce", "validate_witness", "write_edge_list",
]
