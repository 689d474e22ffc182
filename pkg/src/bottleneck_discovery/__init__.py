"""Vantage-point selection for bottleneck capacity discovery."""
from .counting import (
    CountPolynomial,
    EdgeTree,
    build_edge_tree,
    count_black_white_colorings,
    count_good_labellings,
    essential_vantage_points,
    expected_reveals,
    reveal_probability,
)
from .estimators import GreedyVantageSelector, PlanarVantageSelector, TreeVantageSelector
from .graph import (
    ShortestPathTree,
    WeightedGraph,
    build_graph,
    certify_unique_paths,
    path_between,
    read_graph,
    shortest_path_tree,
    write_graph,
)
from .greedy import GreedyTrace, greedy_non_adaptive
from .reveal import (
    CapacityAssignment,
    RevealReport,
    brute_force_opt,
    revealed_edges,
    revealed_edges_brute_force,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityAssignment",
    "CountPolynomial",
    "EdgeTree",
    "GreedyTrace",
    "GreedyVantageSelector",
    "PlanarVantageSelector",
    "RevealReport",
    "ShortestPathTree",
    "TreeVantageSelector",
    "WeightedGraph",
    "brute_force_opt",
    "build_edge_tree",
    "build_graph",
    "certify_unique_paths",
    "count_black_white_colorings",
    "count_good_labellings",
    "essential_vantage_points",
    "expected_reveals",
    "greedy_non_adaptive",
    "path_between",
    "read_graph",
    "reveal_probability",
    "revealed_edges",
    "revealed_edges_brute_force",
    "shortest_path_tree",
    "write_graph",
]
