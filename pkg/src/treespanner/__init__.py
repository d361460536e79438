"""Tree spanners and tree stretch indexes for graphs with few P4's and (k, l)-graphs."""

from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    GraphFormatError,
    bfs_distances,
    complement,
    connectivity,
    parse_graph,
    serialize_graph,
    triconnected_components,
    universal_vertices,
)
from .oracle import (
    SpanningTree,
    StretchCertificate,
    enumerate_spanning_trees,
    exact_stretch_index,
    is_t_admissible_bruteforce,
    tree_stretch_factor,
)

__version__ = "0.1.0"

__all__ = [
    "DisconnectedGraphError",
    "Graph",
    "GraphError",
    "GraphFormatError",
    "SpanningTree",
    "StretchCertificate",
    "bfs_distances",
    "complement",
    "connectivity",
    "enumerate_spanning_trees",
    "exact_stretch_index",
    "is_t_admissible_bruteforce",
    "parse_graph",
    "serialize_graph",
    "tree_stretch_factor",
    "triconnected_components",
    "universal_vertices",
]
