"""Topology of edge-colored graphs: genera, Gurau degree, dipole moves,
exhaustive catalogs and tensor-model Feynman graph counts."""

from .graph import (
    COLOR_FIXED,
    COLOR_FREE,
    ColoredGraph,
    bipartition,
    canonical_code,
    colorset,
    connected_components,
    graph_from_code,
    is_bipartite,
    is_connected,
    new_graph,
    order_two_graph,
    residues,
    torus_gem,
)
from .halfint import HalfInteger
from .moves import add_dipole, contract, eliminate, find_dipoles, is_contracted, is_proper, reduce
from .tensor import expansion_histogram, feynman_graph, quartic_invariant
from .topology import (
    all_regular_genera,
    euler_characteristic,
    gurau_degree,
    gurau_degree_recursive,
    membership_in_Gs,
    regular_genus,
    regular_genus_min,
    singularity_profile,
    surface_type,
)
from .triangulation import Pseudocomplex, from_triangulation, simplex_boundary

__version__ = "0.1.0"

__all__ = [
    "COLOR_FIXED", "COLOR_FREE", "ColoredGraph", "HalfInteger", "Pseudocomplex",
    "add_dipole", "all_regular_genera", "bipartition", "canonical_code", "colorset",
    "connected_components", "contract", "eliminate", "euler_characteristic",
    "expansion_histogram", "feynman_graph", "find_dipoles", "from_triangulation",
    "graph_from_code", "gurau_degree", "gurau_degree_recursive", "is_bipartite",
    "is_connected", "is_contracted", "is_proper", "membership_in_Gs", "new_graph",
    "order_two_graph", "quartic_invariant", "reduce", "regular_genus", "regular_genus_min",
    "residues", "simplex_boundary", "singularity_profile", "surface_type", "torus_gem",
]
