"""Exact-arithmetic topological analysis toolkit.

Simplicial and Dowker homology of relations extracted from straight-line
code, path homology of directed graphs, activation-sheaf and local-homology
analysis of wireless networks, and 1D topological mixture estimation.
"""

__version__ = "0.1.0"

from . import datasets
from .complexes import (
    SimplicialComplex,
    clique_complex,
    from_facets,
    read_facets,
)
from .dowker import (
    Relation,
    WindowProfile,
    dowker_betti,
    dowker_complex,
    parse_straightline,
    windowed_profile,
)
from .errors import InternalCheckError, ParseError
from .homology import (
    BettiProfile,
    ChainComplex,
    betti,
    local_homology,
    relative_chain_complex,
    simplicial_chain_complex,
)
from .linalg import FieldTag, GF2Matrix, RationalMatrix
from .pathhom import (
    Digraph,
    PathBasis,
    allowed_paths,
    cyclomatic,
    digraph_from_arcs,
    omega,
    path_betti,
)
from .tme import (
    BandwidthScan,
    DensityGrid,
    UnimodalDecomposition,
    kde,
    select_bandwidth,
    sweep_decompose,
    unimodal_category,
)
from .wireless import (
    ActivationSheaf,
    SheafSection,
    WirelessNetwork,
    WirelessNode,
    activation_sheaf,
    active_region,
    criticality_report,
    global_sections,
    interference_complex,
    link_complex,
    random_geometric_network,
    region_of_influence,
    traffic_sim,
    vector_sheaf_cohomology,
)

__all__ = [
    "ActivationSheaf",
    "datasets",
    "BandwidthScan",
    "BettiProfile",
    "ChainComplex",
    "DensityGrid",
    "Digraph",
    "FieldTag",
    "GF2Matrix",
    "InternalCheckError",
    "ParseError",
    "PathBasis",
    "RationalMatrix",
    "Relation",
    "SheafSection",
    "SimplicialComplex",
    "UnimodalDecomposition",
    "WindowProfile",
    "WirelessNetwork",
    "WirelessNode",
    "activation_sheaf",
    "active_region",
    "allowed_paths",
    "betti",
    "clique_complex",
    "criticality_report",
    "cyclomatic",
    "digraph_from_arcs",
    "dowker_betti",
    "dowker_complex",
    "from_facets",
    "global_sections",
    "interference_complex",
    "kde",
    "link_complex",
    "local_homology",
    "omega",
    "parse_straightline",
    "path_betti",
    "random_geometric_network",
    "read_facets",
    "region_of_influence",
    "relative_chain_complex",
    "select_bandwidth",
    "simplicial_chain_complex",
    "sweep_decompose",
    "traffic_sim",
    "unimodal_category",
    "vector_sheaf_cohomology",
    "windowed_profile",
]
