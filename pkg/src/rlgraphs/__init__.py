"""Constructions, induced-subgraph censuses and certificates for random-like graphs."""

from __future__ import annotations

__version__ = "0.1.0"

from .analyzers import (
    CliqueResult,
    ObstructionCertificate,
    UniversalityReport,
    canonical_form,
    clique_number,
    enumerate_classes,
    has_induced,
    independence_number,
    is_l_universal,
    limit_table,
    obstruction_certificate,
)
from .census import (
    Census4,
    ClassId4,
    DensityVector,
    Profile3,
    census4,
    census4_brute,
    densities,
    exceptional_vertices,
    induced_count,
    profile3,
    profile3_brute,
    quasirandom_deviation,
    verify_edge_pair_identity,
    verify_goodman,
    verify_vertex_edge_identities,
)
from .constructions import (
    ConstructionSpec,
    cgw,
    doubled,
    gnp,
    iterated_blowup,
    oplus_tower,
    random_join,
)
from .errors import GraphError
from .graph import (
    OPTIMAL_R,
    Graph,
    blow_up,
    circulant,
    codegree,
    codegree_minus,
    complement,
    complete_graph,
    degree,
    empty_graph,
    from_edge_list,
    induced,
)

__all__ = [
    "__version__",
    "GraphError",
    "CliqueResult",
    "ObstructionCertificate",
    "UniversalityReport",
    "canonical_form",
    "clique_number",
    "enumerate_classes",
    "has_induced",
    "independence_number",
    "is_l_universal",
    "limit_table",
    "obstruction_certificate",
    "Census4",
    "ClassId4",
    "DensityVector",
    "Profile3",
    "census4",
    "census4_brute",
    "densities",
    "exceptional_vertices",
    "induced_count",
    "profile3",
    "profile3_brute",
    "quasirandom_deviation",
    "verify_edge_pair_identity",
    "verify_goodman",
    "verify_vertex_edge_identities",
    "ConstructionSpec",
    "cgw",
    "doubled",
    "gnp",
    "iterated_blowup",
    "oplus_tower",
    "random_join",
    "OPTIMAL_R",
    "Graph",
    "blow_up",
    "circulant",
    "codegree",
    "codegree_minus",
    "complement",
    "complete_graph",
    "degree",
    "empty_graph",
    "from_edge_list",
    "induced",
]
