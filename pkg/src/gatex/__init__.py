"""Strudigrams, modular decomposition, and galled-tree explanations."""

from . import errors
from .strudigram import (
    PRIME,
    Strudigram,
    cr_isomorphic,
    find_p4,
    find_rainbow_triangle,
    k_join,
    quotient,
    validate,
)
from .moddec import (
    ModularDecompositionTree,
    build_mdt,
    enumerate_modules_oracle,
    is_module,
    is_primitive,
    is_truly_primitive,
    maximal_strong_partition,
    series_label,
    smallest_module,
    strong_modules,
)
from .network import (
    Caterpillar,
    ClusteringSystem,
    GallDescriptor,
    Network,
    NetworkClass,
    biconnected_components,
    clustering_minus_vertex,
    galled_tree_classify,
    galls,
    has_k_lca_property,
    hasse,
    is_caterpillar,
    is_gall,
    is_global_lca,
    leaf_extended,
    module_id,
    subnetwork_rooted_at,
    to_dot,
    to_extended_newick,
    validate_network,
)
from .explain import (
    dense_lca_network,
    derive_strudigram,
    discriminating_tree,
    restrict_explanation,
    verify_explains,
)
from .recognition import (
    PolarCatWitness,
    PrimeExplainingFamily,
    build_elementary_galled_tree,
    check_polar_cat,
    prime_explaining_family,
    pvr_network,
    recognize_gatex,
)
from .generators import (
    gen_polar_cat_network,
    gen_random_dag_network,
    gen_random_galled_tree,
    gen_random_strudigram,
)

__version__ = "0.1.0"

__all__ = [
    "PRIME",
    "Strudigram",
    "cr_isomorphic",
    "find_p4",
    "find_rainbow_triangle",
    "k_join",
    "quotient",
    "validate",
    "ModularDecompositionTree",
    "build_mdt",
    "enumerate_modules_oracle",
    "is_module",
    "is_primitive",
    "is_truly_primitive",
    "maximal_strong_partition",
    "series_label",
    "smallest_module",
    "strong_modules",
    "Caterpillar",
    "ClusteringSystem",
    "GallDescriptor",
    "Network",
    "NetworkClass",
    "biconnected_components",
    "clustering_minus_vertex",
    "galled_tree_classify",
    "galls",
    "has_k_lca_property",
    "hasse",
    "is_caterpillar",
    "is_gall",
    "is_global_lca",
    "leaf_extended",
    "module_id",
    "subnetwork_rooted_at",
    "to_dot",
    "to_extended_newick",
    "validate_network",
    "dense_lca_network",
    "derive_strudigram",
    "discriminating_tree",
    "restrict_explanation",
    "verify_explains",
    "PolarCatWitness",
    "PrimeExplainingFamily",
    "build_elementary_galled_tree",
    "check_polar_cat",
    "prime_explaining_family",
    "pvr_network",
    "recognize_gatex",
    "gen_polar_cat_network",
    "gen_random_dag_network",
    "gen_random_galled_tree",
    "gen_random_strudigram",
    "errors",
]
