"""Exact Ulrich-bundle invariants on threefold scrolls over Hirzebruch surfaces."""

from .chow import (
    Codim2Class,
    DivisorClass,
    ScrollParams,
    mul_div_c2,
    mul_div_div,
    numerical_invariants,
    triple,
)
from .cohomology import (
    CohomologyVector,
    chi,
    chi_closed_form,
    h_hirzebruch,
    h_p1,
    h_scroll,
    serre_dual,
)
from .extensions import (
    InapplicableCaseError,
    InstantonTriple,
    ModuliPrediction,
    Rank2ExtensionRecord,
    VanishingHypothesisError,
    chi_endomorphisms_rank2,
    enumerate_cases,
    ext1_dim,
    extension_chern,
    h2_endomorphisms_rank2,
    instanton_admissible,
    moduli_prediction,
    twisted_chern,
)
from .tower import (
    ClosedFormMismatchError,
    TowerBundle,
    chi_endo_tower,
    chi_tower_vs_line,
    epsilon,
    moduli_dim_gap,
    moduli_dim_tower,
    tower_chern,
    tower_h1_recursion,
)
from .ulrich import (
    UlrichLineBundleRecord,
    base_swap,
    classify_ulrich_line_bundles,
    is_special_rank2,
    is_ulrich_line,
    named_line_bundles,
    pullback_obstruction,
    pullback_obstruction_report,
    slope,
    ulrich_dual,
)

__all__ = [
    "Codim2Class",
    "CohomologyVector",
    "ClosedFormMismatchError",
    "DivisorClass",
    "InapplicableCaseError",
    "InstantonTriple",
    "ModuliPrediction",
    "Rank2ExtensionRecord",
    "ScrollParams",
    "TowerBundle",
    "UlrichLineBundleRecord",
    "VanishingHypothesisError",
    "base_swap",
    "chi",
    "chi_closed_form",
    "chi_endo_tower",
    "chi_endomorphisms_rank2",
    "chi_tower_vs_line",
    "classify_ulrich_line_bundles",
    "enumerate_cases",
    "epsilon",
    "ext1_dim",
    "extension_chern",
    "h2_endomorphisms_rank2",
    "h_hirzebruch",
    "h_p1",
    "h_scroll",
    "instanton_admissible",
    "is_special_rank2",
    "is_ulrich_line",
    "moduli_dim_gap",
    "moduli_dim_tower",
    "moduli_prediction",
    "mul_div_c2",
    "mul_div_div",
    "named_line_bundles",
    "numerical_invariants",
    "pullback_obstruction",
    "pullback_obstruction_report",
    "serre_dual",
    "slope",
    "tower_chern",
    "tower_h1_recursion",
    "triple",
    "twisted_chern",
    "ulrich_dual",
]
