"""Exact computation and verification of one-term Yang-Baxter homology
for the standard operator family over the rational function field Q(y)."""

from .scalar import (
    PoleError,
    RatFunc,
    format_scalar,
    parse_scalar,
    quantum_factorial,
    quantum_int,
)
from .tensor import (
    LinMap,
    NeedMorePointsError,
    RankMismatchError,
    RankPolicy,
    Subspace,
    kernel_basis,
    place,
    rank_eval,
    rank_exact,
)
from .ybop import (
    YangBaxter,
    build_R,
    check_bracket_recursions,
    check_phi_formula,
    check_sigma_identities,
    check_ybe,
    inv_count,
)
from .kernel import (
    DecompositionReport,
    KernelTower,
    check_graded_algebra,
    check_kernel_vanishing,
    hilbert_check,
    kernel_dim_direct,
    kernel_dim_recurrence,
    omega,
    verify_decomposition,
    verify_generator_examples,
)
from .homology import (
    BoundaryRanks,
    FiniteModule,
    FreeModule,
    HomologyReport,
    betti_formula,
    betti_ranks,
    betti_ranks_stacked,
    boundary,
    homology_dims,
    koszul_check,
    load_module_spec,
    validate_module,
    verify_complex_splitting,
    wall_commutativity_trials,
)

__version__ = "0.1.0"

__all__ = [
    "PoleError",
    "RatFunc",
    "format_scalar",
    "parse_scalar",
    "quantum_factorial",
    "quantum_int",
    "LinMap",
    "NeedMorePointsError",
    "RankMismatchError",
    "RankPolicy",
    "Subspace",
    "kernel_basis",
    "place",
    "rank_eval",
    "rank_exact",
    "YangBaxter",
    "build_R",
    "check_bracket_recursions",
    "check_phi_formula",
    "check_sigma_identities",
    "check_ybe",
    "inv_count",
    "DecompositionReport",
    "KernelTower",
    "check_graded_algebra",
    "check_kernel_vanishing",
    "hilbert_check",
    "kernel_dim_direct",
    "kernel_dim_recurrence",
    "omega",
    "verify_decomposition",
    "verify_generator_examples",
    "BoundaryRanks",
    "FiniteModule",
    "FreeModule",
    "HomologyReport",
    "betti_formula",
    "betti_ranks",
    "betti_ranks_stacked",
    "boundary",
    "homology_dims",
    "koszul_check",
    "load_module_spec",
    "validate_module",
    "verify_complex_splitting",
    "wall_commutativity_trials",
    "__version__",
]
