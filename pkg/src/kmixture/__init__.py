"""K-optimal designs for Scheffe mixture models."""

__version__ = "0.1.0"

from .analytic import (
    compare_k_and_d,
    k_optimal_first_order,
    k_optimal_second_order,
    second_order_weights,
    symmetric_block_matrix,
    symmetric_condition_number,
    symmetric_extreme_eigenvalues,
    weight_table,
)
from .basis import Order, ScheffeBasis, eval_basis, pair_incidence
from .designs import ComponentBounds, Design
from .metrics import (
    condition_number,
    d_efficiency,
    evaluate_design,
    information_matrix,
    k_efficiency,
    log_det,
    spectrum,
)
from .optimize import Criterion, OptimizeSpec, multiplicative_d_optimal, objective_value, optimize_weights
from .simplex import (
    Direction,
    from_pseudo_lower,
    from_pseudo_upper,
    simplex_centroid,
    simplex_lattice,
    to_pseudo_lower,
    to_pseudo_upper,
    transform_design,
    vertices_and_midpoints,
)
from .symmetry import symmetrize
