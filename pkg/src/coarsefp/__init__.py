"""Computational coarse geometry at desk scale.

Minimax centres and their stability in uniformly convex spaces, spectral
gaps of finite Cayley graphs, truncated bounded products with the
almost-invariant-vector iteration, affine isometric actions with a
displacement descent, Gaussian kernel embeddings, and exact rational
arithmetic on piecewise-linear circle-map lifts.
"""

from .actions import (
    AffineAction,
    DescentConfig,
    FixedPointResult,
    NoFixedPointEvidence,
    cocycle_check,
    coboundary_solve,
    compose_word,
    displacement,
    evaluate_word,
    fixed_point_search,
    gaussian_embedding,
    lipschitz_check,
    parse_word,
    reduce_word,
)
from .bounded_product import (
    BlockRep,
    GrowthTable,
    IterationTrace,
    KazhdanDisplacementReport,
    TruncatedProduct,
    almost_invariant_iteration,
    block_rep,
    gap_projection_inequality_check,
    kazhdan_displacement_check,
    product_block_action,
    product_gap,
    product_kazhdan_lower,
    unbounded_cocycle_demo,
)
from .centres import (
    BoundedSet,
    CentreSolve,
    CompactnessReport,
    ShoppingConfig,
    ShoppingResult,
    WeightedSet,
    annulus_invariance_check,
    centre_equivariance_check,
    chebyshev_centre,
    compactness_demo,
    hilbert_nested_bound_check,
    hull_distance,
    mean_centre,
    projected_radius,
    radius_at,
    shopping_centre,
    solve_centre,
    stability_bound_check,
    swap_family_set,
    swap_isometry,
)
from .errors import (
    CertificateError,
    CoarseFPError,
    ConvergenceError,
    InputError,
    InvariantViolation,
    NumericalError,
    ResourceLimitError,
)
from .groups import (
    FiniteGroup,
    GroupFamily,
    cayley_adjacency,
    make_cyclic,
    make_dihedral,
    make_product,
    make_sl2,
    make_symmetric,
    make_trivial,
    parse_family_spec,
    parse_group_spec,
    validate_group,
    word_lengths,
)
from .homeo import (
    CertificateReport,
    OBReport,
    PLLift,
    commutator,
    compose,
    corollary_certificate,
    evaluate,
    identity_lift,
    invert,
    ob_bounded_check,
    power,
    standard_a,
    standard_b,
    translation_lift,
)
from .spaces import (
    SpaceSpec,
    as_point,
    convexity_modulus,
    distance,
    hilbert,
    lp,
    midpoint,
    norm,
    stability_coefficient,
)
from .spectral import (
    ExpanderReport,
    SpectralReport,
    TensorGapResult,
    averaging_operator,
    expander_check,
    gap_certificate,
    spectral_report,
    spectrum,
    tensor_gap_check,
)

__version__ = "0.1.0"
