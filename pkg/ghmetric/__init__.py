from ghmetric.config import Limits
from ghmetric.errors import (
    CauchyBoundViolatedError,
    GHMetricError,
    ParseError,
    SizeLimitError,
    TriangleViolationError,
    ValidationError,
)
from ghmetric.generators import GeneratorParams, cauchy_perturbation_sequence, generate, perturb
from ghmetric.gh import (
    distortion,
    gh_dist,
    gh_dist_bnb,
    gh_dist_bruteforce,
    greedy_correspondence,
    lower_bound_diam,
    upper_bound_full,
)
from ghmetric.gluing import build_tower, cauchy_limit, copy_hausdorff, glue, tower_extend
from ghmetric.hausdorff import directed_hausdorff, hausdorff_dist, in_neighborhood
from ghmetric.io import RunReport, SpaceFile, emit_space, parse_space
from ghmetric.metric import (
    canonicalize,
    diam,
    disjoint_union,
    eccentricities,
    gh_class,
    identity_embedding,
    is_isometric,
    quotient_zero,
    relabel,
    subspace,
    validate,
    validate_semimetric,
)
from ghmetric.models import (
    CanonicalForm,
    CauchyBounds,
    CauchyLimit,
    Correspondence,
    FiniteMetricSpace,
    GHResult,
    GluedSpace,
    IsometricEmbedding,
    KuratowskiEmbedding,
    Quotient,
    Realization,
    SemiMetricSpace,
    SupNormImages,
    SupNormPoint,
    TowerLevel,
)
from ghmetric.realization import (
    common_kuratowski_embed,
    isometry_from_realization,
    kuratowski_embed,
    realize,
    realize_in_sup_norm,
    realizing_cross_distance,
)

__all__ = [
    "Limits",
    "CauchyBoundViolatedError",
    "GHMetricError",
    "ParseError",
    "SizeLimitError",
    "TriangleViolationError",
    "ValidationError",
    "GeneratorParams",
    "cauchy_perturbation_sequence",
    "generate",
    "perturb",
    "distortion",
    "gh_dist",
    "gh_dist_bnb",
    "gh_dist_bruteforce",
    "greedy_correspondence",
    "lower_bound_diam",
    "upper_bound_full",
    "build_tower",
    "cauchy_limit",
    "copy_hausdorff",
    "glue",
    "tower_extend",
    "directed_hausdorff",
    "hausdorff_dist",
    "in_neighborhood",
    "RunReport",
    "SpaceFile",
    "emit_space",
    "parse_space",
    "canonicalize",
    "diam",
    "disjoint_union",
    "eccentricities",
    "gh_class",
    "identity_embedding",
    "is_isometric",
    "quotient_zero",
    "relabel",
    "subspace",
    "validate",
    "validate_semimetric",
    "CanonicalForm",
    "CauchyBounds",
    "CauchyLimit",
    "Correspondence",
    "FiniteMetricSpace",
    "GHResult",
    "GluedSpace",
    "IsometricEmbedding",
    "KuratowskiEmbedding",
    "Quotient",
    "Realization",
    "SemiMetricSpace",
    "SupNormImages",
    "SupNormPoint",
    "TowerLevel",
    "common_kuratowski_embed",
    "isometry_from_realization",
    "kuratowski_embed",
    "realize",
    "realize_in_sup_norm",
    "realizing_cross_distance",
]
