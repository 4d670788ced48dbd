"""Optimal common embeddings of two spaces.

The distance on ``X ⊔ Y`` given by

    c(x, y) = min over (x', y') in R of d_X(x, x') + r + d_Y(y', y)

is a semimetric whenever ``r >= dis(R) / 2``. Every point sits at distance exactly ``r``
from one of its partners and at least ``r`` from everything across, so taking the optimal
correspondence and ``r`` equal to the GH distance realizes the distance as a Hausdorff
distance after merging points at distance zero.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

from ghmetric.config import Limits
from ghmetric.errors import ShapeMismatchError, SlackTooSmallError
from ghmetric.gh import distortion, gh_dist_bnb
from ghmetric.metric import disjoint_union, identity_embedding, quotient_zero
from ghmetric.models import (
    Correspondence,
    FiniteMetricSpace,
    IsometricEmbedding,
    KuratowskiEmbedding,
    Realization,
    SemiMetricSpace,
    SupNormImages,
    SupNormPoint,
    same_space,
    to_scalar,
)

logger = logging.getLogger(__name__)


def realizing_cross_distance(
    x: FiniteMetricSpace, y: FiniteMetricSpace, correspondence: Correspondence, r: object
) -> SemiMetricSpace:
    if not (same_space(correspondence.left, x) and same_space(correspondence.right, y)):
        raise ShapeMismatchError("correspondence does not relate the given spaces")
    slack = to_scalar(r)
    needed = distortion(correspondence) / 2
    if slack < needed:
        raise SlackTooSmallError(f"slack {slack} is below half the distortion ({needed})")

    dx, dy, pairs = x.dist, y.dist, correspondence.pairs
    cross = [
        [min(dx[i][k] + slack + dy[l][j] for k, l in pairs) for j in range(y.size)]
        for i in range(x.size)
    ]
    return disjoint_union(x, y, cross)


def realize(
    x: FiniteMetricSpace, y: FiniteMetricSpace, limits: Limits | None = None
) -> Realization:
    result = gh_dist_bnb(x, y, limits=limits)
    union = realizing_cross_distance(x, y, result.witness, result.value)
    quotient = quotient_zero(union)
    n = x.size
    logger.debug(
        "realized gh=%s in %d points (%d before merging)",
        result.value,
        quotient.space.size,
        union.size,
    )
    return Realization(
        glued=quotient.space,
        embed_left=IsometricEmbedding(
            source=x, target=quotient.space, mapping=quotient.projection[:n]
        ),
        embed_right=IsometricEmbedding(
            source=y, target=quotient.space, mapping=quotient.projection[n:]
        ),
        value=result.value,
        witness=result.witness,
    )


def isometry_from_realization(realization: Realization) -> tuple[int, ...] | None:
    """At distance zero both copies coincide; return the map X -> Y they induce."""
    if realization.value != 0:
        return None
    position = {t: j for j, t in enumerate(realization.embed_right.mapping)}
    return tuple(position[t] for t in realization.embed_left.mapping)


def kuratowski_embed(space: FiniteMetricSpace) -> KuratowskiEmbedding:
    """Send each point to its row of distances; an isometry for the sup norm."""
    points = tuple(SupNormPoint(coords=row) for row in space.dist)
    image = FiniteMetricSpace(
        labels=space.labels,
        dist=tuple(tuple(p.distance(q) for q in points) for p in points),
    )
    certificate = IsometricEmbedding(
        source=space, target=image, mapping=identity_embedding(space).mapping
    )
    return KuratowskiEmbedding(points=points, certificate=certificate)


def sup_norm_hausdorff(a: Sequence[SupNormPoint], b: Sequence[SupNormPoint]) -> Fraction:
    def directed(u: Sequence[SupNormPoint], v: Sequence[SupNormPoint]) -> Fraction:
        return max(min(p.distance(q) for q in v) for p in u)

    return max(directed(a, b), directed(b, a))


def common_kuratowski_embed(
    x: FiniteMetricSpace, y: FiniteMetricSpace, correspondence: Correspondence, r: object
) -> SupNormImages:
    """Embed both spaces in coordinates indexed by ``X ⊔ Y``.

    A point's coordinates are its distances in the realizing semimetric, so the
    coordinates belonging to the other space are filled with the cross distance.
    """
    union = realizing_cross_distance(x, y, correspondence, r)
    points = [SupNormPoint(coords=row) for row in union.dist]
    left, right = points[: x.size], points[x.size :]
    return SupNormImages(left=left, right=right, hausdorff=sup_norm_hausdorff(left, right))


def realize_in_sup_norm(
    x: FiniteMetricSpace, y: FiniteMetricSpace, limits: Limits | None = None
) -> SupNormImages:
    """Isometric images of X and Y in one sup-norm space at Hausdorff distance gh(X, Y)."""
    realization = realize(x, y, limits=limits)
    embedded = kuratowski_embed(realization.glued)
    left = [embedded.points[t] for t in realization.embed_left.mapping]
    right = [embedded.points[t] for t in realization.embed_right.mapping]
    return SupNormImages(left=left, right=right, hausdorff=sup_norm_hausdorff(left, right))
