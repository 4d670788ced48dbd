"""Gluing along isometric subspaces and the completion tower built from it."""

import logging
from collections.abc import Sequence
from fractions import Fraction

from ghmetric.config import Limits, resolve_limits
from ghmetric.errors import (
    CauchyBoundViolatedError,
    EmptySpaceError,
    GlueMismatchError,
    IndexOutOfRangeError,
)
from ghmetric.gh import gh_dist_bnb
from ghmetric.hausdorff import hausdorff_dist
from ghmetric.metric import disjoint_union, identity_embedding, quotient_zero, subspace
from ghmetric.models import (
    CauchyBounds,
    CauchyLimit,
    FiniteMetricSpace,
    GluedSpace,
    IsometricEmbedding,
    TowerLevel,
    same_space,
)
from ghmetric.realization import realize

logger = logging.getLogger(__name__)


def glue(
    y: FiniteMetricSpace,
    z: FiniteMetricSpace,
    phi: IsometricEmbedding,
    psi: IsometricEmbedding,
) -> GluedSpace:
    """Join ``y`` and ``z`` by identifying ``phi(x)`` with ``psi(x)`` for every glue point x.

    A point of ``y`` and a point of ``z`` are as far apart as the shortest route through
    the glue set. Distances inside ``y`` and inside ``z`` are unchanged.
    """
    if not same_space(phi.source, psi.source):
        raise GlueMismatchError("phi and psi must embed the same space")
    if not same_space(phi.target, y):
        raise GlueMismatchError("phi must land in the left space")
    if not same_space(psi.target, z):
        raise GlueMismatchError("psi must land in the right space")

    dy, dz = y.dist, z.dist
    routes = list(zip(phi.mapping, psi.mapping))
    cross = [
        [min(dy[i][a] + dz[b][j] for a, b in routes) for j in range(z.size)]
        for i in range(y.size)
    ]
    quotient = quotient_zero(disjoint_union(y, z, cross))
    n = y.size
    return GluedSpace(
        space=quotient.space,
        from_left=IsometricEmbedding(
            source=y, target=quotient.space, mapping=quotient.projection[:n]
        ),
        from_right=IsometricEmbedding(
            source=z, target=quotient.space, mapping=quotient.projection[n:]
        ),
    )


def tower_extend(
    level: TowerLevel, x_next: FiniteMetricSpace, limits: Limits | None = None
) -> TowerLevel:
    """Glue an optimal realization of ``(X_n, x_next)`` onto the level along X_n."""
    x_last = level.embed_last.source
    realization = realize(x_last, x_next, limits=limits)
    glued = glue(level.space, realization.glued, level.embed_last, realization.embed_left)

    embed_all = [embedding.then(glued.from_left) for embedding in level.embed_all]
    embed_all.append(realization.embed_right.then(glued.from_right))
    logger.debug(
        "tower level %d holds %d points (gh step %s)",
        len(embed_all) - 1,
        glued.space.size,
        realization.value,
    )
    return TowerLevel(space=glued.space, embed_all=tuple(embed_all))


def build_tower(
    spaces: Sequence[FiniteMetricSpace], limits: Limits | None = None
) -> list[TowerLevel]:
    if not spaces:
        raise EmptySpaceError("a tower needs at least one space")
    limits = resolve_limits(limits)
    first = spaces[0]
    levels = [TowerLevel(space=first, embed_all=(identity_embedding(first),))]
    for x_next in spaces[1:]:
        levels.append(tower_extend(levels[-1], x_next, limits=limits))
    return levels


def copy_hausdorff(level: TowerLevel, k: int, m: int) -> Fraction:
    """Hausdorff distance between the copies of X_k and X_m inside the level."""
    count = len(level.embed_all)
    for index in (k, m):
        if not 0 <= index < count:
            raise IndexOutOfRangeError(f"level holds copies 0..{count - 1}, asked for {index}")
    return hausdorff_dist(level.space, level.embed_all[k].image, level.embed_all[m].image)


def cauchy_limit(
    spaces: Sequence[FiniteMetricSpace],
    bounds: CauchyBounds | None = None,
    limits: Limits | None = None,
) -> CauchyLimit:
    """Approximate the GH limit of a Cauchy prefix ``X_0..X_N`` by its last copy.

    Every step must satisfy ``gh(X_k, X_{k+1}) <= b_k``; the returned error bound is the
    tail ``sum_{k >= N} b_k``.
    """
    if not spaces:
        raise EmptySpaceError("a Cauchy sequence needs at least one space")
    bounds = bounds if bounds is not None else CauchyBounds()
    limits = resolve_limits(limits)
    last = len(spaces) - 1

    gh_values: list[Fraction] = []
    for k in range(last):
        value = gh_dist_bnb(spaces[k], spaces[k + 1], limits=limits).value
        if value > bounds.term(k):
            raise CauchyBoundViolatedError(k, value, bounds.term(k))
        gh_values.append(value)

    levels = build_tower(spaces, limits=limits)
    top = levels[-1]
    hausdorff_values: list[Fraction] = []
    for k in range(last):
        value = copy_hausdorff(top, k, k + 1)
        if value > bounds.term(k):
            raise CauchyBoundViolatedError(k, value, bounds.term(k))
        hausdorff_values.append(value)

    copy = top.embed_last
    limit_approx = subspace(top.space, copy.image)
    error_bound = bounds.tail(last)
    logger.info(
        "limit approximation of %d points inside a %d-point tower, error bound %s",
        limit_approx.size,
        top.space.size,
        error_bound,
    )
    return CauchyLimit(
        limit_approx=limit_approx,
        embedding=IsometricEmbedding(source=limit_approx, target=top.space, mapping=copy.image),
        error_bound=error_bound,
        bounds=tuple(bounds.term(k) for k in range(last)),
        gh_values=tuple(gh_values),
        hausdorff_values=tuple(hausdorff_values),
        levels=tuple(levels),
    )
