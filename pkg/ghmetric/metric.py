"""Operations on finite (semi)metric spaces: validation, quotients, unions, isometry."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Any, TypeVar

from ghmetric.config import Limits, resolve_limits
from ghmetric.errors import (
    EmptySubsetError,
    IndexOutOfRangeError,
    NegativeDistanceError,
    ShapeMismatchError,
    SizeLimitError,
    ValidationError,
)
from ghmetric.models import (
    CanonicalForm,
    FiniteMetricSpace,
    IsometricEmbedding,
    Quotient,
    SemiMetricSpace,
    to_scalar,
)

logger = logging.getLogger(__name__)

S = TypeVar("S", bound=SemiMetricSpace)


def validate(labels: Sequence[str], dist: Sequence[Sequence[Any]]) -> FiniteMetricSpace:
    return FiniteMetricSpace(labels=tuple(labels), dist=tuple(tuple(row) for row in dist))


def validate_semimetric(labels: Sequence[str], dist: Sequence[Sequence[Any]]) -> SemiMetricSpace:
    return SemiMetricSpace(labels=tuple(labels), dist=tuple(tuple(row) for row in dist))


def diam(space: SemiMetricSpace) -> Fraction:
    return max(max(row) for row in space.dist)


def eccentricities(space: SemiMetricSpace) -> tuple[Fraction, ...]:
    return tuple(max(row) for row in space.dist)


def identity_embedding(space: FiniteMetricSpace) -> IsometricEmbedding:
    return IsometricEmbedding(source=space, target=space, mapping=tuple(range(space.size)))


def relabel(space: S, perm: Sequence[int]) -> S:
    """Reorder points: position ``a`` of the result holds point ``perm[a]`` of ``space``."""
    if sorted(perm) != list(range(space.size)):
        raise ValidationError(f"{list(perm)} is not a permutation of {space.size} points")
    d = space.dist
    return type(space)(
        labels=tuple(space.labels[p] for p in perm),
        dist=tuple(tuple(d[p][q] for q in perm) for p in perm),
    )


def subspace(space: S, indices: Sequence[int]) -> S:
    """Induced (semi)metric on the given points, in the given order."""
    _check_indices(space, indices)
    if len(set(indices)) != len(indices):
        raise ValidationError("subspace indices must be distinct")
    d = space.dist
    return type(space)(
        labels=tuple(space.labels[i] for i in indices),
        dist=tuple(tuple(d[i][j] for j in indices) for i in indices),
    )


def _check_indices(space: SemiMetricSpace, indices: Sequence[int]) -> None:
    if not indices:
        raise EmptySubsetError("subsets must be nonempty")
    for i in indices:
        if not 0 <= i < space.size:
            raise IndexOutOfRangeError(f"index {i} out of range for {space.size} points")


def quotient_zero(space: SemiMetricSpace) -> Quotient:
    """Merge points at distance zero.

    Zero distance is an equivalence relation on a semimetric, and by the triangle
    inequality the distance between two classes does not depend on the representatives.
    Classes are numbered by their lowest member, whose label they keep.
    """
    n = space.size
    d = space.dist
    projection = [-1] * n
    representatives: list[int] = []
    for i in range(n):
        if projection[i] != -1:
            continue
        projection[i] = len(representatives)
        for j in range(i + 1, n):
            if projection[j] == -1 and d[i][j] == 0:
                projection[j] = len(representatives)
        representatives.append(i)

    quotient = FiniteMetricSpace(
        labels=tuple(space.labels[r] for r in representatives),
        dist=tuple(tuple(d[r][s] for s in representatives) for r in representatives),
    )
    if len(representatives) < n:
        logger.debug("quotient merged %d points into %d classes", n, len(representatives))
    return Quotient(space=quotient, projection=tuple(projection))


def _union_labels(left: Sequence[str], right: Sequence[str]) -> tuple[str, ...]:
    taken = set(left)
    labels = list(left)
    for label in right:
        while label in taken:
            label += "'"
        taken.add(label)
        labels.append(label)
    return tuple(labels)


def disjoint_union(
    left: SemiMetricSpace, right: SemiMetricSpace, cross: Sequence[Sequence[Any]]
) -> SemiMetricSpace:
    """Semimetric on ``left ⊔ right`` with the given cross block.

    Right-hand labels that clash with left-hand ones get primes appended. Raises
    ``TriangleViolationError`` when the cross block is not admissible.
    """
    n, m = left.size, right.size
    if len(cross) != n or any(len(row) != m for row in cross):
        raise ShapeMismatchError(f"cross block must be {n}x{m}")
    block = [[to_scalar(c) for c in row] for row in cross]
    for i in range(n):
        for j in range(m):
            if block[i][j] < 0:
                raise NegativeDistanceError(i, n + j)

    rows = [tuple(left.dist[i]) + tuple(block[i]) for i in range(n)]
    rows += [tuple(block[i][j] for i in range(n)) + tuple(right.dist[j]) for j in range(m)]
    return SemiMetricSpace(labels=_union_labels(left.labels, right.labels), dist=tuple(rows))


def _row_profiles(space: SemiMetricSpace) -> list[tuple[Fraction, ...]]:
    return [tuple(sorted(row)) for row in space.dist]


def is_isometric(x: FiniteMetricSpace, y: FiniteMetricSpace) -> tuple[int, ...] | None:
    """Distance-preserving bijection ``x -> y`` as a tuple of y-indices, or ``None``.

    Exhaustive backtracking; a point of ``x`` may only go to a point of ``y`` with the
    same sorted distance row. Lowest candidate index is tried first.
    """
    n = x.size
    if n != y.size:
        return None
    profiles_x, profiles_y = _row_profiles(x), _row_profiles(y)
    if sorted(profiles_x) != sorted(profiles_y):
        return None

    candidates = [[j for j in range(n) if profiles_y[j] == profiles_x[i]] for i in range(n)]
    dx, dy = x.dist, y.dist
    mapping: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if all(dy[j][mapping[p]] == dx[i][p] for p in range(i)):
                mapping.append(j)
                used[j] = True
                if extend(i + 1):
                    return True
                mapping.pop()
                used[j] = False
        return False

    return tuple(mapping) if extend(0) else None


def _twin_classes(d: Sequence[Sequence[Fraction]]) -> list[int]:
    """Class id per point; twins agree on their distances to every other point."""
    n = len(d)
    classes = list(range(n))
    for u in range(n):
        if classes[u] != u:
            continue
        for v in range(u + 1, n):
            if classes[v] == v and all(d[u][w] == d[v][w] for w in range(n) if w not in (u, v)):
                classes[v] = u
    return classes


def canonicalize(space: FiniteMetricSpace, limits: Limits | None = None) -> CanonicalForm:
    """Lexicographically least row-major distance matrix over all relabelings.

    The search places points slot by slot. Slot 0 only takes points with the least
    sorted distance row, later slots only take points minimizing the distance vector to
    the slots already placed, twins are explored once, and partial matrices whose
    per-row lower bounds exceed the incumbent are cut.
    """
    limits = resolve_limits(limits)
    n = space.size
    if n > limits.canonical_max_points:
        raise SizeLimitError(n, limits.canonical_max_points)

    d = space.dist
    twins = _twin_classes(d)
    profiles = _row_profiles(space)
    least_profile = min(profiles)
    best: list[tuple[Fraction, ...]] | None = None
    best_perm: list[int] = []
    nodes = 0

    def row_bounds(perm: list[int], remaining: list[int]) -> list[tuple[Fraction, ...]]:
        return [
            tuple(d[p][q] for q in perm) + tuple(sorted(d[p][w] for w in remaining))
            for p in perm
        ]

    def search(perm: list[int], remaining: list[int]) -> None:
        nonlocal best, best_perm, nodes
        nodes += 1
        k = len(perm)
        if k == n:
            matrix = [tuple(d[p][q] for q in perm) for p in perm]
            if best is None or matrix < best:
                best, best_perm = matrix, list(perm)
            return
        if best is not None and k > 0 and row_bounds(perm, remaining) > best[:k]:
            return

        if k == 0:
            candidates = [u for u in remaining if profiles[u] == least_profile]
        else:
            keys = {u: tuple(d[p][u] for p in perm) for u in remaining}
            least = min(keys.values())
            candidates = [u for u in remaining if keys[u] == least]

        tried: set[int] = set()
        for u in candidates:
            if twins[u] in tried:
                continue
            tried.add(twins[u])
            search(perm + [u], [w for w in remaining if w != u])

    search([], list(range(n)))
    logger.debug("canonical form of %d points after %d search nodes", n, nodes)
    assert best is not None
    return CanonicalForm(matrix=tuple(best), permutation=tuple(best_perm))


def gh_class(
    space: FiniteMetricSpace, limits: Limits | None = None
) -> tuple[tuple[Fraction, ...], ...]:
    """Hashable key of the isometry class of ``space``.

    Two spaces get equal keys exactly when they are isometric, so the key can index
    dicts and sets of spaces taken up to isometry.
    """
    return canonicalize(space, limits=limits).matrix
