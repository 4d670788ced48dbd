from collections.abc import Iterable, Sequence
from fractions import Fraction

from ghmetric.errors import EmptySubsetError, IndexOutOfRangeError, ValidationError
from ghmetric.models import SemiMetricSpace, to_scalar


def _subset(ambient: SemiMetricSpace, indices: Iterable[int], name: str) -> tuple[int, ...]:
    subset = tuple(sorted(set(indices)))
    if not subset:
        raise EmptySubsetError(f"subset {name} is empty")
    for i in subset:
        if not 0 <= i < ambient.size:
            raise IndexOutOfRangeError(f"subset {name}: index {i} out of range")
    return subset


def _directed(d: Sequence[Sequence[Fraction]], a: Sequence[int], b: Sequence[int]) -> Fraction:
    return max(min(d[i][j] for j in b) for i in a)


def directed_hausdorff(ambient: SemiMetricSpace, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Largest distance from a point of ``a`` to the set ``b``."""
    a_idx = _subset(ambient, a, "A")
    b_idx = _subset(ambient, b, "B")
    return _directed(ambient.dist, a_idx, b_idx)


def hausdorff_dist(ambient: SemiMetricSpace, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Exact Hausdorff distance between two nonempty index sets of ``ambient``.

    For finite sets the infimum over neighborhood radii is attained, so this is the
    larger of the two directed max-min distances.
    """
    a_idx = _subset(ambient, a, "A")
    b_idx = _subset(ambient, b, "B")
    d = ambient.dist
    return max(_directed(d, a_idx, b_idx), _directed(d, b_idx, a_idx))


def in_neighborhood(
    ambient: SemiMetricSpace, a: Iterable[int], b: Iterable[int], r: object
) -> bool:
    """Whether every point of ``a`` lies within distance ``r`` of some point of ``b``."""
    radius = to_scalar(r)
    if radius < 0:
        raise ValidationError("neighborhood radius must be non-negative")
    a_idx = _subset(ambient, a, "A")
    b_idx = _subset(ambient, b, "B")
    d = ambient.dist
    return all(any(d[i][j] <= radius for j in b_idx) for i in a_idx)
