"""Seeded corpus generators; the same kind, params and seed always give the same space."""

import itertools
import random
from collections.abc import Callable
from fractions import Fraction
from typing import Literal

import networkx as nx
from pydantic import NonNegativeInt, PositiveInt, model_validator
from typing_extensions import Self

from ghmetric.errors import InvalidParamsError, UnknownKindError
from ghmetric.models import FiniteMetricSpace, GHModel, Scalar, to_scalar

BaseKind = Literal["graph-shortest-path", "sup-norm-points", "path", "cycle", "dyadic-net"]


class GeneratorParams(GHModel):
    """Knobs shared by the generators; each kind reads the ones it needs.

    Random weights and coordinates are drawn from the grid ``spacing * k / grid``.
    """

    n: PositiveInt = 4
    dim: PositiveInt = 2
    grid: PositiveInt = 4
    level: NonNegativeInt = 2
    delta: Scalar = Fraction(0)
    base_kind: BaseKind = "path"
    spacing: Scalar = Fraction(1)

    @model_validator(mode="after")
    def validate_ranges(self) -> Self:
        if self.spacing <= 0:
            raise InvalidParamsError("spacing must be positive")
        if self.delta < 0:
            raise InvalidParamsError("delta must be non-negative")
        return self


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def _space(labels: tuple[str, ...], dist: list[list[Fraction]]) -> FiniteMetricSpace:
    return FiniteMetricSpace(labels=labels, dist=tuple(tuple(row) for row in dist))


def graph_shortest_path(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    """Random complete graph with grid weights, metrized by all-pairs shortest paths."""
    graph = nx.complete_graph(params.n)
    for u, v in itertools.combinations(range(params.n), 2):
        graph[u][v]["weight"] = params.spacing * Fraction(rng.randint(1, params.grid), params.grid)
    lengths = dict(nx.all_pairs_dijkstra_path_length(graph, weight="weight"))
    dist = [[Fraction(lengths[i][j]) for j in range(params.n)] for i in range(params.n)]
    return _space(_labels(params.n), dist)


def sup_norm_points(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    if (params.grid + 1) ** params.dim < params.n:
        raise InvalidParamsError(
            f"a grid of {params.grid + 1}^{params.dim} cells cannot hold {params.n} distinct points"
        )
    points: list[tuple[Fraction, ...]] = []
    while len(points) < params.n:
        point = tuple(
            params.spacing * Fraction(rng.randint(0, params.grid), params.grid)
            for _ in range(params.dim)
        )
        if point not in points:
            points.append(point)
    dist = [[max(abs(a - b) for a, b in zip(p, q)) for q in points] for p in points]
    return _space(_labels(params.n), dist)


def path(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    n = params.n
    return _space(_labels(n), [[params.spacing * abs(i - j) for j in range(n)] for i in range(n)])


def cycle(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    n = params.n
    dist = [[params.spacing * min(abs(i - j), n - abs(i - j)) for j in range(n)] for i in range(n)]
    return _space(_labels(n), dist)


def dyadic_net(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    """The points k / 2^level of [0, 1]."""
    points = [Fraction(k, 2**params.level) for k in range(2**params.level + 1)]
    return _space(tuple(map(str, points)), [[abs(a - b) for b in points] for a in points])


def perturb(space: FiniteMetricSpace, delta: object) -> FiniteMetricSpace:
    """Add ``delta`` to every off-diagonal distance; the triangle inequality survives."""
    shift = to_scalar(delta)
    if shift < 0:
        raise InvalidParamsError("delta must be non-negative")
    dist = [
        [v + shift if i != j else v for j, v in enumerate(row)] for i, row in enumerate(space.dist)
    ]
    return _space(space.labels, dist)


def _perturbed(params: GeneratorParams, rng: random.Random) -> FiniteMetricSpace:
    base = GENERATORS[params.base_kind](params, rng)
    return perturb(base, params.delta)


Generator = Callable[[GeneratorParams, random.Random], FiniteMetricSpace]

GENERATORS: dict[str, Generator] = {
    "graph-shortest-path": graph_shortest_path,
    "sup-norm-points": sup_norm_points,
    "path": path,
    "cycle": cycle,
    "dyadic-net": dyadic_net,
    "perturb": _perturbed,
}


def generate(
    kind: str, params: GeneratorParams | None = None, seed: int = 0
) -> FiniteMetricSpace:
    try:
        generator = GENERATORS[kind]
    except KeyError:
        raise UnknownKindError(kind) from None
    if not 0 <= seed < 2**64:
        raise InvalidParamsError(f"seed must be a 64-bit value, got {seed}")
    return generator(params or GeneratorParams(), random.Random(seed))


def cauchy_perturbation_sequence(
    base: FiniteMetricSpace, scale: object, length: int
) -> list[FiniteMetricSpace]:
    """``X_n = base + scale * (1 - 2^-n)`` off the diagonal, for n < length.

    Consecutive terms are at GH distance at most ``scale * 2^-(n+2)``.
    """
    amount = to_scalar(scale)
    if amount < 0 or length < 1:
        raise InvalidParamsError("scale must be non-negative and length positive")
    return [perturb(base, amount * (1 - Fraction(1, 2**n))) for n in range(length)]
