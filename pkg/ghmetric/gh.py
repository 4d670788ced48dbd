"""Gromov-Hausdorff distance between finite metric spaces.

For finite spaces the distance is half the least distortion of a correspondence, the
distortion of a relation R being the largest |d_X(x, x') - d_Y(y, y')| over pairs
(x, y), (x', y') of R. Both solvers work on integer matrices obtained by multiplying
every distance by the least common denominator, so all comparisons are exact and cheap.

Correspondences are built row by row: each left point takes a nonempty set of right
points. ``cost[i][j]`` holds the distortion that adding the pair (i, j) would create
against the pairs already chosen.
"""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Literal

from ghmetric.config import Limits, resolve_limits
from ghmetric.errors import SizeLimitError
from ghmetric.metric import diam, eccentricities
from ghmetric.models import Correspondence, FiniteMetricSpace, GHResult

logger = logging.getLogger(__name__)

IntMatrix = list[list[int]]
Subset = tuple[int, ...]


def _scaled(x: FiniteMetricSpace, y: FiniteMetricSpace) -> tuple[IntMatrix, IntMatrix, int]:
    scale = math.lcm(*(f.denominator for space in (x, y) for row in space.dist for f in row))
    dx = [[int(f * scale) for f in row] for row in x.dist]
    dy = [[int(f * scale) for f in row] for row in y.dist]
    return dx, dy, scale


def _mask(members: Sequence[int]) -> int:
    mask = 0
    for j in members:
        mask |= 1 << j
    return mask


def _subsets(
    cost_row: Sequence[int],
    dy: Sequence[Sequence[int]],
    limit: int | None,
    inclusive: bool,
    extensions_first: bool,
) -> Iterator[tuple[Subset, int]]:
    """Nonempty right-subsets for one row with the distortion they add.

    Subsets whose added distortion passes ``limit`` are skipped together with all their
    supersets. With ``extensions_first`` a subset comes after all of its extensions,
    otherwise before them; either way in increasing order of members.
    """

    def within(value: int) -> bool:
        if limit is None:
            return True
        return value <= limit if inclusive else value < limit

    allowed = [j for j in range(len(cost_row)) if within(cost_row[j])]

    def walk(start: int, members: Subset, value: int) -> Iterator[tuple[Subset, int]]:
        for pos in range(start, len(allowed)):
            j = allowed[pos]
            row_j = dy[j]
            added = max(value, cost_row[j], max((row_j[k] for k in members), default=0))
            if not within(added):
                continue
            subset = members + (j,)
            if not extensions_first:
                yield subset, added
            yield from walk(pos + 1, subset, added)
            if extensions_first:
                yield subset, added

    yield from walk(0, (), 0)


def _absorb(
    cost: IntMatrix,
    pending: Sequence[int],
    i: int,
    members: Subset,
    dx: IntMatrix,
    dy: IntMatrix,
) -> IntMatrix:
    updated = list(cost)
    for p in pending:
        gap_row = dx[p][i]
        row = cost[p][:]
        for q, dy_q in enumerate(dy):
            worst = row[q]
            for j in members:
                diff = abs(gap_row - dy_q[j])
                if diff > worst:
                    worst = diff
            row[q] = worst
        updated[p] = row
    return updated


def _lookahead(cost: IntMatrix, pending: Sequence[int], uncovered: Sequence[int]) -> int | None:
    """Distortion every completion must reach, or ``None`` if no completion exists."""
    if uncovered and not pending:
        return None
    bound = 0
    for p in pending:
        bound = max(bound, min(cost[p]))
    for q in uncovered:
        bound = max(bound, min(cost[p][q] for p in pending))
    return bound


def _uncovered(covered: int, m: int) -> list[int]:
    return [q for q in range(m) if not covered >> q & 1]


def _relation_distortion(
    pairs: Sequence[tuple[int, int]], dx: Sequence[Sequence], dy: Sequence[Sequence]
):
    return max(abs(dx[i][k] - dy[j][l]) for i, j in pairs for k, l in pairs)


def _greedy_pairs(dx, dy, order: Sequence[int]) -> list[tuple[int, int]]:
    n, m = len(dx), len(dy)
    pairs: list[tuple[int, int]] = []

    def added(i: int, j: int):
        return max((abs(dx[i][k] - dy[j][l]) for k, l in pairs), default=0)

    for i in order:
        j = min(range(m), key=lambda q: (added(i, q), q))
        pairs.append((i, j))
    covered = {j for _, j in pairs}
    for j in range(m):
        if j not in covered:
            i = min(range(n), key=lambda p: (added(p, j), p))
            pairs.append((i, j))
    return sorted(pairs)


def _eccentricity_order(space: FiniteMetricSpace) -> list[int]:
    ecc = eccentricities(space)
    return sorted(range(space.size), key=lambda i: (-ecc[i], i))


def distortion(correspondence: Correspondence) -> Fraction:
    return _relation_distortion(
        correspondence.pairs, correspondence.left.dist, correspondence.right.dist
    )


def greedy_correspondence(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Correspondence:
    """Cheap correspondence used as the first incumbent of branch-and-bound."""
    pairs = _greedy_pairs(x.dist, y.dist, _eccentricity_order(x))
    return Correspondence(left=x, right=y, pairs=tuple(pairs))


def lower_bound_diam(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Fraction:
    return abs(diam(x) - diam(y)) / 2


def upper_bound_full(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Fraction:
    return max(diam(x), diam(y)) / 2


def _least_witness(dx: IntMatrix, dy: IntMatrix, target: int) -> tuple[list[tuple[int, int]], int]:
    """Lexicographically least correspondence (as a sorted pair list) of distortion <= target."""
    n, m = len(dx), len(dy)
    full = (1 << m) - 1
    nodes = 0

    def walk(i: int, cost: IntMatrix, covered: int, pairs: list[tuple[int, int]]):
        nonlocal nodes
        nodes += 1
        if i == n:
            return pairs if covered == full else None
        pending = range(i + 1, n)
        for members, _ in _subsets(cost[i], dy, target, True, extensions_first=i < n - 1):
            next_cost = _absorb(cost, pending, i, members, dx, dy)
            next_covered = covered | _mask(members)
            bound = _lookahead(next_cost, pending, _uncovered(next_covered, m))
            if bound is None or bound > target:
                continue
            found = walk(i + 1, next_cost, next_covered, pairs + [(i, j) for j in members])
            if found is not None:
                return found
        return None

    witness = walk(0, [[0] * m for _ in range(n)], 0, [])
    assert witness is not None, "target distortion is not attainable"
    return witness, nodes


def _result(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    best: int,
    scale: int,
    pairs: Sequence[tuple[int, int]],
    nodes: int,
    solver: Literal["brute", "bnb"],
) -> GHResult:
    return GHResult(
        value=Fraction(best, 2 * scale),
        witness=Correspondence(left=x, right=y, pairs=tuple(pairs)),
        node_count=nodes,
        solver=solver,
    )


def gh_dist_bruteforce(
    x: FiniteMetricSpace, y: FiniteMetricSpace, limits: Limits | None = None
) -> GHResult:
    """Enumerate correspondences in witness order; exact reference solver for small inputs.

    Only subtrees whose partial distortion already reaches the best complete relation
    are skipped, so the first optimum found is still the least one.
    """
    limits = resolve_limits(limits)
    n, m = x.size, y.size
    if n * m > limits.bruteforce_max_pairs:
        raise SizeLimitError(n * m, limits.bruteforce_max_pairs, "candidate pairs")

    dx, dy, scale = _scaled(x, y)
    full = (1 << m) - 1
    best: int | None = None
    best_pairs: list[tuple[int, int]] = []
    count = 0

    def walk(i: int, cost: IntMatrix, covered: int, value: int, pairs: list[tuple[int, int]]):
        nonlocal best, best_pairs, count
        if i == n:
            count += 1
            if covered == full and (best is None or value < best):
                best, best_pairs = value, pairs
            return
        pending = range(i + 1, n)
        for members, added in _subsets(cost[i], dy, best, False, extensions_first=i < n - 1):
            if best is not None and max(value, added) >= best:
                continue
            walk(
                i + 1,
                _absorb(cost, pending, i, members, dx, dy),
                covered | _mask(members),
                max(value, added),
                pairs + [(i, j) for j in members],
            )

    walk(0, [[0] * m for _ in range(n)], 0, 0, [])
    assert best is not None
    logger.debug("brute force over %dx%d enumerated %d relations", n, m, count)
    return _result(x, y, best, scale, best_pairs, count, "brute")


class _BranchAndBound:
    def __init__(self, dx: IntMatrix, dy: IntMatrix, order: list[int], incumbent: int, floor: int):
        self.dx = dx
        self.dy = dy
        self.order = order
        self.best = incumbent
        self.floor = floor
        self.full = (1 << len(dy)) - 1
        self._lock = threading.Lock()
        self._node_count = 0

    @property
    def nodes(self) -> int:
        return self._node_count

    def _visit(self) -> None:
        with self._lock:
            self._node_count += 1

    def _offer(self, value: int) -> None:
        with self._lock:
            if value < self.best:
                self.best = value

    def children(self, depth: int, cost: IntMatrix, covered: int, value: int):
        i = self.order[depth]
        pending = self.order[depth + 1 :]
        m = len(self.dy)
        options = sorted(
            _subsets(cost[i], self.dy, self.best, False, extensions_first=False),
            key=lambda option: (len(option[0]), option[0]),
        )
        for members, added in options:
            next_value = max(value, added)
            if next_value >= self.best:
                continue
            next_cost = _absorb(cost, pending, i, members, self.dx, self.dy)
            next_covered = covered | _mask(members)
            bound = _lookahead(next_cost, pending, _uncovered(next_covered, m))
            if bound is None or max(next_value, bound) >= self.best:
                continue
            yield next_cost, next_covered, next_value

    def descend(self, depth: int, cost: IntMatrix, covered: int, value: int) -> None:
        self._visit()
        if self.best <= self.floor:
            return
        if depth == len(self.order):
            if covered == self.full:
                self._offer(value)
            return
        for child in self.children(depth, cost, covered, value):
            self.descend(depth + 1, *child)
            if self.best <= self.floor:
                return

    def run(self, threads: int) -> None:
        root = [[0] * len(self.dy) for _ in self.dx]
        if threads <= 1:
            self.descend(0, root, 0, 0)
            return
        self._visit()
        branches = list(self.children(0, root, 0, 0))
        if len(branches) < threads:
            logger.warning(
                "%d threads requested for %d top-level branches", threads, len(branches)
            )
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # list() re-raises worker exceptions
            list(pool.map(lambda branch: self.descend(1, *branch), branches))


def gh_dist_bnb(
    x: FiniteMetricSpace, y: FiniteMetricSpace, limits: Limits | None = None
) -> GHResult:
    """Branch-and-bound over per-point right-subsets, highest eccentricity first.

    The incumbent starts from the better of the greedy and full correspondences, and the
    search stops as soon as it meets the diameter lower bound. The optimal value is then
    fed to a second ordered search that returns the lexicographically least optimal
    correspondence, so the witness does not depend on thread scheduling.
    """
    limits = resolve_limits(limits)
    dx, dy, scale = _scaled(x, y)
    order = _eccentricity_order(x)
    floor = abs(max(map(max, dx)) - max(map(max, dy)))
    greedy = _relation_distortion(_greedy_pairs(dx, dy, order), dx, dy)
    incumbent = min(greedy, max(max(map(max, dx)), max(map(max, dy))))

    search = _BranchAndBound(dx, dy, order, incumbent, floor)
    if incumbent > floor:
        search.run(limits.threads)
    search_nodes = search.nodes
    pairs, witness_nodes = _least_witness(dx, dy, search.best)
    logger.debug(
        "branch-and-bound over %dx%d: distortion %d/%d after %d search and %d witness nodes",
        x.size,
        y.size,
        search.best,
        scale,
        search_nodes,
        witness_nodes,
    )
    return _result(x, y, search.best, scale, pairs, search_nodes + witness_nodes, "bnb")


def gh_dist(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    solver: Literal["brute", "bnb"] = "bnb",
    limits: Limits | None = None,
) -> GHResult:
    if solver == "brute":
        return gh_dist_bruteforce(x, y, limits=limits)
    return gh_dist_bnb(x, y, limits=limits)
