import math
from decimal import Decimal
from fractions import Fraction
from typing import Annotated, Any, ClassVar, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    NonNegativeInt,
    PlainSerializer,
    PlainValidator,
    field_validator,
    model_validator,
)
from pydantic import ValidationError as PydanticValidationError
from typing_extensions import Self

from ghmetric.errors import (
    AsymmetricMatrixError,
    DuplicateLabelError,
    EmptySpaceError,
    IndexOutOfRangeError,
    NegativeDistanceError,
    NonzeroDiagonalError,
    NotIsometricError,
    NotSurjectiveError,
    ShapeMismatchError,
    TriangleViolationError,
    ValidationError,
    ZeroOffDiagonalError,
)


def parse_scalar(value: Any) -> Fraction:
    """Convert a number literal to an exact rational.

    Accepts ints, Fractions, Decimals, strings such as ``"3"``, ``"0.1"`` or ``"1/3"``
    and finite floats. Floats go through their shortest decimal representation, so the
    JSON literal ``0.1`` becomes exactly ``1/10``.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"distances must be finite: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"distances must be finite: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact number: {value!r}") from None
    raise ValueError(f"not a number: {value!r}")


def to_scalar(value: Any) -> Fraction:
    try:
        return parse_scalar(value)
    except ValueError as e:
        raise ValidationError(str(e)) from None


def format_scalar(value: Fraction) -> str:
    return str(value)


def approximate(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering for humans; never parsed back."""
    return f"{float(value):.{digits}g}"


# Exact rational carried by every distance in the package
Scalar = Annotated[
    Fraction,
    PlainValidator(parse_scalar),
    PlainSerializer(format_scalar, return_type=str, when_used="json"),
]

Matrix = tuple[tuple[Scalar, ...], ...]


class GHModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="wrap")
    @classmethod
    def handle_pydantic_error(cls, data: Any, handler):
        try:
            return handler(data)
        except PydanticValidationError as e:
            error_messages = []
            for err in e.errors():
                field = " -> ".join(map(str, err["loc"]))
                msg = err["msg"]
                error_messages.append(f"Field '{field}': {msg}")

            formatted_msg = " | ".join(error_messages)
            raise ValidationError(formatted_msg, original_error=e) from e


class SemiMetricSpace(GHModel):
    """Labeled finite point set whose distinct points may sit at distance zero."""

    allow_zero_distance: ClassVar[bool] = True

    labels: tuple[str, ...]
    dist: Matrix

    @model_validator(mode="after")
    def validate_axioms(self) -> Self:
        n = len(self.labels)
        if n == 0:
            raise EmptySpaceError()
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ShapeMismatchError(f"dist must be a {n}x{n} matrix to match the labels")

        seen: set[str] = set()
        for label in self.labels:
            if label in seen:
                raise DuplicateLabelError(label)
            seen.add(label)

        d = self.dist
        for i in range(n):
            if d[i][i] != 0:
                raise NonzeroDiagonalError(i)
        for i in range(n):
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise AsymmetricMatrixError(i, j)
                if d[i][j] < 0:
                    raise NegativeDistanceError(i, j)
                if d[i][j] == 0 and not self.allow_zero_distance:
                    raise ZeroOffDiagonalError(i, j)
        for i in range(n):
            row_i = d[i]
            for j in range(n):
                row_j = d[j]
                through = row_i[j]
                for k in range(n):
                    if row_i[k] > through + row_j[k]:
                        raise TriangleViolationError(i, j, k)
        return self

    @property
    def size(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRangeError(f"no point labeled {label!r}") from None


class FiniteMetricSpace(SemiMetricSpace):
    """Labeled finite metric space with exact rational distances."""

    allow_zero_distance: ClassVar[bool] = False


def same_space(a: SemiMetricSpace, b: SemiMetricSpace) -> bool:
    return a.labels == b.labels and a.dist == b.dist


class IsometricEmbedding(GHModel):
    source: FiniteMetricSpace
    target: SemiMetricSpace
    mapping: tuple[NonNegativeInt, ...]

    @model_validator(mode="after")
    def validate_isometry(self) -> Self:
        if len(self.mapping) != self.source.size:
            raise ShapeMismatchError(
                f"mapping has {len(self.mapping)} entries for {self.source.size} source points"
            )
        for image in self.mapping:
            if image >= self.target.size:
                raise IndexOutOfRangeError(f"target index {image} out of range")
        # positive source distances make a distance-preserving map injective
        src, tgt, m = self.source.dist, self.target.dist, self.mapping
        for i in range(self.source.size):
            for j in range(i + 1, self.source.size):
                if tgt[m[i]][m[j]] != src[i][j]:
                    raise NotIsometricError(i, j)
        return self

    @property
    def image(self) -> tuple[int, ...]:
        return self.mapping

    def then(self, other: "IsometricEmbedding") -> "IsometricEmbedding":
        """Compose with an embedding whose source is this embedding's target."""
        if not same_space(self.target, other.source):
            raise ShapeMismatchError("cannot compose: target and next source differ")
        return IsometricEmbedding(
            source=self.source,
            target=other.target,
            mapping=tuple(other.mapping[i] for i in self.mapping),
        )


class Quotient(GHModel):
    space: FiniteMetricSpace
    projection: tuple[NonNegativeInt, ...]


class CanonicalForm(GHModel):
    """Relabeling-invariant representative; ``permutation[a]`` is the original point at slot a."""

    matrix: Matrix
    permutation: tuple[NonNegativeInt, ...]

    def same_class(self, other: "CanonicalForm") -> bool:
        return self.matrix == other.matrix


class Correspondence(GHModel):
    left: FiniteMetricSpace
    right: FiniteMetricSpace
    pairs: tuple[tuple[NonNegativeInt, NonNegativeInt], ...]

    @field_validator("pairs")
    @classmethod
    def normalize_pairs(
        cls, v: tuple[tuple[int, int], ...]
    ) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def validate_surjective(self) -> Self:
        for i, j in self.pairs:
            if i >= self.left.size or j >= self.right.size:
                raise IndexOutOfRangeError(f"pair ({i}, {j}) out of range")
        covered_left = {i for i, _ in self.pairs}
        covered_right = {j for _, j in self.pairs}
        if len(covered_left) != self.left.size:
            missing = sorted(set(range(self.left.size)) - covered_left)
            raise NotSurjectiveError(f"left points {missing} are not covered")
        if len(covered_right) != self.right.size:
            missing = sorted(set(range(self.right.size)) - covered_right)
            raise NotSurjectiveError(f"right points {missing} are not covered")
        return self


class GHResult(GHModel):
    value: Scalar
    witness: Correspondence
    node_count: NonNegativeInt
    solver: Literal["brute", "bnb"]


class SupNormPoint(GHModel):
    coords: tuple[Scalar, ...]

    def distance(self, other: "SupNormPoint") -> Fraction:
        if len(self.coords) != len(other.coords):
            raise ShapeMismatchError("sup-norm points live in different dimensions")
        return max((abs(a - b) for a, b in zip(self.coords, other.coords)), default=Fraction(0))


class KuratowskiEmbedding(GHModel):
    points: tuple[SupNormPoint, ...]
    certificate: IsometricEmbedding


class SupNormImages(GHModel):
    """Images of two spaces in one sup-norm coordinate system."""

    left: tuple[SupNormPoint, ...]
    right: tuple[SupNormPoint, ...]
    hausdorff: Scalar


class Realization(GHModel):
    glued: FiniteMetricSpace
    embed_left: IsometricEmbedding
    embed_right: IsometricEmbedding
    value: Scalar
    witness: Correspondence


class GluedSpace(GHModel):
    space: FiniteMetricSpace
    from_left: IsometricEmbedding
    from_right: IsometricEmbedding


class TowerLevel(GHModel):
    space: FiniteMetricSpace
    embed_all: tuple[IsometricEmbedding, ...]

    @model_validator(mode="after")
    def validate_embeddings(self) -> Self:
        if not self.embed_all:
            raise EmptySpaceError("a tower level holds at least one copy")
        for embedding in self.embed_all:
            if not same_space(embedding.target, self.space):
                raise ShapeMismatchError("tower embeddings must land in the level space")
        return self

    @property
    def embed_last(self) -> IsometricEmbedding:
        return self.embed_all[-1]


class CauchyBounds(GHModel):
    """Summable bound sequence ``b_n``.

    Terms come from ``explicit`` while it lasts, then from ``initial * ratio**n``.
    The defaults give the sequence 2^-n.
    """

    initial: Scalar = Fraction(1)
    ratio: Scalar = Fraction(1, 2)
    explicit: tuple[Scalar, ...] = ()

    @model_validator(mode="after")
    def validate_summable(self) -> Self:
        if self.initial < 0 or any(b < 0 for b in self.explicit):
            raise ValidationError("bounds must be non-negative")
        if not 0 <= self.ratio < 1:
            raise ValidationError("ratio must satisfy 0 <= ratio < 1")
        return self

    def term(self, n: int) -> Fraction:
        if n < len(self.explicit):
            return self.explicit[n]
        return self.initial * self.ratio**n

    def tail(self, n: int) -> Fraction:
        """Exact value of sum_{k >= n} b_k."""
        head = sum(self.explicit[n:], Fraction(0))
        start = max(n, len(self.explicit))
        return head + self.initial * self.ratio**start / (1 - self.ratio)


class CauchyLimit(GHModel):
    limit_approx: FiniteMetricSpace
    embedding: IsometricEmbedding
    error_bound: Scalar
    bounds: tuple[Scalar, ...]
    gh_values: tuple[Scalar, ...]
    hausdorff_values: tuple[Scalar, ...]
    levels: tuple[TowerLevel, ...]
