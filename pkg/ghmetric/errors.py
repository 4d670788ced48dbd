from typing import Any

from pydantic import ValidationError as PydanticValidationError


class GHMetricError(Exception):
    def details(self) -> dict[str, Any]:
        return {}


class ValidationError(GHMetricError):
    def __init__(self, message: str, original_error: PydanticValidationError | None = None):
        super().__init__(message)
        self._original_error = original_error

    @property
    def original_error(self) -> PydanticValidationError | None:
        return self._original_error


class EmptySpaceError(ValidationError):
    def __init__(self, message: str = "a space needs at least one point"):
        super().__init__(message)


class ShapeMismatchError(ValidationError):
    pass


class DuplicateLabelError(ValidationError):
    def __init__(self, label: str):
        super().__init__(f"duplicate point label: {label!r}")
        self.label = label

    def details(self) -> dict[str, Any]:
        return {"label": self.label}


class _PairError(ValidationError):
    template = "{i}, {j}"

    def __init__(self, i: int, j: int):
        super().__init__(self.template.format(i=i, j=j))
        self.i = i
        self.j = j

    def details(self) -> dict[str, Any]:
        return {"i": self.i, "j": self.j}


class NonzeroDiagonalError(ValidationError):
    def __init__(self, i: int):
        super().__init__(f"dist[{i}][{i}] must be 0")
        self.i = i

    def details(self) -> dict[str, Any]:
        return {"i": self.i}


class AsymmetricMatrixError(_PairError):
    template = "dist[{i}][{j}] != dist[{j}][{i}]"


class NegativeDistanceError(_PairError):
    template = "dist[{i}][{j}] is negative"


class ZeroOffDiagonalError(_PairError):
    template = "distinct points {i} and {j} are at distance 0"


class NotIsometricError(_PairError):
    template = "map does not preserve the distance between source points {i} and {j}"


class TriangleViolationError(ValidationError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(
            f"triangle inequality fails: dist[{i}][{k}] > dist[{i}][{j}] + dist[{j}][{k}]"
        )
        self.i = i
        self.j = j
        self.k = k

    def details(self) -> dict[str, Any]:
        return {"i": self.i, "j": self.j, "k": self.k}


class EmptySubsetError(ValidationError):
    pass


class IndexOutOfRangeError(ValidationError):
    pass


class NotSurjectiveError(ValidationError):
    pass


class SlackTooSmallError(ValidationError):
    pass


class GlueMismatchError(ValidationError):
    pass


class InvalidParamsError(ValidationError):
    pass


class UnknownKindError(ValidationError):
    def __init__(self, kind: str):
        super().__init__(f"unknown generator kind: {kind}")
        self.kind = kind

    def details(self) -> dict[str, Any]:
        return {"kind": self.kind}


class SizeLimitError(GHMetricError):
    def __init__(self, size: int, limit: int, what: str = "points"):
        super().__init__(f"{size} {what} exceeds the configured limit of {limit}")
        self.size = size
        self.limit = limit

    def details(self) -> dict[str, Any]:
        return {"size": self.size, "limit": self.limit}


class CauchyBoundViolatedError(GHMetricError):
    def __init__(self, index: int, value: Any, bound: Any):
        super().__init__(
            f"gh(X_{index}, X_{index + 1}) = {value} exceeds the declared bound {bound}"
        )
        self.index = index
        self.value = value
        self.bound = bound

    def details(self) -> dict[str, Any]:
        return {"index": self.index, "value": str(self.value), "bound": str(self.bound)}


class ParseError(GHMetricError):
    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location

    def details(self) -> dict[str, Any]:
        return {"location": self.location}
