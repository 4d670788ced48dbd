from __future__ import annotations

import os

from pydantic import PositiveInt

from ghmetric.errors import ValidationError
from ghmetric.models import GHModel

ENV_THREADS = "GH_METRIC_THREADS"
ENV_CANONICAL_MAX = "GH_METRIC_CANONICAL_MAX"
ENV_BRUTEFORCE_MAX = "GH_METRIC_BRUTEFORCE_MAX"


class Limits(GHModel):
    """Size bounds for the exhaustive searches and the solver thread count."""

    canonical_max_points: PositiveInt = 10
    bruteforce_max_pairs: PositiveInt = 20
    threads: PositiveInt = 1

    @classmethod
    def from_env(cls, **overrides: int) -> Limits:
        values: dict[str, int] = {}
        for field, env_name in (
            ("threads", ENV_THREADS),
            ("canonical_max_points", ENV_CANONICAL_MAX),
            ("bruteforce_max_pairs", ENV_BRUTEFORCE_MAX),
        ):
            raw = os.environ.get(env_name)
            if raw:
                try:
                    values[field] = int(raw)
                except ValueError:
                    raise ValidationError(f"{env_name} must be an integer, got {raw!r}") from None
        values.update(overrides)
        return cls(**values)


def resolve_limits(limits: Limits | None) -> Limits:
    return limits if limits is not None else Limits.from_env()
