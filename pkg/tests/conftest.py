import json
from pathlib import Path

import pytest


@pytest.fixture(autouse=True)
def clear_limit_env(monkeypatch):
    for name in ("GH_METRIC_THREADS", "GH_METRIC_CANONICAL_MAX", "GH_METRIC_BRUTEFORCE_MAX"):
        monkeypatch.delenv(name, raising=False)
    yield


@pytest.fixture
def make_space():
    from ghmetric import validate

    def _make(labels, dist):
        return validate(labels, dist)

    return _make


@pytest.fixture
def point(make_space):
    return make_space(["o"], [[0]])


@pytest.fixture
def pair1(make_space):
    """Two points at distance 1."""
    return make_space(["a", "b"], [[0, 1], [1, 0]])


@pytest.fixture
def pair3(make_space):
    """Two points at distance 3."""
    return make_space(["p", "q"], [[0, 3], [3, 0]])


@pytest.fixture
def line4(make_space):
    """Points 0, 1, 2, 3 of the real line."""
    return make_space(["0", "1", "2", "3"], [[abs(i - j) for j in range(4)] for i in range(4)])


@pytest.fixture
def write_space(tmp_path: Path):
    def _write(name, labels, dist):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps({"name": name, "points": labels, "dist": dist}))
        return path

    return _write


@pytest.fixture
def seeded_spaces():
    """Graph and sup-norm metrics on a coarse grid, each followed by a random relabeling."""
    import random

    from ghmetric import GeneratorParams, generate, relabel

    def _spaces(sizes, seeds=range(2)):
        rng = random.Random(0)
        spaces = []
        for seed in seeds:
            for n in sizes:
                for kind in ("graph-shortest-path", "sup-norm-points"):
                    space = generate(kind, GeneratorParams(n=n, grid=2), seed=seed)
                    spaces.append(space)
                    spaces.append(relabel(space, rng.sample(range(n), n)))
        return spaces

    return _spaces
