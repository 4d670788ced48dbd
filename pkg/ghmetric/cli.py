"""Command-line surface. Reports go to stdout as JSON, errors to stderr."""

import argparse
import json
import logging
import os
import sys
import time
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from ghmetric.config import ENV_THREADS, Limits
from ghmetric.errors import (
    CauchyBoundViolatedError,
    GHMetricError,
    ParseError,
    SizeLimitError,
    ValidationError,
)
from ghmetric.generators import GeneratorParams, generate
from ghmetric.gh import gh_dist, lower_bound_diam, upper_bound_full
from ghmetric.gluing import build_tower, cauchy_limit, copy_hausdorff, glue
from ghmetric.hausdorff import hausdorff_dist
from ghmetric.io import RunReport, emit_space, parse_space, space_digest
from ghmetric.metric import canonicalize, diam, is_isometric
from ghmetric.models import CauchyBounds, FiniteMetricSpace, IsometricEmbedding, approximate
from ghmetric.realization import kuratowski_embed, realize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_CAUCHY = 4
EXIT_INTERNAL = 5


def _indices(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated indices, got {text!r}") from None


def _scalars(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _params(text: str) -> GeneratorParams:
    values: dict[str, str] = {}
    for item in _scalars(text):
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {item!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return GeneratorParams.model_validate(values)


def _rows(matrix: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    return [[str(v) for v in row] for row in matrix]


class _Run:
    """Loads inputs, records their digests and times the command."""

    def __init__(self, args: argparse.Namespace, limits: Limits):
        self.args = args
        self.limits = limits
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()

    def load(self, path: str) -> FiniteMetricSpace:
        space = parse_space(Path(path))
        self.inputs[path] = space_digest(space)
        return space

    def report(self, value: Fraction | None = None, **fields: Any) -> RunReport:
        millis = int((time.perf_counter() - self.started) * 1000)
        return RunReport(
            command=" ".join(self.args.argv),
            inputs=self.inputs,
            value=value,
            value_decimal=approximate(value) if value is not None else None,
            millis=millis,
            **fields,
        )


def cmd_validate(run: _Run) -> RunReport:
    space = run.load(run.args.file)
    return run.report(details={"points": space.size, "valid": True})


def cmd_diam(run: _Run) -> RunReport:
    return run.report(diam(run.load(run.args.file)))


def cmd_hausdorff(run: _Run) -> RunReport:
    ambient = run.load(run.args.ambient)
    return run.report(hausdorff_dist(ambient, _indices(run.args.a), _indices(run.args.b)))


def cmd_isometric(run: _Run) -> RunReport:
    mapping = is_isometric(run.load(run.args.x), run.load(run.args.y))
    return run.report(
        details={
            "isometric": mapping is not None,
            "mapping": list(mapping) if mapping is not None else None,
        }
    )


def cmd_canonical(run: _Run) -> RunReport:
    form = canonicalize(run.load(run.args.file), limits=run.limits)
    return run.report(
        details={"matrix": _rows(form.matrix), "permutation": list(form.permutation)}
    )


def cmd_gh(run: _Run) -> RunReport:
    x, y = run.load(run.args.x), run.load(run.args.y)
    bounds = {"lower": str(lower_bound_diam(x, y)), "upper": str(upper_bound_full(x, y))}
    if run.args.bounds_only:
        return run.report(details=bounds)
    result = gh_dist(x, y, solver=run.args.solver, limits=run.limits)
    return run.report(
        result.value,
        witness=result.witness.pairs,
        nodes=result.node_count,
        details={"solver": result.solver, **bounds},
    )


def cmd_realize(run: _Run) -> RunReport:
    x, y = run.load(run.args.x), run.load(run.args.y)
    realization = realize(x, y, limits=run.limits)
    if run.args.emit_glued:
        Path(run.args.emit_glued).write_text(emit_space(realization.glued, name="glued"))
    left, right = realization.embed_left.image, realization.embed_right.image
    return run.report(
        realization.value,
        witness=realization.witness.pairs,
        details={
            "points": realization.glued.size,
            "embed_left": list(left),
            "embed_right": list(right),
            "hausdorff": str(hausdorff_dist(realization.glued, left, right)),
        },
    )


def cmd_kuratowski(run: _Run) -> RunReport:
    embedding = kuratowski_embed(run.load(run.args.file))
    return run.report(details={"points": _rows([p.coords for p in embedding.points])})


def cmd_glue(run: _Run) -> RunReport:
    y, z, x = run.load(run.args.y), run.load(run.args.z), run.load(run.args.via)
    phi = IsometricEmbedding(source=x, target=y, mapping=_indices(run.args.phi))
    psi = IsometricEmbedding(source=x, target=z, mapping=_indices(run.args.psi))
    glued = glue(y, z, phi, psi)
    if run.args.emit_glued:
        Path(run.args.emit_glued).write_text(emit_space(glued.space, name="glued"))
    return run.report(
        details={
            "points": glued.space.size,
            "from_left": list(glued.from_left.image),
            "from_right": list(glued.from_right.image),
        }
    )


def cmd_tower(run: _Run) -> RunReport:
    spaces = [run.load(path) for path in run.args.files]
    if run.args.limit:
        explicit = _scalars(run.args.bounds) if run.args.bounds else []
        limit = cauchy_limit(spaces, CauchyBounds(explicit=explicit), limits=run.limits)
        return run.report(
            limit.error_bound,
            details={
                "limit_points": limit.limit_approx.size,
                "tower_points": limit.levels[-1].space.size,
                "bounds": [str(b) for b in limit.bounds],
                "gh": [str(v) for v in limit.gh_values],
                "hausdorff": [str(v) for v in limit.hausdorff_values],
            },
        )

    levels = build_tower(spaces, limits=run.limits)
    top = levels[-1]
    return run.report(
        details={
            "level_points": [level.space.size for level in levels],
            "hausdorff": [str(copy_hausdorff(top, k, k + 1)) for k in range(len(spaces) - 1)],
        }
    )


def _gen(args: argparse.Namespace) -> str:
    space = generate(args.kind, _params(args.params), seed=args.seed)
    return emit_space(space, name=args.kind)


COMMANDS: dict[str, Callable[[_Run], RunReport]] = {
    "validate": cmd_validate,
    "diam": cmd_diam,
    "hausdorff": cmd_hausdorff,
    "isometric": cmd_isometric,
    "canonical": cmd_canonical,
    "gh": cmd_gh,
    "realize": cmd_realize,
    "kuratowski": cmd_kuratowski,
    "glue": cmd_glue,
    "tower": cmd_tower,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghmetric", description="Exact Gromov-Hausdorff geometry of finite metric spaces"
    )
    parser.add_argument(
        "--threads", type=int, default=None, help="solver threads (default: all CPUs)"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("validate", "diam", "canonical", "kuratowski"):
        sub.add_parser(name).add_argument("file")

    p = sub.add_parser("hausdorff")
    p.add_argument("ambient")
    p.add_argument("--a", required=True, help="comma-separated point indices")
    p.add_argument("--b", required=True, help="comma-separated point indices")

    p = sub.add_parser("isometric")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("gh")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--solver", choices=("brute", "bnb"), default="bnb")
    p.add_argument("--bounds-only", action="store_true")

    p = sub.add_parser("realize")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--emit-glued", metavar="OUT")

    p = sub.add_parser("glue")
    p.add_argument("y")
    p.add_argument("z")
    p.add_argument("--via", required=True, help="space file of the glue set X")
    p.add_argument("--phi", required=True, help="images of X in Y, comma-separated")
    p.add_argument("--psi", required=True, help="images of X in Z, comma-separated")
    p.add_argument("--emit-glued", metavar="OUT")

    p = sub.add_parser("tower")
    p.add_argument("files", nargs="+")
    p.add_argument("--bounds", help="leading bounds b0,b1,...; later terms follow 2^-n")
    p.add_argument("--limit", action="store_true", help="certify a Cauchy limit approximation")

    p = sub.add_parser("gen")
    p.add_argument("kind")
    p.add_argument("params", nargs="?", default="", help="key=value pairs, comma-separated")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _limits(args: argparse.Namespace) -> Limits:
    if os.environ.get(ENV_THREADS):
        return Limits.from_env()
    return Limits.from_env(threads=args.threads or os.cpu_count() or 1)


def exit_code(error: BaseException) -> int:
    if isinstance(error, (ValidationError, ParseError)):
        return EXIT_INVALID
    if isinstance(error, SizeLimitError):
        return EXIT_LIMIT
    if isinstance(error, CauchyBoundViolatedError):
        return EXIT_CAUCHY
    return EXIT_INTERNAL


def _report_error(error: BaseException) -> None:
    details = error.details() if isinstance(error, GHMetricError) else {}
    payload = {"error": type(error).__name__, "message": str(error), "details": details}
    print(json.dumps(payload, default=str), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )

    try:
        if args.command == "gen":
            sys.stdout.write(_gen(args))
            return EXIT_OK
        run = _Run(args, _limits(args))
        print(COMMANDS[args.command](run).to_json())
    except Exception as e:
        if not isinstance(e, GHMetricError):
            logger.debug("internal error in %s", args.command, exc_info=True)
        _report_error(e)
        return exit_code(e)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
