"""Command-line front door.

Commands: analyze (full pipeline to a structure report), metric (quotient
distance between two points), lift (sphere-rotation lift witness), catalog
(list the built-in continuous actions), verify (acceptance suites).

Exit codes: 0 success, 1 validation errors, 2 ambiguity or internal-check
errors. Pipeline errors print the failing stage name.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import _numerics as num
from .catalog import catalog_summary
from .errors import AmbiguityError, InternalCheckError, ValidationError
from .isom_quotient import quotient_isometry_group, report_json
from .lift_verify import lift_rotation, quat_to_rotation
from .orbit_geometry import QuotientPoint, quotient_distance
from .repr_model import enumerate_group, load_spec
from .verification import run_suites

ENV_SEED = "ORBIT_ISOM_SEED"
DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    output_path: str
    seed: int
    sample_count: int
    format: str
    only: str | None = None


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{ENV_SEED} must be an integer, got {raw!r}")


def _emit(text: str, output_path: str) -> None:
    if output_path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _print_error(err: Exception) -> None:
    stage = getattr(err, "stage", None)
    prefix = f"error[{stage}]" if stage else "error"
    print(f"{prefix}: {err}", file=sys.stderr)


def _exit_code(err: Exception) -> int:
    if isinstance(err, ValidationError):
        return 1
    if isinstance(err, (AmbiguityError, InternalCheckError)):
        return 2
    raise err


def _render_report_text(report: dict) -> str:
    lines = ["quotient isometry report"]
    lines.append(f"  euclidean factor dim : {report['euclideanFactorDim']}")
    if report["compactFactors"]:
        factors = ", ".join(
            f"{f['name']} ({f['type']}, multiplicity {f['multiplicity']})"
            for f in report["compactFactors"])
    else:
        factors = "none"
    lines.append(f"  compact factors      : {factors}")
    k = report["kernel"]
    lines.append(
        f"  kernel               : finite order {k['finiteOrder']}, "
        f"circle directions {k['circleDirections']}, "
        f"contains center of G: {'yes' if k['containsCenterOfG'] else 'no'}")
    lines.append(f"  boundary             : {'yes' if report['boundary'] else 'no'}")
    lines.append(f"  formula applied      : {report['formulaApplied']}")
    lines.append(f"  rank                 : {report['rank']}")
    lines.append(f"  theorem B            : {report['theoremB']}")
    lines.append(f"  theorem C            : {report['theoremC']}")
    lines.append(f"  seed                 : {report['seed']}")
    lines.append("  notes:")
    for key, value in report.get("notes", {}).items():
        lines.append(f"    {key}: {value}")
    return "\n".join(lines)


def cmd_analyze(config: RunConfig) -> int:
    try:
        result = quotient_isometry_group(
            config.input_path, seed=config.seed, sample_count=config.sample_count)
    except Exception as err:
        _print_error(err)
        return _exit_code(err)
    if config.format == "json":
        _emit(report_json(result.report), config.output_path)
    else:
        _emit(_render_report_text(result.report), config.output_path)
    return 0


def _parse_point(text: str) -> np.ndarray:
    cleaned = text.strip().strip("()")
    try:
        return np.array([float(part) for part in cleaned.split(",")], dtype=float)
    except ValueError:
        raise ValidationError(f"could not parse point {text!r}")


def _metric_context(input_path: str):
    if input_path.startswith("catalog:"):
        from .catalog import get_action

        action = get_action(input_path.split(":", 1)[1])
        meta = {"method": "coarse-grid-with-refinement", "action": action.id}
        return action, meta
    group = enumerate_group(load_spec(input_path))
    meta = {"method": "exact-minimum-over-group", "groupOrder": group.order}
    return group, meta


def cmd_metric(config: RunConfig, point_a: str, point_b: str) -> int:
    try:
        context, meta = _metric_context(config.input_path)
        a = _parse_point(point_a)
        b = _parse_point(point_b)
        dist = quotient_distance(QuotientPoint(a, context), QuotientPoint(b, context))
    except Exception as err:
        _print_error(err)
        return _exit_code(err)
    if config.format == "json":
        payload = {"distance": dist, **meta}
        _emit(json.dumps(payload, indent=2, sort_keys=True), config.output_path)
    else:
        detail = ", ".join(f"{k}={v}" for k, v in sorted(meta.items()))
        _emit(f"distance = {dist:.6f}  ({detail})", config.output_path)
    return 0


def cmd_lift(config: RunConfig) -> int:
    try:
        rng = np.random.default_rng([config.seed])
        r = quat_to_rotation(num.random_unit_vector(rng, 4))
        witness = lift_rotation(r, sample_count=config.sample_count, seed=config.seed)
    except Exception as err:
        _print_error(err)
        return _exit_code(err)
    if config.format == "json":
        payload = {
            "quotientIsometry": witness.quotient_isometry.tolist(),
            "lift": witness.lift.tolist(),
            "residual": witness.residual,
        }
        _emit(json.dumps(payload, indent=2), config.output_path)
    else:
        lines = [f"lift residual over {config.sample_count} samples: "
                 f"{witness.residual:.3e}"]
        lines.append("quotient rotation (3x3):")
        lines.extend("  " + "  ".join(f"{v: .6f}" for v in row)
                     for row in witness.quotient_isometry)
        lines.append("equivariant lift (4x4):")
        lines.extend("  " + "  ".join(f"{v: .6f}" for v in row)
                     for row in witness.lift)
        _emit("\n".join(lines), config.output_path)
    return 0


def cmd_catalog(config: RunConfig) -> int:
    entries = catalog_summary()
    if config.format == "json":
        _emit(json.dumps(entries, indent=2), config.output_path)
        return 0
    lines = []
    for e in entries:
        angle = ("none" if e["expectedSectorAngle"] is None
                 else f"{e['expectedSectorAngle']:.6f}")
        lines.append(f"{e['id']}: dim {e['dimension']}, "
                     f"{e['parameters']} parameters, "
                     f"boundary {'yes' if e['boundary'] else 'no'}, "
                     f"cohomogeneity {e['cohomogeneity']}, "
                     f"sector angle {angle}")
        if e["note"]:
            lines.append(f"  {e['note']}")
    _emit("\n".join(lines), config.output_path)
    return 0


def cmd_verify(config: RunConfig) -> int:
    results = run_suites(config.only, seed=config.seed,
                         sample_count=config.sample_count)
    if not results:
        print(f"error: no suite id contains {config.only!r}", file=sys.stderr)
        return 1
    if config.format == "json":
        payload = [{"suiteId": r.suite_id, "passed": r.passed, "details": r.details}
                   for r in results]
        _emit(json.dumps(payload, indent=2), config.output_path)
    else:
        width = max(len(r.suite_id) for r in results)
        lines = [f"{'PASS' if r.passed else 'FAIL'}  "
                 f"{r.suite_id:<{width}}  {r.details}" for r in results]
        n_pass = sum(r.passed for r in results)
        lines.append(f"{n_pass}/{len(results)} suites passed")
        _emit("\n".join(lines), config.output_path)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbit-isom",
        description="Identity components of isometry groups of orbit spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_input: bool):
        if needs_input:
            p.add_argument("--input", required=True,
                           help="representation spec path or catalog:<id>")
        p.add_argument("--output", default="-", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=None,
                       help=f"RNG seed (default 0, or {ENV_SEED})")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                       help="sample count for randomized checks")
        p.add_argument("--format", choices=("json", "text"), default="json")

    common(sub.add_parser("analyze", help="run the full pipeline"),
           needs_input=True)

    metric = sub.add_parser("metric", help="quotient distance between two points")
    common(metric, needs_input=True)
    metric.add_argument("point_a", help="comma-separated coordinates")
    metric.add_argument("point_b", help="comma-separated coordinates")

    common(sub.add_parser("lift", help="lift a random quotient-sphere rotation"),
           needs_input=False)

    catalog = sub.add_parser("catalog", help="list built-in continuous actions")
    common(catalog, needs_input=False)

    verify = sub.add_parser("verify", help="run acceptance suites")
    common(verify, needs_input=False)
    verify.add_argument("--only", default=None,
                        help="run only suites whose id contains this substring")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
    except ValidationError as err:
        _print_error(err)
        return 1
    config = RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        output_path=args.output,
        seed=seed,
        sample_count=args.samples,
        format=args.format,
        only=getattr(args, "only", None),
    )
    if args.command == "analyze":
        return cmd_analyze(config)
    if args.command == "metric":
        return cmd_metric(config, args.point_a, args.point_b)
    if args.command == "lift":
        return cmd_lift(config)
    if args.command == "catalog":
        return cmd_catalog(config)
    return cmd_verify(config)
