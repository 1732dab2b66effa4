"""Command-line front end: instance files in, reports and exit codes out.

Instance documents are JSON with string point labels; labels map to point
ids by document order, so traces stay human-readable while the core works
on indexes.  Exit codes: 0 success/satisfied, 1 condition failed or no
convergence, 2 input error, 3 certified-instance anomaly, 4 generation
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .contraction import (
    ConditionReport,
    ContractionParams,
    IndexCoefficients,
    MultiMap,
    check_condition,
    check_condition_sampled,
    check_single_valued_condition,
)
from .oracle import (
    MAP_KINDS,
    GeneratedInstance,
    GenerationError,
    InstanceProfile,
    certify_uniqueness,
    enumerate_fixed_points,
    generate_instance,
)
from .orbit import AGGREGATE, FIXED_POINT_FOUND, FixedPointResult, solve, tail_bound
from .space import (
    DEFAULT_TOL,
    CompactSet,
    PseudometricFamily,
    ValidationReport,
    validate_family,
)

EXIT_OK = 0
EXIT_UNSATISFIED = 1
EXIT_INPUT = 2
EXIT_ANOMALY = 3
EXIT_GENERATION = 4


class DocumentError(Exception):
    """Structural problem with an instance document."""


@dataclass(frozen=True)
class MetricTable:
    name: str
    rows: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class ParamsDocument:
    exponent: int
    coeffs: tuple[tuple[float, float, float], ...]  # (a, b, c) per index


@dataclass(frozen=True)
class InstanceDocument:
    points: tuple[str, ...]
    metrics: tuple[MetricTable, ...]
    mapping: dict[str, tuple[str, ...]] | None = None
    params: ParamsDocument | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def parse_document(text: str) -> InstanceDocument:
    """Parse and structurally validate an instance document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    _require(isinstance(raw, dict), "top level must be an object")
    unknown = set(raw) - {"points", "metrics", "map", "params"}
    _require(not unknown, f"unknown top-level fields: {sorted(unknown)}")

    points = raw.get("points")
    _require(isinstance(points, list) and points, "'points' must be a nonempty list")
    _require(all(isinstance(p, str) for p in points), "point labels must be strings")
    _require(len(set(points)) == len(points), "point labels must be unique")
    n = len(points)

    metrics_raw = raw.get("metrics")
    _require(isinstance(metrics_raw, list) and metrics_raw,
             "'metrics' must be a nonempty list")
    metrics = []
    for pos, entry in enumerate(metrics_raw):
        _require(isinstance(entry, dict), f"metric {pos} must be an object")
        name = entry.get("name", f"d{pos}")
        _require(isinstance(name, str), f"metric {pos}: name must be a string")
        rows = entry.get("rows")
        _require(isinstance(rows, list) and len(rows) == n,
                 f"metric {name}: 'rows' must be a {n}x{n} matrix")
        parsed_rows = []
        for row in rows:
            _require(isinstance(row, list) and len(row) == n,
                     f"metric {name}: 'rows' must be a {n}x{n} matrix")
            _require(all(isinstance(v, (int, float)) and not isinstance(v, bool)
                         for v in row),
                     f"metric {name}: distances must be numbers")
            parsed_rows.append(tuple(float(v) for v in row))
        metrics.append(MetricTable(name, tuple(parsed_rows)))
    names = [m.name for m in metrics]
    _require(len(set(names)) == len(names), "metric names must be unique")

    mapping = None
    if "map" in raw:
        map_raw = raw["map"]
        _require(isinstance(map_raw, dict), "'map' must be an object")
        known = set(points)
        _require(set(map_raw) == known,
                 "'map' must assign an image to exactly the declared points")
        mapping = {}
        for label in points:
            image = map_raw[label]
            _require(isinstance(image, list) and image,
                     f"image of {label!r} must be a nonempty list")
            for target in image:
                _require(isinstance(target, str) and target in known,
                         f"image of {label!r} references unknown label {target!r}")
            mapping[label] = tuple(image)

    params = None
    if "params" in raw:
        params_raw = raw["params"]
        _require(isinstance(params_raw, dict), "'params' must be an object")
        unknown = set(params_raw) - {"r", "coeffs"}
        _require(not unknown, f"unknown params fields: {sorted(unknown)}")
        exponent = params_raw.get("r", 1)
        _require(isinstance(exponent, int) and not isinstance(exponent, bool)
                 and exponent >= 1,
                 "'r' must be an integer >= 1")
        coeffs_raw = params_raw.get("coeffs")
        _require(isinstance(coeffs_raw, list) and coeffs_raw,
                 "'coeffs' must be a nonempty list")
        _require(len(coeffs_raw) in (1, len(metrics)),
                 f"'coeffs' must have 1 or {len(metrics)} entries")
        coeffs = []
        for pos, entry in enumerate(coeffs_raw):
            _require(isinstance(entry, dict) and set(entry) == {"a", "b", "c"},
                     f"coeffs[{pos}] must be an object with fields a, b, c")
            _require(all(isinstance(entry[f], (int, float)) and not isinstance(entry[f], bool)
                         for f in ("a", "b", "c")),
                     f"coeffs[{pos}]: a, b, c must be numbers")
            coeffs.append((float(entry["a"]), float(entry["b"]), float(entry["c"])))
        params = ParamsDocument(exponent, tuple(coeffs))

    return InstanceDocument(tuple(points), tuple(metrics), mapping, params)


def render_document(doc: InstanceDocument) -> str:
    """Serialize a document; parse(render(doc)) == doc."""
    payload: dict = {
        "points": list(doc.points),
        "metrics": [{"name": m.name, "rows": [list(r) for r in m.rows]}
                    for m in doc.metrics],
    }
    if doc.mapping is not None:
        payload["map"] = {label: list(doc.mapping[label]) for label in doc.points}
    if doc.params is not None:
        payload["params"] = {
            "r": doc.params.exponent,
            "coeffs": [{"a": a, "b": b, "c": c} for a, b, c in doc.params.coeffs],
        }
    return json.dumps(payload, indent=2) + "\n"


def document_to_family(doc: InstanceDocument) -> PseudometricFamily:
    return PseudometricFamily(len(doc.points), tuple(m.rows for m in doc.metrics))


def document_to_multimap(doc: InstanceDocument) -> MultiMap:
    _require(doc.mapping is not None, "document has no 'map' section")
    ids = {label: i for i, label in enumerate(doc.points)}
    assert doc.mapping is not None
    return MultiMap(tuple(
        CompactSet(frozenset(ids[t] for t in doc.mapping[label]))
        for label in doc.points))


def document_to_params(doc: InstanceDocument) -> ContractionParams:
    _require(doc.params is not None, "document has no 'params' section")
    assert doc.params is not None
    coeffs = doc.params.coeffs
    if len(coeffs) == 1 and len(doc.metrics) > 1:
        coeffs = coeffs * len(doc.metrics)  # single triple broadcasts to all indexes
    try:
        return ContractionParams(
            doc.params.exponent,
            tuple(IndexCoefficients(a, b, c) for a, b, c in coeffs))
    except ValueError as exc:
        raise DocumentError(f"invalid params: {exc}") from exc


def document_from_instance(inst: GeneratedInstance) -> InstanceDocument:
    labels = tuple(f"p{i}" for i in range(inst.family.point_count))
    metrics = tuple(
        MetricTable(f"d{i}", inst.family.tables[i])
        for i in range(inst.family.index_count))
    mapping = {labels[x]: tuple(labels[m] for m in inst.mapping.images[x].ordered())
               for x in range(inst.family.point_count)}
    params = ParamsDocument(
        inst.params.exponent,
        tuple((co.a, co.b, co.c) for co in inst.params.coeffs))
    return InstanceDocument(labels, metrics, mapping, params)


# ---------------------------------------------------------------------------
# output helpers

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _line(tag: str, pairs: Sequence[tuple[str, object]]) -> str:
    return " ".join([tag] + [f"{k}={_fmt(v)}" for k, v in pairs])


def _print_validation(doc: InstanceDocument, report: ValidationReport,
                      fmt: str) -> None:
    if fmt == "lines":
        print(_line("summary", [
            ("points", len(doc.points)),
            ("metrics", len(doc.metrics)),
            ("separating", report.separating),
            ("violations", len(report.violations)),
        ]))
        for v in report.violations:
            print(_line("violation", [
                ("kind", v.kind),
                ("metric", doc.metrics[v.index].name),
                ("points", ",".join(doc.points[p] for p in v.points)),
            ]))
        return
    print(f"points: {len(doc.points)}  metrics: {len(doc.metrics)}  "
          f"separating: {'yes' if report.separating else 'no'}")
    if report.valid:
        print("axioms: ok")
    else:
        print(f"axioms: {len(report.violations)} violation(s)")
        for v in report.violations:
            where = ", ".join(doc.points[p] for p in v.points)
            print(f"  - {v.kind} in {doc.metrics[v.index].name} at ({where}): {v.detail}")


def _print_condition(doc: InstanceDocument, report: ConditionReport, fmt: str,
                     max_violations: int) -> None:
    shown = report.violations[:max_violations]
    if fmt == "lines":
        print(_line("condition", [
            ("satisfied", report.satisfied),
            ("worst_margin", report.worst_margin),
            ("tuples", report.tuples_checked),
            ("violations", len(report.violations)),
            ("exhaustive", report.exhaustive),
        ]))
        for v in shown:
            print(_line("violation", [
                ("x", doc.points[v.x]),
                ("y", doc.points[v.y]),
                ("metric", doc.metrics[v.index].name),
                ("lhs", v.lhs),
                ("rhs", v.rhs),
            ]))
        return
    verdict = "satisfied" if report.satisfied else "violated"
    scope = "" if report.exhaustive else " [sampled; non-certifying]"
    print(f"condition: {verdict}{scope} "
          f"(worst margin {report.worst_margin:.9g}, "
          f"{report.tuples_checked} tuples checked)")
    if report.violations:
        print(f"violations: {len(report.violations)} (showing up to {max_violations})")
        for v in shown:
            print(f"  - x={doc.points[v.x]} y={doc.points[v.y]} "
                  f"metric={doc.metrics[v.index].name} lhs={v.lhs:.9g} rhs={v.rhs:.9g}")


def _print_solve(doc: InstanceDocument, result: FixedPointResult,
                 params: ContractionParams, fmt: str) -> None:
    orbit = result.orbit
    labels = doc.points
    names = [m.name for m in doc.metrics]
    driver = orbit.driver
    single_driver = isinstance(driver, int)
    if single_driver and orbit.steps > 0:
        k = params.coeffs[driver].k
        d01 = orbit.step_distances[driver][0]
    point_label = labels[result.point] if result.point is not None else None

    if fmt == "lines":
        print(_line("condition", [
            ("satisfied", result.condition.satisfied),
            ("worst_margin", result.condition.worst_margin),
        ]))
        print(_line("orbit", [
            ("driver", names[driver] if single_driver else AGGREGATE),
            ("status", orbit.status),
            ("steps", orbit.steps),
            ("points", ",".join(labels[p] for p in orbit.points)),
        ]))
        for n in range(orbit.steps):
            pairs: list[tuple[str, object]] = [
                ("n", n + 1),
                ("from", labels[orbit.points[n]]),
                ("to", labels[orbit.points[n + 1]]),
            ]
            for i, name in enumerate(names):
                pairs.append((name, orbit.step_distances[i][n]))
            if n >= 1:
                for i, name in enumerate(names):
                    ok = (orbit.step_distances[i][n]
                          <= params.coeffs[i].k * orbit.step_distances[i][n - 1]
                          + result.tol)
                    pairs.append((f"contract_{name}", ok))
            if single_driver and orbit.steps > 0:
                pairs.append(("tail_bound", tail_bound(n, k, d01)))
            print(_line("step", pairs))
        print(_line("result", [
            ("status", orbit.status),
            ("point", point_label if point_label is not None else "-"),
            ("steps", result.steps),
            ("certified", result.certified),
            ("membership", result.membership),
            ("anomaly", result.anomaly),
        ]))
        for i, name in enumerate(names):
            print(_line("residual", [("metric", name), ("value", result.residuals[i])]))
        return

    cert = "certified" if result.certified else "not certified"
    print(f"condition: {'satisfied' if result.condition.satisfied else 'violated'} ({cert})")
    trace = " -> ".join(labels[p] for p in orbit.points)
    print(f"orbit (driver={names[driver] if single_driver else AGGREGATE}): {trace}")
    for n in range(orbit.steps):
        dists = "  ".join(f"{names[i]}={orbit.step_distances[i][n]:.9g}"
                          for i in range(len(names)))
        extra = ""
        if n >= 1:
            oks = all(orbit.step_distances[i][n]
                      <= params.coeffs[i].k * orbit.step_distances[i][n - 1]
                      + result.tol
                      for i in range(len(names)))
            extra += f"  contraction={'ok' if oks else 'VIOLATED'}"
        if single_driver and orbit.steps > 0:
            extra += f"  tail_bound={tail_bound(n, k, d01):.9g}"
        print(f"  step {n + 1}: {labels[orbit.points[n]]} -> "
              f"{labels[orbit.points[n + 1]]}  {dists}{extra}")
    if result.point is not None:
        print(f"fixed point: {point_label} (steps={result.steps}, "
              f"membership={'yes' if result.membership else 'NO'})")
    else:
        print(f"no fixed point: {orbit.status} after {result.steps} step(s)")
    print("residuals: " + "  ".join(
        f"{names[i]}={result.residuals[i]:.9g}" for i in range(len(names))))
    if result.anomaly:
        print("ANOMALY: condition certified but the orbit did not reach a fixed point")


# ---------------------------------------------------------------------------
# commands

def _load_document(path: str) -> InstanceDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)


def cmd_validate(args: argparse.Namespace) -> int:
    doc = _load_document(args.path)
    family = document_to_family(doc)
    if doc.mapping is not None:
        document_to_multimap(doc)
    if doc.params is not None:
        document_to_params(doc)
    report = validate_family(family, args.tol)
    _print_validation(doc, report, args.format)
    return EXIT_OK if report.valid else EXIT_UNSATISFIED


def cmd_check(args: argparse.Namespace) -> int:
    doc = _load_document(args.path)
    family = document_to_family(doc)
    mapping = document_to_multimap(doc)
    params = document_to_params(doc)
    single_valued = args.single_valued or args.a_neg_one
    if args.a_neg_one:
        params = ContractionParams(
            params.exponent,
            tuple(IndexCoefficients(-1.0, co.b, co.c) for co in params.coeffs))
    if single_valued:
        targets = mapping.as_single_valued()
        if targets is None:
            raise DocumentError(
                "single-valued check requested but some image is not a singleton")
        report = check_single_valued_condition(family, targets, params, args.tol)
    elif args.sample is not None:
        report = check_condition_sampled(family, mapping, params, args.sample,
                                         args.tol)
    else:
        report = check_condition(family, mapping, params, args.tol)
    _print_condition(doc, report, args.format, args.max_violations)
    return EXIT_OK if report.satisfied else EXIT_UNSATISFIED


def cmd_solve(args: argparse.Namespace) -> int:
    doc = _load_document(args.path)
    family = document_to_family(doc)
    mapping = document_to_multimap(doc)
    params = document_to_params(doc)
    axioms = validate_family(family, args.tol)
    if not axioms.valid:
        print(f"invalid family: {len(axioms.violations)} axiom violation(s); "
              "run the validate command for details", file=sys.stderr)
        return EXIT_INPUT
    if not family.separating and not args.allow_non_separating:
        print("family does not separate points; pass --allow-non-separating "
              "to iterate anyway", file=sys.stderr)
        return EXIT_INPUT

    if args.index == AGGREGATE:
        driver = AGGREGATE
    else:
        names = [m.name for m in doc.metrics]
        if args.index in names:
            driver = names.index(args.index)
        else:
            try:
                driver = int(args.index)
            except ValueError:
                raise DocumentError(
                    f"--index must be a metric name, a number, or {AGGREGATE!r}")
            if not 0 <= driver < family.index_count:
                raise DocumentError(
                    f"--index {driver} outside 0..{family.index_count - 1}")

    start_label = args.start if args.start is not None else doc.points[0]
    if start_label not in doc.points:
        raise DocumentError(f"unknown start label {start_label!r}")
    start = doc.points.index(start_label)

    result = solve(family, mapping, params, start, driver=driver,
                   max_steps=args.max_steps, tol=args.tol,
                   allow_non_separating=args.allow_non_separating)
    _print_solve(doc, result, params, args.format)
    if result.status == FIXED_POINT_FOUND:
        return EXIT_OK
    return EXIT_ANOMALY if result.certified else EXIT_UNSATISFIED


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.generate:
        profile = InstanceProfile(
            point_count=args.n,
            index_count=args.m,
            map_kind=args.kind,
            seed=args.seed,
            exponent_choices=(args.r,),
            a_range=(args.a, args.a),
        )
        try:
            inst = generate_instance(profile, max_attempts=args.attempts)
        except GenerationError as exc:
            print(f"generation failed: {exc}", file=sys.stderr)
            return EXIT_GENERATION
        sys.stdout.write(render_document(document_from_instance(inst)))
        return EXIT_OK

    if args.path is None:
        raise DocumentError("provide an instance file or --generate")
    doc = _load_document(args.path)
    family = document_to_family(doc)
    mapping = document_to_multimap(doc)
    fixed = sorted(enumerate_fixed_points(mapping))
    if args.format == "lines":
        print(_line("fixed_points", [
            ("count", len(fixed)),
            ("points", ",".join(doc.points[x] for x in fixed) or "-"),
        ]))
    else:
        if fixed:
            print("fixed points: " + ", ".join(doc.points[x] for x in fixed))
        else:
            print("no fixed points")
    if not args.uniqueness:
        return EXIT_OK

    params = document_to_params(doc)
    targets = mapping.as_single_valued()
    if targets is None:
        raise DocumentError(
            "--uniqueness needs a single-valued map (all images singletons)")
    verdict = certify_uniqueness(family, targets, params, args.tol)
    if args.format == "lines":
        print(_line("uniqueness", [
            ("status", verdict.status),
            ("fixed_points", ",".join(doc.points[x] for x in sorted(verdict.fixed_points)) or "-"),
        ]))
    else:
        print(f"uniqueness: {verdict.status} ({verdict.reason})")
    if verdict.status == "unique":
        return EXIT_OK
    if verdict.status == "not_applicable":
        return EXIT_UNSATISFIED
    return EXIT_ANOMALY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unifix",
        description="fixed points of set-valued maps on finite multi-pseudometric spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="absolute comparison tolerance (default 1e-9)")
        p.add_argument("--format", choices=("human", "lines"), default="human",
                       help="output style")

    p_validate = sub.add_parser("validate", help="check pseudometric axioms and separation")
    p_validate.add_argument("path")
    common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_check = sub.add_parser("check", help="verify the contraction condition exhaustively")
    p_check.add_argument("path")
    common(p_check)
    p_check.add_argument("--single-valued", action="store_true",
                         help="route through the point-map form of the condition")
    p_check.add_argument("--a-neg-one", action="store_true",
                         help="preset a_i = -1 (difference-of-minima form); implies --single-valued")
    p_check.add_argument("--max-violations", type=int, default=10,
                         help="how many violations to print")
    p_check.add_argument("--sample", type=int, default=None,
                         help="spot-check this many random tuples instead of all (non-certifying)")
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser("solve", help="iterate an orbit to a fixed point")
    p_solve.add_argument("path")
    common(p_solve)
    p_solve.add_argument("--start", default=None, help="start label (default: first point)")
    p_solve.add_argument("--index", default="0",
                         help=f"driver metric (name or number), or {AGGREGATE!r}")
    p_solve.add_argument("--max-steps", type=int, default=None,
                         help="step budget (default 10*N)")
    p_solve.add_argument("--allow-non-separating", action="store_true",
                         help="iterate even when no metric separates some point pair")
    p_solve.set_defaults(func=cmd_solve)

    p_oracle = sub.add_parser("oracle", help="brute-force enumeration and instance generation")
    p_oracle.add_argument("path", nargs="?", default=None)
    common(p_oracle)
    p_oracle.add_argument("--uniqueness", action="store_true",
                          help="certify that a single-valued map has exactly one fixed point")
    p_oracle.add_argument("--generate", action="store_true",
                          help="emit a freshly generated certified instance")
    p_oracle.add_argument("--kind", choices=MAP_KINDS, default="random_multivalued")
    p_oracle.add_argument("--n", type=int, default=5, help="points")
    p_oracle.add_argument("--m", type=int, default=1, help="metrics")
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--r", type=int, default=1, help="condition exponent")
    p_oracle.add_argument("--a", type=float, default=0.0, help="a coefficient")
    p_oracle.add_argument("--attempts", type=int, default=10_000,
                          help="generation attempt budget")
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
