"""Command-line front end: check, solve, and plot.

Problem files are JSON documents describing one equation pair; solves
persist a per-iteration CSV trace plus a companion JSON with the final
solution, and the plotter renders static semilog SVG convergence charts
from one or more traces.  All outputs are byte-deterministic for fixed
inputs: no timestamps, stable key order, shortest-round-trip floats.

Exit codes: 0 success, 2 parse or schema error, 3 condition check failed,
4 no residual-certified convergence, 5 starting point outside the ball.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from pathlib import Path

from . import matrix_solver, thompson
from .errors import (
    ConditionsNotVerified,
    MaxIterationsExceeded,
    ProblemFormatError,
    ResidualToleranceExceeded,
    TfpError,
    X0DomainError,
)
from .hpd_core import identity, matrix_from_literal, matrix_to_literal

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_CONDITIONS = 3
EXIT_NOT_CONVERGED = 4
EXIT_X0 = 5

TRACE_COLUMNS = ("k", "thompson_gap", "error_bound", "residual1", "residual2", "dist_to_identity")

SERIES_COLUMNS = {
    "gap": ("thompson_gap",),
    "bound": ("error_bound",),
    "residual": ("residual1", "residual2"),
}

# Log-scale floor for plotting: zeros clamp here instead of breaking the axis.
PLOT_FLOOR = 1e-16

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


# ---------------------------------------------------------------------------
# Problem files


def _require_key(data: dict, key: str, path: str):
    if key not in data:
        raise ProblemFormatError(f"{path}: missing required key '{key}'")
    return data[key]


def _number(data: dict, key: str, path: str) -> float:
    value = _require_key(data, key, path)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ProblemFormatError(f"{path}: key '{key}' must be a number, got {value!r}")
    return float(value)


def _matrix(data: dict, key: str, path: str):
    value = _require_key(data, key, path)
    try:
        return matrix_from_literal(value, key)
    except TfpError as exc:
        raise ProblemFormatError(f"{path}: {exc}") from exc


def _function_spec(data: dict, key: str, path: str) -> matrix_solver.MatrixFunctionSpec:
    value = _require_key(data, key, path)
    if not isinstance(value, dict):
        raise ProblemFormatError(f"{path}: key '{key}' must be an object")
    try:
        return matrix_solver.function_from_dict(value)
    except (TfpError, ValueError, KeyError) as exc:
        raise ProblemFormatError(f"{path}: key '{key}': {exc}") from exc


def load_problem(path) -> tuple[matrix_solver.ProblemSpec, object, matrix_solver.SolveOptions]:
    """Parse and validate a problem file.

    Returns the problem, the starting point (``None`` meaning identity)
    and the solve options, with the ``TFP_SEED`` environment variable
    taking precedence over the file's seed.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ProblemFormatError(f"{path}: cannot read: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ProblemFormatError(f"{path}: top level must be an object")

    where = str(path)
    kind = _require_key(data, "kind", where)
    if kind not in (matrix_solver.TYPE1, matrix_solver.TYPE2):
        raise ProblemFormatError(f"{where}: key 'kind' must be 'type1' or 'type2', got {kind!r}")
    n = int(_number(data, "n", where))
    m = int(_number(data, "m", where))
    a_value = _require_key(data, "A", where)
    if not isinstance(a_value, list) or len(a_value) != m:
        raise ProblemFormatError(f"{where}: key 'A' must list exactly m={m} matrices")
    mats = []
    for i, entry in enumerate(a_value):
        try:
            mats.append(matrix_from_literal(entry, f"A[{i}]"))
        except TfpError as exc:
            raise ProblemFormatError(f"{where}: {exc}") from exc

    f_spec = _function_spec(data, "F", where)
    g_spec = _function_spec(data, "G", where)
    radius = _number(data, "a", where)
    exponent_l = _number(data, "l", where)

    try:
        if kind == matrix_solver.TYPE1:
            problem = matrix_solver.problem_type1(
                n=n,
                A=mats,
                Q1=_matrix(data, "Q1", where),
                Q2=_matrix(data, "Q2", where),
                s=_number(data, "s", where),
                F=f_spec,
                G=g_spec,
                a=radius,
                l=exponent_l,
            )
        else:
            problem = matrix_solver.problem_type2(
                n=n,
                A=mats,
                r=_number(data, "r", where),
                s=_number(data, "s", where),
                F=f_spec,
                G=g_spec,
                a=radius,
                l=exponent_l,
            )
    except (TfpError, ValueError) as exc:
        raise ProblemFormatError(f"{where}: {exc}") from exc

    x0 = None
    if "x0" in data and data["x0"] != "identity":
        try:
            x0 = matrix_from_literal(data["x0"], "x0")
        except TfpError as exc:
            raise ProblemFormatError(f"{where}: {exc}") from exc

    raw_options = data.get("options", {})
    if not isinstance(raw_options, dict):
        raise ProblemFormatError(f"{where}: key 'options' must be an object")
    known = {
        "gap_tol": float,
        "residual_tol": float,
        "max_iter": int,
        "seed": int,
        "samples": int,
        "force": bool,
        "exp_radius": bool,
    }
    kwargs = {}
    for key, value in raw_options.items():
        if key not in known:
            raise ProblemFormatError(f"{where}: unknown option '{key}'")
        try:
            kwargs[key] = known[key](value)
        except (TypeError, ValueError) as exc:
            raise ProblemFormatError(f"{where}: option '{key}': {exc}") from exc
    env_seed = os.environ.get("TFP_SEED")
    if env_seed is not None:
        try:
            kwargs["seed"] = int(env_seed)
        except ValueError as exc:
            raise ProblemFormatError(f"TFP_SEED must be an integer, got {env_seed!r}") from exc
    return problem, x0, matrix_solver.SolveOptions(**kwargs)


def serialize_problem(problem: matrix_solver.ProblemSpec, x0=None, options=None) -> dict:
    """Problem back to its file form; parsing the result reproduces it."""
    out = {
        "kind": problem.kind,
        "n": problem.n,
        "m": problem.m,
        "A": [matrix_to_literal(a_i) for a_i in problem.A],
        "s": problem.s,
        "F": problem.F.to_dict(),
        "G": problem.G.to_dict(),
        "a": problem.a,
        "l": problem.l,
    }
    if problem.kind == matrix_solver.TYPE1:
        out["Q1"] = matrix_to_literal(problem.Q1)
        out["Q2"] = matrix_to_literal(problem.Q2)
    else:
        out["r"] = problem.r
    if x0 is not None:
        out["x0"] = matrix_to_literal(x0)
    if options is not None:
        out["options"] = {
            "gap_tol": options.gap_tol,
            "residual_tol": options.residual_tol,
            "max_iter": options.max_iter,
            "seed": options.seed,
            "samples": options.samples,
            "force": options.force,
            "exp_radius": options.exp_radius,
        }
    return out


# ---------------------------------------------------------------------------
# Trace files


def trace_rows(problem: matrix_solver.ProblemSpec, trace) -> list[dict]:
    """Expand a trace into CSV rows: one per iteration, k starting at 1."""
    rows = []
    for k in range(1, len(trace.points)):
        point = trace.points[k]
        r1, r2 = matrix_solver.residuals(problem, point)
        rows.append(
            {
                "k": k,
                "thompson_gap": trace.gaps[k - 1],
                "error_bound": trace.bounds[k - 1],
                "residual1": r1,
                "residual2": r2,
                "dist_to_identity": thompson.distance_to_identity(point),
            }
        )
    return rows


def write_trace_csv(path, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for row in rows:
        writer.writerow(
            [row["k"]] + [repr(float(row[col])) for col in TRACE_COLUMNS[1:]]
        )
    Path(path).write_text(buf.getvalue())


def read_trace_csv(path) -> list[dict]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ProblemFormatError(f"{path}: cannot read: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or list(reader.fieldnames) != list(TRACE_COLUMNS):
        raise ProblemFormatError(
            f"{path}: expected header {','.join(TRACE_COLUMNS)}, got {reader.fieldnames}"
        )
    rows = []
    for line_no, raw in enumerate(reader, start=2):
        row = {}
        for col in TRACE_COLUMNS:
            try:
                value = float(raw[col])
            except (TypeError, ValueError) as exc:
                raise ProblemFormatError(f"{path}: row at line {line_no}: bad value for '{col}'") from exc
            if not math.isfinite(value):
                raise ProblemFormatError(f"{path}: row at line {line_no}: non-finite '{col}'")
            row[col] = value
        row["k"] = int(row["k"])
        rows.append(row)
    if not rows:
        raise ProblemFormatError(f"{path}: trace has no data rows")
    return rows


def write_solution_json(path, problem, result, seed, converged: bool) -> None:
    doc = {
        "solution": matrix_to_literal(result.solution),
        "metadata": {
            "alpha_used": result.alpha_used,
            "stop_reason": result.trace.stop_reason,
            "seed": seed,
            "iterations": result.trace.iterations,
            "residual1": result.residual1,
            "residual2": result.residual2,
            "dist_to_identity": result.dist_to_identity,
            "kind": problem.kind,
            "converged": converged,
        },
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# SVG plotting


def _format_tick(exponent: int) -> str:
    return f"1e{exponent:+03d}"


def render_svg(series: list[tuple[str, list[tuple[int, float]]]]) -> str:
    """Render labelled iteration series as a deterministic semilog SVG.

    Each series is (label, [(k, value), ...]); values are clamped to the
    log floor.  Fixed 800x600 viewbox, log ticks at powers of ten.
    """
    width, height = 800, 600
    left, right, top, bottom = 80, 30, 30, 60
    plot_w = width - left - right
    plot_h = height - top - bottom

    ks = [k for _, pts in series for k, _ in pts]
    vals = [max(v, PLOT_FLOOR) for _, pts in series for _, v in pts]
    k_min, k_max = min(ks), max(ks)
    k_span = max(k_max - k_min, 1)
    e_min = math.floor(math.log10(min(vals)))
    e_max = math.ceil(math.log10(max(vals)))
    if e_max == e_min:
        e_max += 1
    e_span = e_max - e_min

    def sx(k: float) -> float:
        return left + (k - k_min) / k_span * plot_w

    def sy(v: float) -> float:
        return top + (e_max - math.log10(max(v, PLOT_FLOOR))) / e_span * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]

    tick_step = max(1, (e_span + 9) // 10)
    for e in range(e_min, e_max + 1, tick_step):
        y = sy(10.0**e)
        parts.append(
            f'<line x1="{left - 5:.2f}" y1="{y:.2f}" x2="{left + plot_w:.2f}" y2="{y:.2f}" '
            'stroke="#cccccc" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{left - 8:.2f}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="monospace" font-size="12">{_format_tick(e)}</text>'
        )
    x_ticks = sorted({k_min, k_max} | {k_min + round(i * k_span / 5) for i in range(1, 5)})
    for k in x_ticks:
        x = sx(k)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h:.2f}" x2="{x:.2f}" y2="{top + plot_h + 5:.2f}" '
            'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 20:.2f}" text-anchor="middle" '
            f'font-family="monospace" font-size="12">{k}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 15:.2f}" text-anchor="middle" '
        'font-family="monospace" font-size="13">iteration k</text>'
    )

    for idx, (label, pts) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(k):.2f},{sy(v):.2f}" for k, v in pts)
        if len(pts) > 1:
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        for k, v in pts:
            parts.append(f'<circle cx="{sx(k):.2f}" cy="{sy(v):.2f}" r="2" fill="{color}"/>')
        ly = top + 16 + 16 * idx
        parts.append(
            f'<rect x="{left + plot_w - 180:.2f}" y="{ly - 9:.2f}" width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{left + plot_w - 165:.2f}" y="{ly:.2f}" '
            f'font-family="monospace" font-size="12">{label}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args) -> int:
    problem, _, options = load_problem(args.problem)
    samples = args.samples if args.samples is not None else options.samples
    seed = args.seed if args.seed is not None else options.seed
    report = matrix_solver.check_conditions(problem, samples=samples, seed=seed)

    out_path = Path(args.out) if args.out else Path.cwd() / (Path(args.problem).stem + ".check.json")
    out_path.write_text(json.dumps(report.to_jsonable(), indent=2, sort_keys=True) + "\n")

    for name, stat in sorted(report.conditions.items()):
        verdict = "pass" if stat.passed else "FAIL"
        line = (
            f"condition {name}: {verdict}  ({stat.checked - stat.failures}/{stat.checked} samples, "
            f"worst margin {stat.worst_margin:+.3e})"
        )
        print(line)
        if not stat.passed and stat.worst is not None:
            print(
                f"  worst witness: sample {stat.worst['sample']}, "
                f"{stat.worst['inequality']}: lhs={stat.worst['lhs']:.6g} rhs={stat.worst['rhs']:.6g}"
            )
    print(f"report written to {out_path}")
    return EXIT_OK if report.passed else EXIT_CONDITIONS


def _resolve_x0(args, file_x0, n):
    if args.x0 is None:
        return file_x0
    if args.x0 == "identity":
        return identity(n)
    try:
        literal = json.loads(Path(args.x0).read_text())
    except OSError as exc:
        raise ProblemFormatError(f"{args.x0}: cannot read: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"{args.x0}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return matrix_from_literal(literal, "x0")
    except TfpError as exc:
        raise ProblemFormatError(f"{args.x0}: {exc}") from exc


def cmd_solve(args) -> int:
    problem, file_x0, options = load_problem(args.problem)
    if args.force:
        options = dataclasses.replace(options, force=True)
    x0 = _resolve_x0(args, file_x0, problem.n)

    out_csv = Path(args.out) if args.out else Path.cwd() / "trace.csv"
    out_json = out_csv.with_suffix(".json")

    converged = True
    try:
        result = matrix_solver.solve(problem, x0=x0, options=options)
    except X0DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_X0
    except ConditionsNotVerified as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITIONS
    except (MaxIterationsExceeded, ResidualToleranceExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        result = exc.result
        converged = False

    write_trace_csv(out_csv, trace_rows(problem, result.trace))
    write_solution_json(out_json, problem, result, options.seed, converged)
    status = "converged" if converged else "NOT residual-certified"
    print(
        f"{status}: {result.trace.iterations} iterations, residuals "
        f"({result.residual1:.3e}, {result.residual2:.3e}), "
        f"d(X, I) = {result.dist_to_identity:.6g}"
    )
    print(f"trace written to {out_csv}, solution to {out_json}")
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def cmd_plot(args) -> int:
    series_names = args.series or ["gap"]
    series = []
    for trace_path in args.traces:
        rows = read_trace_csv(trace_path)
        stem = Path(trace_path).stem
        for name in series_names:
            for column in SERIES_COLUMNS[name]:
                label = f"{stem}:{column}"
                series.append((label, [(row["k"], row[column]) for row in rows]))
    svg = render_svg(series)
    out_path = Path(args.out) if args.out else Path.cwd() / "plot.svg"
    out_path.write_text(svg)
    print(f"plot written to {out_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfp",
        description="Solve pairs of nonlinear matrix equations by Thompson-metric fixed-point iteration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the sufficiency-condition checker on a problem file")
    p_check.add_argument("problem", help="problem JSON file")
    p_check.add_argument("--samples", type=int, default=None, help="override sample count")
    p_check.add_argument("--seed", type=int, default=None, help="override sampling seed")
    p_check.add_argument("--out", default=None, help="report JSON path (default: <stem>.check.json)")
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser("solve", help="solve a problem file and write the iteration trace")
    p_solve.add_argument("problem", help="problem JSON file")
    p_solve.add_argument("--out", default=None, help="trace CSV path (default: trace.csv)")
    p_solve.add_argument("--x0", default=None, help="'identity' or path to a JSON matrix literal")
    p_solve.add_argument("--force", action="store_true", help="iterate even if the condition check fails")
    p_solve.set_defaults(func=cmd_solve)

    p_plot = sub.add_parser("plot", help="render trace CSVs as a semilog SVG chart")
    p_plot.add_argument("traces", nargs="+", help="trace CSV files")
    p_plot.add_argument(
        "--series",
        action="append",
        choices=sorted(SERIES_COLUMNS),
        default=None,
        help="series to draw (repeatable; default: gap)",
    )
    p_plot.add_argument("--out", default=None, help="SVG path (default: plot.svg)")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
