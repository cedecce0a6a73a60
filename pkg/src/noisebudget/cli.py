"""Command-line front end: file ingestion and report serialization.

Three verbs wrap the library:

* ``analyze <network.json>`` -- per-stage factors plus every total-factor
  computation path for a network file, cross-checked before printing.
* ``scenario <name>`` -- the bundled comparison scenarios (fig2a, fig2b,
  fig2c, fig3) with optional parameter overrides.
* ``apd`` -- staircase-device per-step statistics and the device total,
  with an optional seeded Monte Carlo diagnostic (``--trials``).

Shared flags: ``--format {table|csv|json}`` (default table), ``--out
<path>`` to write the report to a file, and ``--db`` to add decibel
noise-figure columns to ``analyze`` reports (the other verbs always
print linear factors).  Machine formats (csv, json) render numbers with
12 significant digits and are byte-deterministic for a fixed command
line.

Network files are JSON; see ``schemas/network.schema.json``.  Powers
may be given linear or as ``{"db": <number>}``; each stage takes
exactly one of ``gain``/``gain_db`` plus optional ``internal_noise``
and ``external_noise`` (default 0, always linear).

Exit codes: 0 success; 2 bad input (unreadable or invalid file, bad
flag values); 3 internal cross-check breach, with both disagreeing
values printed; 4 Monte Carlo carrier budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .apd import (
    EventBudgetError,
    McEstimate,
    StaircaseApd,
    StepStats,
    mc_total_gain,
    step_stats,
    total_excess_noise,
    total_mean_gain,
)
from .cascade import IDENTITY_RTOL, NoiseReport, build_report
from .network import CascadeNetwork, StageSpec, validate
from .scenarios import (
    ScenarioConfig,
    SeriesTable,
    fig2a_no_noise,
    fig2b_identical_external,
    fig2c_totals,
    fig3_internal_only,
)
from .units import db_to_linear, linear_to_db

__all__ = ["NetworkFileError", "load_network", "load_steps", "main"]


class NetworkFileError(ValueError):
    """A network or steps file failed to parse or validate."""


class _InvariantBreach(Exception):
    """The engine's formula paths disagreed beyond tolerance."""


# ---------------------------------------------------------------------------
# file ingestion

def _file_error(path, message: str) -> NetworkFileError:
    return NetworkFileError(f"{path}: {message}")


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise NetworkFileError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise NetworkFileError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _as_number(value, where: str, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _file_error(path, f"{where}: expected a number, got {value!r}")
    return float(value)


def _as_power(value, where: str, path) -> float:
    """A linear number, or ``{"db": number}`` converted at the boundary."""
    if isinstance(value, dict):
        if set(value) != {"db"}:
            raise _file_error(
                path, f"{where}: a power object must have exactly the key 'db'"
            )
        return db_to_linear(_as_number(value["db"], f"{where}.db", path))
    return _as_number(value, where, path)


def load_network(path) -> CascadeNetwork:
    """Read and validate a network JSON file.

    Errors carry the path plus line or key context and list every
    validation violation with its stage index.
    """
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise _file_error(path, "top level must be an object")
    unknown = set(doc) - {"input_signal", "input_noise", "stages"}
    if unknown:
        raise _file_error(path, f"unknown keys: {', '.join(sorted(unknown))}")
    for key in ("input_signal", "input_noise"):
        if key not in doc:
            raise _file_error(path, f"{key}: required")
    stages_doc = doc.get("stages")
    if not isinstance(stages_doc, list) or not stages_doc:
        raise _file_error(path, "stages: required, n >= 1")
    stages = []
    for i, item in enumerate(stages_doc):
        where = f"stages[{i}]"
        if not isinstance(item, dict):
            raise _file_error(path, f"{where}: expected an object")
        unknown = set(item) - {"gain", "gain_db", "internal_noise", "external_noise"}
        if unknown:
            raise _file_error(path, f"{where}: unknown keys: {', '.join(sorted(unknown))}")
        if ("gain" in item) == ("gain_db" in item):
            raise _file_error(path, f"{where}: exactly one of gain/gain_db")
        if "gain_db" in item:
            gain = db_to_linear(_as_number(item["gain_db"], f"{where}.gain_db", path))
        else:
            gain = _as_number(item["gain"], f"{where}.gain", path)
        stages.append(
            StageSpec(
                power_gain=gain,
                internal_noise=_as_number(
                    item.get("internal_noise", 0.0), f"{where}.internal_noise", path
                ),
                external_noise=_as_number(
                    item.get("external_noise", 0.0), f"{where}.external_noise", path
                ),
            )
        )
    network = CascadeNetwork(
        input_signal=_as_power(doc["input_signal"], "input_signal", path),
        input_noise=_as_power(doc["input_noise"], "input_noise", path),
        stages=tuple(stages),
    )
    violations = validate(network)
    if violations:
        raise _file_error(path, "; ".join(violations))
    return network


def load_steps(path) -> StaircaseApd:
    """Read per-step ionization probabilities from a JSON file.

    Accepts a bare array (``[0.5, 0.5]``) or ``{"steps": [...]}``.
    """
    doc = _load_json(path)
    if isinstance(doc, dict):
        if set(doc) != {"steps"}:
            raise _file_error(path, "expected a bare array or exactly the key 'steps'")
        doc = doc["steps"]
    if not isinstance(doc, list) or not doc:
        raise _file_error(path, "steps: required, n >= 1")
    probabilities = tuple(
        _as_number(p, f"steps[{i}]", path) for i, p in enumerate(doc)
    )
    try:
        return StaircaseApd(probabilities)
    except ValueError as exc:
        raise _file_error(path, str(exc)) from exc


# ---------------------------------------------------------------------------
# rendering

def _fmt(value) -> str:
    """12 significant digits, the precision contract of machine formats."""
    return format(float(value), ".12g")


def _round12(value) -> float:
    return float(_fmt(value))


def _csv_text(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _columns_text(header, rows) -> list[str]:
    """Aligned text columns: first column left, the rest right."""
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for cells in [header, *rows]:
        padded = [
            cell.ljust(width) if i == 0 else cell.rjust(width)
            for i, (cell, width) in enumerate(zip(cells, widths))
        ]
        lines.append("  ".join(padded).rstrip())
    return lines


_TOTAL_PATHS = (
    ("eq2", "base_friis"),
    ("eq4", "friis_composition"),
    ("eq8", "base_corrected"),
    ("eq9", "product_composition"),
    ("snr_ratio", "snr_ratio"),
)


def _total_items(report: NoiseReport) -> list[tuple[str, float]]:
    return [(token, float(getattr(report.totals, field))) for token, field in _TOTAL_PATHS]


def _analyze_cells(report: NoiseReport, emit_db: bool):
    header = ["stage", "input_noise", "f_friis", "f_bang"]
    if emit_db:
        header += ["nf_friis_db", "nf_bang_db"]
    rows = []
    for r in report.per_stage:
        row = [str(r.stage), _fmt(r.input_noise), _fmt(r.friis), _fmt(r.corrected)]
        if emit_db:
            row += [_fmt(linear_to_db(r.friis)), _fmt(linear_to_db(r.corrected))]
        rows.append(row)
    totals_header = ["total", "value"] + (["db"] if emit_db else [])
    totals_rows = []
    for token, value in _total_items(report):
        row = [token, _fmt(value)]
        if emit_db:
            row.append(_fmt(linear_to_db(value)))
        totals_rows.append(row)
    return header, rows, totals_header, totals_rows


def _analyze_csv(report: NoiseReport, emit_db: bool) -> str:
    header, rows, totals_header, totals_rows = _analyze_cells(report, emit_db)
    return _csv_text([header, *rows, [], totals_header, *totals_rows])


def _analyze_table(report: NoiseReport, emit_db: bool) -> str:
    header, rows, totals_header, totals_rows = _analyze_cells(report, emit_db)
    lines = _columns_text(header, rows) + [""] + _columns_text(totals_header, totals_rows)
    return "\n".join(lines) + "\n"


def _analyze_json(report: NoiseReport, emit_db: bool) -> str:
    per_stage = []
    for r in report.per_stage:
        item = {
            "stage": r.stage,
            "input_noise": _round12(r.input_noise),
            "friis": _round12(r.friis),
            "corrected": _round12(r.corrected),
        }
        if emit_db:
            item["friis_db"] = _round12(linear_to_db(r.friis))
            item["corrected_db"] = _round12(linear_to_db(r.corrected))
        per_stage.append(item)
    totals = {token: _round12(value) for token, value in _total_items(report)}
    if emit_db:
        for token, value in _total_items(report):
            totals[token + "_db"] = _round12(linear_to_db(value))
    return json.dumps({"per_stage": per_stage, "totals": totals}, indent=2) + "\n"


def _series_cells(table: SeriesTable):
    rows = [[str(r.stage), _fmt(r.friis), _fmt(r.corrected)] for r in table.rows]
    totals = None
    if table.totals is not None:
        totals = [[str(r.stage), _fmt(r.friis), _fmt(r.corrected)] for r in table.totals]
    return rows, totals


def _scenario_csv(table: SeriesTable) -> str:
    rows, totals = _series_cells(table)
    out = [["stage", "friis", "corrected"], *rows]
    if totals is not None:
        out += [[], ["total", "friis", "corrected"], *totals]
    return _csv_text(out)


def _scenario_table(table: SeriesTable) -> str:
    rows, totals = _series_cells(table)
    lines = [f"scenario: {table.label}"]
    lines += _columns_text(["stage", "friis", "corrected"], rows)
    if totals is not None:
        lines += ["", "cumulative totals"]
        lines += _columns_text(["total", "friis", "corrected"], totals)
    return "\n".join(lines) + "\n"


def _scenario_json(table: SeriesTable) -> str:
    def row_obj(row):
        return {
            "stage": row.stage,
            "friis": _round12(row.friis),
            "corrected": _round12(row.corrected),
        }

    doc = {
        "label": table.label,
        "rows": [row_obj(r) for r in table.rows],
        "totals": None if table.totals is None else [row_obj(r) for r in table.totals],
    }
    return json.dumps(doc, indent=2) + "\n"


def _apd_sections(stats: list[StepStats], total: float, mean: float,
                  estimate: McEstimate | None):
    step_rows = [
        [str(i), _fmt(s.p), _fmt(s.mean_gain), _fmt(s.variance), _fmt(s.excess_noise)]
        for i, s in enumerate(stats, start=1)
    ]
    total_rows = [["excess_noise", _fmt(total)], ["mean_gain", _fmt(mean)]]
    diagnostic_rows = None
    if estimate is not None:
        diagnostic_rows = [
            ["trials", str(estimate.trials)],
            ["seed", str(estimate.seed)],
            ["workers", str(estimate.workers)],
            ["mean", _fmt(estimate.mean)],
            ["variance", _fmt(estimate.variance)],
            ["second_moment", _fmt(estimate.second_moment)],
            ["excess_noise", _fmt(estimate.excess_noise)],
            ["std_error_mean", _fmt(estimate.std_error_mean)],
            ["analytic_mean_gain", _fmt(mean)],
            ["analytic_excess_noise", _fmt(total)],
        ]
    return step_rows, total_rows, diagnostic_rows


_APD_HEADER = ["step", "p", "mean_gain", "variance", "excess_noise"]


def _apd_csv(stats, total, mean, estimate) -> str:
    step_rows, total_rows, diagnostic_rows = _apd_sections(stats, total, mean, estimate)
    out = [_APD_HEADER, *step_rows, [], ["total", "value"], *total_rows]
    if diagnostic_rows is not None:
        out += [[], ["diagnostic", "value"], *diagnostic_rows]
    return _csv_text(out)


def _apd_table(stats, total, mean, estimate) -> str:
    step_rows, total_rows, diagnostic_rows = _apd_sections(stats, total, mean, estimate)
    lines = _columns_text(_APD_HEADER, step_rows)
    lines += ["", "device totals"]
    lines += _columns_text(["total", "value"], total_rows)
    if diagnostic_rows is not None:
        lines += ["", "Monte Carlo diagnostic (not asserted against the analytic values)"]
        lines += _columns_text(["diagnostic", "value"], diagnostic_rows)
    return "\n".join(lines) + "\n"


def _apd_json(stats, total, mean, estimate) -> str:
    doc = {
        "steps": [
            {
                "step": i,
                "p": _round12(s.p),
                "mean_gain": _round12(s.mean_gain),
                "variance": _round12(s.variance),
                "second_moment": _round12(s.second_moment),
                "excess_noise": _round12(s.excess_noise),
            }
            for i, s in enumerate(stats, start=1)
        ],
        "total": {"excess_noise": _round12(total), "mean_gain": _round12(mean)},
        "diagnostic": None,
    }
    if estimate is not None:
        doc["diagnostic"] = {
            "trials": estimate.trials,
            "seed": estimate.seed,
            "workers": estimate.workers,
            "mean": _round12(estimate.mean),
            "variance": _round12(estimate.variance),
            "second_moment": _round12(estimate.second_moment),
            "excess_noise": _round12(estimate.excess_noise),
            "std_error_mean": _round12(estimate.std_error_mean),
            "analytic_mean_gain": _round12(mean),
            "analytic_excess_noise": _round12(total),
        }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands

def _check_identities(report: NoiseReport) -> None:
    """Cross-check the redundant formula paths before emitting anything."""
    t = report.totals
    pairs = [
        ("eq9", t.product_composition, "eq8", t.base_corrected),
        ("eq9", t.product_composition, "snr_ratio", t.snr_ratio),
        ("eq4", t.friis_composition, "eq2", t.base_friis),
    ]
    for name_a, a, name_b, b in pairs:
        if not math.isclose(a, b, rel_tol=IDENTITY_RTOL):
            raise _InvariantBreach(
                f"{name_a} = {float(a)!r} and {name_b} = {float(b)!r} "
                f"disagree beyond {IDENTITY_RTOL} relative"
            )


def _cmd_analyze(args) -> str:
    network = load_network(args.network)
    report = build_report(network)
    _check_identities(report)
    if args.format == "csv":
        return _analyze_csv(report, args.db)
    if args.format == "json":
        return _analyze_json(report, args.db)
    return _analyze_table(report, args.db)


_SCENARIOS = {
    "fig2a": fig2a_no_noise,
    "fig2b": fig2b_identical_external,
    "fig2c": fig2c_totals,
    "fig3": fig3_internal_only,
}


def _cmd_scenario(args) -> str:
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    if args.gain is not None:
        overrides["gain"] = args.gain
    if args.ext is not None:
        overrides["external_noise"] = args.ext
    if args.delta is not None:
        overrides["internal_ratio"] = args.delta
    if args.ni is not None:
        overrides["input_noise"] = args.ni
    table = _SCENARIOS[args.name](ScenarioConfig(**overrides))
    if args.format == "csv":
        return _scenario_csv(table)
    if args.format == "json":
        return _scenario_json(table)
    return _scenario_table(table)


def _cmd_apd(args) -> str:
    if bool(args.p) == bool(args.file):
        raise ValueError("provide step probabilities with --p or --file (exactly one)")
    apd = load_steps(args.file) if args.file else StaircaseApd(tuple(args.p))
    stats = [step_stats(p) for p in apd.steps]
    total = float(total_excess_noise(apd))
    mean = total_mean_gain(apd)
    estimate = None
    if args.trials is not None:
        estimate = mc_total_gain(apd, args.trials, args.seed, workers=args.workers)
    if args.format == "csv":
        return _apd_csv(stats, total, mean, estimate)
    if args.format == "json":
        return _apd_json(stats, total, mean, estimate)
    return _apd_table(stats, total, mean, estimate)


# ---------------------------------------------------------------------------
# argument parsing and entry point

def _add_output_flags(parser: argparse.ArgumentParser, root: bool = False) -> None:
    # The flags live on the root parser and on every subparser so they
    # may appear on either side of the verb; subparser copies default to
    # SUPPRESS so an absent flag never clobbers the root value.
    suppress = argparse.SUPPRESS
    parser.add_argument(
        "--format",
        choices=["table", "csv", "json"],
        default="table" if root else suppress,
        help="report format (default: table)",
    )
    parser.add_argument(
        "--db",
        action="store_true",
        default=False if root else suppress,
        help="add decibel noise-figure columns to analyze reports",
    )
    parser.add_argument(
        "--out",
        metavar="PATH",
        default=None if root else suppress,
        help="write the report to PATH instead of stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisebudget",
        description="Noise-budget analysis for n-stage cascade networks.",
    )
    _add_output_flags(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="verb")

    p = sub.add_parser(
        "analyze", help="per-stage and total noise factors for a network file"
    )
    p.add_argument(
        "network", help="network JSON file (see schemas/network.schema.json)"
    )
    _add_output_flags(p)

    p = sub.add_parser("scenario", help="bundled comparison scenarios")
    p.add_argument("name", choices=sorted(_SCENARIOS))
    p.add_argument("--n", type=int, default=None, help="stage count (default 6)")
    p.add_argument("--gain", type=float, default=None, help="common power gain, >= 1")
    p.add_argument(
        "--ext", type=float, default=None, help="per-stage external noise power"
    )
    p.add_argument(
        "--delta",
        type=float,
        default=None,
        help="internal noise as a fraction of each stage's input noise",
    )
    p.add_argument("--ni", type=float, default=None, help="input noise power")
    _add_output_flags(p)

    p = sub.add_parser(
        "apd", help="staircase-device excess noise, optionally probed by Monte Carlo"
    )
    p.add_argument(
        "--p",
        action="append",
        type=float,
        metavar="PROB",
        help="step ionization probability in [0, 1]; repeat per step",
    )
    p.add_argument(
        "--file", metavar="PATH", default=None, help="JSON file of step probabilities"
    )
    p.add_argument(
        "--trials",
        type=int,
        default=None,
        metavar="N",
        help="run the Monte Carlo diagnostic with N trials",
    )
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    p.add_argument(
        "--workers",
        type=int,
        default=1,
        help="independent Monte Carlo seed streams (default 1)",
    )
    _add_output_flags(p)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit code (0/2/3/4)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "analyze":
            text = _cmd_analyze(args)
        elif args.command == "scenario":
            text = _cmd_scenario(args)
        else:
            text = _cmd_apd(args)
        _emit(text, args.out)
    except EventBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except _InvariantBreach as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
