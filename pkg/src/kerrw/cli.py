"""Command-line front end: tables, verification, search, simulation, error curves.

Exit codes: 0 success/pass, 1 verification fail, 2 usage error, 3 resource
ceiling.  All floating-point output is printed with 6 significant digits.
The default seed comes from the KERRW_SEED environment variable when set.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .errors import KerrWError, ResourceLimitError, SizeError, UnsupportedError, ValidationError
from .homodyne import (
    ProbeModel,
    branch_partition,
    error_probability,
    measure_collapse,
    min_adjacent_gap,
)
from .phases import build_phase_table, preset_coefficients
from .search import SearchConfig, check_distinguishability, minimal_coefficients
from .states import make_w_state, state_from_jsonable

DEFAULT_THETA = 0.01
DEFAULT_ALPHA = 100.0


def _fmt6(x: float) -> float:
    """Round to 6 significant digits for stable printed output."""
    return float(f"{x:.6g}")


def _parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ValidationError(f"cannot parse coefficients {text!r}") from exc


def _resolve_coeffs(args) -> tuple[int, ...]:
    if args.coeffs:
        c = _parse_coeffs(args.coeffs)
        if args.n is not None and len(c) != args.n:
            raise SizeError(f"--coeffs has {len(c)} entries but --n is {args.n}")
        return c
    if args.n is None:
        raise ValidationError("need --n or --coeffs")
    return preset_coefficients(args.n)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default_seed() -> int:
    return int(os.environ.get("KERRW_SEED", "0"))


def cmd_table(args) -> int:
    coeffs = _resolve_coeffs(args)
    table = build_phase_table(len(coeffs), coeffs)
    if args.format == "csv":
        _emit(args, table.to_csv())
    else:
        _emit(args, json.dumps(table.to_dict(), indent=2) + "\n")
    return 0


def cmd_verify(args) -> int:
    coeffs = _resolve_coeffs(args)
    table = build_phase_table(len(coeffs), coeffs)
    report = check_distinguishability(table)
    _emit(args, json.dumps(report.to_dict(), indent=2) + "\n")
    return 0 if report.passed else 1


def cmd_search(args) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    search_logger = logging.getLogger("kerrw.search")
    search_logger.addHandler(handler)
    search_logger.setLevel(logging.INFO)
    try:
        SearchConfig(n=args.n, magnitude_bound=args.bound, objective=args.objective)
        coeffs = minimal_coefficients(args.n, objective=args.objective, max_bound=args.bound)
    finally:
        search_logger.removeHandler(handler)
    report = check_distinguishability(build_phase_table(args.n, coeffs))
    out = {
        "n": args.n,
        "objective": args.objective,
        "coefficients": list(coeffs),
        "report": report.to_dict(),
    }
    _emit(args, json.dumps(out, indent=2) + "\n")
    return 0


def cmd_simulate(args) -> int:
    coeffs = _resolve_coeffs(args)
    n = len(coeffs)
    if args.state:
        try:
            with open(args.state) as fh:
                state = state_from_jsonable(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValidationError(f"cannot read state file {args.state}: {exc}") from exc
        if state.n != n:
            raise SizeError(f"state has {state.n} photons, coefficients have {n}")
    else:
        state = make_w_state(n)
    probe = ProbeModel(alpha=args.alpha, theta=args.theta)
    rng = np.random.default_rng(args.seed)
    lines = []
    branch_counts: dict[int, int] = {}
    misclassified = 0
    invalid = 0
    for trial in range(args.trials):
        outcome = measure_collapse(state, probe, coeffs, rng, ideal=args.ideal)
        branch_counts[outcome.branch.index] = branch_counts.get(outcome.branch.index, 0) + 1
        if outcome.branch.index != outcome.true_branch.index:
            misclassified += 1
        if not outcome.valid:
            invalid += 1
        record = {"trial": trial, "seed": args.seed}
        record.update(outcome.to_dict())
        record["x"] = _fmt6(record["x"])
        lines.append(json.dumps(record))
    table = build_phase_table(n, coeffs)
    branches = branch_partition(table, probe)
    summary = {
        "summary": {
            "trials": args.trials,
            "ideal": args.ideal,
            "branch_frequencies": {
                str(i): _fmt6(branch_counts.get(i, 0) / args.trials)
                for i in range(len(branches))
            },
            "branches": [
                {"index": b.index, "abs_totals": list(b.abs_totals), "mean_x": _fmt6(b.mean_x)}
                for b in branches
            ],
            "misclassified": misclassified,
            "invalid": invalid,
        }
    }
    lines.append(json.dumps(summary))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_error_curve(args) -> int:
    coeffs = _resolve_coeffs(args)
    n = len(coeffs)
    if args.steps < 1 or args.alpha_max < args.alpha_min:
        raise ValidationError("empty alpha range")
    table = build_phase_table(n, coeffs)
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.steps)
    rows = []
    for alpha in alphas:
        probe = ProbeModel(alpha=float(alpha), theta=args.theta)
        branches = branch_partition(table, probe)
        gap = min_adjacent_gap(branches)
        if len(branches) < 2:
            err = 0.5
        else:
            # closest pair of branch means, by construction adjacent in cosine
            pair = min(
                zip(branches, branches[1:]),
                key=lambda p: abs(p[0].mean_x - p[1].mean_x),
            )
            err = error_probability(probe, pair[0].abs_totals[0], pair[1].abs_totals[0])
        rows.append((float(alpha), gap, err))
    if args.format == "json":
        payload = [
            {"alpha": _fmt6(a), "min_separation": _fmt6(g), "worst_error": _fmt6(e)}
            for a, g, e in rows
        ]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = ["alpha,min_separation,worst_error"]
        lines.extend(f"{a:.6g},{g:.6g},{e:.6g}" for a, g, e in rows)
        _emit(args, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrw",
        description="Cross-Kerr single-V-component measurement: tables, search, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_format=False):
        p.add_argument("--n", type=int, default=None, help="photon/mode count")
        p.add_argument("--coeffs", type=str, default=None,
                       help="comma-separated integer phase multipliers, e.g. 1,-2,3")
        p.add_argument("--output", type=str, default=None, help="write to file instead of stdout")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="csv")

    p_table = sub.add_parser("table", help="emit the full phase-shift table")
    add_common(p_table, with_format=True)
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="check single-V |total| uniqueness")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="find the optimal admissible coefficient set")
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--bound", type=int, default=64, help="deepening ceiling on max|c|")
    p_search.add_argument("--objective", choices=("min_max_abs", "min_range"),
                          default="min_max_abs")
    p_search.add_argument("--output", type=str, default=None)
    p_search.set_defaults(func=cmd_search)

    p_sim = sub.add_parser("simulate", help="Monte-Carlo probe measurements with collapse")
    add_common(p_sim)
    p_sim.add_argument("--trials", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=_default_seed())
    p_sim.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p_sim.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p_sim.add_argument("--ideal", action="store_true", help="noiseless branch classification")
    p_sim.add_argument("--state", type=str, default=None,
                       help="JSON state file (default: uniform single-V superposition)")
    p_sim.set_defaults(func=cmd_simulate)

    p_curve = sub.add_parser("error-curve", help="worst-pair discrimination error vs alpha")
    add_common(p_curve, with_format=True)
    p_curve.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p_curve.add_argument("--alpha-min", type=float, default=0.0)
    p_curve.add_argument("--alpha-max", type=float, default=1000.0)
    p_curve.add_argument("--steps", type=int, default=21)
    p_curve.set_defaults(func=cmd_error_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SizeError, ValidationError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KerrWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
