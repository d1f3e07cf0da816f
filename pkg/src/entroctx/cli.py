"""Command-line surface for the cycle-entropy experiment toolkit."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .entropy import cycle_pair_keys, cycle_single_keys
from .contexts import joint_distribution_coarse, joint_distribution_fine
from .pipeline import (
    EXACT,
    ExperimentConfig,
    cycle_contexts,
    export_qasm_suite,
    format_reconciliation,
    ingest_counts_files,
    load_config,
    preset_config,
    reproduce_reference,
    resolve_observables,
    run_experiment,
    sweep,
    sweep_summary,
    write_sampled_counts,
)
from .reports import read_entropies_file, read_report, write_report
from .sampling import fit_depolarizing
from .statevec import prepare_state


def _shots_value(text: str):
    if text == EXACT:
        return EXACT
    return int(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument(
        "--preset", choices=["s1", "s2"], help="built-in run configuration"
    )
    parser.add_argument("--seed", type=int, help="sampling seed override")
    parser.add_argument(
        "--shots", type=_shots_value, help='shot count or "exact"'
    )
    parser.add_argument(
        "--convention", choices=["coarse", "fine"], help="outcome convention"
    )
    parser.add_argument("--out", help="output path")


def _effective_config(args) -> ExperimentConfig:
    if args.config:
        config = load_config(args.config)
    else:
        config = preset_config(args.preset or "s1")
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    if getattr(args, "shots", None) is not None:
        config = replace(config, shots=args.shots)
    if getattr(args, "convention", None) is not None:
        config = replace(config, convention=args.convention)
    if getattr(args, "out", None):
        config = replace(config, outputs=args.out)
    return config


def _print_report(report, feasibility=None) -> None:
    n = report.n_observables
    for i in cycle_single_keys(n):
        print(f"H(X{i}) = {report.h_singles[i]:.11f}")
    for i, j in cycle_pair_keys(n):
        print(f"H(X{i}X{j}) = {report.h_pairs[(i, j)]:.11f}")
    print(f"M = {report.m_value:+.11f}  [{report.convention} convention]")
    if report.m_value > 0:
        print("M > 0: no noncontextual value assignment reproduces these statistics")
    else:
        print("M <= 0: consistent with a noncontextual model")
    if feasibility is not None:
        verdict = "feasible" if feasibility.feasible else "infeasible"
        print(
            f"joint-distribution LP: {verdict} "
            f"(max marginal violation {feasibility.max_constraint_violation:.3e})"
        )
    for flag in report.flags:
        print(f"flag: {flag}")


def _cmd_simulate(args) -> int:
    config = _effective_config(args)
    result = run_experiment(config)
    _print_report(result.report, result.feasibility)
    if config.outputs:
        print(f"report written to {config.outputs}")
    return 0


def _result_for_input(args):
    if getattr(args, "counts", None):
        config = _effective_config(args)
        return ingest_counts_files(args.counts, config.observable_set)
    return run_experiment(_effective_config(args))


def _cmd_entropies(args) -> int:
    if getattr(args, "counts", None):
        config = _effective_config(args)
        result = ingest_counts_files(args.counts, config.observable_set)
        _print_report(result.report)
        if args.out:
            write_report(args.out, result.report, result.feasibility.feasible)
            print(f"report written to {args.out}")
        return 0
    result = run_experiment(_effective_config(args))
    _print_report(result.report)
    if args.out:
        print(f"report written to {args.out}")
    return 0


def _cmd_inequality(args) -> int:
    if args.entropies:
        data = json.loads(Path(args.entropies).read_text())
        if "entropies" in data:
            report = read_entropies_file(args.entropies)
        else:
            report, _ = read_report(args.entropies)
        _print_report(report)
        return 0
    result = _result_for_input(args)
    _print_report(result.report, result.feasibility)
    return 0


def _cmd_nc_check(args) -> int:
    result = _result_for_input(args)
    feas = result.feasibility
    verdict = "feasible" if feas.feasible else "infeasible"
    print(f"noncontextual joint distribution: {verdict}")
    print(f"max marginal violation: {feas.max_constraint_violation:.6e}")
    print(f"total violation (LP optimum): {feas.total_violation:.6e}")
    return 0 if feas.feasible else 3


def _cmd_sample(args) -> int:
    config = _effective_config(args)
    if config.shots == EXACT:
        config = replace(config, shots=8192)
    out_dir = args.out or "counts"
    config = replace(config, outputs=None)
    paths = write_sampled_counts(config, out_dir)
    for path in paths:
        print(path)
    return 0


def _cmd_sweep(args) -> int:
    alphas = np.linspace(args.alpha_start, args.alpha_stop, args.alpha_steps)
    betas = np.linspace(args.beta_start, args.beta_stop, args.beta_steps)
    rows = sweep(args.family, alphas, betas, args.set, out=args.out)
    summary = sweep_summary(rows)
    for convention in ("coarse", "fine"):
        best = summary[f"max_m_{convention}"]
        print(
            f"max {convention} M = {best['m']:+.6f} at "
            f"alpha={best['alpha']:.4f}, beta={best['beta']:.4f}"
        )
    if args.out:
        print(f"{len(rows)} rows written to {args.out}")
    return 0


def _cmd_fit_noise(args) -> int:
    config = _effective_config(args)
    data = json.loads(Path(args.target).read_text())
    if "entropies" in data:
        body = data["entropies"]
    else:
        body = data
    observables = resolve_observables(config.observable_set)
    n = len(observables)
    state = prepare_state(config.state)
    dists, targets = [], []
    singles = {int(k): float(v) for k, v in body["h_singles"].items()}
    pairs = {}
    for key, value in body["h_pairs"].items():
        i, j = (int(x) for x in key.split("-")) if isinstance(key, str) else key
        pairs[(i, j)] = float(value)
    for kind, key, ctx in cycle_contexts(observables, config.convention):
        if config.convention == "fine":
            dists.append(joint_distribution_fine(state, ctx))
        else:
            dists.append(joint_distribution_coarse(state, ctx))
        targets.append(singles[key] if kind == "single" else pairs[key])
    fit = fit_depolarizing(dists, targets)
    print(f"fitted depolarizing weight: {fit.epsilon:.4f}")
    print(f"residual sum of squares: {fit.residual:.6f}")
    print(
        "note: a single scalar cannot pin hardware noise; "
        "the residual is the honest measure of fit quality"
    )
    return 0


def _cmd_export_qasm(args) -> int:
    config = _effective_config(args)
    written, skipped = export_qasm_suite(config, args.out or "qasm")
    for path in written:
        print(path)
    for label, reason in skipped:
        print(f"skipped {label}: {reason}")
    return 0


def _cmd_reproduce(args) -> int:
    result = reproduce_reference()
    print(format_reconciliation(result))
    if args.out:
        Path(args.out).write_text(json.dumps(result, indent=2) + "\n")
        print(f"reconciliation written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroctx",
        description=(
            "simulate, sample, and stress-test entropic tests of "
            "noncontextuality on cyclically commuting observable sets"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="full pipeline for one configuration")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("entropies", help="entropy table from a run or counts files")
    _add_common(p)
    p.add_argument("--counts", nargs="+", help="counts JSON files (one per context)")
    p.set_defaults(func=_cmd_entropies)

    p = sub.add_parser("inequality", help="evaluate the witness M")
    _add_common(p)
    p.add_argument("--counts", nargs="+", help="counts JSON files")
    p.add_argument("--entropies", help="report or literal-entropies JSON file")
    p.set_defaults(func=_cmd_inequality)

    p = sub.add_parser("nc-check", help="LP feasibility of a noncontextual joint")
    _add_common(p)
    p.add_argument("--counts", nargs="+", help="counts JSON files")
    p.set_defaults(func=_cmd_nc_check)

    p = sub.add_parser("sample", help="draw per-context counts files")
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("sweep", help="exact M over a state-parameter grid")
    p.add_argument("--family", choices=["s1", "s2"], default="s1")
    p.add_argument("--set", default="table1", help="observable set name")
    p.add_argument("--alpha-start", type=float, default=0.0)
    p.add_argument("--alpha-stop", type=float, default=float(np.pi))
    p.add_argument("--alpha-steps", type=int, default=16)
    p.add_argument("--beta-start", type=float, default=0.0)
    p.add_argument("--beta-stop", type=float, default=float(np.pi))
    p.add_argument("--beta-steps", type=int, default=16)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fit-noise", help="fit a depolarizing weight to entropies")
    _add_common(p)
    p.add_argument(
        "--target", required=True, help="report or literal-entropies JSON file"
    )
    p.set_defaults(func=_cmd_fit_noise)

    p = sub.add_parser("export-qasm", help="OpenQASM circuit per context")
    _add_common(p)
    p.set_defaults(func=_cmd_export_qasm)

    p = sub.add_parser(
        "reproduce-paper",
        help="reconcile bundled measured entropies with exact simulation",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
