"""Command-line interface.

Subcommands:

    conservation   verify the monogamy/conservation identities on a seeded
                   ensemble of Haar-random three-qubit pure states
    dqc1           analyse one DQC1 instance (trace estimate, separability
                   certificate, redistribution ledger)
    ssa-sweep      sweep the example state family and check both
                   subadditivity inequalities at every grid point
    state-info     validate a state file and report its measures

All randomness is seeded; rerunning a command with the same flags produces
byte-identical data files.  Floats are written with 12 significant digits
and '.' as the decimal separator.

Exit codes: 0 success, 1 tolerance failure, 2 invalid input, 3 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .dqc1 import Dqc1Instance, dqc1_ledger
from .fileio import StateFormatError, load_state, load_unitary
from .measures import (
    OptimizerConfig,
    classical_correlation,
    eof_two_qubit,
    mutual_information,
    negativity,
    von_neumann_entropy,
)
from .monogamy import (
    DISCORD_SLACK,
    ENTROPY_SLACK,
    delta_balance,
    focus_ledgers,
    ssa_sweep,
)
from .states import (
    InternalInconsistencyError,
    InvariantViolation,
    PureState,
    QStateError,
    SubsystemLayout,
    partial_trace,
    random_pure_state,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

# dqc1 acceptance thresholds: exact quantities at numerical precision,
# discord-bearing residuals at optimizer precision
TRACE_TOL = 1e-9
NEGATIVITY_TOL = 1e-9
RESIDUAL_TOL = 1e-3

_TRIPLE = SubsystemLayout((2, 2, 2), ("A", "B", "E"))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path, header, rows) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row.get(col, "")) for col in header])
    finally:
        if close:
            fh.close()


def _write_json(path, doc) -> None:
    fh, close = _open_out(path)
    try:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    finally:
        if close:
            fh.close()


def _plot_path(out) -> str:
    if out is None:
        return "qcorrel_report.png"
    p = Path(out)
    return str(p.with_suffix(".png"))


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(restarts=args.restarts, max_iters=args.max_iters,
                           seed=args.seed)


def cmd_conservation(args) -> int:
    header = ["sample", "seed", "focus", "E_AB", "E_AE", "delta_AB", "delta_AE",
              "r1", "r2", "r3", "r4", "r5", "spread_AB", "spread_AE"]
    resid_keys = ("r1", "r2", "r3", "r4", "r5")
    rows = []
    worst = (0.0, None, None, None)  # |value|, residual name, seed, focus
    for i in range(args.samples):
        sample_seed = args.seed + i
        psi = random_pure_state(_TRIPLE, sample_seed)
        cfg = OptimizerConfig(restarts=args.restarts, max_iters=args.max_iters,
                              seed=sample_seed)
        for focus, led in focus_ledgers(psi, cfg).items():
            row = {"sample": i, "seed": sample_seed, "focus": focus,
                   "E_AB": led.E_AB, "E_AE": led.E_AE,
                   "delta_AB": led.delta_AB, "delta_AE": led.delta_AE,
                   "r1": led.r1, "r2": led.r2, "r3": led.r3, "r4": led.r4,
                   "r5": led.r5,
                   "spread_AB": led.spreads["AB"], "spread_AE": led.spreads["AE"]}
            rows.append(row)
            for key in resid_keys:
                if abs(row[key]) > worst[0]:
                    worst = (abs(row[key]), key, sample_seed, focus)

    summary = {"sample": "summary", "seed": "", "focus": ""}
    for key in resid_keys:
        summary[key] = max(abs(r[key]) for r in rows) if rows else 0.0

    if args.format == "csv":
        _write_csv(args.out, header, rows + [summary])
    else:
        _write_json(args.out, {"command": "conservation", "seed": args.seed,
                               "samples": args.samples, "rows": rows,
                               "summary": {k: summary[k] for k in resid_keys}})
    if args.plot:
        from .plotting import render_conservation_figure
        render_conservation_figure(rows, _plot_path(args.out))

    if worst[0] > args.tol:
        print(f"tolerance exceeded: max |{worst[1]}| = {worst[0]:.6e} "
              f"at sample seed {worst[2]} (focus {worst[3]}) > tol = {args.tol:g}",
              file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_dqc1(args) -> int:
    if args.unitary is not None:
        inst = Dqc1Instance.from_unitary(load_unitary(args.unitary))
        if args.n is not None and inst.n != args.n:
            raise InvariantViolation(
                "shape", f"--n {args.n} does not match the {2 ** inst.n}-dimensional "
                         f"unitary in {args.unitary}")
    else:
        inst = Dqc1Instance.random(args.n if args.n is not None else 1, args.seed)
    led = dqc1_ledger(inst, _optimizer_config(args))

    header = ["n", "exact_re", "exact_im", "estimate_re", "estimate_im",
              "negativity_AB", "concurrence_AB",
              "E_AB", "E_AE", "E_BE", "delta_AB", "delta_BA", "delta_AE",
              "delta_BE", "E_A_BE", "E_B_AE", "E_E_AB",
              "r8", "r9", "r10", "e_be_source"]
    row = {"n": led.n,
           "exact_re": led.exact_trace.real, "exact_im": led.exact_trace.imag,
           "estimate_re": led.trace_estimate.real,
           "estimate_im": led.trace_estimate.imag,
           "negativity_AB": led.negativity_AB,
           "concurrence_AB": led.concurrence_AB,
           "E_AB": led.E_AB, "E_AE": led.E_AE, "E_BE": led.E_BE,
           "delta_AB": led.delta_AB, "delta_BA": led.delta_BA,
           "delta_AE": led.delta_AE, "delta_BE": led.delta_BE,
           "E_A_BE": led.E_A_BE, "E_B_AE": led.E_B_AE, "E_E_AB": led.E_E_AB,
           "r8": led.r8, "r9": led.r9, "r10": led.r10,
           "e_be_source": led.e_be_source}
    if args.format == "csv":
        _write_csv(args.out, header, [row])
    else:
        _write_json(args.out, {"command": "dqc1", **row})

    est_err = abs(led.trace_estimate - led.exact_trace)
    failures = []
    if est_err > TRACE_TOL:
        failures.append(f"|estimate - exact| = {est_err:.3e} > {TRACE_TOL:g}")
    if led.negativity_AB > NEGATIVITY_TOL:
        failures.append(f"negativity(A:B) = {led.negativity_AB:.3e} > {NEGATIVITY_TOL:g}")
    for name, value in (("r8", led.r8), ("r9", led.r9), ("r10", led.r10)):
        if value is not None and abs(value) > RESIDUAL_TOL:
            failures.append(f"|{name}| = {abs(value):.3e} > {RESIDUAL_TOL:g}")
    if failures:
        print("dqc1 check failed: " + "; ".join(failures), file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_ssa_sweep(args) -> int:
    if not 0.0 <= args.lam <= 1.0:
        raise InvariantViolation("parameter", f"--lambda {args.lam} outside [0, 1]")
    if args.alpha_steps < 2:
        raise InvariantViolation("parameter", "--alpha-steps must be >= 2")
    alphas = np.linspace(0.0, 1.0, args.alpha_steps)
    reports = ssa_sweep(args.lam, alphas, _optimizer_config(args), arrow=args.arrow)

    header = ["alpha", "p", "S_AB", "S_AE", "S_B", "S_E", "E_AB", "E_AE",
              "delta_AB", "delta_AE", "Delta", "Delta_tilde", "I1", "I2",
              "spread_AB", "spread_AE"]
    rows = []
    for alpha, rep in zip(alphas, reports):
        rows.append({"alpha": alpha, "p": np.sqrt((1.0 - alpha * alpha) / 2.0),
                     "S_AB": rep.S_AB, "S_AE": rep.S_AE, "S_B": rep.S_B,
                     "S_E": rep.S_E, "E_AB": rep.E_AB, "E_AE": rep.E_AE,
                     "delta_AB": rep.delta_AB, "delta_AE": rep.delta_AE,
                     "Delta": rep.delta, "Delta_tilde": rep.delta_tilde,
                     "I1": rep.I1, "I2": rep.I2,
                     "spread_AB": rep.spread_AB, "spread_AE": rep.spread_AE})
    if args.format == "csv":
        _write_csv(args.out, header, rows)
    else:
        _write_json(args.out, {"command": "ssa-sweep", "lambda": args.lam,
                               "arrow": args.arrow, "rows": rows})
    if args.plot:
        from .plotting import render_ssa_figure
        render_ssa_figure(alphas, reports, _plot_path(args.out), args.lam)

    bad = [(a, r) for a, r in zip(alphas, reports)
           if r.I1 < -ENTROPY_SLACK or r.I1 - r.delta_tilde < -DISCORD_SLACK]
    if bad:
        alpha, rep = bad[0]
        print(f"inequality violated at alpha = {alpha:.6g}: I1 = {rep.I1:.6e}, "
              f"I1 - Delta_tilde = {rep.I1 - rep.delta_tilde:.6e}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def _state_report(state, cfg: OptimizerConfig, arrow: str) -> dict:
    rho = state.to_density() if isinstance(state, PureState) else state
    lay = rho.layout
    purity = float(np.trace(rho.entries @ rho.entries).real)
    report = {
        "kind": "pure" if isinstance(state, PureState) else "density",
        "dims": list(lay.dims),
        "labels": list(lay.labels),
        "valid": True,
        "purity": purity,
        "entropy_total": von_neumann_entropy(rho),
        "entropies": {l: von_neumann_entropy(partial_trace(rho, l))
                      for l in lay.labels},
    }
    pairs = []
    labels = lay.labels
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            x, y = labels[i], labels[j]
            entry = {"pair": f"{x}{y}",
                     "mutual_information": mutual_information(rho, (x, y))}
            pair_rho = partial_trace(rho, (x, y))
            entry["negativity"] = negativity(pair_rho, x)
            if pair_rho.layout.dims == (2, 2):
                entry["eof"] = eof_two_qubit(pair_rho)
                for unm, meas in ((x, y), (y, x)):
                    cc = classical_correlation(pair_rho, unm, meas, cfg)
                    entry[f"J_{unm}{meas}"] = cc.value
                    dis = entry["mutual_information"] - cc.value
                    entry[f"delta_{unm}{meas}"] = 0.0 if abs(dis) < 1e-9 else dis
            pairs.append(entry)
    report["pairs"] = pairs
    if lay.dims == (2, 2, 2):
        a, b, e = labels
        rep = delta_balance(rho, a, b, e, cfg, arrow)
        report["delta_balance"] = {
            "arrow": arrow, "Delta": rep.delta, "Delta_tilde": rep.delta_tilde,
            "I1": rep.I1, "I2": rep.I2, "ss_holds": rep.ss_holds,
            "strengthened_holds": rep.strengthened_holds,
        }
    return report


def cmd_state_info(args) -> int:
    state = load_state(args.state_file)
    report = _state_report(state, _optimizer_config(args), args.arrow)
    _write_json(args.out, report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorrel",
        description="Quantum correlation measures, monogamy identities and "
                    "DQC1 analysis on small multi-qubit systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=42,
                       help="base RNG seed (default 42)")
        p.add_argument("--out", type=str, default=None,
                       help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format (default csv)")
        p.add_argument("--restarts", type=int, default=None,
                       help="optimizer restarts (default: per-dimension)")
        p.add_argument("--max-iters", type=int, default=2000,
                       help="optimizer iteration cap per restart")

    p = sub.add_parser("conservation",
                       help="verify monogamy/conservation identities on a "
                            "Haar-random ensemble")
    add_common(p)
    p.add_argument("--samples", type=int, default=100,
                   help="ensemble size (default 100)")
    p.add_argument("--tol", type=float, default=1e-4,
                   help="acceptance threshold on |residuals| (default 1e-4)")
    p.add_argument("--plot", action="store_true",
                   help="render a residual figure next to the output")
    p.set_defaults(func=cmd_conservation)

    p = sub.add_parser("dqc1", help="analyse one DQC1 instance")
    add_common(p)
    p.add_argument("--n", type=int, default=None,
                   help="number of mixed qubits (default 1)")
    p.add_argument("--unitary", type=str, default=None,
                   help="JSON file with kind 'unitary' (default: Haar-random "
                        "from --seed)")
    p.set_defaults(func=cmd_dqc1)

    p = sub.add_parser("ssa-sweep",
                       help="sweep the example family and check the "
                            "subadditivity inequalities")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=float, default=0.9,
                   help="mixing weight of the pure component (default 0.9)")
    p.add_argument("--alpha-steps", type=int, default=201,
                   help="uniform grid size on [0, 1] (default 201)")
    p.add_argument("--arrow", choices=("second", "first"), default="second",
                   help="measured side of the discord terms (default second)")
    p.add_argument("--plot", action="store_true",
                   help="render the gap curves next to the output")
    p.set_defaults(func=cmd_ssa_sweep)

    p = sub.add_parser("state-info",
                       help="validate a state file and report its measures")
    add_common(p)
    p.add_argument("state_file", type=str, help="JSON state file")
    p.add_argument("--arrow", choices=("second", "first"), default="second")
    p.set_defaults(func=cmd_state_info)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InvariantViolation, StateFormatError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
