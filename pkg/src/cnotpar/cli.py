"""Command-line entry point: ``cnotpar {verify,simulate,evaluate,channel,plan}``.

Exit codes: 0 success, 1 validation or check failure, 2 I/O or schema error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from cnotpar.evaluator import DEFAULT_EQUALITY_TOL, FidelityTriple, measurement_plan
from cnotpar.expsim import NOISE_MODELS, NoiseParams, build_noisy_channel, sample_experiment
from cnotpar.formats import (
    SchemaError,
    build_report,
    counts_document,
    read_counts_file,
    reconstruction_document,
    write_json_atomic,
)
from cnotpar.gatezoo import CHANNEL_NAMES, channel, verify_expansion
from cnotpar.qcore import cp_violation, tp_residual

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


def _emit(doc, out: str | None) -> None:
    if out is None:
        json.dump(doc, sys.stdout, indent=2, allow_nan=False)
        sys.stdout.write("\n")
    else:
        write_json_atomic(out, doc)


def cmd_verify(args) -> int:
    checks = [("expansion CNOT = L1+L2+L3-2D", verify_expansion())]
    for name in CHANNEL_NAMES:
        s = channel(name).superop
        checks.append((f"{name} complete positivity", cp_violation(s)))
        checks.append((f"{name} trace preservation", tp_residual(s)))
    ok = True
    for label, residual in checks:
        passed = residual < args.tol
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {label:<34} residual={residual:.3e}  tol={args.tol:.1e}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_simulate(args) -> int:
    try:
        params = NoiseParams(args.model, args.strength)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.shots < 1:
        print("error: --shots must be at least 1", file=sys.stderr)
        return EXIT_FAIL
    experiment = sample_experiment(build_noisy_channel(params), args.shots, args.seed)
    metadata = {
        "synthetic": True,
        "generator": "cnotpar simulate",
        "model": params.model,
        "strength": float(params.strength),
        "shots_per_input": args.shots,
        "seed": args.seed,
    }
    try:
        write_json_atomic(args.out, counts_document(experiment, metadata))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        _, experiment = read_counts_file(args.counts)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: cannot read {args.counts}: {exc}", file=sys.stderr)
        return EXIT_IO
    report = build_report(experiment, args.equality_tol)
    try:
        _emit(report, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_channel(args) -> int:
    fs = (args.f1, args.f2, args.f3)
    if not all(0.0 <= f <= 1.0 for f in fs):
        print(f"error: fidelities {fs} must lie in [0, 1]", file=sys.stderr)
        return EXIT_FAIL
    f = FidelityTriple(*fs)
    doc = {"fidelities": {"F1": f.F1, "F2": f.F2, "F3": f.F3}}
    doc.update(reconstruction_document(f, include_matrices=True))
    try:
        _emit(doc, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_plan(args) -> int:
    plan = measurement_plan()
    if args.json:
        json.dump([
            {
                "setting": e.setting.name,
                "input_basis": list(e.setting.input_basis),
                "output_basis": list(e.setting.output_basis),
                "input": e.input_label,
                "outcome": e.outcome_label,
            }
            for e in plan
        ], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for e in plan:
            print(f"{e.setting.name}  input={e.input_label}  outcome={e.outcome_label}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cnotpar", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the expansion identity and channel physicality")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="sample a counts file from a noisy CNOT")
    p.add_argument("--model", choices=NOISE_MODELS, default="werner")
    p.add_argument("--strength", type=float, required=True)
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("evaluate", help="fidelities, criterion and bounds from a counts file")
    p.add_argument("--counts", required=True)
    p.add_argument("--out", help="report path (stdout when omitted)")
    p.add_argument("--equality-tol", type=float, default=DEFAULT_EQUALITY_TOL)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("channel", help="reconstruct the dephasing-model channel from F1 F2 F3")
    p.add_argument("f1", type=float)
    p.add_argument("f2", type=float)
    p.add_argument("f3", type=float)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("plan", help="list the 16 outcome probabilities to measure")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_plan)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
