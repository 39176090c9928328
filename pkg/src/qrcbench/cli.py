"""Command-line entry point: sweep subcommands and a fast self-verification suite."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .config import load_config
from .driver import run_lcqa, run_qcqa
from .encode import InitialStateKind
from .reservoir import CircuitParams, IsingParams, build_circuit_model, build_ising_model
from .sweep import run_init_state_study, run_ipc_sweep, run_lorenz_sweep
from .tasks import uniform_input


def _add_sweep_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", default=None, help="key-value config file")
    sub.add_argument("--seed", type=int, default=1234, help="master seed")
    sub.add_argument("--workers", type=int, default=1, help="parallel sweep workers")
    sub.add_argument("--out", default=None, help="output directory")
    sub.add_argument("--preset", choices=("desk", "paper"), default="desk")


def _run_sweep(args: argparse.Namespace, runner, default_out: str) -> int:
    try:
        cfg = load_config(args.config, preset=args.preset)
    except (ValueError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out_dir = args.out if args.out is not None else default_out
    outcome = runner(cfg, args.seed, out_dir, workers=args.workers)
    for cell, error in outcome.failures:
        print(f"FAIL cell {cell}: {error}", file=sys.stderr)
    print(f"{outcome.cells} cells -> {outcome.out_dir}"
          f" ({len(outcome.failures)} failed)")
    return 0 if outcome.ok else 1


def _verify(seed: int) -> int:
    """Fast scheme-equivalence oracle and invariant suite; exits nonzero on failure."""
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, ok, detail))
        print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail and not ok else ''}")

    rng = np.random.default_rng(seed)
    inputs = uniform_input(30, rng)
    up = InitialStateKind("up")
    for name, model in (
        ("ising", build_ising_model(IsingParams(coupling_seed=seed))),
        ("circuit", build_circuit_model(CircuitParams(gate_seed=seed))),
    ):
        try:
            model.validate()
            record(f"{name}: every segment unitary", True)
        except ValueError as exc:
            record(f"{name}: every segment unitary", False, str(exc))
            continue
        s_q, st_q = run_qcqa(model, inputs, up, washout=0, validate_every=10)
        s_l, st_l = run_lcqa(model, inputs, reset_length=30, init=up, washout=0,
                             validate_every=10)
        gap = float(np.max(np.abs(s_q.values - s_l.values)))
        record(f"{name}: linear scheme with full window reproduces quadratic scheme",
               gap <= 1e-10, f"max entry gap {gap:.3e}")
        record(f"{name}: quadratic insertion count",
               st_q.physical_unitary_count == 30 * 31 // 2,
               f"got {st_q.physical_unitary_count}")
        record(f"{name}: linear insertion count",
               st_l.physical_unitary_count == sum(min(30, i) for i in range(1, 31)),
               f"got {st_l.physical_unitary_count}")
        try:
            run_lcqa(model, inputs, reset_length=5, init=up, washout=5, validate_every=3)
            record(f"{name}: state invariants during evolution", True)
        except ValueError as exc:
            record(f"{name}: state invariants during evolution", False, str(exc))
    failed = [c for c in checks if not c[1]]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 0 if not failed else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qrcbench",
        description="Quantum reservoir computing benchmark harness",
    )
    parser.add_argument("--version", action="version", version=f"qrcbench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("ipc-sweep", "information processing capacity over reset lengths"),
        ("lorenz-sweep", "Lorenz one-step prediction NRMSE over reset lengths"),
        ("init-study", "starting-state comparison (linear memory and R/D/D_W)"),
    ):
        _add_sweep_args(sub.add_parser(name, help=help_text))

    verify_parser = sub.add_parser("verify", help="run the scheme-equivalence oracle suite")
    verify_parser.add_argument("--seed", type=int, default=1234)

    args = parser.parse_args(argv)
    if args.command == "ipc-sweep":
        return _run_sweep(args, run_ipc_sweep, "results/ipc")
    if args.command == "lorenz-sweep":
        return _run_sweep(args, run_lorenz_sweep, "results/lorenz")
    if args.command == "init-study":
        return _run_sweep(args, run_init_state_study, "results/init")
    return _verify(args.seed)


if __name__ == "__main__":
    sys.exit(main())
