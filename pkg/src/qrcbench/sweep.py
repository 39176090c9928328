"""Sweep orchestration: run cells over (scheme, reset length, seed, starting state),
collect metrics, and write deterministic CSV outputs."""

from __future__ import annotations

import functools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig, stable_seed
from .driver import RunStats, StateMatrix, regularize_by_noise, run_lcqa, run_qcqa
from .encode import InitialStateKind
from .ipc import ThresholdRule, compute_ipc, initial_state_metrics
from .readout import nrmse, predict, train_ridge
from .reservoir import CircuitParams, IsingParams, build_circuit_model, build_ising_model
from .tasks import make_lorenz_task, uniform_input, LorenzParams

QCQA_SENTINEL_N = -1

RESULTS_HEADER = "experiment_id,scheme,n,seed,init_state,metric,value,physical_unitary_count"
PER_ORDER_HEADER = "experiment_id,scheme,n,seed,init_state,k,ipc_k,total"
LINEAR_CURVE_HEADER = "experiment_id,scheme,n,seed,init_state,delay,c1"
INIT_METRICS_HEADER = "experiment_id,init_state,n,seed,r,d,d_w"
FAILURES_HEADER = "experiment_id,scheme,n,seed,init_state,error"


@dataclass(frozen=True, order=True)
class Cell:
    """One unit of sweep work; ``n`` is -1 for the quadratic baseline."""

    scheme: str
    n: int
    seed: int
    init_state: str


@dataclass
class CellOutput:
    cell: Cell
    result_rows: list[tuple] = field(default_factory=list)
    per_order_rows: list[tuple] = field(default_factory=list)
    linear_rows: list[tuple] = field(default_factory=list)
    linear_curve: dict[int, float] = field(default_factory=dict)
    error: str | None = None


@dataclass
class SweepOutcome:
    ok: bool
    out_dir: Path
    cells: int
    failures: list[tuple[Cell, str]]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def build_model(cfg: ExperimentConfig, master_seed: int, seed_idx: int):
    """Reservoir realization for one seed index (config seeds pin it globally)."""
    if cfg.reservoir == "ising":
        coupling_seed = cfg.ising_coupling_seed
        if coupling_seed is None:
            coupling_seed = stable_seed(master_seed, "model", seed_idx)
        return build_ising_model(
            IsingParams(
                field_strength=cfg.ising_h,
                clock_cycle=cfg.ising_t,
                virtual_nodes=cfg.ising_n_v,
                coupling_seed=coupling_seed,
            )
        )
    gate_seed = cfg.circuit_gate_seed
    if gate_seed is None:
        gate_seed = stable_seed(master_seed, "model", seed_idx)
    return build_circuit_model(
        CircuitParams(
            repetitions=cfg.circuit_n_w,
            param_lo=cfg.circuit_param_lo,
            param_hi=cfg.circuit_param_hi,
            gate_seed=gate_seed,
        )
    )


def _init_kind(cfg: ExperimentConfig, master_seed: int, cell: Cell) -> InitialStateKind:
    return InitialStateKind(
        tag=cell.init_state, seed=stable_seed(master_seed, "init", cell.seed)
    )


def _cell_rng(master_seed: int, cell: Cell) -> np.random.Generator:
    return np.random.default_rng(
        stable_seed(master_seed, "cell", cell.scheme, cell.n, cell.seed, cell.init_state)
    )


def _drive(cfg, master_seed, cell, model, inputs, rng) -> tuple[StateMatrix, RunStats]:
    kind = _init_kind(cfg, master_seed, cell)
    if cell.scheme == "qcqa":
        return run_qcqa(model, inputs, kind, washout=cfg.washout(), rng=rng)
    return run_lcqa(
        model, inputs, reset_length=cell.n, init=kind, washout=cfg.washout(), rng=rng
    )


def _split(cfg: ExperimentConfig, s: StateMatrix) -> tuple[StateMatrix, StateMatrix]:
    if s.rows != cfg.train_steps + cfg.test_steps:
        raise ValueError(f"expected {cfg.train_steps + cfg.test_steps} rows, got {s.rows}")
    return s.slice_rows(0, cfg.train_steps), s.slice_rows(cfg.train_steps, s.rows)


def _threshold_rule(cfg: ExperimentConfig) -> ThresholdRule:
    return ThresholdRule(
        mode=cfg.threshold_mode,
        value=cfg.threshold_value,
        surrogate_count=cfg.surrogate_count,
    )


def _run_ipc_cell(args) -> CellOutput:
    cfg, master_seed, cell, experiment_id, max_order, d_max = args
    out = CellOutput(cell=cell)
    rng = _cell_rng(master_seed, cell)
    inputs = uniform_input(
        cfg.total_steps(), np.random.default_rng(stable_seed(master_seed, "inputs", cell.seed))
    )
    model = build_model(cfg, master_seed, cell.seed)
    state, stats = _drive(cfg, master_seed, cell, model, inputs, rng)
    s_train, s_test = _split(cfg, state)
    report = compute_ipc(
        s_train,
        s_test,
        inputs,
        max_order=max_order,
        d_max_per_order=d_max,
        threshold=_threshold_rule(cfg),
        lam=cfg.resolved_lambda(),
        noise_sigma=cfg.resolved_noise_sigma(),
        rng=rng,
    )
    base = (experiment_id, cell.scheme, cell.n, cell.seed, cell.init_state)
    out.result_rows.append(base + ("ipc_total", report.total, stats.physical_unitary_count))
    for k in sorted(report.per_order):
        out.result_rows.append(
            base + (f"ipc_k{k}", report.per_order[k], stats.physical_unitary_count)
        )
        out.per_order_rows.append(base + (k, report.per_order[k], report.total))
    for delay in sorted(report.linear_curve):
        out.linear_rows.append(base + (delay, report.linear_curve[delay]))
    out.linear_curve = dict(report.linear_curve)
    return out


def _lorenz_data(init_steps: int, train_steps: int, test_steps: int):
    lengths = (init_steps, train_steps, test_steps)
    return (
        make_lorenz_task("lxx", LorenzParams(), lengths),
        make_lorenz_task("lxz", LorenzParams(), lengths),
    )


_lorenz_data = functools.lru_cache(maxsize=4)(_lorenz_data)


def _run_lorenz_cell(args) -> CellOutput:
    cfg, master_seed, cell, experiment_id = args
    out = CellOutput(cell=cell)
    rng = _cell_rng(master_seed, cell)
    lxx, lxz = _lorenz_data(cfg.init_steps, cfg.train_steps, cfg.test_steps)
    model = build_model(cfg, master_seed, cell.seed)
    state, stats = _drive(cfg, master_seed, cell, model, lxx.input, rng)
    s_train, s_test = _split(cfg, state)
    trainable = regularize_by_noise(s_train, cfg.resolved_noise_sigma(), rng)
    base = (experiment_id, cell.scheme, cell.n, cell.seed, cell.init_state)
    for dataset in (lxx, lxz):
        y_train = dataset.target[s_train.steps - 1]
        y_test = dataset.target[s_test.steps - 1]
        weights = train_ridge(trainable, y_train, cfg.resolved_lambda())
        score = nrmse(predict(s_test, weights), y_test)
        if not 0.0 <= score <= 2.0:
            out.error = f"nrmse_{dataset.kind}={score:.3g} outside sanity range [0, 2]"
        out.result_rows.append(
            base + (f"nrmse_{dataset.kind}", score, stats.physical_unitary_count)
        )
    return out


def _run_memory_cell(args) -> CellOutput:
    """Linear-capacity-only cell used by the starting-state study."""
    cfg, master_seed, cell, experiment_id, d1 = args
    return _run_ipc_cell((cfg, master_seed, cell, experiment_id, 1, (d1,)))


def _execute(cells_args, runner, workers: int) -> list[CellOutput]:
    outputs = []
    if workers <= 1:
        for args in cells_args:
            outputs.append(_guarded(runner, args))
        return outputs
    with ProcessPoolExecutor(max_workers=workers) as pool:
        outputs = list(pool.map(_guarded_star, [(runner, a) for a in cells_args]))
    return outputs


def _guarded(runner, args) -> CellOutput:
    cell = args[2]
    try:
        return runner(args)
    except Exception as exc:  # cell failures are recorded; the sweep continues
        out = CellOutput(cell=cell)
        out.error = f"{type(exc).__name__}: {exc}"
        return out


def _guarded_star(packed) -> CellOutput:
    runner, args = packed
    return _guarded(runner, args)


def _write_csv(path: Path, header: str, rows: list[tuple]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) + "\n")


def _write_metadata(
    out_dir: Path, study: str, cfg: ExperimentConfig, master_seed: int,
    wall_seconds: float, cells: int, failures: int,
) -> None:
    lines = [
        f"study = {study}",
        f"experiment_id = {study}-{cfg.reservoir}-{master_seed:x}",
        f"master_seed = {master_seed}",
        f"qrcbench_version = {__version__}",
        f"numpy_version = {np.__version__}",
        f"wall_seconds = {wall_seconds:.3f}",
        f"cells = {cells}",
        f"failed_cells = {failures}",
        "",
        "[config]",
    ]
    lines.extend(cfg.echo_lines())
    (out_dir / "run_metadata.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _collect(
    outputs: list[CellOutput], out_dir: Path, experiment_id: str,
    with_per_order: bool, with_linear: bool,
) -> tuple[list[CellOutput], list[tuple[Cell, str]]]:
    outputs = sorted(outputs, key=lambda o: o.cell)
    failures = [(o.cell, o.error) for o in outputs if o.error is not None]
    result_rows, per_order_rows, linear_rows, failure_rows = [], [], [], []
    for o in outputs:
        result_rows.extend(o.result_rows)
        per_order_rows.extend(o.per_order_rows)
        linear_rows.extend(o.linear_rows)
        if o.error is not None:
            c = o.cell
            failure_rows.append((experiment_id, c.scheme, c.n, c.seed, c.init_state, o.error))
    _write_csv(out_dir / "results.csv", RESULTS_HEADER, result_rows)
    if with_per_order:
        _write_csv(out_dir / "per_order.csv", PER_ORDER_HEADER, per_order_rows)
    if with_linear:
        _write_csv(out_dir / "linear_curve.csv", LINEAR_CURVE_HEADER, linear_rows)
    if failure_rows:
        _write_csv(out_dir / "failures.csv", FAILURES_HEADER, failure_rows)
    return outputs, failures


def run_ipc_sweep(
    cfg: ExperimentConfig, master_seed: int, out_dir: str | Path, workers: int = 1
) -> SweepOutcome:
    """Capacity sweep: one quadratic baseline per seed plus every (n, seed) cell."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    experiment_id = f"ipc-{cfg.reservoir}-{master_seed:x}"
    cells = [Cell("qcqa", QCQA_SENTINEL_N, s, cfg.init_state) for s in range(cfg.seeds)]
    cells += [
        Cell("lcqa", n, s, cfg.init_state)
        for s in range(cfg.seeds)
        for n in cfg.reset_lengths
    ]
    args = [
        (cfg, master_seed, cell, experiment_id, cfg.ipc_max_order, cfg.ipc_d_max)
        for cell in sorted(cells)
    ]
    outputs = _execute(args, _run_ipc_cell, workers)
    _, failures = _collect(outputs, out_dir, experiment_id, True, True)
    _write_metadata(
        out_dir, "ipc", cfg, master_seed, time.monotonic() - started, len(cells), len(failures)
    )
    return SweepOutcome(not failures, out_dir, len(cells), failures)


def run_lorenz_sweep(
    cfg: ExperimentConfig, master_seed: int, out_dir: str | Path, workers: int = 1
) -> SweepOutcome:
    """NRMSE sweep for both Lorenz tasks with a quadratic baseline per seed."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    experiment_id = f"lorenz-{cfg.reservoir}-{master_seed:x}"
    cells = [Cell("qcqa", QCQA_SENTINEL_N, s, cfg.init_state) for s in range(cfg.seeds)]
    cells += [
        Cell("lcqa", n, s, cfg.init_state)
        for s in range(cfg.seeds)
        for n in cfg.reset_lengths
    ]
    args = [(cfg, master_seed, cell, experiment_id) for cell in sorted(cells)]
    outputs = _execute(args, _run_lorenz_cell, workers)
    _, failures = _collect(outputs, out_dir, experiment_id, False, False)
    _write_metadata(
        out_dir, "lorenz", cfg, master_seed, time.monotonic() - started, len(cells), len(failures)
    )
    return SweepOutcome(not failures, out_dir, len(cells), failures)


def run_init_state_study(
    cfg: ExperimentConfig, master_seed: int, out_dir: str | Path, workers: int = 1
) -> SweepOutcome:
    """Starting-state comparison: linear memory curves for every legend state and
    the R / D / D_W metrics against the quadratic baseline."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    experiment_id = f"init-{cfg.reservoir}-{master_seed:x}"
    # The metrics need the linear curve resolved out to delay n + 1.
    d1 = max(cfg.ipc_d_max[0], max(cfg.reset_lengths) + 1)
    cells = [Cell("qcqa", QCQA_SENTINEL_N, s, "up") for s in range(cfg.seeds)]
    cells += [
        Cell("lcqa", n, s, tag)
        for s in range(cfg.seeds)
        for n in cfg.reset_lengths
        for tag in cfg.init_states
    ]
    args = [(cfg, master_seed, cell, experiment_id, d1) for cell in sorted(cells)]
    outputs = _execute(args, _run_memory_cell, workers)
    outputs, failures = _collect(outputs, out_dir, experiment_id, True, True)

    baselines = {
        o.cell.seed: o.linear_curve
        for o in outputs
        if o.cell.scheme == "qcqa" and o.error is None
    }
    metric_rows = []
    for o in outputs:
        if o.error is not None or o.cell.scheme != "lcqa":
            continue
        baseline = baselines.get(o.cell.seed)
        if baseline is None:
            continue
        m = initial_state_metrics(o.linear_curve, baseline, o.cell.n, cfg.metrics_window)
        metric_rows.append(
            (experiment_id, o.cell.init_state, o.cell.n, o.cell.seed,
             m.ratio, m.difference, m.windowed_difference)
        )
    # Control rows: the baseline measured against itself.
    for seed, baseline in sorted(baselines.items()):
        for n in cfg.reset_lengths:
            m = initial_state_metrics(baseline, baseline, n, cfg.metrics_window)
            metric_rows.append(
                (experiment_id, "qcqa", n, seed, m.ratio, m.difference, m.windowed_difference)
            )
    metric_rows.sort(key=lambda r: (r[1], r[2], r[3]))
    _write_csv(out_dir / "init_metrics.csv", INIT_METRICS_HEADER, metric_rows)
    _write_metadata(
        out_dir, "init", cfg, master_seed, time.monotonic() - started, len(cells), len(failures)
    )
    return SweepOutcome(not failures, out_dir, len(cells), failures)
