"""Information processing capacity: Legendre targets, admissible delay
combinations, per-order capacities, and the starting-state comparison metrics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from .driver import StateMatrix, regularize_by_noise
from .readout import capacity, ridge_normal_matrix


def legendre(order: int, x: np.ndarray | float) -> np.ndarray | float:
    """Legendre polynomial l_order(x) via the three-term recurrence."""
    if order < 0:
        raise ValueError("order must be non-negative")
    x = np.asarray(x, dtype=np.float64)
    if order == 0:
        return np.ones_like(x)
    prev, cur = np.ones_like(x), x
    for n in range(1, order):
        prev, cur = cur, ((2 * n + 1) * x * cur - n * prev) / (n + 1)
    return cur


def partitions(k: int) -> list[tuple[int, ...]]:
    """All non-decreasing positive integer tuples summing to k, lexicographic."""
    if not 1 <= k <= 8:
        raise ValueError("polynomial order must lie in 1..8")

    def emit(remaining: int, smallest: int, prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
        if remaining == 0:
            return [prefix]
        out = []
        for part in range(smallest, remaining + 1):
            out.extend(emit(remaining - part, part, prefix + (part,)))
        return out

    return emit(k, 1, ())


def _degree_runs(degrees: Sequence[int]) -> list[int]:
    """Lengths of maximal runs of equal degrees (degrees must be non-decreasing)."""
    runs: list[int] = []
    for deg, group in itertools.groupby(degrees):
        runs.append(sum(1 for _ in group))
    return runs


def delay_combinations(degrees: Sequence[int], d_max: int) -> list[tuple[int, ...]]:
    """Admissible delay assignments for a degree tuple.

    All delays lie in 1..d_max and are pairwise distinct; within each maximal
    run of equal degrees the delays are strictly decreasing (positions of equal
    degree are interchangeable, so only one ordering is kept).
    """
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    if any(d < 1 for d in degrees) or list(degrees) != sorted(degrees):
        raise ValueError("degrees must be a non-decreasing tuple of positive integers")
    runs = _degree_runs(degrees)

    def assign(run_idx: int, used: frozenset[int]) -> list[tuple[int, ...]]:
        if run_idx == len(runs):
            return [()]
        size = runs[run_idx]
        available = [d for d in range(1, d_max + 1) if d not in used]
        out = []
        for chosen in itertools.combinations(available, size):
            head = tuple(sorted(chosen, reverse=True))
            for tail in assign(run_idx + 1, used | set(chosen)):
                out.append(head + tail)
        return out

    return assign(0, frozenset())


def target_series(
    inputs: np.ndarray,
    degrees: Sequence[int],
    delays: Sequence[int],
    steps: np.ndarray,
) -> np.ndarray:
    """Product of Legendre-transformed delayed inputs evaluated at the given steps.

    ``steps`` holds 1-based input indices (as in StateMatrix.steps); every step
    must exceed the largest delay so the history exists.
    """
    if len(degrees) != len(delays):
        raise ValueError("degrees and delays must align")
    steps = np.asarray(steps, dtype=np.int64)
    if steps.min() <= max(delays):
        raise ValueError(
            f"window starts at step {int(steps.min())} but needs {max(delays)} steps of history"
        )
    inputs = np.asarray(inputs, dtype=np.float64)
    out = np.ones(steps.size)
    for deg, delay in zip(degrees, delays):
        out *= legendre(deg, inputs[steps - delay - 1])
    return out


@dataclass(frozen=True)
class ThresholdRule:
    """How spurious capacities are zeroed before summation.

    ``surrogate`` compares each family against the best capacity achieved on
    random cyclic shifts of the target; ``fixed`` uses a flat cutoff.
    """

    mode: str = "surrogate"
    value: float = 1e-3
    surrogate_count: int = 50

    def __post_init__(self) -> None:
        if self.mode not in ("surrogate", "fixed"):
            raise ValueError(f"unknown threshold mode {self.mode!r}")


@dataclass
class TargetRecord:
    order: int
    degrees: tuple[int, ...]
    delays: tuple[int, ...]
    capacity: float


@dataclass
class IpcReport:
    """Capacity totals per polynomial order plus the delay-resolved linear curve."""

    per_order: dict[int, float]
    total: float
    linear_curve: dict[int, float]
    per_target: list[TargetRecord] = field(default_factory=list)
    thresholds: dict[tuple[int, tuple[int, ...]], float] = field(default_factory=dict)


def _family_threshold(
    rule: ThresholdRule,
    prediction: np.ndarray,
    target: np.ndarray,
    rng: np.random.Generator,
) -> float:
    if rule.mode == "fixed":
        return rule.value
    n = target.size
    shifts = rng.integers(n // 10, n - n // 10, size=rule.surrogate_count)
    return max(capacity(prediction, np.roll(target, int(s))) for s in shifts)


def compute_ipc(
    s_train: StateMatrix,
    s_test: StateMatrix,
    inputs: np.ndarray,
    max_order: int,
    d_max_per_order: Sequence[int],
    threshold: ThresholdRule,
    lam: float,
    noise_sigma: float,
    rng: np.random.Generator,
) -> IpcReport:
    """Train one readout per (degree tuple, delay combination) target and sum the
    test-set capacities that survive thresholding.

    Noise regularization (when requested) is applied to the training matrix
    only; capacities are evaluated on the clean test features.
    """
    if max_order < 1 or len(d_max_per_order) < max_order:
        raise ValueError("need a d_max entry for every order up to max_order")
    if s_train.values.shape[1] != s_test.values.shape[1]:
        raise ValueError("train/test state matrices have different feature counts")
    inputs = np.asarray(inputs, dtype=np.float64)
    d_max_all = max(d_max_per_order[:max_order])
    min_step = int(min(s_train.steps.min(), s_test.steps.min()))
    if min_step <= d_max_all:
        raise ValueError(
            f"first recorded step {min_step} leaves no room for delays up to {d_max_all}"
        )

    if noise_sigma > 0:
        s_train = regularize_by_noise(s_train, noise_sigma, rng)
    a = ridge_normal_matrix(s_train, lam)
    try:
        cho = scipy.linalg.cho_factor(a)
    except scipy.linalg.LinAlgError as exc:
        raise ValueError("state matrix yields a singular readout system") from exc
    projector = scipy.linalg.cho_solve(cho, s_train.values.T)

    # Legendre transforms of the full input series, one row per needed degree.
    degrees_needed = sorted({d for k in range(1, max_order + 1) for t in partitions(k) for d in t})
    leg = {d: legendre(d, inputs) for d in degrees_needed}

    def make_targets(degrees: tuple[int, ...], delays_list: list[tuple[int, ...]],
                     steps: np.ndarray) -> np.ndarray:
        cols = np.empty((steps.size, len(delays_list)))
        for j, delays in enumerate(delays_list):
            col = np.ones(steps.size)
            for deg, delay in zip(degrees, delays):
                col *= leg[deg][steps - delay - 1]
            cols[:, j] = col
        return cols

    report = IpcReport(per_order={}, total=0.0, linear_curve={})
    for order in range(1, max_order + 1):
        d_max = d_max_per_order[order - 1]
        ipc_k = 0.0
        for degrees in partitions(order):
            delays_list = delay_combinations(degrees, d_max)
            if not delays_list:
                continue
            y_train = make_targets(degrees, delays_list, s_train.steps)
            y_test = make_targets(degrees, delays_list, s_test.steps)
            weights = projector @ y_train
            preds = s_test.values @ weights
            caps = np.array(
                [capacity(preds[:, j], y_test[:, j]) for j in range(len(delays_list))]
            )
            thr = _family_threshold(threshold, preds[:, 0], y_test[:, 0], rng)
            report.thresholds[(order, degrees)] = thr
            for j, delays in enumerate(delays_list):
                kept = caps[j] if caps[j] > thr else 0.0
                if kept > 0.0:
                    report.per_target.append(
                        TargetRecord(order, degrees, delays, float(kept))
                    )
                ipc_k += kept
                if order == 1 and degrees == (1,):
                    report.linear_curve[delays[0]] = float(kept)
        report.per_order[order] = ipc_k
        report.total += ipc_k
    return report


@dataclass(frozen=True)
class InitStateMetrics:
    """Ratio and difference of summed linear capacities against the quadratic baseline."""

    ratio: float | None
    difference: float
    windowed_difference: float


def initial_state_metrics(
    lcqa_c1_by_delay: Mapping[int, float],
    qcqa_c1_by_delay: Mapping[int, float],
    n: int,
    window: int = 4,
) -> InitStateMetrics:
    """R, D and D_W over delays up to n + 1 (window: the last ``window`` delays).

    A zero baseline sum leaves the ratio undefined (None).
    """
    delays = range(1, n + 2)
    for d in delays:
        if d not in lcqa_c1_by_delay or d not in qcqa_c1_by_delay:
            raise ValueError(f"delay-resolved capacity missing for delay {d}")
    lin_sum = sum(lcqa_c1_by_delay[d] for d in delays)
    base_sum = sum(qcqa_c1_by_delay[d] for d in delays)
    win = [d for d in delays if d > n + 1 - window]
    lin_win = sum(lcqa_c1_by_delay[d] for d in win)
    base_win = sum(qcqa_c1_by_delay[d] for d in win)
    ratio = lin_sum / base_sum if base_sum > 0 else None
    return InitStateMetrics(
        ratio=ratio,
        difference=lin_sum - base_sum,
        windowed_difference=lin_win - base_win,
    )
