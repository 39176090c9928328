"""Benchmark series: Lorenz one-step prediction tasks and uniform drive for capacity runs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class LorenzParams:
    """Lorenz system parameters and sampling setup.

    ``inner_step`` is the RK4 integrator step; it must divide the sampling
    interval ``dt``. ``transient`` samples from ``seed_state`` are discarded
    before the series starts.
    """

    a: float = 10.0
    b: float = 28.0
    c: float = 8.0 / 3.0
    dt: float = 0.1
    inner_step: float = 0.01
    transient: int = 1000
    seed_state: tuple[float, float, float] = (1.0, 1.0, 1.0)


@dataclass(frozen=True)
class AffineMap:
    """x_normalized = (x - offset) / scale."""

    scale: float
    offset: float = 0.0

    def normalize(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x) - self.offset) / self.scale

    def denormalize(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x) * self.scale + self.offset


@dataclass
class TaskDataset:
    """Aligned input/target series ready for a driver run.

    ``input`` is normalized into [-1, 1]; ``target`` is kept in original units
    with its own affine map (NRMSE is affine-invariant, so scoring on either
    convention is identical).
    """

    kind: str
    input: np.ndarray
    target: np.ndarray
    input_map: AffineMap
    target_map: AffineMap
    lengths: tuple[int, int, int] = field(default=(0, 0, 0))


def _lorenz_derivative(state: np.ndarray, p: LorenzParams) -> np.ndarray:
    x, y, z = state
    return np.array([p.a * (y - x), x * (p.b - z) - y, x * y - p.c * z])


def _rk4_step(state: np.ndarray, h: float, p: LorenzParams) -> np.ndarray:
    k1 = _lorenz_derivative(state, p)
    k2 = _lorenz_derivative(state + 0.5 * h * k1, p)
    k3 = _lorenz_derivative(state + 0.5 * h * k2, p)
    k4 = _lorenz_derivative(state + h * k3, p)
    return state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def lorenz_series(p: LorenzParams, steps: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample the Lorenz trajectory every dt with classical RK4 substeps.

    Sample k is the state at time (transient + k) * dt, with the seed state at
    time 0; the first ``transient`` samples are discarded.
    """
    if steps < 1:
        raise ValueError("need at least one sample")
    substeps = round(p.dt / p.inner_step)
    if substeps < 1 or abs(substeps * p.inner_step - p.dt) > 1e-12:
        raise ValueError(f"inner step {p.inner_step} does not divide dt {p.dt}")
    state = np.array(p.seed_state, dtype=np.float64)
    out = np.empty((steps, 3))
    for k in range(p.transient + steps):
        if k >= p.transient:
            out[k - p.transient] = state
        for _ in range(substeps):
            state = _rk4_step(state, p.inner_step, p)
    return out[:, 0], out[:, 1], out[:, 2]


def make_lorenz_task(
    kind: str,
    p: LorenzParams,
    lengths: tuple[int, int, int],
) -> TaskDataset:
    """One-step-ahead Lorenz task: drive with X_n, predict X_{n+1} (lxx) or Z_{n+1} (lxz).

    The input is normalized by its max absolute value over the whole generated
    series (the encoder rejects |u| > 1); targets stay in original units.
    """
    if kind not in ("lxx", "lxz"):
        raise ValueError(f"unknown Lorenz task {kind!r}")
    if min(lengths) < 1:
        raise ValueError("init/train/test lengths must be positive")
    total = sum(lengths)
    x, _, z = lorenz_series(p, total + 1)
    input_map = AffineMap(scale=float(np.max(np.abs(x))))
    source = x if kind == "lxx" else z
    target_map = AffineMap(scale=float(np.max(np.abs(source))))
    return TaskDataset(
        kind=kind,
        input=input_map.normalize(x[:-1]),
        target=source[1:].copy(),
        input_map=input_map,
        target_map=target_map,
        lengths=lengths,
    )


def uniform_input(m: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform drive on [-1, 1]."""
    if m < 1:
        raise ValueError("need at least one input")
    return rng.uniform(-1.0, 1.0, size=m)
