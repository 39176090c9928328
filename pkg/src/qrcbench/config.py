"""Experiment configuration: presets, strict key-value config files, seed derivation."""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .encode import INITIAL_STATE_TAGS

PRESETS = ("desk", "paper")
RESERVOIR_TYPES = ("ising", "circuit")

# Defaults per the parameter table: regularization is Tikhonov for the circuit
# and feature noise for the Ising model.
ISING_DEFAULT_LAMBDA = 0.0
ISING_DEFAULT_NOISE = 1e-6
CIRCUIT_DEFAULT_LAMBDA = 1e-2
CIRCUIT_DEFAULT_NOISE = 0.0


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated, immutable description of one sweep experiment."""

    init_steps: int = 1000
    train_steps: int = 5000
    test_steps: int = 1000
    reservoir: str = "ising"
    ising_h: float = 0.5
    ising_t: float = 20.0
    ising_n_v: int = 30
    ising_coupling_seed: int | None = None
    circuit_n_w: int = 10
    circuit_param_lo: float = 0.1
    circuit_param_hi: float = 0.2
    circuit_gate_seed: int | None = None
    ridge_lambda: float | None = None
    noise_sigma: float | None = None
    ipc_max_order: int = 6
    ipc_d_max: tuple[int, ...] = (25, 12, 8, 6, 5, 4)
    threshold_mode: str = "surrogate"
    threshold_value: float = 1e-3
    surrogate_count: int = 50
    metrics_window: int = 4
    reset_lengths: tuple[int, ...] = tuple(range(2, 21))
    seeds: int = 10
    init_state: str = "up"
    init_states: tuple[str, ...] = INITIAL_STATE_TAGS

    def resolved_lambda(self) -> float:
        if self.ridge_lambda is not None:
            return self.ridge_lambda
        return ISING_DEFAULT_LAMBDA if self.reservoir == "ising" else CIRCUIT_DEFAULT_LAMBDA

    def resolved_noise_sigma(self) -> float:
        if self.noise_sigma is not None:
            return self.noise_sigma
        return ISING_DEFAULT_NOISE if self.reservoir == "ising" else CIRCUIT_DEFAULT_NOISE

    def washout(self) -> int:
        return self.init_steps

    def total_steps(self) -> int:
        return self.init_steps + self.train_steps + self.test_steps

    def validate(self) -> None:
        if self.reservoir not in RESERVOIR_TYPES:
            raise ValueError(f"reservoir must be one of {RESERVOIR_TYPES}")
        if min(self.init_steps, self.train_steps, self.test_steps) < 1:
            raise ValueError("init/train/test step counts must be positive")
        if self.ipc_max_order < 1 or self.ipc_max_order > len(self.ipc_d_max):
            raise ValueError("ipc max_order needs a d_max entry per order")
        if self.threshold_mode not in ("surrogate", "fixed"):
            raise ValueError("threshold_mode must be surrogate or fixed")
        if self.seeds < 1:
            raise ValueError("need at least one seed")
        if not self.reset_lengths or min(self.reset_lengths) < 1:
            raise ValueError("reset lengths must be positive")
        if max(self.reset_lengths) > self.init_steps:
            raise ValueError("reset lengths must not exceed the washout (init_steps)")
        if self.init_state not in INITIAL_STATE_TAGS:
            raise ValueError(f"init_state must be one of {INITIAL_STATE_TAGS}")
        for tag in self.init_states:
            if tag not in INITIAL_STATE_TAGS:
                raise ValueError(f"init_states entry {tag!r} unknown")
        if max(self.ipc_d_max[: self.ipc_max_order]) >= self.init_steps:
            raise ValueError("ipc delays must be shorter than the washout (init_steps)")

    def echo_lines(self) -> list[str]:
        """Canonical key = value listing, used for metadata and hashing."""
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = " ".join(str(v) for v in value)
            lines.append(f"{f.name} = {value}")
        return lines

    def config_hash(self) -> str:
        digest = hashlib.sha256("\n".join(self.echo_lines()).encode()).hexdigest()
        return digest[:8]


def preset_config(preset: str) -> ExperimentConfig:
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    if preset == "paper":
        return ExperimentConfig(init_steps=10000, train_steps=50000, test_steps=5000)
    return ExperimentConfig(init_steps=1000, train_steps=5000, test_steps=1000, seeds=5)


def _parse_int_list(raw: str) -> tuple[int, ...]:
    parts = raw.replace(",", " ").split()
    return tuple(int(p) for p in parts)


def _parse_str_list(raw: str) -> tuple[str, ...]:
    return tuple(raw.replace(",", " ").split())


# section -> key -> (config field, converter). Every key a config file may set.
_SCHEMA: dict[str, dict[str, tuple[str, object]]] = {
    "run": {
        "init_steps": ("init_steps", int),
        "train_steps": ("train_steps", int),
        "test_steps": ("test_steps", int),
    },
    "reservoir": {
        "type": ("reservoir", str),
    },
    "ising": {
        "h": ("ising_h", float),
        "t": ("ising_t", float),
        "n_v": ("ising_n_v", int),
        "coupling_seed": ("ising_coupling_seed", int),
    },
    "circuit": {
        "n_w": ("circuit_n_w", int),
        "param_lo": ("circuit_param_lo", float),
        "param_hi": ("circuit_param_hi", float),
        "gate_seed": ("circuit_gate_seed", int),
    },
    "readout": {
        "lambda": ("ridge_lambda", float),
        "noise_sigma": ("noise_sigma", float),
    },
    "ipc": {
        "max_order": ("ipc_max_order", int),
        "d_max": ("ipc_d_max", _parse_int_list),
        **{f"d_max_k{k}": (f"_ipc_d_max_k{k}", int) for k in range(1, 7)},
        "threshold_mode": ("threshold_mode", str),
        "threshold_value": ("threshold_value", float),
        "surrogate_count": ("surrogate_count", int),
        "metrics_window": ("metrics_window", int),
    },
    "sweep": {
        "reset_lengths": ("reset_lengths", _parse_int_list),
        "seeds": ("seeds", int),
        "init_state": ("init_state", str),
        "init_states": ("init_states", _parse_str_list),
    },
}


def load_config(path: str | Path | None, preset: str = "desk") -> ExperimentConfig:
    """Build a config from a preset, overlaying an optional config file.

    Unknown sections or keys are hard errors: every key is validated before
    any computation starts.
    """
    cfg = preset_config(preset)
    if path is None:
        cfg.validate()
        return cfg
    parser = configparser.ConfigParser(delimiters=("=",), inline_comment_prefixes=("#",))
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file {path} not found")
    overrides: dict[str, object] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ValueError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                known = ", ".join(sorted(_SCHEMA[section]))
                raise ValueError(f"unknown key {key!r} in [{section}]; known keys: {known}")
            field_name, convert = _SCHEMA[section][key]
            try:
                overrides[field_name] = convert(raw)
            except ValueError as exc:
                raise ValueError(f"bad value for [{section}] {key}: {raw!r}") from exc
    # Per-order delay keys (d_max_k1 .. d_max_k6) patch single entries of the
    # d_max list after any whole-list override.
    d_max = list(overrides.pop("ipc_d_max", cfg.ipc_d_max))
    for k in range(1, 7):
        value = overrides.pop(f"_ipc_d_max_k{k}", None)
        if value is not None:
            while len(d_max) < k:
                d_max.append(d_max[-1] if d_max else 1)
            d_max[k - 1] = value
    overrides["ipc_d_max"] = tuple(d_max)
    cfg = replace(cfg, **overrides)
    cfg.validate()
    return cfg


def stable_seed(*parts: object) -> int:
    """Deterministic 63-bit seed from a tuple of labels (collision-checked in tests)."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big") & (2**63 - 1)
