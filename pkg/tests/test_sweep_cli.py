"""End-to-end sweep and CLI tests on miniature geometries."""

import csv
from dataclasses import replace
from pathlib import Path

import pytest

from qrcbench.cli import main
from qrcbench.config import ExperimentConfig
from qrcbench.sweep import run_init_state_study, run_ipc_sweep, run_lorenz_sweep

# Tiny geometry for fast end-to-end runs; n_v is shrunk so the state matrix
# stays overdetermined (train rows must exceed feature count + bias).
MINI = ExperimentConfig(
    init_steps=60,
    train_steps=120,
    test_steps=50,
    ising_n_v=5,
    ipc_max_order=1,
    ipc_d_max=(6,),
    reset_lengths=(2, 3),
    seeds=2,
)


def read_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def read_all_csv_bytes(out: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))}


class TestIpcSweep:
    def test_outputs_and_sentinel_rows(self, tmp_path):
        outcome = run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "a")
        assert outcome.ok
        assert outcome.cells == 2 + 2 * 2  # qcqa per seed + (n, seed) grid
        rows = read_rows(tmp_path / "a" / "results.csv")
        schemes = {(r["scheme"], r["n"]) for r in rows}
        assert ("qcqa", "-1") in schemes
        assert ("lcqa", "2") in schemes and ("lcqa", "3") in schemes
        assert (tmp_path / "a" / "per_order.csv").exists()
        assert (tmp_path / "a" / "linear_curve.csv").exists()
        assert (tmp_path / "a" / "run_metadata.txt").exists()
        totals = [r for r in rows if r["metric"] == "ipc_total"]
        assert len(totals) == outcome.cells

    def test_byte_identical_across_runs_and_workers(self, tmp_path):
        run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "a", workers=1)
        run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "b", workers=1)
        run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "c", workers=2)
        a = read_all_csv_bytes(tmp_path / "a")
        assert a == read_all_csv_bytes(tmp_path / "b")
        assert a == read_all_csv_bytes(tmp_path / "c")

    def test_master_seed_changes_results(self, tmp_path):
        run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "a")
        run_ipc_sweep(MINI, master_seed=8, out_dir=tmp_path / "b")
        assert read_all_csv_bytes(tmp_path / "a") != read_all_csv_bytes(tmp_path / "b")

    def test_extra_reset_length_leaves_existing_rows_identical(self, tmp_path):
        run_ipc_sweep(MINI, master_seed=7, out_dir=tmp_path / "a")
        bigger = replace(MINI, reset_lengths=(2, 3, 4))
        run_ipc_sweep(bigger, master_seed=7, out_dir=tmp_path / "b")
        small = (tmp_path / "a" / "results.csv").read_text().splitlines()
        big = (tmp_path / "b" / "results.csv").read_text().splitlines()
        assert set(small) <= set(big)
        assert len(big) > len(small)


class TestLorenzSweep:
    def test_both_tasks_and_complexity_columns(self, tmp_path):
        outcome = run_lorenz_sweep(MINI, master_seed=9, out_dir=tmp_path / "lz")
        assert outcome.ok
        rows = read_rows(tmp_path / "lz" / "results.csv")
        metrics = {r["metric"] for r in rows}
        assert metrics == {"nrmse_lxx", "nrmse_lxz"}
        for r in rows:
            assert 0.0 <= float(r["value"]) <= 2.0
        m = MINI.total_steps()
        qcqa_counts = {int(r["physical_unitary_count"]) for r in rows if r["scheme"] == "qcqa"}
        assert qcqa_counts == {m * (m + 1) // 2}
        lcqa_n2 = {
            int(r["physical_unitary_count"])
            for r in rows
            if r["scheme"] == "lcqa" and r["n"] == "2"
        }
        assert lcqa_n2 == {2 * (MINI.train_steps + MINI.test_steps)}
        assert min(qcqa_counts) > max(lcqa_n2)


class TestInitStateStudy:
    def test_legend_states_and_exact_control_rows(self, tmp_path):
        outcome = run_init_state_study(MINI, master_seed=11, out_dir=tmp_path / "init")
        assert outcome.ok
        metric_rows = read_rows(tmp_path / "init" / "init_metrics.csv")
        states = {r["init_state"] for r in metric_rows}
        assert states == {"up", "same_random", "entangled", "mixed", "new_random", "qcqa"}
        controls = [r for r in metric_rows if r["init_state"] == "qcqa"]
        assert controls
        for r in controls:
            assert r["r"] == "1"
            assert r["d"] == "0"
            assert r["d_w"] == "0"
        curve_rows = read_rows(tmp_path / "init" / "linear_curve.csv")
        delays = {int(r["delay"]) for r in curve_rows}
        assert max(delays) >= max(MINI.reset_lengths) + 1


class TestFailureHandling:
    def test_partial_failures_recorded_and_sweep_continues(self, tmp_path, monkeypatch):
        import qrcbench.sweep as sweep_mod

        real = sweep_mod.compute_ipc
        calls = {"k": 0}

        def flaky(*args, **kwargs):
            calls["k"] += 1
            if calls["k"] == 2:
                raise RuntimeError("synthetic cell failure")
            return real(*args, **kwargs)

        monkeypatch.setattr(sweep_mod, "compute_ipc", flaky)
        outcome = run_ipc_sweep(MINI, master_seed=13, out_dir=tmp_path / "f")
        assert not outcome.ok
        assert len(outcome.failures) == 1
        failures = read_rows(tmp_path / "f" / "failures.csv")
        assert len(failures) == 1
        assert "synthetic cell failure" in failures[0]["error"]
        rows = read_rows(tmp_path / "f" / "results.csv")
        assert len({(r["scheme"], r["n"], r["seed"]) for r in rows}) == outcome.cells - 1


class TestCli:
    def test_verify_passes(self, capsys):
        assert main(["verify", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_sweep_subcommand(self, tmp_path):
        cfg_path = tmp_path / "mini.cfg"
        cfg_path.write_text(
            "[run]\ninit_steps = 60\ntrain_steps = 120\ntest_steps = 50\n"
            "[ising]\nn_v = 5\n"
            "[ipc]\nmax_order = 1\nd_max = 6\n"
            "[sweep]\nreset_lengths = 2\nseeds = 1\n"
        )
        code = main(
            ["ipc-sweep", "--config", str(cfg_path), "--out", str(tmp_path / "out"),
             "--seed", "21"]
        )
        assert code == 0
        assert (tmp_path / "out" / "results.csv").exists()

    def test_config_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("[run]\nbogus_key = 1\n")
        assert main(["ipc-sweep", "--config", str(bad)]) == 2
        assert "config error" in capsys.readouterr().err

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
