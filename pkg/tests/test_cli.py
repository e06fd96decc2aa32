import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "faga.cli"]


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          env=full_env)


class TestSolve:
    def test_small_knapsack_finds_optimum(self, tmp_path):
        r = run_cli("solve", "--problem", "skp:f3", "--algo", "faga",
                    "--trials", "3", "--seed", "7", "--iters", "60",
                    "--out", str(tmp_path / "r.csv"))
        assert r.returncode == 0, r.stderr
        assert r.stdout.startswith("f3 faga best=35")

    def test_zero_iterations_semantics(self, tmp_path):
        r = run_cli("solve", "--problem", "sphere", "--dim", "2",
                    "--algo", "fa", "--trials", "1", "--iters", "0",
                    "--seed", "3", "--out", str(tmp_path / "r.csv"))
        assert r.returncode == 0, r.stderr
        # best equals the best fitness in the initial population
        import numpy as np
        from faga.core import RngStream, init_population
        from faga.benchmarks import make_benchmark
        prob = make_benchmark("sphere", 2)
        pop = init_population(prob.bounds, 30, RngStream(3))
        expected = min(float(np.sum(p.position ** 2)) for p in pop)
        assert f"best={expected:g}" in r.stdout

    def test_unknown_instance_exits_2(self):
        r = run_cli("solve", "--problem", "skp:unknown")
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_no_problem_exits_2(self):
        assert run_cli("solve").returncode == 2

    def test_unknown_flag_rejected(self):
        assert run_cli("solve", "--problem", "sphere",
                       "--warp-speed", "9").returncode == 2

    def test_binary_algo_on_continuous_rejected(self):
        r = run_cli("solve", "--problem", "sphere", "--algo", "binary")
        assert r.returncode == 2

    def test_same_seed_byte_identical_outputs(self, tmp_path):
        outs = []
        for tag in ("a", "b"):
            csv_p = tmp_path / f"{tag}.csv"
            json_p = tmp_path / f"{tag}.json"
            trace_p = tmp_path / f"{tag}-trace.csv"
            r = run_cli("solve", "--problem", "skp:f4", "--trials", "2",
                        "--seed", "11", "--iters", "40",
                        "--out", str(csv_p), "--json-out", str(json_p),
                        "--trace-out", str(trace_p))
            assert r.returncode == 0, r.stderr
            outs.append((csv_p.read_bytes(), trace_p.read_bytes()))
        # the CSV carries wall-clock times, the trace does not
        assert outs[0][1] == outs[1][1]

    def test_config_file_with_flag_precedence(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"problem": "skp:f4", "trials": 2,
                                   "iters": 40, "seed": 9}))
        json_out = tmp_path / "r.json"
        r = run_cli("solve", "--config", str(cfg), "--trials", "1",
                    "--out", str(tmp_path / "r.csv"),
                    "--json-out", str(json_out))
        assert r.returncode == 0, r.stderr
        payload = json.loads(json_out.read_text())[0]
        assert payload["trials"] == 1          # flag wins
        assert payload["config"]["iters"] == 40  # file wins over default
        assert payload["seed"] == 9

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"problem": "sphere", "warp": 9}))
        assert run_cli("solve", "--config", str(cfg)).returncode == 2

    def test_env_seed_fallback(self, tmp_path):
        json_out = tmp_path / "r.json"
        r = run_cli("solve", "--problem", "skp:f4", "--trials", "1",
                    "--iters", "20", "--out", str(tmp_path / "r.csv"),
                    "--json-out", str(json_out), env={"FAGA_SEED": "123"})
        assert r.returncode == 0, r.stderr
        assert json.loads(json_out.read_text())[0]["seed"] == 123

    def test_flags_echoed_in_json_config(self, tmp_path):
        json_out = tmp_path / "r.json"
        r = run_cli("solve", "--problem", "skp:f4", "--trials", "1",
                    "--iters", "20", "--p-mut", "0.07", "--alpha", "0.3",
                    "--out", str(tmp_path / "r.csv"),
                    "--json-out", str(json_out))
        assert r.returncode == 0, r.stderr
        config = json.loads(json_out.read_text())[0]["config"]
        assert config["p_mut"] == 0.07
        assert config["alpha"] == 0.3
        assert config["iters"] == 20

    def test_plot_written(self, tmp_path):
        fig = tmp_path / "fig.png"
        r = run_cli("solve", "--problem", "skp:f4", "--trials", "2",
                    "--iters", "20", "--out", str(tmp_path / "r.csv"),
                    "--plot", str(fig))
        assert r.returncode == 0, r.stderr
        assert fig.exists() and fig.stat().st_size > 0


class TestOracle:
    def test_f4(self):
        r = run_cli("oracle", "--problem", "skp:f4")
        assert r.returncode == 0
        assert r.stdout.splitlines()[0] == "optimal=23"

    def test_f1(self):
        r = run_cli("oracle", "--problem", "skp:f1")
        assert "optimal=295" in r.stdout

    def test_f3_item_set(self):
        r = run_cli("oracle", "--problem", "skp:f3")
        assert "optimal=35" in r.stdout
        items = r.stdout.splitlines()[1]
        assert items == "items=1,2,4"

    def test_non_knapsack_exits_2(self):
        assert run_cli("oracle", "--problem", "sphere").returncode == 2


class TestListAndExport:
    def test_list_enumerates_everything(self):
        r = run_cli("list")
        assert r.returncode == 0
        lines = r.stdout.splitlines()
        assert len(lines) == 4 + 5 + 20
        assert any(l.startswith("skp:f2") and "capacity=878" in l
                   for l in lines)

    def test_export_round_trip(self, tmp_path):
        out = tmp_path / "f4.txt"
        r = run_cli("export-data", "--problem", "skp:f4", "--out", str(out))
        assert r.returncode == 0
        from faga.knapsack import builtin_skp, parse_orlib_mkp
        parsed = parse_orlib_mkp(out.read_text())[0]
        inst = builtin_skp("f4")
        assert list(parsed.profits) == list(inst.profits)
        assert list(parsed.weights[0]) == list(inst.weights)
        assert parsed.capacities[0] == inst.capacity

    def test_export_all_to_stdout(self):
        r = run_cli("export-data")
        assert r.returncode == 0
        from faga.knapsack import parse_orlib_mkp
        assert len(parse_orlib_mkp(r.stdout)) == 20

    def test_export_write_failure_exits_1(self, tmp_path):
        r = run_cli("export-data", "--out", str(tmp_path / "nodir" / "x.txt"))
        assert r.returncode == 1
