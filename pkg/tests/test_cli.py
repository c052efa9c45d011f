import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(*args, stdin=None):
    env = dict(os.environ, PYTHONPATH=SRC)
    return subprocess.run(
        [sys.executable, "-m", "sidonlab", *args],
        input=stdin,
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture(scope="module")
def interval7(tmp_path_factory):
    path = tmp_path_factory.mktemp("sets") / "interval7.txt"
    res = run_cli("construct", "interval", "--n", "7", "--out", str(path))
    assert res.returncode == 0
    return str(path)


@pytest.fixture(scope="module")
def pq4(tmp_path_factory):
    path = tmp_path_factory.mktemp("sets") / "pq4.txt"
    assert run_cli("construct", "pq", "--n", "4", "--out", str(path)).returncode == 0
    return str(path)


def test_construct_pq6_prints_15_elements():
    res = run_cli("construct", "pq", "--n", "6")
    assert res.returncode == 0
    values = [line for line in res.stdout.splitlines() if line and not line.startswith("#")]
    assert len(values) == 15


def test_construct_pq1_domain_error():
    res = run_cli("construct", "pq", "--n", "1")
    assert res.returncode == 1
    assert "empty prime interval" in res.stderr


def test_usage_error_exits_2():
    assert run_cli("no-such-command").returncode == 2
    assert run_cli("sidon-max", "--mode", "additive").returncode == 2  # missing --set-file


def test_help_everywhere():
    assert run_cli("--help").returncode == 0
    for cmd in ("construct", "energy", "sidon-check", "sidon-max", "sidon-greedy",
                "sidon-delete", "c4", "capacity", "cs-audit", "t-exact", "t-search",
                "oddpow-audit", "scaling", "random-subset", "audit"):
        res = run_cli(cmd, "--help")
        assert res.returncode == 0, cmd


def test_sidon_max_interval7(interval7):
    res = run_cli("sidon-max", "--set-file", interval7, "--mode", "additive", "--budget", "10^7")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["size"] == 4
    assert payload["optimal"] is True
    assert set(payload) == {"size", "optimal", "nodes_explored", "subset"}


def test_energy_from_stdin():
    res = run_cli("energy", "--set-file", "-", stdin="1\n2\n")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["energy_add"] == 6
    assert payload["cs_lower_add"] == "16/3"


def test_sidon_check_witness(pq4):
    res = run_cli("sidon-check", "--set-file", pq4, "--mode", "multiplicative")
    payload = json.loads(res.stdout)
    assert payload["sidon"] is False
    a, b, c, d = payload["witness"]
    assert a * b == c * d


def test_c4_and_capacity(pq4):
    res = run_cli("c4", "--set-file", pq4)
    payload = json.loads(res.stdout)
    assert payload["c4_free"] is False and payload["witness"] == [2, 3, 5, 7]
    res = run_cli("capacity", "--size-p", "4", "--size-q", "4")
    assert json.loads(res.stdout)["capacity"] == 10
    res = run_cli("capacity", "--set-file", pq4)
    assert json.loads(res.stdout)["size_p"] == 2


def test_cs_audit(pq4):
    res = run_cli("cs-audit", "--set-file", pq4)
    checks = {c["check"]: c for c in json.loads(res.stdout)["checks"]}
    assert checks["cauchy_schwarz"]["pass"] is True
    assert checks["c4free_codegree_bound"]["skipped"] is True  # full pq graph has C4s


def test_seed_required_for_randomized_commands(interval7):
    assert run_cli("sidon-delete", "--set-file", interval7, "--mode", "additive").returncode == 2
    assert run_cli("t-search", "--set-file", interval7, "--mode", "additive", "--trials", "5").returncode == 2
    assert run_cli("random-subset", "--n", "20", "--a", "0.5", "--trials", "2").returncode == 2
    res = run_cli("oddpow-audit", "--n", "3", "--coeff", "1", "--samples", "4")
    assert res.returncode == 1 and "seed" in res.stderr


def test_t_exact_cli():
    res = run_cli("t-exact", "--set-file", "-", "--mode", "additive", stdin="1\n2\n3\n4\n")
    payload = json.loads(res.stdout)
    assert payload["size"] == 3 and payload["subset"] == [1, 2, 4]


def test_scaling_csv_shape():
    res = run_cli("scaling", "--construction", "interval", "--params", "10:30:5",
                  "--metrics", "energy_add", "--format", "csv")
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0] == "n,set_size,metric,value"
    assert lines[1] == "10,10,energy_add,670"
    assert lines[-1].startswith("# slope=")


def test_scaling_domain_error_propagates():
    res = run_cli("scaling", "--construction", "interval", "--params", "10,20,40",
                  "--metrics", "exact_s_plus")
    assert res.returncode == 1


def test_random_subset_cli_runs():
    res = run_cli("random-subset", "--n", "30", "--a", "0.5", "--trials", "3", "--seed", "4")
    payload = json.loads(res.stdout)
    assert payload["m"] == 5 and payload["trials"] == 3


def test_seeded_commands_are_byte_identical(interval7, pq4):
    seeded = [
        ("sidon-delete", "--set-file", interval7, "--mode", "additive", "--seed", "12"),
        ("t-search", "--set-file", interval7, "--mode", "additive", "--trials", "10", "--seed", "12"),
        ("random-subset", "--n", "25", "--a", "0.5", "--trials", "4", "--seed", "12"),
        ("oddpow-audit", "--n", "3", "--coeff", "1", "--samples", "5", "--seed", "12"),
        ("audit", "--set-file", pq4, "--budget", "10^5", "--seed", "12"),
    ]
    for args in seeded:
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == 0, (args, first.stderr)
        assert first.stdout == second.stdout


def test_output_file_matches_stdout(tmp_path, interval7):
    to_file = tmp_path / "out.json"
    res_stdout = run_cli("sidon-max", "--set-file", interval7, "--mode", "additive")
    res_file = run_cli("sidon-max", "--set-file", interval7, "--mode", "additive", "--out", str(to_file))
    assert res_file.returncode == 0
    assert to_file.read_text() == res_stdout.stdout


def test_greedy_and_delete_emit_set_lines(interval7):
    res = run_cli("sidon-greedy", "--set-file", interval7, "--mode", "additive")
    values = [int(line) for line in res.stdout.splitlines() if line and not line.startswith("#")]
    assert values[:2] == [1, 2]
    res = run_cli("sidon-delete", "--set-file", interval7, "--mode", "additive", "--seed", "3")
    assert res.returncode == 0
