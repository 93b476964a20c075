import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "qorbit.cli"]


def run(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, env=env)


def test_classify_holomorphic_example():
    r = run("classify", "--q", "0.5", "--c0", "1", "--d0", "1", "--nu0", "0.5")
    assert r.returncode == 0
    body = json.loads(r.stdout)
    assert body["schema"] == 1
    assert body["series"] == "HolomorphicDiscrete"
    assert body["spectrum_kind"] == "plus"


def test_heis_relations_pass():
    r = run("heis", "--n", "1", "--degree", "4", "--check", "relations")
    assert r.returncode == 0
    assert json.loads(r.stdout)["status"] == "pass"


def test_invalid_q_exits_2():
    r = run("classify", "--q", "1.5", "--c0", "1", "--d0", "1", "--nu0", "0.5")
    assert r.returncode == 2
    r = run("moment", "--q", "0.0", "--check", "relations")
    assert r.returncode == 2


def test_unknown_flag_exits_2():
    r = run("classify", "--q", "0.5", "--frobnicate", "1")
    assert r.returncode == 2
    assert b"usage" in r.stderr.lower() or b"error" in r.stderr.lower()


def test_complex_parameter_parsing():
    r = run("classify", "--q", "0.5", "--c0", "0.921060994002885,0.389418342308651",
            "--d0", "0.921060994002885,-0.389418342308651", "--nu0", "0.8")
    assert r.returncode == 0
    assert json.loads(r.stdout)["series"] == "PrincipalContinuous"


def test_determinism_byte_identical():
    outs = set()
    for _ in range(2):
        r = run("classify", "--q", "0.5", "--c0", "1", "--d0", "1", "--nu0", "0.5")
        outs.add(r.stdout)
    assert len(outs) == 1
    outs = set()
    for _ in range(2):
        r = run("kernel", "--q", "0.45", "--l", "-1.3", "--check", "psd")
        outs.add(r.stdout)
    assert len(outs) == 1


def test_sweep_deterministic_under_threads(tmp_path):
    grid = {"q": 0.5,
            "points": [{"c0": 0.5 ** a, "d0": 0.5 ** -a, "nu0": nu}
                       for a in (0.2, 0.5, 0.8) for nu in (1.0, -1.0, 0.5)]}
    path = tmp_path / "grid.json"
    path.write_text(json.dumps(grid))
    r1 = run("sweep", "--grid", str(path), env_extra={"QORBIT_THREADS": "1"})
    r4 = run("sweep", "--grid", str(path), env_extra={"QORBIT_THREADS": "4"})
    assert r1.returncode == 0 and r4.returncode == 0
    assert r1.stdout == r4.stdout
    rows = json.loads(r1.stdout)["rows"]
    assert len(rows) == 9 and all("series" in row for row in rows)


def test_degen_subcommand():
    r = run("degen", "--q", "0.4", "--c0", "1", "--d0", "2.5",
            "--lambda1", "6.25", "--lambda2", "0.4")
    assert r.returncode == 0
    body = json.loads(r.stdout)
    assert body["case"] == "DegenerateHolomorphic"
    assert body["unitarizable"] is True


def test_integral_subcommand():
    r = run("integral", "--q", "0.5", "--c0", "0.62996052494743671,0",
            "--d0", "1.5874010519681994,0", "--nu0", "1.0", "--samples", "5")
    assert r.returncode == 0
    assert json.loads(r.stdout)["status"] == "pass"


def test_kernel_csv():
    r = run("kernel", "--q", "0.45", "--l", "-1.0", "--check", "expand", "--emit-csv")
    assert r.returncode == 0
    lines = r.stdout.decode().strip().splitlines()
    assert lines[0] == "k,coefficient"
    assert len(lines) == 22


def test_seventeen_digit_floats():
    r = run("classify", "--q", "0.5", "--c0", "1", "--d0", "1", "--nu0", "0.5")
    # casimir -2/9 printed with 17 significant digits
    assert b"-0.22222222222222221" in r.stdout
