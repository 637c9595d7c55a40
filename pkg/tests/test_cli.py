import json
import os
import subprocess
import sys

import pytest

from gctlab.cli import main
from gctlab.polynomials import grenet_matrix


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, "--format", "json", *argv)
    assert code == 0
    return json.loads(out)


def test_kron_text(capsys):
    assert run_cli(capsys, "kron", "--lambda", "2,1", "--mu", "2,1", "--nu", "2,1")[:2] == (0, "1")


def test_kron_rect_and_pleth(capsys):
    assert run_cli(capsys, "kron-rect", "--n", "2", "--lambda", "2,2")[:2] == (0, "1")
    assert run_cli(capsys, "pleth", "--n", "2", "--d", "2", "--lambda", "4")[:2] == (0, "1")
    assert run_cli(capsys, "pleth", "--n", "2", "--d", "2", "--lambda", "3,1")[:2] == (0, "0")
    data = run_json(capsys, "pleth", "--n", "2", "--d", "2", "--lambda", "2,2")
    assert data == {"d": 2, "lambda": [2, 2], "n": 2, "pleth": 1, "vars": 4}


def test_grenet(capsys):
    code, out, _ = run_cli(capsys, "grenet", "--m", "3", "--verify", "symbolic")
    assert code == 0 and out == "size 7, det == per_3: true"
    data = run_json(capsys, "grenet", "--m", "5", "--normalize", "--verify", "modular", "--trials", "10")
    assert data["verified"] and data["size"] == 31 and data["trials"] == 10
    assert float(data["failure_bound"]) < 1e-100
    data = run_json(capsys, "grenet", "--m", "2", "--normalize", "--emit-matrix")
    assert data["matrix"] == grenet_matrix(2, True).to_json()


def test_verify_matrix_file(tmp_path, capsys):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(grenet_matrix(3, True).to_json()))
    data = run_json(capsys, "verify", "--matrix", str(path), "--poly", "per", "--n", "3")
    assert data["verified"] is True
    data = run_json(capsys, "verify", "--matrix", str(path), "--poly", "det", "--n", "3", "--mode", "modular")
    assert data["verified"] is False


def test_mr_bound(capsys):
    data = run_json(capsys, "mr-bound", "--m", "3")
    assert data["rank_H_per"] == 9 and data["implied_bound"] == 5 and data["per_M"] == 0


def test_hessian_rank_point_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    assert run_json(capsys, "hessian-rank", "--poly", "det", "--n", "3", "--point", str(path))["rank"] == 6
    path.write_text(json.dumps(["1/2", 3, 1, 1]))
    assert run_json(capsys, "hessian-rank", "--poly", "per", "--n", "2", "--point", str(path))["rank"] == 4


def test_tomo(capsys):
    data = run_json(capsys, "tomo", "--lambda", "2,1,1", "--mu", "2,1,1", "--nu", "2,1,1", "--with-k")
    assert data["t"] == data["p"] == data["k"] == 1 and data["simplex_like"]


def test_latin(capsys):
    assert run_json(capsys, "latin", "--n", "3")["difference"] == 0
    assert run_json(capsys, "latin", "--n", "2") == {"order": 2, "even": 0, "odd": 2, "difference": -2}


def test_stretch(capsys):
    data = run_json(capsys, "stretch", "--n", "2", "--lambda", "1,1")
    assert data["witness"] == 2 and data["values"] == [0, 1]


def test_obstruct_small(capsys):
    code, out, _ = run_cli(capsys, "obstruct", "--n", "2", "--d", "1", "--m", "1")
    assert code == 0 and out == "no obstructions"


def test_exit_codes(capsys):
    assert run_cli(capsys, "kron", "--lambda", "2", "--mu", "2", "--nu", "1")[0] == 1
    assert run_cli(capsys, "obstruct", "--n", "2", "--d", "2", "--m", "3")[0] == 1
    assert run_cli(capsys, "latin", "--n", "7")[0] == 2
    assert run_cli(capsys, "kron", "--lambda", "1,2", "--mu", "2", "--nu", "2")[0] == 64
    assert run_cli(capsys, "kron", "--bogus")[0] == 64
    assert run_cli(capsys)[0] == 64
    assert run_cli(capsys, "hessian-rank", "--poly", "per", "--n", "2", "--point", "/nonexistent")[0] == 1


def test_help_mentions_caps(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "GCTLAB_CAPS" in out
    for name in ["kron-rect", "pleth", "obstruct", "grenet", "mr-bound", "tomo", "latin", "stretch"]:
        assert name in out


def _subprocess(args, env_extra=None):
    env = dict(os.environ, **(env_extra or {}))
    return subprocess.run([sys.executable, "-m", "gctlab", *args], capture_output=True, text=True, env=env)


def test_caps_env_override():
    assert _subprocess(["latin", "--n", "3"], {"GCTLAB_CAPS": "latin=2"}).returncode == 2
    assert _subprocess(["latin", "--n", "1"], {"GCTLAB_CAPS": "latin=2"}).returncode == 0
    assert _subprocess(["latin", "--n", "1"], {"GCTLAB_CAPS": "nonsense=2"}).returncode == 64
    res = _subprocess(["kron", "--lambda", "3", "--mu", "3", "--nu", "3"], {"GCTLAB_CAPS": "classes=2"})
    assert res.returncode == 2 and "refused" in res.stderr


DETERMINISM_COMMANDS = [
    ["kron", "--lambda", "3,2", "--mu", "3,1,1", "--nu", "2,2,1"],
    ["kron-rect", "--n", "3", "--lambda", "4,1,1"],
    ["pleth", "--n", "3", "--d", "2", "--lambda", "4,2"],
    ["obstruct", "--n", "3", "--d", "2", "--m", "2"],
    ["grenet", "--m", "4", "--normalize", "--verify", "modular", "--emit-matrix"],
    ["mr-bound", "--m", "3"],
    ["tomo", "--lambda", "3,1", "--mu", "2,2", "--nu", "2,1,1", "--with-k"],
    ["latin", "--n", "4"],
    ["stretch", "--n", "2", "--lambda", "2,1,1"],
]


@pytest.mark.parametrize("argv", DETERMINISM_COMMANDS, ids=lambda a: a[0])
def test_json_identical_across_threads(argv):
    outputs = set()
    for threads in ("1", "2", "8"):
        res = _subprocess(["--format", "json", "--seed", "7", "--threads", threads, *argv])
        assert res.returncode == 0, res.stderr
        outputs.add(res.stdout)
    assert len(outputs) == 1
