from __future__ import annotations

import json
import subprocess
import sys

import pytest

from weblab.catalog import DUAL_CONIC, DUAL_WEB
from weblab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_disc(capsys):
    code, out, _ = run(capsys, "disc", DUAL_WEB, "--json")
    assert code == 0
    assert json.loads(out)["divisor"] == {"x": 1, "y": 3}


def test_pullback(capsys):
    code, out, _ = run(capsys, "pullback", "map(x^2, y^2)", "y*dx + x*dy", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["content"] == "2*x*y"
    assert data["primitive"] == "y*dx + x*dy"


def test_invariant_exit_codes(capsys):
    code, out, _ = run(capsys, "invariant", "map(x^2, y^2)", "3*y*dx + x*dy")
    assert code == 0 and out.startswith("invariant")
    code, out, _ = run(capsys, "invariant", "map(x^2, y^2)", DUAL_WEB)
    assert code == 1 and "not invariant" in out


def test_degree(capsys):
    code, out, _ = run(capsys, "degree", "dx*dy", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["degree"] == 0
    assert data["discriminant_degree"] == {"computed": 2, "predicted": 2, "at_infinity": 2}


def test_tangency(capsys):
    code, out, _ = run(capsys, "tangency", "y*dx + x*dy", "y*dx - x*dy", "--json")
    assert code == 0
    assert json.loads(out)["tangency"] == {"x": 1, "y": 1}


def test_monodromy(capsys):
    code, out, _ = run(capsys, "monodromy", DUAL_CONIC, "--seed", "3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["transitive"] and data["group_order"] == 2 and data["seed"] == 3


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WEBLAB_SEED", "9")
    _, out, _ = run(capsys, "monodromy", DUAL_CONIC, "--json")
    assert json.loads(out)["seed"] == 9
    _, out, _ = run(capsys, "monodromy", DUAL_CONIC, "--seed", "2", "--json")
    assert json.loads(out)["seed"] == 2
    monkeypatch.setenv("WEBLAB_SEED", "nine")
    assert run(capsys, "monodromy", DUAL_CONIC)[0] == 2


def test_symmetrize_and_ueda(capsys):
    assert run(capsys, "symmetrize", "x^2 + y^2") == (0, "x^2 - 2*y\n", "")
    code, out, _ = run(capsys, "ueda", "z^2 - 2")
    assert code == 0 and out.startswith("map(")


@pytest.mark.parametrize(
    "argv",
    [("disc", "x +* y"), ("disc", "x^2"), ("pullback", "x", "dx"), ("symmetrize", "x + y^2"),
     ("catalog", "verify", "nope"), ("frobnicate",), ("tangency", "dx", "2*dx"),
     ("disc", "dx")],
)
def test_input_errors_exit_with_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "disc", "x + * y")
    assert "position 4" in err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list("abcdefghij")


def test_catalog_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "catalog", "verify", "a", "e", "--json")
    assert code == 0
    assert set(json.loads(out)["entries"]) == {"a", "e"}
    code, out, _ = run(capsys, "catalog", "verify", "g")
    assert code == 1 and "[FAIL] g" in out


def test_catalog_json_is_deterministic(capsys):
    first = run(capsys, "catalog", "verify", "d", "j", "--json", "--seed", "4")[1]
    second = run(capsys, "catalog", "verify", "d", "j", "--json", "--seed", "4")[1]
    assert first == second


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weblab.cli", "symmetrize", "x*y"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "y"
