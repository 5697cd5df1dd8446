import json
import subprocess
import sys

import pytest

from freesub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_extremal_verify(capsys):
    code, out, _ = run(capsys, "extremal", "-k", "2", "-l", "2", "-n", "3", "--verify")
    assert code == 0
    assert "lhs = 3, rhs = 3" in out and "EQUALITY" in out


def test_rank(capsys):
    assert run(capsys, "rank", "-g", "xx, y, xyX") == (0, "3\n", "")


def test_order(capsys):
    assert run(capsys, "order", "-u", "x", "-v", "xx")[1] == "LESS\n"
    assert run(capsys, "order", "-u", "y", "-v", "x")[1] == "LESS\n"
    assert run(capsys, "order", "-u", "x1 x2", "-v", "x1 x2", "--syntax", "indexed")[1] == "EQUAL\n"


def test_index_and_member(capsys):
    assert run(capsys, "index", "-g", "xx, y, xyX")[1] == "2\n"
    assert run(capsys, "index", "-g", "x", "-k", "2")[1] == "infinite\n"
    assert run(capsys, "member", "-g", "xx, y", "-w", "xxyXX")[1] == "true\n"
    assert run(capsys, "member", "-g", "xx, y", "-w", "x")[1] == "false\n"
    assert run(capsys, "member", "-g", "x:1", "-n", "2", "-w", "xx", "-r", "0")[1] == "true\n"


def test_intersect(capsys):
    code, out, _ = run(capsys, "intersect", "-a", "xx, y", "-b", "x, yy")
    assert code == 0
    assert out.startswith("rank 2\n")


def test_graph_commands(capsys):
    assert run(capsys, "reduced-rank", "--edges", "0>0, 0>0, 0>0")[1] == "2\n"
    assert run(capsys, "essential-set", "--edges", "0>0, 0>0")[1] == "e0\n"
    assert run(capsys, "essential-set", "--edges", "0>1, 1>2")[1] == "(empty)\n"


def test_ball_and_certify(capsys):
    assert run(capsys, "ball", "-R", "2")[1] == "17 vertices, 16 edges\n"
    code, out, _ = run(capsys, "certify", "-g", "x, y", "-R", "4", "-c", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["orbitCount"] == 2


def test_random_verify(capsys):
    code, out, _ = run(capsys, "verify", "--count", "30", "--moduli", "1", "2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["instances"] == 60 and doc["violations"] == []


def test_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "-a", "x, y", "-b", "xx, y, xyX", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schemaVersion"] == 1 and doc["command"] == "verify"
    for key in ("lhs", "rhsTheorem1", "rhsZa14", "rhsASS15", "equality", "holds", "a", "b"):
        assert key in doc
    assert (doc["lhs"], doc["rhsTheorem1"]) == (2, 2)


def test_exit_codes(capsys):
    assert run(capsys, "rank", "-g", "x!")[0] == 2
    assert run(capsys, "rank")[0] == 2
    assert run(capsys, "verify", "-a", "x:0, x:1", "-b", "y", "-n", "2")[0] == 1
    assert run(capsys, "verify", "-a", "x", "-b", "1", "-n", "2")[0] == 1
    assert run(capsys, "extremal", "-k", "1", "-l", "2", "-n", "1")[0] == 1


def test_deterministic(capsys):
    argv = ["verify", "--count", "20", "--seed", "17", "--moduli", "3", "--json"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_dot_byte_stable(capsys):
    argv = ["certify", "-g", "xx, y, xyX", "-R", "3", "--dot"]
    first = run(capsys, *argv)[1]
    assert "digraph" in first and "color=blue" in first
    assert run(capsys, *argv)[1] == first


def test_subgroup_file(capsys, tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"ambientRank": 2, "modulus": 3, "generators": [
        {"word": "yy", "residue": 1}, {"word": "x", "residue": 0}, {"word": "yxY", "residue": 0}]}))
    code, out, _ = run(capsys, "rank", "-g", str(path))
    assert (code, out) == (0, "3\n")
    code, out, _ = run(capsys, "verify", "-a", "x, y", "-b", str(path), "-n", "3", "--json")
    assert json.loads(out)["lhs"] == 6


@pytest.mark.parametrize("entry", [[sys.executable, "-m", "freesub"]])
def test_module_entry_point(entry):
    proc = subprocess.run(entry + ["rank", "-g", "xx, y, xyX"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
