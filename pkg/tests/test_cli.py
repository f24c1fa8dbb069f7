import json

import pytest

from maxplus_extremal.cli import bench, main
from maxplus_extremal.core import MaxPlusMatrix, MaxPlusVector
from maxplus_extremal.instance import parse_instance, parse_vector, write_instance
from maxplus_extremal.witness import WitnessPair, verify_decomposition
from test_instance import EXAMPLE_TEXT


@pytest.fixture
def files(tmp_path):
    matrix = tmp_path / "a.txt"
    matrix.write_text(EXAMPLE_TEXT)
    paths = {"A": str(matrix)}
    for name, vec in {"x1": "0 0 0 -3 -inf", "x2": "0 0 0 0 0", "bottom": "-inf -inf -inf -inf -inf",
                      "bad": "0 0 0 1 0"}.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(vec + "\n")
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_extremal(files, capsys):
    code, out, _ = run(capsys, "check", files["A"], files["x1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["extremal"] is True and doc["condition"] is None and doc["witness"] is None


def test_check_with_witness(files, capsys, tmp_path):
    prefix = str(tmp_path / "w")
    code, out, _ = run(capsys, "check", files["A"], files["x2"], "--witness", "--witness-out", prefix)
    assert code == 0
    doc = json.loads(out)
    assert doc["extremal"] is False and doc["condition"] == "ISOLATED_SUBSET"
    A, _ = parse_instance(EXAMPLE_TEXT)
    x = MaxPlusVector([0] * 5)
    pair = WitnessPair(MaxPlusVector(doc["witness"]["x1"]), MaxPlusVector(doc["witness"]["x2"]))
    assert verify_decomposition(A, x, pair)
    from_files = WitnessPair(
        parse_vector(open(prefix + ".x1").read()), parse_vector(open(prefix + ".x2").read())
    )
    assert from_files == pair
    code, out2, _ = run(capsys, "witness", files["A"], files["x2"])
    assert json.loads(out2) == doc


def test_check_input_errors(files, capsys, tmp_path):
    code, _, err = run(capsys, "check", files["A"], files["bottom"])
    assert code == 2 and "all-BOTTOM" in err
    code, _, err = run(capsys, "check", files["A"], files["bad"])
    assert code == 2 and "inequality 4" in err
    code, _, err = run(capsys, "check", files["A"])
    assert code == 2
    broken = tmp_path / "broken.txt"
    broken.write_text("2\n0 5/0\n0 0\n")
    code, _, err = run(capsys, "check", str(broken), files["x1"])
    assert code == 2 and "zero denominator" in err
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.txt"))
    assert code == 2


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", files["A"], files["x1"], "--json")
    table = {r["node"]: r["class"] for r in json.loads(out)}
    assert table == {1: "invariable", 2: "invariable", 3: "invariable", 4: "I-variable"}
    code, out, _ = run(capsys, "classify", files["A"], files["x2"], "--json")
    table = {r["node"]: r["class"] for r in json.loads(out)}
    # node 3 has no outgoing arc in the second digraph
    assert table == {1: "invariable", 2: "invariable", 3: "I-variable", 4: "invariable", 5: "invariable"}
    code, out, _ = run(capsys, "classify", files["A"], files["x2"], "--dot")
    assert "4 -> 5;" in out and "5 -> 4;" in out
    code, out, _ = run(capsys, "classify", files["A"], files["x1"])
    assert "I-variable" in out.splitlines()[4]


def test_classify_identity(tmp_path, capsys):
    p = tmp_path / "id.txt"
    p.write_text(write_instance(MaxPlusMatrix.identity(3), MaxPlusVector([0, 1, 2])))
    code, out, _ = run(capsys, "classify", str(p), "--json")
    assert {r["class"] for r in json.loads(out)} == {"I-variable"}
    assert all(r["loop"] for r in json.loads(out))


def test_oracle_command(files, capsys, tmp_path):
    for name, expected in (("x1", True), ("x2", False)):
        code, out, _ = run(capsys, "oracle", files["A"], files[name])
        doc = json.loads(out)
        assert code == 0 and doc["extremal"] is expected and doc["agree"]
    big = tmp_path / "big.txt"
    big.write_text(write_instance(MaxPlusMatrix.identity(13), MaxPlusVector([0] * 13)))
    code, _, err = run(capsys, "oracle", str(big))
    assert code == 2 and "cap" in err
    rational = tmp_path / "q.txt"
    rational.write_text("1\n1/2\n\n0\n")
    code, _, err = run(capsys, "oracle", str(rational))
    assert code == 2 and "integer" in err


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "4", "--density", "0.5", "--seed", "11")
    assert code == 0
    A, x = parse_instance(out)
    assert A.n == 4 and x is not None
    _, again, _ = run(capsys, "gen", "4", "--density", "0.5", "--seed", "11")
    assert again == out
    code, _, _ = run(capsys, "gen", "0")
    assert code == 2


def test_bench_shapes(capsys):
    rows = bench([8], seed=1)
    assert len(rows) == 1 and rows[0]["slope"] is None
    rows = bench([16, 4, 8], seed=1)
    assert [r["n"] for r in rows] == [4, 8, 16]
    assert rows[0]["slope"] is None and all(r["slope"] is not None for r in rows[1:])
    code, out, _ = run(capsys, "bench", "6", "3")
    assert code == 0 and out.splitlines()[1].split()[0] == "3"
    code, _, _ = run(capsys, "bench", "1")
    assert code == 2
