import json

import pytest

from vabkit import presentation
from vabkit.algebroid import build_family, check_vertex_algebroid, degenerate_sl2
from vabkit.cli import INPUT_ERROR, OK, UNSTABLE, VIOLATION, main


@pytest.mark.parametrize("V", [build_family(1).alg, build_family(2).alg, degenerate_sl2()])
def test_round_trip_is_byte_identical(V):
    text = presentation.dumps(V)
    V2 = presentation.loads(text)
    assert presentation.dumps(V2) == text
    assert check_vertex_algebroid(V2) == []


def test_errors_carry_locations():
    d = json.loads(presentation.dumps(build_family(1).alg))
    d["pairing"][0] = [0, 99, 0, "1"]
    with pytest.raises(presentation.PresentationError, match=r"pairing\[0\]"):
        presentation.from_dict(d)
    d = json.loads(presentation.dumps(build_family(1).alg))
    d["action"][1][3] = "1/0"
    with pytest.raises(presentation.PresentationError, match=r"action\[1\].*coefficient"):
        presentation.from_dict(d)
    with pytest.raises(presentation.PresentationError, match="line"):
        presentation.loads('{"A": ')
    del d["bracket"]
    with pytest.raises(presentation.PresentationError, match="bracket"):
        presentation.from_dict(d)


@pytest.fixture
def family_file(tmp_path):
    path = tmp_path / "fam.json"
    assert main(["build-family", "--blocks", "1", "--out", str(path)]) == OK
    return path


def test_check_exit_codes(family_file, tmp_path, capsys):
    assert main(["check", str(family_file)]) == OK
    bad = tmp_path / "bad.json"
    d = json.loads(family_file.read_text())
    d["pairing"] = [[0, 1, 0, "3"], [1, 0, 0, "3"]] + d["pairing"][2:]
    bad.write_text(json.dumps(d))
    assert main(["check", str(bad)]) == VIOLATION
    trunc = tmp_path / "trunc.json"
    trunc.write_text(family_file.read_text()[:200])
    assert main(["check", str(trunc)]) == INPUT_ERROR
    assert main(["check", str(tmp_path / "missing.json")]) == INPUT_ERROR
    capsys.readouterr()


def test_dims_table(capsys):
    assert main(["dims", "--blocks", "1", "--max-degree", "3"]) == OK
    out = capsys.readouterr().out
    rows = [line.split("\t") for line in out.splitlines() if line and not line.startswith("#")]
    assert rows[0] == ["degree", "dim"]
    assert [int(r[1]) for r in rows[1:]] == [3, 5, 15, 30]


def test_json_output_deterministic_modulo_time(capsys):
    outs = []
    for _ in range(2):
        assert main(["lattice", "--sector", "Lhalf", "--max-degree", "5", "--format", "json"]) == OK
        d = json.loads(capsys.readouterr().out)
        d.pop("wall_time")
        outs.append(d)
    assert outs[0] == outs[1]
    assert [r[1] for r in outs[0]["table"]] == [2, 2, 6, 8, 14, 20]
    assert outs[0]["grade_shift"] == "1/4"


def test_unstable_and_bad_window(capsys):
    assert main(["dims", "--max-degree", "2", "--fil-cap", "0"]) == UNSTABLE
    assert main(["dims", "--max-degree", "-1"]) == INPUT_ERROR
    capsys.readouterr()


def test_module_obstruction_exit(capsys):
    assert main(["module", "--irrep", "2", "--ebar", "--max-degree", "2"]) == VIOLATION
    assert main(["module", "--irrep", "1", "--ebar", "--max-degree", "3"]) == OK
    capsys.readouterr()


def test_affine_and_ideal(capsys):
    assert main(["affine", "--max-degree", "3"]) == OK
    assert main(["ideal", "--blocks", "1", "--max-degree", "3"]) == OK
    assert main(["c2", "--max-degree", "3"]) == OK
    assert "insufficient window" in capsys.readouterr().out


def test_suite_subset(capsys, tmp_path):
    out = tmp_path / "suite.json"
    assert main(["suite", "--only", "6", "9", "--format", "json", "--out", str(out)]) == OK
    printed = capsys.readouterr().out
    assert "criterion  6 [PASS]" in printed and "criterion  9 [PASS]" in printed
    assert set(json.loads(out.read_text())["results"]) == {"6", "9"}
