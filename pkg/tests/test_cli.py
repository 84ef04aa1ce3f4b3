import json

import pytest

from carrykit.cli import main
from carrykit.render import render_json
from carrykit.reproduce import golden_text
from carrykit.specs import SpecError, parse_elements, parse_group, parse_reps, parse_subgroup


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_table1_golden(capsys):
    code, out, _ = run(capsys, "carries", "matrix", "--group", "Z/100", "--subgroup", "mult:10",
                       "--reps", "standard:10")
    assert code == 0
    assert out == golden_text("table1.txt")
    assert "carries: 45" in out and "C(X) = 11/20" in out


def test_table2_golden(capsys):
    code, out, _ = run(capsys, "carries", "matrix", "--group", "Z/25", "--subgroup", "mult:5",
                       "--reps", "balanced:5")
    assert code == 0
    assert out == golden_text("table2.txt")
    assert "carries: 6" in out


def test_score_json(capsys):
    code, out, _ = run(capsys, "carries", "score", "--group", "Z/9", "--subgroup", "mult:3",
                       "--reps=-1,0,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert "7/9" in json.dumps(data)


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "fournier", "--group", "Z/400", "--set", "0..399", "--format", "json")
    assert render_json(json.loads(out)) == out
    _, out, _ = run(capsys, "additive", "fourier", "--modulus", "25", "--set", "0..4", "--format", "json")
    assert render_json(json.loads(out)) == out


def test_split_exit_codes(capsys):
    code, out, _ = run(capsys, "split", "--group", "Z/9", "--subgroup", "mult:3", "--reps=-1,0,1")
    assert code == 1
    assert json.loads(out)["threshold_met"] is False
    code, _, _ = run(capsys, "split", "--group", "Z/6", "--subgroup", "mult:2", "--reps", "0,3")
    assert code == 0


def test_invalid_input_exit_2(capsys):
    code, _, err = run(capsys, "carries", "score", "--group", "Z/9", "--subgroup", "mult:3",
                       "--reps", "0,1,x")
    assert code == 2
    assert "^" in err
    code, _, _ = run(capsys, "carries", "score", "--group", "Q/9", "--subgroup", "mult:3",
                     "--reps", "0,1,2")
    assert code == 2


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "reproduce", "nonsense")
    assert code == 2 and err


def test_rectify_hypothesis_not_met(capsys):
    code, _, err = run(capsys, "additive", "rectify", "--p", "5", "--set", "0,6,12,23,19")
    assert code == 1
    assert "hypothesis" in err


def test_fourier_csv_header(capsys):
    code, out, _ = run(capsys, "additive", "fourier", "--modulus", "25", "--set", "0..4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r,re,im,magnitude"
    assert len(lines) == 26


def test_repair_pair_file(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("\n".join(f"{i} {i % 3}" for i in range(9)) + "\n")
    code, out, _ = run(capsys, "repair", "--f", str(f), "--g1", "Z/9", "--g2", "Z/3")
    assert code == 0
    assert json.loads(out)


def test_reproduce_tables(capsys):
    code, out, _ = run(capsys, "reproduce", "tables")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_parse_group_forms():
    assert parse_group("Z/9").order == 9
    assert parse_group("Z/5xZ/5").order == 25
    assert parse_group("Z/2×Z/3").order == 6
    with pytest.raises(SpecError) as err:
        parse_group("Z/5+Z/5")
    assert err.value.pos == 3


def test_parse_elements_ranges():
    assert parse_elements("{0, 1..3, -2}") == [0, 1, 2, 3, -2]
    with pytest.raises(SpecError) as err:
        parse_elements("1, 2, ?")
    assert "^" in str(err.value)


def test_parse_reps_checks_base():
    system = parse_subgroup(parse_group("Z/9"), "mult:3")
    assert sorted(parse_reps(system, "balanced:3").reps) == [0, 1, 8]
    with pytest.raises(SpecError):
        parse_reps(system, "standard:4")
    with pytest.raises(SpecError):
        parse_reps(system, "0,3,6")
