import json

from logdescent.cli import main

ARGS_11A_47 = ["--D", "-47", "--a2", "-1", "--a3", "1", "--a4", "-10",
               "--a6", "-20", "--p", "5", "--P", "5,5"]
ARGS_158C = ["--D", "-79", "--a1", "1", "--a2", "1", "--a3", "1",
             "--a4", "-420", "--a6", "3109"]


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json_schema(capsys):
    code, out, _ = _run(capsys, ["classify", *ARGS_158C, "--p", "5",
                                 "--P", "13,-15", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1
    assert len(obj["S1"]) == 2 and len(obj["S2"]) == 1
    assert obj["hypotheses"]["satisfied"]
    kinds = {d["v"]: d["class"] for d in obj["places"]}
    assert kinds["(79,-79/2+1/2*sqrt(-79))"] == "backward"
    by_v = {d["v"]: d for d in obj["places"]}
    two = obj["S1"][0]
    assert by_v[two]["kodaira"] == "I4" and by_v[two]["kodaira'"] == "I20"


def test_selmer_output(capsys):
    code, out, _ = _run(capsys, ["selmer", *ARGS_11A_47, "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["dims"] == {"sel_phi": 2, "sel_phihat": 1, "sel_p": 2}
    assert obj["S1"] == ["(11)"] and obj["S2"] == []
    assert len(obj["h1_basis"]) == 2 and len(obj["selmer_basis"]) == 2


def test_pairing_text_matches_worked_values(capsys):
    code, out, _ = _run(capsys, ["pairing", *ARGS_158C,
                                 "--point", "13,-15", "--point", "13,-15"])
    assert code == 0
    assert "4/5 (2,1/2+1/2*sqrt(-79)) + 4/5 (2,-1/2+1/2*sqrt(-79))" in out


def test_psi_text_output(capsys):
    code, out, _ = _run(capsys, ["psi", "--D", "8", "--a2", "1", "--a3", "1",
                                 "--a4", "9", "--a6", "1", "--p", "3",
                                 "--P", "1,3",
                                 "--point", "9/2,-1/2+35/4*sqrt(2)"])
    assert code == 0
    assert "2/3 (7,-3+sqrt(2)) + 1/3 (7,-4+sqrt(2))" in out


def test_json_determinism(capsys):
    argv = ["report", *ARGS_11A_47, "--format", "json",
            "--point", "4,-1/2+1/2*sqrt(-47)", "--point=-2,-1/2+1/2*sqrt(-47)"]
    code1, out1, _ = _run(capsys, argv)
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["sha_phi"] == {"lower": 0, "upper": 0}
    assert obj["dims"]["sel_phi"] == 2


def test_search_json_lines(capsys):
    code, out, _ = _run(capsys, ["search", "--a2", "-1", "--a3", "1",
                                 "--a4", "-10", "--a6", "-20", "--p", "5",
                                 "--P", "5,5", "--xbound", "4",
                                 "--format", "json"])
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["schema"] == 1 for r in rows)
    assert any(r["D"] == -47 for r in rows)


def test_exit_code_input_errors(capsys):
    # malformed point
    code, _, err = _run(capsys, ["psi", *ARGS_11A_47, "--point", "5;5"])
    assert code == 1 and "error" in err
    # point not on the curve
    code, _, err = _run(capsys, ["selmer", *ARGS_11A_47[:-2], "--P", "5,6"])
    assert code == 1
    # P not p-torsion
    code, _, err = _run(capsys, ["selmer", *ARGS_11A_47[:-4], "--p", "7",
                                 "--P", "5,5"])
    assert code == 1
    # missing required flag
    code, _, err = _run(capsys, ["psi", *ARGS_11A_47])
    assert code == 1


def test_exit_code_hypothesis_failure(capsys):
    code, _, err = _run(capsys, ["selmer", "--a1", "-6", "--a3", "2",
                                 "--p", "3", "--P", "0,0"])
    assert code == 2
    assert "Hyp 4" in err


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = _run(capsys, ["selmer", *ARGS_11A_47, "--format", "json",
                                 "--out", str(dest)])
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["schema"] == 1
