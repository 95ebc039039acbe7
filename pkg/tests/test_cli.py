import json

import pytest

from invcoh.cli import main

TR_SCRIPT = "source: S\nalpha 1 @ ε\ntwist (X1^-1, X1) @ ε\nalphahat 1 @ ε\n"
ID_SCRIPT = "source: S\n"
GL_MODEL = "builtin: graded-line\nassign X1 = 1\nunit X1 = 0\n"


@pytest.fixture
def tr_file(tmp_path):
    p = tmp_path / "tr.script"
    p.write_text(TR_SCRIPT)
    return str(p)


@pytest.fixture
def id_file(tmp_path):
    p = tmp_path / "id.script"
    p.write_text(ID_SCRIPT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "(S * X1)", "--gens", "1")
    assert code == 0
    assert "target: X1" in out
    assert "unitor-left @ ε" in out


def test_normalize_json_is_deterministic(capsys):
    code, out1, _ = run(capsys, "normalize", "(X2^-1 * (X1 * X2))", "--gens", "2", "--json")
    code2, out2, _ = run(capsys, "normalize", "(X2^-1 * (X1 * X2))", "--gens", "2", "--json")
    assert code == code2 == 0
    assert out1 == out2
    rec = json.loads(out1)
    assert rec["target"] == "X1"
    assert rec["evaluation"] == [0, 0]


def test_normalize_with_seed_still_cancels(capsys):
    code, out, _ = run(
        capsys, "normalize", "((X1 * X2) * (X2^-1 * X1))", "--gens", "2", "--seed", "9", "--json"
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["target"] == "(X1 * X1)"
    assert rec["evaluation"] == [0, 0]


def test_eval_and_kl(capsys, tr_file):
    code, out, _ = run(capsys, "eval", tr_file)
    assert code == 0 and "(1,)" in out
    code, out, _ = run(capsys, "kl", tr_file, "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["loops"] == {"X1": 1}
    assert rec["substitutions"] == [0]


def test_equal_exit_codes(capsys, tr_file, id_file):
    code, out, _ = run(capsys, "equal", tr_file, tr_file)
    assert code == 0 and "ForcedEqual" in out
    code, out, _ = run(capsys, "equal", tr_file, id_file)
    assert code == 1 and "NotForced" in out


def test_sign(capsys):
    code, out, _ = run(capsys, "sign", "lr-a", "--a", "2", "--b", "1")
    assert code == 0 and out.strip() == "t1"
    code, out, _ = run(capsys, "sign", "motivic", "--a", "2", "--b", "1", "--c", "3", "--d", "1")
    assert code == 0 and out.strip() == "(-1)^0 * eps^1"
    code, out, _ = run(capsys, "sign", "tau", "--a", "1,1", "--b", "1,0")
    assert code == 0 and out.strip() == "t1"
    code, _, err = run(capsys, "sign", "nope", "--a", "1")
    assert code == 2 and "error" in err


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "Z/2", "Z/2", "3", "--em")
    assert code == 0 and out.strip() == "group: Z/2"
    code, out, _ = run(capsys, "cohomology", "Z/2 x Z/2", "Z/2", "2")
    assert code == 0 and out.strip() == "group: Z/2 x Z/2 x Z/2"
    code, _, err = run(capsys, "cohomology", "Z/?", "Z/2", "2")
    assert code == 2


def test_trivialize(capsys, tmp_path):
    f = tmp_path / "alpha.tbl"
    f.write_text("alpha[1,1,1] = 1\n")
    code, out, _ = run(capsys, "trivialize", "Z/2", "Z/2", str(f))
    assert code == 1 and "not solvable" in out
    f.write_text("# zero\n")
    code, out, _ = run(capsys, "trivialize", "Z/2", "Z/2", str(f))
    assert code == 0 and "solvable" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "Z/2", "Z/2", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["class_count"] == 2 and rec["consistent"]


def test_model_check_and_eval(capsys, tmp_path, tr_file):
    mf = tmp_path / "gl.model"
    mf.write_text(GL_MODEL)
    code, out, _ = run(capsys, "model-check", "--model", str(mf))
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "model-eval", tr_file, "--model", str(mf))
    assert code == 0 and "value: (1,)" in out
    bad = tmp_path / "bad.model"
    bad.write_text("A: Z/2\nN: Z/2\nalpha[1,1,1] = 1\n")
    code, out, _ = run(capsys, "model-check", "--model", str(bad))
    assert code == 1 and "FAILED" in out


def test_input_errors_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "eval", str(tmp_path / "missing.script"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.script"
    bad.write_text("source: S\nalphahat 1 @ ε\n")
    code, _, err = run(capsys, "eval", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "normalize", "(X1 * ", "--gens", "1")
    assert code == 2
