import json

import pytest

from helpers import DATA
from qabduct.cli import main

U = ["--tbox", str(DATA / "university.tbox"), "--abox", str(DATA / "university.abox"),
     "--query", str(DATA / "university.query")]
P_U = U + ["--tuple", "Carlo", "--sigma", "enroll,teach"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_exist_prints_an_explanation(capsys):
    code, out = run(capsys, "exist", *P_U)
    assert code == 0 and "explanation" in out


def test_rec_rejects_redundant_explanation(tmp_path, capsys):
    e = tmp_path / "e.abox"
    e.write_text("teach(Carlo,_:a1)\nenroll(Beppe,_:a1)\nenroll(Luca,_:a1)\n")
    assert run(capsys, "rec", *P_U, "--order", "subset", "--explanation", str(e))[0] == 1
    assert run(capsys, "rec", *P_U, "--order", "none", "--explanation", str(e))[0] == 0


def test_cert(capsys):
    assert run(capsys, "cert", *U, "--tuple", "Carlo")[0] == 1
    assert run(capsys, "cert", *U, "--tuple", "Marco")[0] == 0
    code, out = run(capsys, "--json", "cert", *U)
    assert code == 0 and json.loads(out)["answers"] == [["Marco"]]


def test_check_and_rewrite(capsys):
    assert run(capsys, "check", "--tbox", U[1], "--abox", U[3])[0] == 0
    assert run(capsys, "check", "--tbox", U[1], "--abox", U[3], "--no-una")[0] == 0
    code, out = run(capsys, "rewrite", "--tbox", U[1], "--query", U[5])
    assert code == 0 and "teach(x,y)" in out


def test_rel_nec_enumerate(capsys):
    beppe = ["--assertion", "enroll(Beppe,IDB)"]
    assert run(capsys, "rel", *P_U, "--order", "card", *beppe)[0] == 0
    assert run(capsys, "nec", *P_U, "--order", "none", *beppe)[0] == 1
    code, out = run(capsys, "enumerate", *P_U, "--order", "card", "--json")
    assert code == 0
    assert sorted(json.loads(out)["explanations"]) == [["enroll(Anna,IDB)"], ["enroll(Beppe,IDB)"],
                                                      ["teach(Carlo,KR)"]]


def test_nonempty(tmp_path, capsys):
    q = tmp_path / "q"
    q.write_text("q(x) <- Course(x)\n")
    assert run(capsys, "nonempty", "--tbox", U[1], "--query", str(q), "--sigma", "enroll/2")[0] == 0
    assert run(capsys, "nonempty", "--tbox", U[1], "--query", str(q), "--sigma", "Lecturer")[0] == 1


def test_errors_exit_with_two(tmp_path, capsys):
    assert run(capsys, "check", "--tbox", U[1], "--abox", str(tmp_path / "missing"))[0] == 2
    bad = tmp_path / "bad.tbox"
    bad.write_text("A ISA\n")
    assert run(capsys, "check", "--tbox", str(bad), "--abox", U[3])[0] == 2
    assert run(capsys, "rel", *P_U, "--assertion", "DPhil(")[0] == 2


def test_gadget_files_round_trip(tmp_path, capsys):
    out_dir = tmp_path / "vc"
    assert run(capsys, "gadget", "vc", "--vertices", "a,b", "--edges", "a>b", "--out", str(out_dir))[0] == 0
    files = {f: str(out_dir / f) for f in ("tbox", "abox", "query", "tuple", "sigma", "assertion")}
    argv = ["--tbox", files["tbox"], "--abox", files["abox"], "--query", files["query"],
            "--tuple", (out_dir / "tuple").read_text().strip(), "--sigma", (out_dir / "sigma").read_text().strip(),
            "--assertion", (out_dir / "assertion").read_text().strip(), "--order", "card"]
    assert run(capsys, "nec", *argv)[0] == 0


def test_fuzz_report(capsys):
    code, out = run(capsys, "--json", "fuzz", "--seeds", "3")
    assert code == 0 and json.loads(out)["disagreements"] == []


def test_usage_errors():
    with pytest.raises(SystemExit):
        main(["exist"])
