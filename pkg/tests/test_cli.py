import json
import subprocess
import sys

import pytest

from suci_pad.cli import main


@pytest.fixture
def table_csv(tmp_path):
    p = tmp_path / "names.csv"
    p.write_text('"Length","A"\n3,5\n7,12\n12,4\n50,1\n')
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_identity_and_maxL(capsys, table_csv):
    code, out, _ = run(capsys, "eval", "--csv", table_csv, "--column", "A", "--scheme", "identity")
    rec = json.loads(out)
    assert code == 0 and rec["alpha1"] == 0.0 and rec["beta"] == 1.0 and rec["alpha2"] == 1
    code, out, _ = run(capsys, "eval", "--csv", table_csv, "--column", "A", "--scheme", "maxL-50")
    assert json.loads(out)["alpha2"] == 22
    assert set(json.loads(out)) == {"dataset", "scheme", "alpha1", "alpha2", "beta", "delta", "hU"}


def test_eval_precondition_error(capsys, table_csv):
    code, out, err = run(capsys, "eval", "--csv", table_csv, "--column", "A", "--scheme", "taBlk-6-15-30")
    assert code == 1 and out == ""
    assert "50" in err and "30" in err and len(err.strip().splitlines()) == 1
    assert "Traceback" not in err


@pytest.mark.parametrize("argv", [["eval", "--csv", "x.csv"], ["frobnicate"],
                                  ["eval", "--csv", "a", "--column", "A", "--scheme", "identity", "--bogus"]])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_missing_file_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "--csv", tmp_path / "nope.csv", "--column", "A", "--scheme", "identity")
    assert code == 1 and err.startswith("error:")


def test_ingest(capsys, table_csv, tmp_path):
    code, out, _ = run(capsys, "ingest", "--csv", table_csv, "--column", "A")
    info = json.loads(out)
    assert code == 0 and info["population"] == 22 and info["min_class"] == {"length": 50, "count": 1}
    names = tmp_path / "names.txt"
    names.write_text("Anna Berg\nBo Ek\n\nÅsa Öst\n", encoding="utf-8")
    code, out, _ = run(capsys, "ingest", "--names", names, "--format", "csv")
    assert out.splitlines() == ["Length,names", "4,1", "6,1", "8,1"]


def test_keygen_conceal_reveal(capsys, tmp_path):
    code, _, _ = run(capsys, "keygen", "--out", tmp_path)
    sk, pk = tmp_path / "home_private.key", tmp_path / "home_public.key"
    assert code == 0 and len(sk.read_bytes()) == 32 and len(pk.read_bytes()) == 32
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "conceal", "anna@corp.example", "--pad", "taBlk-6-15-30",
                           "--public-key", pk)
        outs.append(out.strip())
    assert outs[0] != outs[1]
    for text in outs:
        hexout = text.split(":")[-1]
        assert len(bytes.fromhex(hexout)) - 32 - 8 == 6
        code, out, _ = run(capsys, "reveal", text, "--pad", "taBlk-6-15-30", "--private-key", sk)
        assert code == 0 and out.strip() == "anna@corp.example"

    run(capsys, "keygen", "--out", tmp_path / "other")
    code, out, err = run(capsys, "reveal", outs[0], "--pad", "taBlk-6-15-30",
                         "--private-key", tmp_path / "other" / "home_private.key")
    assert code == 1 and "MAC mismatch" in err


def test_conceal_null_scheme(capsys):
    code, out, _ = run(capsys, "conceal", "bob@r.example", "--scheme", "null", "--pad", "blk-8-8")
    assert out.strip() == "suci:nsi:r.example:0:null:1:" + (b"bob" + b"\0" * 5).hex()
    code, out, _ = run(capsys, "reveal", out.strip(), "--pad", "blk-8-8")
    assert out.strip() == "bob@r.example"


def test_sweep_and_report(capsys, tmp_path, table_csv):
    conf = tmp_path / "grid.conf"
    conf.write_text(
        f"dataset = {table_csv.name}, A\n"
        "identity = on\nmaxL = on\nblk.sz = 1..4\nblk.min = 4,8\n"
        "taBlk.l = 3..5\ntaBlk.m = 7..12\ntaBlk.r = 50\nbeta_cap = 2.0\n"
    )
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "sweep", "--config", conf, "--k-threshold", "5", "--out", out_dir)
    assert code == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["alpha1_vs_beta.svg", "alpha2_vs_beta.svg", "report.csv", "report.json", "winners.txt"]
    report = json.loads((out_dir / "report.json").read_text())
    # identity + maxL-50 + 6 valid blk + 3*6 taBlk
    assert len(report["records"]) == 1 + 1 + 6 + 18
    assert report["winners"]["by_delta"]["A"]["beta"] <= 2.0
    assert report["winners"]["by_threshold"]["A"]["alpha2"] >= 5
    assert "lowest beta (alpha2 >= 5)" in out

    code, out, _ = run(capsys, "report", out_dir / "report.json", "--format", "csv")
    assert out == (out_dir / "report.csv").read_text()
    code, out, _ = run(capsys, "report", out_dir / "report.json")
    assert "[A]" in out


def test_sweep_bad_config(capsys, tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("blk.size = 1..4\n")
    code, _, err = run(capsys, "sweep", "--config", conf, "--out", tmp_path / "o")
    assert code == 1 and "blk has no parameter 'size'" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "suci_pad", "eval", "--csv", "builtin",
                          "--column", "Comp-synth", "--scheme", "identity"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["alpha2"] == 1
