import json
import subprocess
import sys

import pytest

from wagner_forge import verify
from wagner_forge.cli import main
from wagner_forge.constructions import condition_dwa
from wagner_forge.fa import nfa_word
from wagner_forge.omega import dwa_complement, dwa_universal, omega_power_nbw
from wagner_forge.serialize import load, save


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_d1(tmp_path, capsys):
    code, out, _ = run(capsys, "build", "D1", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["dwa.json", "language.json", "nbw.json", "recipe.json"]
    assert json.loads((tmp_path / "recipe.json").read_text())["steps"] == ["base:D0check", "wrap:0"]
    code, out, _ = run(capsys, "classify", str(tmp_path / "dwa.json"))
    assert code == 0 and out.splitlines()[0] == "D1"


def test_build_d0(tmp_path, capsys):
    code, out, _ = run(capsys, "build", "D0", "--out", str(tmp_path))
    assert code == 0 and out.startswith("D0\tbase:D0")


def test_build_gates(tmp_path, capsys):
    assert run(capsys, "build", "D2+D2check", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "build", "D6", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "build", "E7", "--out", str(tmp_path))[0] == 3


@pytest.mark.parametrize("dwa, name", [
    (condition_dwa("eq_0inf"), "D1check"),
    (dwa_universal(), "D0check"),
    (condition_dwa("zeroinf_or_two_ones"), "D2check"),
])
def test_classify_dwa(tmp_path, capsys, dwa, name):
    path = tmp_path / "a.json"
    save(dwa, path)
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0
    first, cert = out.splitlines()
    assert first == name and json.loads(cert)["class"] == name


def test_classify_nfa(tmp_path, capsys):
    path = tmp_path / "zero.json"
    save(nfa_word("0"), path)
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and out.splitlines()[0] == "D1check"


def test_classify_nbw_is_gated(tmp_path, capsys):
    path = tmp_path / "b.json"
    save(omega_power_nbw(nfa_word("0")), path)
    assert run(capsys, "classify", str(path))[0] == 2


def test_malformed_and_missing(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "dwa"}')
    assert run(capsys, "classify", str(bad))[0] == 3
    assert run(capsys, "export", str(bad))[0] == 3
    assert run(capsys, "classify", str(tmp_path / "missing.json"))[0] == 3


def test_non_weak_input(tmp_path, capsys):
    d = {"kind": "dwa", "alphabet": ["0", "1"], "states": 2, "initial": 0,
         "transitions": [{"from": p, "letter": x, "to": 1 - p} for p in (0, 1) for x in "01"],
         "accepting": [0]}
    path = tmp_path / "nw.json"
    path.write_text(json.dumps(d))
    assert run(capsys, "classify", str(path))[0] == 4
    assert run(capsys, "export", str(path))[0] == 4


def test_export(tmp_path, capsys):
    path = tmp_path / "a.json"
    save(condition_dwa("eq_0inf"), path)
    code, out, _ = run(capsys, "export", str(path), "--dot")
    assert code == 0 and "palegreen" in out
    code, out, _ = run(capsys, "export", str(path))
    assert code == 0 and json.loads(out)["kind"] == "dwa"


def test_verify_small(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--max-level", "0", "--trials", "5", "--quiet", "--out", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0].startswith("target\t")
    assert {p.name for p in tmp_path.iterdir()} == {"report.json", "report.tsv", "timings.json", "report.png"}
    assert (tmp_path / "report.png").read_bytes()[:4] == b"\x89PNG"
    report = json.loads((tmp_path / "report.json").read_text())
    assert [r["status"] for r in report["rows"]] == ["pass", "pass", "pass"]


def test_verify_mismatch(monkeypatch, capsys):
    # complementing every characterization DWA must be caught
    original = verify.characterization_dwa
    monkeypatch.setattr(verify, "characterization_dwa", lambda recipe: dwa_complement(original(recipe)))
    code, _, err = run(capsys, "verify", "--max-level", "0", "--trials", "2", "--quiet")
    assert code == 1 and "FAIL" in err


def test_verify_budget(monkeypatch, capsys):
    monkeypatch.setenv(verify.BUDGET_ENV, "0")
    code, out, _ = run(capsys, "verify", "--max-level", "1", "--trials", "2", "--quiet")
    assert code == 2 and "gated" in out
    monkeypatch.setenv(verify.BUDGET_ENV, "soon")
    assert run(capsys, "verify", "--max-level", "0", "--quiet")[0] == 3


def test_bad_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--trials", "0"])
    assert exc.value.code != 0


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "wagner_forge", "build", "D1check", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert load(tmp_path / "dwa.json").n >= 2
