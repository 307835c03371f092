import json
import os
import subprocess
import sys

import pytest

from lambdaring.cli import main

ROOT = os.path.join(os.path.dirname(__file__), "..")
SPECS = os.path.join(ROOT, "specs")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dr_json_has_twelve_elements(capsys):
    code, out, _ = run(capsys, "dr", "--field", "Q", "--cycle", "12*inf", "--format", "json")
    assert code == 0
    dump = json.loads(out)
    assert len(dump["elements"]) == 12 and len(dump["table"]) == 12
    assert len(dump["units"]) == 4 and len(dump["idempotents"]) == 4


def test_check_global_c4(capsys):
    code, out, _ = run(capsys, "check-global", os.path.join(SPECS, "c4.json"), "--format", "json")
    assert code == 0
    v = json.loads(out)
    assert v["answer"] == "yes"
    assert v["f"]["real_places"] == ["s1"] and v["f"]["finite"][0][1] == "2"
    assert len(v["rho"]) == 4


def test_check_global_no_exits_zero(capsys):
    code, out, _ = run(capsys, "check-global", os.path.join(SPECS, "cycle4.json"))
    assert code == 0 and "answer: no" in out


def test_classgroup_text(capsys):
    code, out, _ = run(capsys, "classgroup", "--field", "Q(sqrt -5)")
    assert code == 0 and "order 2" in out


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--field", "Q(sqrt 2)", "--format", "json")
    info = json.loads(out)
    assert info["fundamental_unit"] == "1 + sqrt(2)" and info["class_number"] == 1


def test_rayclassgroup(capsys):
    code, out, _ = run(capsys, "rayclassgroup", "--field", "Q", "--cycle", "8*inf", "--format", "json")
    assert json.loads(out)["divisors"] == [2, 2]


@pytest.mark.parametrize("spec, answer", [
    ("local_swap.json", "yes"),
    ("local_frobenius_mismatch.json", "no"),
    ("local_doubling.json", "yes"),
])
def test_check_local(capsys, spec, answer):
    code, out, _ = run(capsys, "check-local", os.path.join(SPECS, spec), "--format", "json")
    assert code == 0 and json.loads(out)["answer"] == answer


def test_model_commands(capsys):
    code, out, _ = run(capsys, "model", os.path.join(SPECS, "local_doubling.json"), "--format", "json")
    assert code == 0 and json.loads(out)["exponents"] == [0, 1, 2]
    code, out, _ = run(capsys, "model", os.path.join(SPECS, "c4.json"))
    assert code == 0 and "f = 4*inf" in out
    code, _, err = run(capsys, "model", os.path.join(SPECS, "local_frobenius_mismatch.json"))
    assert code == 3 and "no integral model" in err


def test_dr_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "dr", "--field", "Q(sqrt -5)", "--cycle", "[P(2,1)^2]", "--format", "json")
    dump = tmp_path / "dr.json"
    dump.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "dr-verify", "--dump", str(dump), "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["verified"] and report["dump_matches"] and report["bruteforce"] == 8


def test_dr_verify_detects_tampered_dump(capsys, tmp_path):
    run(capsys, "dr", "--field", "Q", "--cycle", "6*inf", "--format", "json")
    code, out, _ = run(capsys, "dr", "--field", "Q", "--cycle", "6*inf", "--format", "json")
    dump = json.loads(out)
    dump["table"][2][3], dump["table"][3][2] = dump["table"][3][2], dump["table"][2][3]
    dump["table"][2][2] = (dump["table"][2][2] + 1) % 6
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(dump), encoding="utf-8")
    code, out, _ = run(capsys, "dr-verify", "--dump", str(path), "--format", "json")
    assert code == 5 and not json.loads(out)["dump_matches"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "dr", "--field", "Q", "--cycle", "4*infx")[0] == 2
    assert run(capsys, "classgroup", "--field", "Q(sqrt 4)")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(capsys, "check-global", str(bad))[0] == 2
    invalid = tmp_path / "invalid.json"
    invalid.write_text(json.dumps({"field": "Q", "modulus": "4", "set_size": 2}), encoding="utf-8")
    assert run(capsys, "check-global", str(invalid))[0] == 3
    assert run(capsys, "dr", "--field", "Q(sqrt -5)", "--cycle", "2", "--construction", "bruteforce",
               "--budget", "2")[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("DR_NORM_BUDGET", "2")
    code, _, err = run(capsys, "dr", "--field", "Q(sqrt -5)", "--cycle", "2", "--construction", "bruteforce")
    assert code == 4 and "missing" in err


def test_table_cap(capsys):
    code, out, _ = run(capsys, "dr", "--field", "Q", "--cycle", "65*inf")
    assert code == 0 and "omitted" in out


def _subprocess(*argv):
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(ROOT, "src") + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run([sys.executable, "-m", "lambdaring", *argv], capture_output=True, env=env, check=False)


@pytest.mark.parametrize("argv", [
    ("dr", "--field", "Q(i)", "--cycle", "[P(5,2), P(5,3)]", "--format", "json"),
    ("check-global", os.path.join(SPECS, "c4.json"), "--format", "json"),
    ("rayclassgroup", "--field", "Q(sqrt 2)", "--cycle", "[P(7,3)]*inf"),
])
def test_byte_identical_runs(argv):
    a, b = _subprocess(*argv), _subprocess(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
