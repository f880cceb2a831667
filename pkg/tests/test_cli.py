import json
import subprocess
import sys

import pytest

from zielonka_cts.cli import main
from zielonka_cts.documents import dumps, loads
from zielonka_cts.translate import cts_to_aa

CLI = [sys.executable, "-m", "zielonka_cts.cli"]




def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fix1_file(tmp_path, fix1):
    path = tmp_path / "fix1.json"
    path.write_text(dumps(fix1))
    return path


def test_pipeline_gen_validate():
    gen = subprocess.run(CLI + ["gen", "single", "--n", "3"], capture_output=True, check=True)
    val = subprocess.run(CLI + ["validate", "-"], input=gen.stdout, capture_output=True)
    assert val.returncode == 0
    assert val.stdout.decode().startswith("ok: cts-system")


def test_unknown_verb(capsys):
    code, out, err = run(capsys, "frobnicate")
    assert code == 2 and out == "" and "usage" in err


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == 2 and out == "" and "cannot read" in err


def test_bad_document(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "nope", "version": "1", "body": {}}')
    code, out, err = run(capsys, "validate", str(path))
    assert code == 2 and out == ""


def test_gen_double_disjoint(capsys):
    code, out, _ = run(capsys, "gen", "double", "--n", "2", "--cycle", "disjoint")
    assert code == 0 and loads(out).kind == "cts-system"


def test_equiv_detects_mutation(capsys, tmp_path, fix1, fix1_file):
    aa = cts_to_aa(fix1)
    delta = {a: dict(t) for a, t in aa.delta.items()}
    del delta[2][fix1.initial]
    mutated = type(aa)(aa.alphabet, aa.states_of, aa.initial_of, delta)
    path = tmp_path / "mutated.json"
    path.write_text(dumps(mutated))
    code, out, err = run(capsys, "equiv", str(fix1_file), str(path), "--max-len", "5")
    assert code == 1 and out.strip() == "differ: 2 (only in left)" and err == ""
    path.write_text(dumps(aa))
    code, out, _ = run(capsys, "equiv", str(fix1_file), str(path), "--max-len", "4")
    assert code == 0


def test_translate_and_analyze(capsys, tmp_path, fix1_file):
    code, out, _ = run(capsys, "translate", "cts-to-aa-executor", str(fix1_file),
                       "--executor", "p1", "--listen", "p2=2,4")
    assert code == 0
    b = tmp_path / "b.json"
    b.write_text(out)
    code, out, _ = run(capsys, "analyze", str(b))
    assert code == 0 and "p2: trivializable" in out
    code, out, _ = run(capsys, "analyze", str(b), "--process", "p3", "--format", "json")
    assert code == 0 and loads(out).body["verdicts"][0]["verdict"] == "trivializable"
    code, out, _ = run(capsys, "witness", str(b), "--process", "p2", "--ref", str(fix1_file))
    assert code == 0 and json.loads(out)["ok"] is True


def test_witness_precondition_exit(capsys, tmp_path, fix1_file):
    code, out, _ = run(capsys, "translate", "cts-to-aa", str(fix1_file))
    b = tmp_path / "full.json"
    b.write_text(out)
    code, out, err = run(capsys, "witness", str(b), "--process", "p2", "--ref", str(fix1_file))
    assert code == 2 and out == "" and "fully-listening" in err


def test_translate_round_trip(capsys, tmp_path):
    aa_path = tmp_path / "aa.json"
    from zielonka_cts.random_models import random_local_aa
    import random

    laa = random_local_aa(random.Random(5))
    aa_path.write_text(dumps(laa))
    code, out, _ = run(capsys, "translate", "laa-to-cts", str(aa_path))
    assert code == 0
    sys_path = tmp_path / "sys.json"
    sys_path.write_text(out)
    code, out, _ = run(capsys, "equiv", str(aa_path), str(sys_path), "--max-len", "5")
    assert code == 0


def test_run_and_lang(capsys, fix1_file):
    code, out, _ = run(capsys, "run", str(fix1_file), "--word", "4 1")
    assert code == 0 and out.strip() == "((1,4,{1},1),(2,4,{1},2),(3,4,{1},3))"
    code, out, err = run(capsys, "run", str(fix1_file), "--word", "4,4,4,4,2")
    assert code == 1 and out == "" and "blocked at position 4" in err
    code, out, _ = run(capsys, "lang", str(fix1_file), "--max-len", "1")
    assert out.split("\n")[:5] == ["ε", "1", "2", "3", "4"]
    code, _, err = run(capsys, "run", str(fix1_file), "--word", "9")
    assert code == 2 and "unknown letter" in err


def test_resource_cap(capsys, fix1_file):
    code, out, err = run(capsys, "--cap", "10", "export", str(fix1_file), "--view", "composed")
    assert code == 3 and out == "" and "cap of 10" in err


def test_cap_env(fix1_file):
    env = {"ZIELONKA_CTS_STATE_CAP": "5", "PATH": ""}
    res = subprocess.run(CLI + ["translate", "cts-to-aa", str(fix1_file)], capture_output=True,
                         env=env)
    assert res.returncode == 3 and res.stdout == b""


def test_export(capsys, fix1_file):
    code, out, _ = run(capsys, "export", str(fix1_file), "--component", "p2")
    assert code == 0 and out.count("shape=") == 132
    code, out2, _ = run(capsys, "export", str(fix1_file), "--component", "p2")
    assert out == out2


def test_compose(capsys, tmp_path, fix1):
    paths = []
    for i, comp in enumerate(fix1.components):
        path = tmp_path / f"c{i}.json"
        path.write_text(dumps(comp))
        paths.append(str(path))
    code, out, _ = run(capsys, "compose", *paths)
    assert code == 0 and loads(out).body == fix1
    code, out, _ = run(capsys, "compose", "--flatten", *paths)
    assert len(loads(out).body.states) == 156


def test_schedule(capsys):
    code, out, _ = run(capsys, "schedule", "--n", "1", "--steps", "2")
    assert code == 0 and out.splitlines()[-1] == " 2 | S S ."
