import json
from importlib import resources

import jsonschema
import pytest

from gassmann.cli import main


def schema(name):
    return json.loads(resources.files("gassmann").joinpath(f"schemas/{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report"))
    if doc["status"] in ("ok", "mismatch"):
        jsonschema.validate(doc["result"], schema(doc["command"]))
    return code, doc


def test_idempotent_ideal_I3(capsys):
    code, doc = run_json(capsys, "idempotent", "--group", "gl2(3)", "--source", "ideal:I3")
    r = doc["result"]
    assert code == 0 and r["direct_sum"] and r["dim_Ae"] == 4 and r["dim_A1me*"] == 44


@pytest.mark.parametrize("source", ["averaging:<(1 2)>", "averaging:whole", "conjugated:<(1 2 3)>:5"])
def test_idempotent_sources(capsys, source):
    code, doc = run_json(capsys, "idempotent", "--group", "sym(3)", "--source", source)
    assert code == 0 and doc["result"]["direct_sum"]


def test_idempotent_counterexamples_exit_zero(capsys):
    code, doc = run_json(capsys, "idempotent", "--algebra", "split-quaternion")
    assert code == 0 and doc["result"]["direct_sum"] is False
    code, doc = run_json(capsys, "idempotent", "--algebra", "upper-triangular")
    assert code == 0


def test_regulator_relation(capsys):
    code, doc = run_json(capsys, "regulator", "--relation", "up - up' @ gl2(3)", "--module", "I3")
    r = doc["result"]
    assert code == 0 and set(r["classes"].values()) == {3} and r["pairing_independent"]
    assert r["trivial_module_class"] == 1


def test_regulator_sum_module(capsys):
    code, doc = run_json(capsys, "regulator", "--relation", "up - up' @ gl2(3)", "--module", "I3+I3")
    assert code == 0 and set(doc["result"]["classes"].values()) == {1}


def test_regulator_primes(capsys):
    code, doc = run_json(capsys, "regulator", "--primes", "2,3", "--q-list", "5")
    r = doc["result"]
    assert code == 0 and r["agrees"] and r["predicted"] == r["reduction"] == r["direct"] == 6


def test_regulator_cap_exceeded(capsys):
    code, doc = run_json(capsys, "regulator", "--primes", "2,3,5", "--max-group-order", "5000")
    assert code == 3 and doc["status"] == "cap exceeded"


def test_regulator_factor_bound_failure(capsys):
    # the predicted class 30 leaves cofactor 15 after dividing out 2
    code, doc = run_json(capsys, "regulator", "--primes", "2,3,5", "--factor-bound", "2")
    assert code == 1 and doc["status"] == "mathematical failure"


def test_regulator_needs_arguments(capsys):
    code, _, err = run(capsys, "regulator")
    assert code == 2 and "--primes" in err


def test_relation_command(capsys):
    code, doc = run_json(capsys, "relation", "up - up' @ gl2(3)", "--q-list", "2,3,5")
    r = doc["result"]
    assert code == 0 and r["q_relation"]
    status = {w["q"]: w["status"] for w in r["witnesses"]}
    assert status == {2: "witness", 3: "inconclusive", 5: "witness"}


def test_relation_refuses_non_relation(capsys):
    code, doc = run_json(capsys, "relation", "<(1 2)> - <(1 2 3)> @ sym(3)")
    assert code == 0 and doc["result"]["q_relation"] is False
    assert doc["result"]["witnesses"] == [] and "refused" in doc["result"]["witness_search"]


def test_surgery(capsys):
    code, doc = run_json(capsys, "surgery", "--group", "gl2(3)", "--module", "I3")
    r = doc["result"]
    assert code == 0 and r["reconstructs"] and r["filling_span"]
    assert "no geometry" in r["label"]


def test_surgery_regular_module_rejected(capsys):
    code, doc = run_json(capsys, "surgery", "--group", "sym(3)", "--module", "regular")
    assert code == 1


def test_surface_char_and_recover(capsys):
    code, doc = run_json(capsys, "surface", "char", "--group", "cyclic(2)", "--stab", "C2#1:6")
    assert code == 0 and doc["result"]["character"] == ["4", "-4"]
    code, doc = run_json(capsys, "surface", "recover", "--group", "cyclic(2)", "--character", "4,-4")
    r = doc["result"]
    assert code == 0 and r["realizable"] and r["genus"] == 0 and r["branch_points"] == 6


def test_surface_input_file(capsys, tmp_path):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"group": "sym(1)", "character": [3]}))
    code, doc = run_json(capsys, "surface", "recover", "--input", str(f))
    assert code == 0 and doc["result"]["realizable"] is False


def test_surface_usage_errors(capsys, tmp_path):
    assert run(capsys, "surface", "recover", "--group", "sym(3)")[0] == 2
    assert run(capsys, "surface", "char")[0] == 2
    assert run(capsys, "surface", "recover", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "surface", "recover", "--group", "sym(3)", "--character", "1,2")[0] in (1, 2)


@pytest.mark.parametrize("argv", [["bogus"], ["regulator", "--q-list", "4"], ["regulator", "--primes", "4"],
                                  ["regulator", "--primes", "11"], ["idempotent", "--group", "foo(3)"],
                                  ["relation", "up - up' @ nope"],
                                  ["regulator", "--seed", "x"], []])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_determinism(capsys):
    argv = ["relation", "up - up' @ gl2(3)", "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_text_format(capsys):
    code, out, _ = run(capsys, "regulator", "--relation", "up - up' @ gl2(3)", "--module", "I3", "--format", "text")
    assert code == 0 and "pairing_independent: True" in out and "{" not in out


def test_reproduce(capsys):
    code, doc = run_json(capsys, "reproduce")
    assert code == 0 and doc["result"]["all_pass"]
    assert {r["verdict"] for r in doc["result"]["claims"]} <= {"pass", "scope"}
    code, out, _ = run(capsys, "reproduce", "--format", "text", "--witness-budget", "0")
    assert code == 0 and "inconclusive" in out


def test_large_group_algebra_refused(capsys):
    # the mismatched module is caught before any algebra is built
    assert run(capsys, "idempotent", "--group", "gl2(11)", "--source", "ideal:I3")[0] == 2
    code, doc = run_json(capsys, "idempotent", "--group", "gl2(11)", "--source", "averaging:borel")
    assert code == 3 and doc["status"] == "cap exceeded"
