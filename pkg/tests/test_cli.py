import json

from tdga.cli import run
from tdga.serialize import parse_json


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dga_text_trivial_braid(capsys):
    code, out, _ = invoke(capsys, "dga", "", "--strands", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("∂⁻c = ")
    assert set(lines[0].split(" = ")[1].split(" + ")) == {"U", "λ", "λμV", "μ"}
    assert lines[1] == "∂⁻e = 0"


def test_dga_json_parses_back(capsys):
    code, out, _ = invoke(capsys, "dga", "1", "--format", "json")
    assert code == 0
    dga = parse_json(out)
    assert dga.braid.word_text() == "1"
    assert dga.provenance == "minus"


def test_check_ok(capsys):
    code, out, _ = invoke(capsys, "check", "1 -2", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_aug_headline(capsys):
    code, out, _ = invoke(capsys, "aug", "1 -2 1 -2 -3 2 3 3 3",
                          "--spec", "hat", "--p", "3",
                          "--lambda", "1", "--mu", "1")
    assert code == 0 and out.strip() == "5"
    code, out, _ = invoke(capsys, "aug", "1 -2 1 -2 3 3 3 2 -3",
                          "--spec", "hat", "--p", "3",
                          "--lambda", "1", "--mu", "1")
    assert code == 0 and out.strip() == "0"


def test_aug_json_document(capsys):
    code, out, _ = invoke(capsys, "aug", "1", "--spec", "doublehat", "--p", "3",
                          "--lambda", "-1", "--mu", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["specialization"] == "doublehat"
    assert doc["p"] == 3
    assert doc["assignments"] == {"lambda": [-1], "mu": [1]}
    assert isinstance(doc["count"], int)


def test_aug_all_units(capsys):
    code, out, _ = invoke(capsys, "aug", "1", "--spec", "hat", "--p", "3",
                          "--all-units", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["rows"]) == 4


def test_sl(capsys):
    code, out, _ = invoke(capsys, "sl", "-1")
    assert code == 0 and out.strip() == "-3"


def test_domain_errors_exit_1(capsys):
    assert invoke(capsys, "dga", "1 x")[0] == 1          # parse failure
    assert invoke(capsys, "infinity", "", "--strands", "2")[0] == 1  # link
    assert invoke(capsys, "aug", "1", "--spec", "hat")[0] == 1       # no --p
    assert invoke(capsys, "aug", "1", "--spec", "minus", "--p", "3",
                  "--lambda", "1", "--mu", "1")[0] == 1
    _, _, err = invoke(capsys, "dga", "1 x")
    assert "dga" in err


def test_specialize_and_infinity(capsys):
    code, out, _ = invoke(capsys, "specialize", "1", "--spec", "hat",
                          "--format", "json")
    assert code == 0 and json.loads(out)["ring"]["uv_mode"] == "absent"
    code, out, _ = invoke(capsys, "infinity", "1", "--format", "json")
    assert code == 0 and json.loads(out)["ring"]["uv_mode"] == "laurent"


def test_aug_infinity_spec(capsys):
    code, out, _ = invoke(capsys, "aug", "", "--strands", "1",
                          "--spec", "infinity", "--p", "3",
                          "--lambda", "1", "--mu", "2", "--U", "1", "--V", "2")
    assert code == 0
    assert out.strip().isdigit()
