import json
import re
import subprocess
import sys

import jsonschema
import pytest

from adicmorse.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from adicmorse.schemas import SCHEMAS

# one small invocation per subcommand
INVOCATIONS = {
    "step": ["step", "-1/7"],
    "inverse": ["inverse", "0"],
    "derivative": ["derivative", "(100)"],
    "table": ["table", "--from", "-7", "--to", "15"],
    "aseq": ["aseq", "--max-r", "12"],
    "thue": ["thue", "--len", "40"],
    "perm": ["perm", "--n", "3"],
    "order": ["order", "--n", "3", "--kind", "taubar"],
    "trace": ["trace", "-1/7", "-K", "8"],
    "build-order": ["build-order", "-1/7", "--depth", "2"],
    "window": ["window", "-1/7", "-K", "16"],
    "stats": ["stats", "--samples", "20000", "--seed", "3"],
    "verify": ["verify", "--only", "1", "2"],
}


def run(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, argv):
    code, out, _ = run(capsys, argv + ["--format", "json"])
    assert code == EXIT_OK
    return json.loads(out)


def ints(text):
    return [int(v) for v in re.findall(r"-?\d+", text)]


# -- documented examples ------------------------------------------------------------------

def test_table_row(capsys):
    code, out, _ = run(capsys, ["table", "--from", "0", "--to", "15"])
    assert code == EXIT_OK
    top, bottom = out.splitlines()
    assert ints(top) == list(range(16))
    assert bottom.split()[1:] == "1 3 7 2 5 15 4 6 9 11 31 10 13 8 12 14".split()


def test_step_zero(capsys):
    code, out, _ = run(capsys, ["step", "0"])
    assert (code, out) == (EXIT_OK, "1\n")


def test_window_minus_seventh(capsys):
    code, out, _ = run(capsys, ["window", "-1/7", "-K", "16", "--format", "text"])
    assert code == EXIT_OK
    assert "-1 ◁ 0 ◁ 2 ◁ 1" in out


@pytest.mark.parametrize("argv", [["window", "-1/7", "-K=16"], ["window", "-K", "16", "-1/7"],
                                  ["window", "(100)", "--window", "16"], ["window", "−1/7", "-K", "16"]])
def test_window_literal_spellings(capsys, argv):
    code, out, _ = run(capsys, argv)
    assert code == EXIT_OK
    assert "-1 ◁ 0 ◁ 2 ◁ 1" in out


def test_ascii_fallback(capsys):
    code, out, _ = run(capsys, ["window", "-1/7", "-K", "16", "--ascii"])
    assert code == EXIT_OK
    assert "-1 <| 0 <| 2 <| 1" in out
    assert "◁" not in out


@pytest.mark.parametrize("argv, expected", [
    (["step", "-1/3"], "0"),
    (["step", "-2/3"], "-1"),
    (["inverse", "15"], "5"),
    (["step", "101(0)"], "15"),
    (["aseq", "--max-r", "9"], "0 1 2 5 10 21 42 85 170 341"),
    (["thue", "--len", "16"], "0110100110010110"),
    (["perm", "--n", "3"], "(8, 9, 11, 10, 15, 14, 12, 13)"),
])
def test_text_examples(capsys, argv, expected):
    code, out, _ = run(capsys, argv)
    assert (code, out.strip()) == (EXIT_OK, expected)


def test_perm_table_layout(capsys):
    code, out, _ = run(capsys, ["perm", "--n", "2", "--format", "table"])
    assert out.splitlines() == ["4 -> 5", "5 -> 7", "6 -> 4", "7 -> 6"]


# -- schemas and text/json agreement ---------------------------------------------------------

@pytest.mark.parametrize("name", sorted(INVOCATIONS))
def test_json_validates_against_schema(capsys, name):
    data = run_json(capsys, INVOCATIONS[name])
    jsonschema.validate(data, SCHEMAS[name])


def test_every_subcommand_has_a_schema():
    assert set(SCHEMAS) == set(INVOCATIONS)
    for schema in SCHEMAS.values():
        jsonschema.Draft202012Validator.check_schema(schema)


def text_and_json(capsys, name):
    argv = INVOCATIONS[name]
    code, text, _ = run(capsys, argv)
    assert code == EXIT_OK
    return text, run_json(capsys, argv)


@pytest.mark.parametrize("name", ["step", "inverse", "derivative"])
def test_point_maps_agree(capsys, name):
    text, data = text_and_json(capsys, name)
    assert text.strip() == data["output"]


def test_table_agrees(capsys):
    text, data = text_and_json(capsys, "table")
    top, bottom = text.splitlines()
    assert list(zip(ints(top), ints(bottom.replace("M(n)", "")))) == [(d["n"], d["M"]) for d in data]


def test_aseq_agrees(capsys):
    text, data = text_and_json(capsys, "aseq")
    assert ints(text) == [d["a"] for d in data]
    assert [d["r"] for d in data] == list(range(13))


def test_thue_agrees(capsys):
    text, data = text_and_json(capsys, "thue")
    assert text.strip() == data["word"]


def test_perm_agrees(capsys):
    text, data = text_and_json(capsys, "perm")
    assert ints(text) == data["cycle"]
    assert [[i, j] for i, j in data["table"]] == [[8, 9], [9, 11], [10, 15], [11, 10],
                                                  [12, 13], [13, 8], [14, 12], [15, 14]]


def test_order_agrees(capsys):
    text, data = text_and_json(capsys, "order")
    assert ints(text) == data["order"]


def test_trace_agrees(capsys):
    text, data = text_and_json(capsys, "trace")
    assert [tuple(ints(line)) for line in text.splitlines()] == [(v["k"], v["t"]) for v in data["values"]]
    assert {v["k"]: v["t"] for v in data["values"]}.items() >= {-1: -1, 0: 0, 1: 2, 2: 1, 3: 22}.items()


def test_build_order_agrees(capsys):
    text, data = text_and_json(capsys, "build-order")
    lines = text.splitlines()
    assert ints(lines[0]) == [*data["params"]["r"], data["params"]["eps"]]
    for line, iv in zip(lines[1:], data["intervals"]):
        head, chain = line.split(": ")
        assert ints(head)[1:] == [iv["b"], iv["c"]]
        assert ints(chain) == iv["order"]


def test_window_agrees(capsys):
    text, data = text_and_json(capsys, "window")
    assert ints(text) == data["interval"]["order"]


def test_stats_agrees(capsys):
    text, data = text_and_json(capsys, "stats")
    lines = text.splitlines()
    assert ints(lines[0])[:3] == [data["sample_count"], data["seed"], data["pathological"]]
    for line in lines[1:]:
        name = line.split()[0]
        cells = dict(re.findall(r"(\d+):(\d+)\(", line))
        assert {k: int(v) for k, v in cells.items()} == {
            k: v for k, v in data["frequencies"][name].items() if not k.startswith(">")}


def test_stats_json_flag(capsys):
    code, out, _ = run(capsys, ["stats", "--samples", "20000", "--json"])
    assert code == EXIT_OK
    jsonschema.validate(json.loads(out), SCHEMAS["stats"])


def test_verify_agrees(capsys):
    text, data = text_and_json(capsys, "verify")
    lines = text.splitlines()
    for line, check in zip(lines, data["checks"]):
        assert line.startswith("[PASS]" if check["passed"] else "[FAIL]")
        assert ints(line)[0] == check["number"]
    assert lines[-1] == f"{len(data['checks'])}/{len(data['checks'])} checks passed"


# -- seeds and exit codes --------------------------------------------------------------------

def test_verify_is_deterministic(capsys):
    a = run_json(capsys, ["verify", "--only", "4", "--seed", "9"])
    b = run_json(capsys, ["verify", "--only", "4", "--seed", "9"])
    for check in a["checks"] + b["checks"]:
        check.pop("elapsed")
    assert a == b


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MORSE_SEED", "41")
    data = run_json(capsys, ["stats", "--samples", "20000"])
    assert data["seed"] == 41
    assert run_json(capsys, ["stats", "--samples", "20000", "--seed", "2"])["seed"] == 2


def test_bad_seed_environment_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("MORSE_SEED", "lots")
    code, _, err = run(capsys, ["verify", "--only", "1"])
    assert code == EXIT_USAGE
    assert "MORSE_SEED" in err


def test_verify_exit_zero_when_checks_pass(capsys):
    code, out, _ = run(capsys, ["verify", "--only", "1", "2", "3", "6", "7"])
    assert code == EXIT_OK
    assert out.count("[PASS]") == 5


def test_verify_exit_one_when_a_check_fails(capsys, monkeypatch):
    import adicmorse.verify as verify

    def broken(seed):
        return False, "forced failure", {}

    monkeypatch.setattr(verify, "CHECKS", [(1, "table", broken, 1.0)] + verify.CHECKS[1:])
    code, out, _ = run(capsys, ["verify", "--only", "1"])
    assert code == EXIT_FAILED
    assert re.match(r"\[FAIL\] +1\. ", out)


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["step", "1/2"],
    ["step", "abc"],
    ["step"],
    ["perm"],
    ["table", "--from", "5", "--to", "1"],
    ["aseq", "--max-r", "x"],
    ["order", "--n", "3", "--kind", "sideways"],
    ["build-order", "-1/3"],
    ["verify", "--only", "12"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "adicmorse", "step", "0"],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (0, "1\n")
    proc = subprocess.run([sys.executable, "-m", "adicmorse", "step", "1/2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
    assert proc.stderr.startswith("usage:") or "error" in proc.stderr
