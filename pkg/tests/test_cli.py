import json
import subprocess
import sys

import pytest

from autbound.cli import EXIT_ERROR, EXIT_NONE, EXIT_OK, build_parser, dispatch, dump_json, main


def run(*argv):
    args = build_parser().parse_args(list(argv))
    return dispatch(args)


def run_json(*argv):
    status, text = run("--json", *argv)
    return status, json.loads(text)


def test_bound_supersolvable_odd():
    status, doc = run_json("bound", "--class", "supersolvable", "--odd", "--genus", "3")
    assert status == EXIT_OK
    assert doc["value"] == "21" and doc["rule"] == "odd_supersolvable"
    assert "3*7^n" in doc["anchor"]


def test_rational_values_are_strings():
    status, doc = run_json("bound", "--class", "general", "--pq", "2,7", "--genus", "2")
    assert doc["value"] == "56/3" and doc["max_order"] == 18


def test_derived_chain_command():
    status, doc = run_json("signatures", "derived-chain", "(0;2,4,7)", "--depth", "3")
    assert status == EXIT_OK
    assert doc["chain"][-1]["signature"] == "(49;-)"
    assert [s["quotient"] for s in doc["chain"]] == ["C2", "C7", "(C2)^6"]


def test_classify_a4():
    status, doc = run_json("group", "classify", "Alt 4")
    assert status == EXIT_OK and doc["clt"] is False and doc["clt_missing"] == [6]


def test_group_action_found_and_none():
    status, doc = run_json("group", "action", "C 7 : C 3 @ 2", "(0;3,3,7)")
    assert status == EXIT_OK and doc["genus"] == 3 and len(doc["vector"]) == 3
    status, doc = run_json("group", "action", "C 4", "(0;2,2,2)")
    assert status == EXIT_NONE and doc["error"] == "NoneFound"


def test_exit_codes():
    assert run("bound", "--class", "exponent", "--genus", "3")[0] == EXIT_NONE
    assert run("witness", "--class", "supersolvable", "--genus", "3")[0] == EXIT_NONE
    assert run("group", "classify", "C 5 : C 3 @ 2")[0] == EXIT_ERROR
    status, text = run("signatures", "abelianize", "(0;2,2,2)")
    assert status == EXIT_ERROR and "InvalidSignature" in text
    assert run("bound", "--class", "general", "--pq", "5,3", "--genus", "2")[0] == EXIT_ERROR


def test_parse_errors_exit_with_usage():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["bound", "--class", "nonsense", "--genus", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_tables_verify():
    status, doc = run_json("tables", "verify", "--emit")
    assert status == EXIT_OK and doc["ok"]
    assert "48 | (0;2,3,8) | C2 | (0;3,3,4)" in doc["generated"]["table2"]


def test_enumerate_command():
    status, doc = run_json("signatures", "enumerate", "8/33", "--odd")
    assert doc["count"] == 4
    assert [s["coefficient"] for s in doc["signatures"]] == ["15", "21/2", "9", "33/4"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--class", "metacyclic", "--odd", "-g", "3"],
        ["attainable", "--class", "supersolvable", "-g", "10"],
        ["witness", "--class", "cyclic", "--odd", "-g", "6"],
        ["group", "classify", "GL2 3"],
        ["tables", "verify"],
    ],
)
def test_json_round_trip_is_byte_identical(argv):
    _, text = run("--json", *argv)
    assert dump_json(json.loads(text)) == text
    assert not any(isinstance(v, float) for v in _walk(json.loads(text)))


def _walk(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _walk(v)
    else:
        yield obj


def test_text_mode(capsys):
    assert main(["attainable", "--class", "metacyclic", "--odd", "-g", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "status: no" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "autbound", "--json", "witness", "--class", "metacyclic", "--odd", "-g", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["group"] == "C 7 : C 3 @ 2"
