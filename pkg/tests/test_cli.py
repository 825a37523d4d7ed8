"""End-to-end command behavior through the in-process entry point."""

import json
import subprocess
import sys

import pytest

from entshare import builtin, code_to_dict
from entshare.cli import main


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    rc = main([*argv, "--out", str(out)])
    return rc, out.read_text()


def test_classify_json_envelope(tmp_path):
    rc, text = run(tmp_path, "classify", "--code", "builtin:code_4_2_2")
    assert rc == 0
    env = json.loads(text)
    assert env["schema"] == "entshare/1"
    assert env["command"] == "classify"
    assert env["code"]["name"] == "code_4_2_2"
    assert env["payload"]["status_counts"] == {
        "Authorized": 5,
        "Intermediate": 6,
        "Forbidden": 5,
    }
    assert len(env["payload"]["subsets"]) == 16
    assert env["payload"]["theorem1"]["saturated"] is True


def test_classify_table_is_tab_separated(tmp_path):
    rc, text = run(tmp_path, "classify", "--code", "builtin:code_4_2_2", "--format", "table")
    assert rc == 0
    lines = text.strip().split("\n")
    assert len(lines) == 17
    header = lines[0].split("\t")
    assert header[:3] == ["subset", "size", "status"]
    assert lines[-1].split("\t")[0] == "1,2,3,4"


def test_output_bytes_are_stable(tmp_path):
    args = ("hybrid", "--code", "builtin:code_4_2_2", "--t", "3", "--seed", "7")
    _, a = run(tmp_path, *args)
    _, b = run(tmp_path, *args)
    assert a == b
    env = json.loads(a)
    assert env["seed"] == 7
    assert env["payload"]["key_roundtrip_ok"] is True


def test_verify_passes_on_all_builtins(tmp_path):
    for name in ("code_4_2_2", "shor_9_1_3", "code_6_4_2", "trivial_1_1"):
        rc, text = run(tmp_path, "verify", "--code", f"builtin:{name}")
        assert rc == 0, name
        env = json.loads(text)
        assert all(c["passed"] for c in env["payload"]["checks"]), name


def test_verify_flags_leaky_identity_encoding(tmp_path):
    # two logical qubits stored verbatim on two shares: a single share is
    # already entangled with the dealer even though the bound allows it,
    # so unauthorized certification must fail
    code = {
        "name": "identity_2",
        "n": 2,
        "k": 2,
        "d": 1,
        "generators": [],
        "logical_z": ["ZI", "IZ"],
        "logical_x": ["XI", "IX"],
    }
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(code))
    rc, text = run(tmp_path, "verify", "--code", f"file:{path}")
    assert rc == 2
    env = json.loads(text)
    by_name = {c["name"]: c["passed"] for c in env["payload"]["checks"]}
    assert by_name["unauthorized_certification"] is False
    assert by_name["entanglement_bound"] is True


def test_file_code_round_trip_matches_builtin(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(code_to_dict(builtin("code_4_2_2"))))
    rc, text = run(tmp_path, "classify", "--code", f"file:{path}")
    assert rc == 0
    env = json.loads(text)
    assert env["payload"]["status_counts"]["Authorized"] == 5


def test_error_exits(tmp_path, capsys):
    assert main(["classify", "--code", "builtin:nope"]) == 1
    assert main(["classify", "--code", "nope"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["classify", "--code", f"file:{bad}"]) == 1
    assert main(["classify"]) == 1  # missing required argument
    assert main(["teleport", "--resource", "ghz"]) == 1
    assert main(["teleport", "--resource", "bell", "--input", "what"]) == 1
    capsys.readouterr()


def test_teleport_identity_flags(tmp_path):
    rc, text = run(tmp_path, "teleport", "--resource", "bell", "--input", "0.6,0.8")
    assert rc == 0
    env = json.loads(text)
    assert env["payload"]["identity_channel"] is True
    assert env["payload"]["outcome"]["trace_preserving"] is True
    rc, text = run(tmp_path, "teleport", "--resource", "bell", "--no-corrections")
    env = json.loads(text)
    assert env["payload"]["maximally_mixed_output"] is True
    rc, text = run(tmp_path, "teleport", "--resource", "classical")
    env = json.loads(text)
    assert env["payload"]["identity_channel"] is False


def test_figures_written(tmp_path):
    figs = tmp_path / "figs"
    rc, text = run(
        tmp_path, "classify", "--code", "builtin:code_4_2_2", "--figures", str(figs)
    )
    assert rc == 0
    env = json.loads(text)
    assert env["figures"] == [str(figs / "classify_classification.png")]
    assert (figs / "classify_classification.png").stat().st_size > 1000
    rc, text = run(
        tmp_path, "hybrid", "--code", "builtin:code_4_2_2", "--t", "3", "--figures", str(figs)
    )
    env = json.loads(text)
    assert env["figures"] == [str(figs / "hybrid_keys.png")]


def test_console_script_version():
    out = subprocess.run(
        [sys.executable, "-m", "entshare.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.strip().startswith("entshare ")


def test_verify_table_lists_checks(tmp_path):
    rc, text = run(tmp_path, "verify", "--code", "builtin:code_6_4_2", "--format", "table")
    assert rc == 0
    lines = text.strip().split("\n")
    assert lines[0].split("\t") == ["check", "passed", "detail"]
    verdict_row = [l for l in lines if l.startswith("leakage_verdict")]
    assert verdict_row and "quantum leakage" in verdict_row[0]
