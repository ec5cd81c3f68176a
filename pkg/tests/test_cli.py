"""Command-line behavior: golden outputs, exit codes, config handling."""

from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

from nearfields.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = [
    (["exotic-add", "1", "1", "--json"], "exotic_add_1_1.json"),
    (["enumerate-additions", "--field", "f9", "--json"], "enumerate_f9.json"),
    (["sigma", "--json", "6/5"], "sigma_6_5.json"),
    (
        ["char-map", "--carrier", "q", "--addition", "exotic", "--bound", "12", "--json"],
        "char_map_exotic_12.json",
    ),
    (["qmc-check", "--field", "f9", "--map", "scale:4", "--json"], "qmc_scale4_f9.json"),
    (["verify-rho", "--carrier", "f9", "--addition", "a=5", "--json"], "verify_rho_f9_a5.json"),
]

BROKEN_F4_TABLE = "table:0,1,2,3,1,0,2,3,2,3,0,1,3,2,1,0"


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_golden_outputs_byte_identical(capsys):
    for argv, name in GOLDEN_CASES:
        code, out, _ = _run(capsys, argv)
        assert code == 0, argv
        assert out == (GOLDEN / name).read_text(), argv


def test_reruns_are_deterministic(capsys):
    argv = ["char-map", "--carrier", "q", "--addition", "exotic", "--bound", "10", "--json"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second


def test_known_sums_and_images(capsys):
    code, out, _ = _run(capsys, ["exotic-add", "--json", "--", "1/3", "1/5"])
    assert code == 0 and json.loads(out)["result"] == "31/15"
    code, out, _ = _run(capsys, ["exotic-add", "--json", "--", "-2", "-1"])
    assert code == 0 and json.loads(out)["result"] == "-13"
    code, out, _ = _run(capsys, ["exotic-add", "--json", "1", "2"])
    assert code == 0 and json.loads(out)["result"] == "13"
    code, out, _ = _run(capsys, ["sigma-inv", "--json", "8", "2", "--den", "5"])
    assert code == 0 and json.loads(out)["result"] == "6/5"
    code, out, _ = _run(capsys, ["endoq", "--json", "12", "--perm", "2:3,3:2"])
    assert code == 0 and json.loads(out)["result"] == "18"


def test_enumeration_classes_for_f9(capsys):
    code, out, _ = _run(capsys, ["enumerate-additions", "--field", "f9", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["classes"] == [[1, 3], [5, 7]]
    assert payload["distinct_tables"] == 2


def test_every_subcommand_has_schema_one(capsys):
    quick = [
        ["factor-int", "--json", "12"],
        ["factor-rat", "--json", "31/15"],
        ["factor-quad", "--json", "8", "2", "--den", "5"],
        ["sigma", "--json", "6/5"],
        ["sigma-inv", "--json", "0", "1"],
        ["exotic-add", "--json", "1", "1"],
        ["endoq", "--json", "12"],
        ["verify-rho", "--json", "--carrier", "f4"],
        ["char-map", "--json", "--carrier", "f4", "--bound", "8"],
        ["enumerate-additions", "--json", "--field", "f4"],
        ["isom-check", "--json", "--field", "f9", "--a1", "1", "--a2", "5"],
        ["modnear-check", "--json"],
        ["nvs-verify", "--json", "--field", "f9", "--psi", "id", "--phi", "pow:3"],
        ["qmc-check", "--json", "--field", "f9", "--map", "id"],
        ["epsilon", "--json", "--alpha", "2", "--z", "1+1j"],
    ]
    for argv in quick:
        code, out, _ = _run(capsys, argv)
        assert code == 0, argv
        payload = json.loads(out)
        assert payload["schema"] == 1 and payload["ok"] is True, argv


def test_failing_verification_exits_one(capsys):
    code, out, _ = _run(
        capsys, ["verify-rho", "--carrier", "f4", "--addition", BROKEN_F4_TABLE, "--json"]
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    bad = [c for c in payload["report"]["checks"] if not c["ok"]]
    assert bad and all(c["witness"] is not None for c in bad)


def test_usage_errors_exit_two(capsys):
    cases = [
        ["enumerate-additions", "--field", "f11"],
        ["verify-rho", "--carrier", "f9", "--addition", "exotic"],
        ["verify-rho", "--carrier", "q", "--addition", "a=5"],
        ["verify-rho", "--carrier", "f4", "--addition", "table:0,1,2"],
        ["qmc-check", "--field", "f9", "--map", "table:0,0,0,0,0,0,0,0,0"],
        ["nvs-verify", "--field", "f9", "--psi", "scale:99", "--phi", "id"],
        ["nvs-verify", "--field", "f9", "--psi", "id", "--phi", "scale:2"],
        ["factor-int", "0"],
        ["epsilon", "--alpha", "1j", "--z", "1"],
    ]
    for argv in cases:
        code, out, err = _run(capsys, argv)
        assert code == 2, argv
        assert out == "" and err.startswith("error:"), argv


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_height_gate_and_norm_ceiling(capsys):
    big = str(10**7)
    code, _, err = _run(capsys, ["exotic-add", big, "1"])
    assert code == 2 and "height" in err
    code, _, err = _run(capsys, ["exotic-add", "1", big, "--height-bound", str(10**8)])
    assert code == 0
    code, _, err = _run(
        capsys, ["exotic-add", "--norm-ceiling", "10", "--", "9973/2", "9967/3"]
    )
    assert code == 2 and err


def test_config_file_defaults_and_flag_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 9, "trials": 40, "output": "json"}))
    monkeypatch.setenv("NEARFIELDS_CONFIG", str(cfg))
    code, out, _ = _run(capsys, ["verify-rho", "--carrier", "q"])
    assert code == 0
    assert json.loads(out)["report"]["counts"]["pairs"] == 40
    code, out, _ = _run(capsys, ["verify-rho", "--carrier", "q", "--trials", "25"])
    assert json.loads(out)["report"]["counts"]["pairs"] == 25

    cfg.write_text(json.dumps({"no_such_key": 1}))
    code, _, err = _run(capsys, ["exotic-add", "1", "1"])
    assert code == 2 and "no_such_key" in err


def test_text_mode_renders_reports(capsys):
    code, out, _ = _run(capsys, ["verify-rho", "--carrier", "f9", "--addition", "a=5"])
    assert code == 0
    assert "rho axioms" in out and "[ok  ] identity_property" in out
    code, out, _ = _run(capsys, ["enumerate-additions", "--field", "f9"])
    assert "- [1, 3]" in out and "- [5, 7]" in out


def test_reports_go_to_stdout_errors_to_stderr(capsys):
    code, out, err = _run(capsys, ["exotic-add", "1", "1", "--json"])
    assert code == 0 and out and err == ""
    code, out, err = _run(capsys, ["enumerate-additions", "--field", "f99"])
    assert code == 2 and out == "" and err != ""
