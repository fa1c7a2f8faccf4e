"""Tests for the command-line interface and its report format."""
from __future__ import annotations

import json

import pytest

from tdual import cli


def run_cli(args, capsys):
    rc = cli.main(args)
    out = capsys.readouterr().out
    return rc, out


def test_verify_passes_and_reports(capsys):
    rc, out = run_cli(["verify", "--n", "1"], capsys)
    assert rc == 0
    body = json.loads(out)
    assert body["command"] == "verify"
    assert body["n"] == 1
    assert body["pass"] is True
    assert [c["check"] for c in body["checks"]] == [
        "equivalence.quiver",
        "quiver.strong_exceptional",
    ]
    for check in body["checks"]:
        assert set(check) >= {"check", "parameters", "max_deviation", "pass"}


def test_geometry_report_checks(capsys):
    rc, out = run_cli(["geometry", "--n", "2"], capsys)
    assert rc == 0
    body = json.loads(out)
    names = [c["check"] for c in body["checks"]]
    assert names == [
        "geometry.moment_round_trip",
        "geometry.mirror_modulus",
        "geometry.two_form_algebra",
        "geometry.critical_points",
    ]
    assert all(c["pass"] for c in body["checks"])


def test_exit_code_one_on_failed_check(capsys):
    rc, out = run_cli(["geometry", "--n", "1", "--tol", "0"], capsys)
    assert rc == 1
    body = json.loads(out)
    assert body["pass"] is False


def test_usage_error_on_bad_oracle_dimension():
    with pytest.raises(SystemExit) as err:
        cli.main(["oracle", "--n", "3"])
    assert err.value.code == 2


def test_usage_error_on_nonpositive_n():
    with pytest.raises(SystemExit) as err:
        cli.main(["geometry", "--n", "0"])
    assert err.value.code == 2


def test_usage_error_on_bad_epsilon():
    with pytest.raises(SystemExit) as err:
        cli.main(["oracle", "--n", "1", "--epsilon", "1/4"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["oracle", "--n", "1", "--epsilon", "junk"])
    assert err.value.code == 2


def test_reports_are_byte_identical(capsys):
    _, first = run_cli(["branes", "--n", "1"], capsys)
    _, second = run_cli(["branes", "--n", "1"], capsys)
    assert first == second


def test_oracle_report_detail(capsys):
    rc, out = run_cli(["oracle", "--n", "1"], capsys)
    assert rc == 0
    body = json.loads(out)
    assert [c["check"] for c in body["checks"]] == ["oracle.match", "oracle.stability"]
    assert body["pass"] is True
    # one entry per (i, j, offset) combination: 2 * 2 * 2
    assert len(body["detail"]) == 8
    entry = body["detail"][0]
    assert set(entry) == {"i", "j", "b", "betti", "cells"}


def test_quiver_dot_export(tmp_path, capsys):
    out_file = tmp_path / "quiver_n1.dot"
    rc, out = run_cli(
        ["quiver", "--n", "1", "--format", "dot", "--out", str(out_file)], capsys
    )
    assert rc == 0
    body = json.loads(out)
    assert body["export_path"] == str(out_file)
    dot = out_file.read_text()
    # two objects and two generating arrows in the cell quiver
    assert dot.count('"U(') == 2 + 2 * 2  # two node lines + two arrow lines
    assert dot.count('"U(-2)" -> "U(-1)"') == 2
    assert dot.count('"O(-2)" -> "O(-1)"') == 2
    assert dot.count("digraph") == 2


def test_quiver_json_embedded_export(capsys):
    rc, out = run_cli(["quiver", "--n", "2"], capsys)
    assert rc == 0
    body = json.loads(out)
    assert body["dims"]["-3,-1"] == 6
    export = body["export"]
    assert set(export) == {"cells", "bundles"}
    assert export["cells"]["objects"] == ["U(-3)", "U(-2)", "U(-1)"]
    assert export["bundles"]["objects"] == ["O(-3)", "O(-2)", "O(-1)"]
    # the two quivers carry identical hom-space dimensions
    cell_dims = {(h["i"], h["j"]): len(h["basis"]) for h in export["cells"]["homs"]}
    bundle_dims = {(h["i"], h["j"]): len(h["basis"]) for h in export["bundles"]["homs"]}
    assert cell_dims == bundle_dims


def test_quiver_rejects_text_format():
    with pytest.raises(SystemExit) as err:
        cli.main(["quiver", "--n", "1", "--format", "text"])
    assert err.value.code == 2


def test_text_format_lines(capsys):
    rc, out = run_cli(["verify", "--n", "1", "--format", "text"], capsys)
    assert rc == 0
    assert "equivalence.quiver: PASS" in out
    assert out.strip().endswith("pass")


def test_report_to_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out = run_cli(["verify", "--n", "2", "--out", str(target)], capsys)
    assert rc == 0
    assert str(target) in out
    body = json.loads(target.read_text())
    assert body["pass"] is True


def test_seed_env_variable(monkeypatch, capsys):
    monkeypatch.setenv("TDUAL_SEED", "7")
    rc, out = run_cli(["geometry", "--n", "1"], capsys)
    assert rc == 0
    body = json.loads(out)
    assert body["parameters"]["seed"] == 7
    assert body["checks"][1]["parameters"]["seed"] == 7


def test_branes_command_structure(capsys):
    rc, out = run_cli(["branes", "--n", "2", "--samples", "500"], capsys)
    assert rc == 0
    body = json.loads(out)
    names = [c["check"] for c in body["checks"]]
    assert names.count("branes.exactness") == 3
    assert names.count("branes.graph") == 3 * 9  # three levels, nine offsets
    assert names.count("branes.separation") == 3
