"""CLI: determinism, payload shape, and exit codes."""

import json

import pytest

from symplat.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_VALIDATION,
    cmd_quotient,
    run,
)
from symplat.jsonio import SCHEMA


def payload(argv):
    code, text = run(argv)
    assert code == EXIT_OK, text
    return json.loads(text)


def test_quotient_census_g1_m2():
    p = payload(["quotient", "--g", "1", "--m", "2", "--mode", "all"])
    assert p["schema"] == SCHEMA
    assert p["count"] == 3
    assert all(q["principal"] for q in p["quotients"])


def test_quotient_census_g1_m1():
    p = payload(["quotient", "--g", "1", "--m", "1"])
    assert p["count"] == 1
    assert p["quotients"][0]["type"] == ["1"]


def test_quotient_census_g2_m2():
    p = payload(["quotient", "--g", "2", "--m", "2", "--mode", "all"])
    assert p["count"] == 15
    assert all(q["principal"] for q in p["quotients"])


def test_quotient_mode_one():
    p = payload(["quotient", "--g", "2", "--m", "3", "--mode", "one"])
    assert p["count"] == 1


def test_quotient_budget_exit():
    code, text = run(["quotient", "--g", "2", "--m", "17"])
    assert code == EXIT_BUDGET


def test_cover_report_2_2():
    p = payload(["cover", "--g", "2", "--m", "2"])
    cert = p["certificate"]
    assert cert["cover_genus"] == 3
    assert cert["ker_mu_invariants"] == ["2", "2"]
    labels = [s["label"] for s in cert["subgroups"]]
    assert labels == ["0:1", "1:0", "1:1"]
    flags = {s["label"]: s["birational"] for s in cert["subgroups"]}
    assert flags == {"0:1": False, "1:0": True, "1:1": True}
    assert all(s["kernel_identification"] for s in cert["subgroups"])


def test_cover_report_2_3():
    p = payload(["cover", "--g", "2", "--m", "3"])
    cert = p["certificate"]
    assert cert["cover_genus"] == 4
    assert len(cert["subgroups"]) == 4


def test_cover_m1_degenerate():
    p = payload(["cover", "--g", "2", "--m", "1"])
    assert p["certificate"]["degenerate"] is True
    assert p["certificate"]["cover_genus"] == 2


def test_welters_via_fixture(tmp_path):
    fixture = tmp_path / "cover.json"
    code, text = run(["cover", "--g", "2", "--m", "2", "--out", str(fixture)])
    assert code == EXIT_OK
    p = payload(["welters", str(fixture), "--K", "1:0"])
    assert p["birational"] is True
    assert p["X_type"] == ["1", "1"]
    cert = p["certificate"]
    assert all(cert["identities"].values())
    assert cert["types"]["X"] == ["1", "1"]
    assert cert["inputs"]["ambient"]["ambient_dim"] == 6
    p2 = payload(["welters", str(fixture), "--K", "0:1"])
    assert p2["birational"] is False
    assert all(p2["certificate"]["identities"].values())


def test_welters_bad_fixture(tmp_path):
    missing = tmp_path / "nope.json"
    code, _ = run(["welters", str(missing)])
    assert code == EXIT_VALIDATION
    bad = tmp_path / "bad.json"
    bad.write_text('{"fixture": {"kind": "cover-fixture"}}')
    code, _ = run(["welters", str(bad)])
    assert code == EXIT_VALIDATION


def test_welters_unknown_label(tmp_path):
    fixture = tmp_path / "cover.json"
    run(["cover", "--g", "2", "--m", "2", "--out", str(fixture)])
    code, _ = run(["welters", str(fixture), "--K", "0:0"])
    assert code == EXIT_VALIDATION
    code, _ = run(["welters", str(fixture), "--K", "1-0"])
    assert code == EXIT_VALIDATION
    # labels are read modulo m: 5:5 is 1:1
    code, _ = run(["welters", str(fixture), "--K", "5:5"])
    assert code == EXIT_OK


def test_dims_payload():
    p = payload(["dims", "--g", "5", "--m", "2", "--r", "0"])
    assert p["dim_Ag"] == 15
    assert p["cover_genus"] == 9


def test_dims_odd_r():
    code, _ = run(["dims", "--g", "2", "--m", "2", "--r", "3"])
    assert code == EXIT_VALIDATION


def test_argument_errors_are_validation():
    code, _ = run(["quotient", "--g", "x", "--m", "2"])
    assert code == EXIT_VALIDATION
    code, _ = run(["nonsense"])
    assert code == EXIT_VALIDATION


@pytest.mark.parametrize(
    "argv",
    [
        ["quotient", "--g", "1", "--m", "3", "--mode", "all"],
        ["cover", "--g", "2", "--m", "2"],
        ["dims", "--g", "4", "--m", "3", "--r", "2"],
    ],
)
def test_byte_identical_runs(argv):
    out1 = run(argv)
    out2 = run(argv)
    assert out1 == out2


def test_out_file_matches_stdout(tmp_path):
    out = tmp_path / "report.json"
    code, text = run(["dims", "--g", "3", "--m", "2", "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_text() == text


def test_text_format():
    code, text = run(["dims", "--g", "3", "--m", "2", "--format", "text"])
    assert code == EXIT_OK
    assert "dim_Ag = 6" in text


def test_cmd_quotient_direct():
    report = cmd_quotient(1, 3, "all")
    assert report["count"] == 4
