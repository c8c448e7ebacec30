"""Command-line interface: output formats, exit codes, table checking."""

import json

import pytest

from trisel.cli import main
from trisel.descent import SelmerReport, analyze

HEADER = "a,b,S1,S2,S3,h12,h13,r,slpsi,supsi,sl3,su3\n"


def test_analyze_json_roundtrip(capsys):
    rc = main(["analyze", "79", "131", "--rank", "0..2", "--json"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["psi_lower"] == 2 and data["psi_upper"] == 4
    assert data["sel3_lower"] == 2 and data["sel3_upper"] == 10
    assert SelmerReport.from_dict(data) == analyze(79, 131, rank=(0, 2))


def test_analyze_text_output(capsys):
    rc = main(["analyze", "79", "131"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "S2 = {131}" in out
    assert "dim Sel_psi    in [2, 4]" in out
    assert "root number: +1" in out


def test_analyze_square_a_text(capsys):
    rc = main(["analyze", "4", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "a is a square in K: yes" in out
    assert "root number: not applicable" in out


def test_degenerate_exit_code(capsys):
    assert main(["analyze", "0", "5"]) == 2
    assert main(["analyze", "-27", "4"]) == 2  # 4a + 27b = 0
    err = capsys.readouterr().err
    assert "degenerate" in err


def test_usage_exit_codes():
    for argv in (["analyze", "79"], ["bogus"], [], ["family"], ["analyze", "79", "131", "--rank", "x..y"]):
        with pytest.raises(SystemExit) as si:
            main(argv)
        assert si.value.code == 64


def test_bad_rank_interval(capsys):
    assert main(["analyze", "79", "131", "--rank", "3..1"]) == 64


def test_table_check_bundled(capsys):
    # the bundled table carries two rows that disagree with recomputation:
    # (43063, 7) is in the known-discrepancy list and comes back FLAGGED,
    # while (529987, 108) is a plain printed error and comes back FAIL
    # (its h12 recomputes to 4: the norm-3 ideal class there has order 2,
    # hence is a cube, so the S-quotient drops nothing).
    rc = main(["table-check"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FLAGGED a=43063 b=7" in out
    assert "FAIL    a=529987 b=108" in out
    assert "h12: table '3', recomputed '4'" in out
    assert "40 passed, 1 failed, 1 flagged (42 rows)" in out


def test_table_check_empty_csv(tmp_path, capsys):
    p = tmp_path / "empty.csv"
    p.write_text(HEADER)
    assert main(["table-check", "--csv", str(p)]) == 0
    assert "0 passed, 0 failed, 0 flagged (0 rows)" in capsys.readouterr().out


def test_table_check_corrupted_row(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text(HEADER + "79,131,,131,,2,2,0..2,2,4,2,11\n")
    assert main(["table-check", "--csv", str(p)]) == 1
    out = capsys.readouterr().out
    assert "FAIL    a=79 b=131" in out
    assert "su3: table '11', recomputed '10'" in out


def test_family_large_rank_cli(capsys):
    assert main(["family", "large-rank", "--n", "1", "--count", "1"]) == 0
    out = capsys.readouterr().out
    assert "a=2966" in out and "11*23*47" in out and ">= 2" in out


def test_family_biquadratic_cli(capsys):
    assert main(["family", "biquadratic", "--a-prime", "5", "--count", "2"]) == 0
    out = capsys.readouterr().out
    assert "a=80 b=7" in out and "a=80 b=13" in out
    assert main(["family", "biquadratic", "--a-prime", "12"]) == 64


def test_classgroup_cli(capsys):
    assert main(["classgroup", "-23"]) == 0
    out = capsys.readouterr().out
    assert "order 3" in out and "[3]" in out

    assert main(["classgroup", "-4"]) == 0
    out = capsys.readouterr().out
    assert "order 1" in out

    assert main(["classgroup", "-999999999999"]) == 3


def test_density_cli(capsys):
    assert main(["density", "5000"]) == 0
    out = capsys.readouterr().out
    assert "eligible n:" in out and "trivial 3-part:" in out
    assert main(["density", "100000000"]) == 3
