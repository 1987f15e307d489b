import csv
import io
import json
from fractions import Fraction

import pytest

from hypsum import cli
from hypsum.hypergeom import EXACT, SeriesSpec, hyp2f1_terminating
from hypsum.identities import CLOSED_FORMS, Grid, Identity, VerificationReport, verify
from hypsum.report import HEADER, OutputFormat, emit_pivot, emit_table, parse_value

F = Fraction


def run(argv, capsys):
    code = cli.run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert cli.parse_range("2..5") == range(2, 6)
    assert cli.parse_range("3") == range(3, 4)
    for bad in ("5..2", "-1..3", "a..b"):
        with pytest.raises(Exception):
            cli.parse_range(bad)


def test_verify_theorem_even_exit_zero(capsys):
    code, out, _ = run(["verify", "--identity", "theorem-even", "--nu", "0..10", "--i", "0..5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(HEADER)
    assert len(lines) == 67
    assert all(line.endswith(",true") for line in lines[1:])


def test_eval_knuth_lhs(capsys):
    code, out, _ = run(["eval", "--identity", "knuth-lhs", "--n", "2", "--i", "0"], capsys)
    assert code == 0 and out.strip() == "1/2"


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["eval", "--identity", "theorem-even", "--nu", "1", "--i", "2"], "7/2"),
        (["eval", "--identity", "corollary-odd", "--nu", "0", "--i", "2"], "2/1"),
        (["eval", "--identity", "gauss-second", "--n", "2", "--alpha", "2"], "-1/1"),
        (["eval", "--identity", "reduce", "--n", "2", "--i", "2"], "6/1 * 2F1(-2, 1/2; 3/1; 2/1)"),
        # exact mode; the series 2F1(-2, -5/2; -5; 2) sums to 1 - 2 + 3/4
        (["eval", "--identity", "master-even", "--n", "1", "--alpha=-5/2"], "-1/4"),
    ],
)
def test_eval_variants(argv, expected, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and out.strip() == expected


def test_eval_master_float(capsys):
    code, out, _ = run(["eval", "--identity", "master-even", "--n", "1", "--alpha", "1/3"], capsys)
    assert code == 0
    expected = hyp2f1_terminating(SeriesSpec(-2, F(1, 3), F(2, 3), F(2)))
    assert float(out) == pytest.approx(float(expected), rel=1e-12)


def test_usage_errors_exit_two(capsys):
    code, out, err = run(["verify", "--identity", "corollary-even", "--i", "7"], capsys)
    assert code == 2 and out == "" and "i <= 3" in err
    assert run(["verify", "--identity", "nope"], capsys)[0] == 2
    assert run(["verify", "--identity", "theorem-odd", "--workers", "0"], capsys)[0] == 2
    assert run(["eval", "--identity", "master-odd", "--n", "1", "--alpha", "1/2"], capsys)[0] == 2
    assert run(["eval", "--identity", "theorem-odd"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_mismatch_exit_one(capsys, monkeypatch):
    monkeypatch.setitem(CLOSED_FORMS, Identity.KNUTH_EVEN, lambda p: F(-1))
    code, out, err = run(["verify", "--identity", "knuth-even", "--nu", "0..2"], capsys)
    assert code == 1
    assert err.count("MISMATCH knuth-even") == 3
    assert out.count(",false") == 3


def test_riordan_odd_as_quoted_is_flagged(capsys):
    code, _, err = run(["verify", "--identity", "riordan-odd", "--nu", "0..1"], capsys)
    assert code == 1 and "MISMATCH riordan-odd" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["verify", "--identity", "knuth-even", "--nu", "0..3", "--format", "json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())) == 4


def test_worker_count_does_not_change_bytes(capsys):
    base = ["verify", "--identity", "master-odd", "--nu", "0..4", "--i", "0..3", "--alpha", "2/5", "--alpha", "5/4"]
    _, one, _ = run(base + ["--workers", "1"], capsys)
    _, many, _ = run(base + ["--workers", "8"], capsys)
    assert one == many


def _reports():
    return verify(Identity.MASTER_EVEN, Grid(nu=range(3), i=range(2), alpha=[F(1, 3), F(5, 4)])) + verify(
        Identity.THEOREM_ODD, Grid(nu=range(3), i=range(3))
    )


def test_csv_round_trip():
    reports = _reports()
    rows = list(csv.DictReader(io.StringIO(emit_table(reports, OutputFormat.CSV))))
    assert len(rows) == len(reports)
    for row, r in zip(rows, reports):
        assert parse_value(row["lhs"]) == r.lhs and type(parse_value(row["lhs"])) is type(r.lhs)
        assert parse_value(row["rhs"]) == r.rhs and type(parse_value(row["rhs"])) is type(r.rhs)
        assert parse_value(row["alpha"]) == r.alpha
        assert row["matched"] == ("true" if r.matched else "false")


def test_json_round_trip():
    reports = _reports()
    rows = json.loads(emit_table(reports, OutputFormat.JSON))
    for row, r in zip(rows, reports):
        assert parse_value(row["lhs"]) == r.lhs
        assert parse_value(row["rhs"]) == r.rhs
        assert row["matched"] is r.matched


def test_emit_table_examples():
    assert emit_table([], OutputFormat.CSV) == ",".join(HEADER) + "\n"
    r = VerificationReport(Identity.THEOREM_EVEN, 1, 2, None, F(7, 2), F(7, 2), EXACT, True)
    assert "7/2,7/2,true" in emit_table([r], OutputFormat.CSV)
    latex = emit_table([r], OutputFormat.LATEX)
    assert "$\\frac{7}{2}$ & $\\frac{7}{2}$" in latex and "\\begin{tabular}" in latex
    assert "| 1 | 2 |  | exact | 7/2 | 7/2 | yes |" in emit_table([r], OutputFormat.MARKDOWN)


def test_emit_is_stable():
    reports = _reports()
    for fmt in OutputFormat:
        assert emit_table(reports, fmt) == emit_table(list(reports), fmt)


def test_table_pivot(capsys):
    code, out, _ = run(["table", "--identity", "corollary-even", "--nu", "0..1", "--i", "0..3"], capsys)
    assert code == 0
    assert out.splitlines() == ["nu,i=0,i=1,i=2,i=3", "0,1/1,1/1,1/1,1/1", "1,1/2,3/2,7/2,13/2"]
    reports = verify(Identity.KNUTH_EVEN, Grid(nu=range(2)))
    assert "| nu | i=0 |" in emit_pivot(reports, OutputFormat.MARKDOWN)
    assert json.loads(emit_pivot(reports, OutputFormat.JSON))["rows"][1]["i=0"] == "1/2"


def test_verify_all_runs_every_identity(capsys):
    code, out, err = run(["verify", "--identity", "all", "--nu", "0..2", "--i", "0..5"], capsys)
    seen = {line.split(",")[0] for line in out.splitlines()[1:]}
    assert seen == {i.value for i in Identity}
    # only the quoted odd Riordan form is expected to disagree
    assert code == 1
    assert {line.split()[1] for line in err.splitlines()} == {"riordan-odd"}
