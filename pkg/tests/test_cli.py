import csv
import io
import json

import pytest

from elliptic_op import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_auto_digits(monkeypatch):
    monkeypatch.delenv(cli.ENV_DIGITS, raising=False)
    assert cli.resolve_digits("auto", 5) == 50
    assert cli.resolve_digits("auto", 200) == 470
    monkeypatch.setenv(cli.ENV_DIGITS, "64")
    assert cli.resolve_digits(None, 200) == 64
    assert cli.resolve_digits("80", 200) == 80


def test_moments_csv(capsys):
    code, out, _ = run(["moments", "--alpha", "0", "--beta", "0", "--ksq", "0.3", "--n-max", "2"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# alpha=0 beta=0 ksq=3/10")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    assert rows[0] == ["j", "mu_j"]
    vals = {int(j): float(v) for j, v in rows[1:]}
    assert vals == pytest.approx({0: 2, 1: 0, 2: 2 / 3, 3: 0, 4: 0.4})


def test_recurrence_csv(capsys):
    code, out, _ = run(["recurrence", "--n-max", "4"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert rows[0] == ["n", "h_n", "beta_n", "p1_n", "R_n", "r_n", "Rstar_n", "rstar_n"]
    assert len(rows) == 6


def test_recurrence_degenerate_ksq(capsys):
    code, out, _ = run(["recurrence", "--ksq", "0", "--n-max", "3"], capsys)
    assert code == 0
    assert out.splitlines()[2].endswith(",,,,")


def test_verify_json_schema(capsys):
    code, out, _ = run(["verify", "--alpha", "-0.5", "--beta", "-0.5", "--ksq", "0.5", "--n-max", "6",
                        "--eq", "all", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"params", "digits", "results", "summary"}
    assert doc["summary"]["pass"] is True
    assert set(doc["results"][0]) == {"name", "n", "absolute", "relative", "pass"}
    names = {r["name"] for r in doc["results"]}
    assert {"thm1.1", "thm1.4", "thm1.5", "thm1.3.rees_C", "thm1.6.ode"} <= names
    assert all(isinstance(r["relative"], str) for r in doc["results"])


def test_verify_filter_and_csv(capsys):
    code, out, _ = run(["verify", "--eq", "thm1.1,thm1.5", "--n-max", "4", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "n", "absolute", "relative", "pass"]
    assert {r[0] for r in rows[1:]} == {"thm1.1", "thm1.5"}


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--eq", "thm1.4", "--n-max", "5"]
    assert cli.main(argv + ["-o", str(a)]) == 0
    assert cli.main(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_exit_codes(capsys):
    code, _, err = run(["verify", "--eq", "nope"], capsys)
    assert code == 2 and "--eq" in err
    code, _, err = run(["moments", "--alpha", "-1.5"], capsys)
    assert code == 2
    code, _, err = run(["moments", "--digits", "12"], capsys)
    assert code == 2 and "--digits" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["moments", "--n-max", "x"])
    assert exc.value.code == 2


def test_failing_check_exits_one(capsys):
    # n in [2, 8] is far outside the range where the n^-7 error law holds
    code, out, _ = run(["asym", "--n-max", "8", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 1 and doc["summary"]["pass"] is False
    assert set(doc["model"]) >= {"a", "b", "c", "E"}


def test_report_skips_domain_errors(capsys):
    code, out, _ = run(["report", "--alpha", "-0.5", "--beta", "-0.5", "--ksq", "0.5", "--n-max", "3"], capsys)
    doc = json.loads(out)
    skipped = [r for r in doc["results"] if "skipped" in r]
    assert [r["name"] for r in skipped] == ["toeplitz_hankel"]
    assert skipped[0]["skipped"].startswith("skipped: ")
    assert code == 0


def test_toda_and_painleve(capsys):
    code, out, _ = run(["toda", "--n-max", "4"], capsys)
    doc = json.loads(out)
    assert code == 0 and all("diff_error" in r for r in doc["results"])
    code, out, _ = run(["painleve", "--n-max", "2"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert any(r["name"].startswith("sigma_form") for r in doc["results"])
    assert any(r["name"] == "thm1.8.odd" for r in doc["results"])
