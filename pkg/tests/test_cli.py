"""End-to-end checks of the command-line surface at p = 5."""

import json

import pytest

import sbc.cli as cli
from sbc.cli import CSV_COLUMNS, main


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify_table_smoke(capsys):
    code, out = run(capsys, "classify", "--prime", "5")
    assert code == 0
    assert "r=p3/t3=1/s=delta" in out
    assert "regular subgroups total 6625" in out
    assert "HGS total 89900" in out


def test_classify_csv_shape(capsys):
    code, out = run(capsys, "classify", "--prime", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 59
    thetas = {row.split(",")[1] for row in lines[1:]}
    assert thetas == {"1", "5", "25", "125"}


def test_classify_theta_filter(capsys):
    code, out = run(capsys, "classify", "--prime", "5", "--theta", "p3", "--format", "csv")
    assert code == 0
    rows = out.strip().split("\n")[1:]
    assert len(rows) == 4
    assert all(row.startswith("r=p3/") for row in rows)


def test_classify_json_deterministic(capsys):
    code1, out1 = run(capsys, "classify", "--prime", "5", "--format", "json")
    code2, out2 = run(capsys, "classify", "--prime", "5", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["identities_hold"] is True
    assert len(payload["records"]) == 59
    assert payload["counts"]["hgs_totals"] == {
        "ElemAbelian_p3": 89900,
        "HeisenbergM1": 5900,
    }
    assert payload["counts"]["total_regular"] == 6625


def test_classify_out_file(capsys, tmp_path):
    target = tmp_path / "records.csv"
    code, out = run(capsys, "classify", "--prime", "5", "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith(",".join(CSV_COLUMNS))


def test_count_json_match(capsys):
    code, out = run(capsys, "count", "--prime", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["match"] is True
    assert payload["computed"] == payload["closed_form"]
    assert payload["computed"]["class_counts"] == {
        "ElemAbelian_p3": 11,
        "HeisenbergM1": 48,
    }


def test_count_csv_has_both_sources(capsys):
    code, out = run(capsys, "count", "--prime", "5", "--format", "csv")
    assert code == 0
    rows = out.strip().split("\n")[1:]
    sources = [row.split(",")[0] for row in rows]
    assert sources.count("computed") == sources.count("closed_form") == 6


def test_verify_without_oracle(capsys):
    code, out = run(capsys, "verify", "--prime", "5", "--oracle-budget", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[-1] == "all checks passed: True"
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert "oracle-equivalence" not in out
    names = {line.split()[1] for line in lines[:-1]}
    assert names == {
        "algebra-identities",
        "family-regularity",
        "non-conjugacy",
        "stabilizer-shapes",
        "count-identities",
        "brace-axiom",
        "braid-sample",
    }


def test_verify_with_oracle(capsys, oracle_p5):
    # touching the fixture first keeps the scan shared across the session
    assert len(oracle_p5.records) == 6625
    code, out = run(capsys, "verify", "--prime", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    by_name = {c["name"]: c["status"] for c in payload["checks"]}
    assert by_name["oracle-equivalence"] == "pass"
    assert payload["all_pass"] is True


def test_verify_reports_injected_failure(capsys, monkeypatch):
    monkeypatch.setattr(cli, "expected_stabilizer_order", lambda rep_id, p: 999)
    code, out = run(capsys, "verify", "--prime", "5", "--oracle-budget", "3")
    assert code == 1
    assert "FAIL  stabilizer-shapes" in out
    assert out.strip().split("\n")[-1] == "all checks passed: False"


def test_verify_catches_perturbed_composition(capsys, monkeypatch):
    import sbc.automorphisms as am

    orig = am.aut_compose_triangular

    def perturbed(x, y):
        z = orig(x, y)
        return am.AutM1Elt(z.p, z.b1 + 1, z.b2, z.A)

    monkeypatch.setattr(am, "aut_compose_triangular", perturbed)
    code, out = run(capsys, "verify", "--prime", "5", "--oracle-budget", "3")
    assert code == 1
    assert "FAIL  algebra-identities" in out
    assert "composition routes disagree" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--prime", "4"],
        ["classify", "--prime", "6"],
        ["classify", "--prime", "3"],
        ["count", "--prime", "10"],
        ["brace", "--prime", "5", "--id", "r=p9/bogus"],
        ["oracle", "--prime", "7"],
        ["classify", "--prime", "5", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith("error:")


def test_oracle_counts_and_dump(capsys, tmp_path, oracle_p5):
    dump = tmp_path / "scan.json"
    code, out = run(capsys, "oracle", "--prime", "5", "--format", "json", "--out", str(dump))
    assert code == 0
    counts = json.loads(out)["counts"]
    assert counts["by_type"] == {"ElemAbelian_p3": 725, "HeisenbergM1": 5900, "other": 0}
    assert counts["by_theta"] == {"1": 1, "5": 744, "25": 2880, "125": 3000}
    assert counts["per_ambient_regular"] == [1625] * 6
    assert counts["total"] == 6625
    stored = json.loads(dump.read_text())
    assert len(stored["subgroups"]) == 6625
    assert all(len(s["codes"]) == 125 for s in stored["subgroups"][:20])


def test_brace_report(capsys):
    code, out = run(capsys, "brace", "--prime", "5", "--id", "r=1/trivial", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["theta"] == 1
    assert payload["socle_order"] == 5
    assert payload["ann_order"] == 5
    assert payload["axiom_verified"] is True
    assert payload["lambda_matches_action"] is True
    assert payload["add_abelian"] is False


def test_ybe_report(capsys):
    code, out = run(capsys, "ybe", "--prime", "5", "--id", "r=p2/II/x3=1/a=1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["braid_verified"] is True
    assert payload["nondegenerate"] is True
    assert payload["involutive"] is False
    assert "r1" not in payload


def test_ybe_full_tables(capsys):
    code, out = run(capsys, "ybe", "--prime", "5", "--id", "r=1/trivial", "--full-ybe", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    r1 = payload["r1"]
    assert len(r1) == 125 and len(r1[0]) == 125
    # trivial brace: lambda is the identity, so r1(a, b) = b
    assert all(row == list(range(125)) for row in r1)
    assert len(payload["r2"]) == 125
