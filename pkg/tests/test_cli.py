import json

import pytest

from dismantlable.cli import Report, cmd_check, cmd_export, cmd_survey, format_report, main


def test_check_reports_agreement(capsys):
    assert main(["check", "S:4"]) == 0
    out = capsys.readouterr().out
    assert "NotInD" in out and "crown" in out


def test_check_json_round_trip(capsys):
    assert main(["check", "Q:16", "--json"]) == 0
    text = capsys.readouterr().out
    r = Report.from_json(text)
    assert r.schema == 1 and r.order == 16
    assert r.computed["verdict"] == "InD" and r.predicted["rule"] == "cyclic-maximal-p-group"
    assert r.to_json() == text


def test_report_rejects_other_schema():
    text = cmd_check("Z:4")[0].to_json().replace('"schema": 1', '"schema": 2')
    with pytest.raises(ValueError):
        Report.from_json(text)


def test_outputs_are_byte_identical():
    assert cmd_export("D:12", "json") == cmd_export("D:12", "json")
    assert cmd_export("S:4", "dot") == cmd_export("S:4", "dot")


def test_timings_only_on_request():
    report, _ = cmd_check("Z:6")
    assert "timings" not in json.loads(report.to_json())
    report, _ = cmd_check("Z:6", timings=True)
    assert set(json.loads(report.to_json())["timings"]) == {"build_s", "analyze_s"}


def test_export_dot_to_file(tmp_path):
    out = tmp_path / "d12.dot"
    assert main(["export", "D:12", "--format", "dot", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.count("[label=") == 16


def test_bad_spec_exits_with_error(capsys):
    assert main(["check", "D:1 2"]) == 2
    assert "position" in capsys.readouterr().err


def test_order_cap_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("DISMANTLABLE_ORDER_CAP", "50")
    assert main(["check", "S:5"]) == 2
    assert "cap" in capsys.readouterr().err
    assert main(["check", "S:5", "--order-cap", "200"]) == 0


def test_subgroup_limit_flag_uses_certificate():
    report, agrees = cmd_check("Ab:2,2,2,2,2", subgroup_limit=100)
    assert agrees and report.subgroups is None
    assert report.computed["verdict"] == "NotInD" and report.computed["crown_subgroups"]


def test_text_report_names_rule_and_witness():
    report, _ = cmd_check("M:2,4")
    text = format_report(report)
    assert "cyclic-maximal-p-group" in text and "elimination order" in text


def test_survey_rows_and_summary(capsys):
    s = cmd_survey("S:3")
    assert [r.order for r in s.rows] == [1, 2, 3, 6]
    assert all(r.computed_in_d for r in s.rows) and not s.counterexamples
    assert main(["survey", "S:4"]) == 0
    out = capsys.readouterr().out
    assert "no isomorphism dedup" in out
    assert "counterexample to open problem: yes" in out


def test_survey_min_order():
    rows = cmd_survey("S:4", min_order=6).rows
    assert [r.order for r in rows] == [6, 8, 12, 24]


def test_survey_of_a5_has_nonmember_top():
    rows = cmd_survey("A:5").rows
    top = rows[-1]
    assert top.order == 60 and top.computed_in_d is False
