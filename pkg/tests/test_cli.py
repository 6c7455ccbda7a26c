"""Unit tests for the batch harness: suites, reports, plot projections,
exit codes, and determinism."""

import csv
import json

import pytest

from contractlab.cli import (PLOT_KINDS, SUITES, RunConfig, emit_plotdata,
                             main, report_json, run_suite, write_report)


def _strip_timestamp(report):
    d = dict(report)
    d.pop("timestamp")
    return d


def test_run_suite_rejects_unknown_tag():
    with pytest.raises(ValueError):
        run_suite(RunConfig(suite="nonsense"))


def test_suite_report_shape_and_summary():
    rep = run_suite(RunConfig(suite="kulikov", seed=1, cases=6))
    assert rep["schema_version"] == 1
    assert rep["suite"] == "kulikov"
    assert rep["summary"]["count"] == len(rep["cases"])
    assert rep["summary"]["failures"] == []
    for rec in rep["cases"]:
        assert {"case", "suite", "type", "pass"} <= set(rec)


def test_reports_are_deterministic_modulo_timestamp():
    a = run_suite(RunConfig(suite="riesz", seed=7, cases=4))
    b = run_suite(RunConfig(suite="riesz", seed=7, cases=4))
    assert report_json(_strip_timestamp(a)) == report_json(_strip_timestamp(b))
    c = run_suite(RunConfig(suite="riesz", seed=8, cases=4))
    assert report_json(_strip_timestamp(a)) != report_json(_strip_timestamp(c))


def test_thread_pool_does_not_change_results(monkeypatch):
    base = run_suite(RunConfig(suite="helson", seed=3, cases=8))
    monkeypatch.setenv("LAB_THREADS", "4")
    threaded = run_suite(RunConfig(suite="helson", seed=3, cases=8))
    assert report_json(_strip_timestamp(base)) == report_json(_strip_timestamp(threaded))


def test_write_report_and_csv(tmp_path):
    rep = run_suite(RunConfig(suite="coeff", seed=2, cases=5))
    out = tmp_path / "r.json"
    csv_out = tmp_path / "r.csv"
    write_report(rep, out, csv_out)
    loaded = json.loads(out.read_text())
    assert loaded["suite"] == "coeff"
    with open(csv_out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["case", "suite", "type", "pass", "margin"]
    assert len(rows) == len(rep["cases"]) + 1


def test_plotdata_projections(tmp_path):
    rep = run_suite(RunConfig(suite="riesz", seed=5, cases=4))
    out = tmp_path / "eps.csv"
    emit_plotdata(rep, "epsilon_scan_curve", out)
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["eps", "lhs", "rhs", "ratio"]
    assert len(rows) > 64  # three scans of a 64-point grid
    emit_plotdata(rep, "margin_histogram", tmp_path / "m.csv")
    with pytest.raises(ValueError):
        emit_plotdata(rep, "not_a_kind", tmp_path / "x.csv")
    with pytest.raises(ValueError):
        emit_plotdata(rep, "cpn_convergence", tmp_path / "y.csv")


def test_cpn_and_besicovitch_plot_kinds(tmp_path):
    rep = run_suite(RunConfig(suite="cpn", seed=1, cases=3, n=2, p=3.0))
    emit_plotdata(rep, "cpn_convergence", tmp_path / "c.csv")
    rep2 = run_suite(RunConfig(suite="dirichlet", seed=1, cases=2))
    emit_plotdata(rep2, "besicovitch_ladder", tmp_path / "b.csv")
    with open(tmp_path / "b.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["T", "partial_mean", "torus_value"]


def test_main_exit_codes_and_outputs(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(["helson", "--cases", "3", "--seed", "1", "--out", str(out)])
    assert code == 0
    assert out.exists()
    printed = capsys.readouterr().out
    assert "suite=helson" in printed and "failures=0" in printed
    plot = tmp_path / "m.csv"
    code = main(["plotdata", "--report", str(out), "--kind",
                 "margin_histogram", "--out", str(plot)])
    assert code == 0 and plot.exists()
    code = main(["cpn", "--p", "2.0", "--n", "1", "--out", str(tmp_path / "z.json")])
    assert code == 2  # inadmissible parameter is reported, not a traceback


def test_suite_registry_is_complete():
    assert set(SUITES) == {"coeff", "norms", "cpn", "kulikov", "keychain",
                           "riesz", "hv", "dirichlet", "helson", "all"}
    assert set(PLOT_KINDS) == {"epsilon_scan_curve", "cpn_convergence",
                               "besicovitch_ladder", "margin_histogram"}


def test_all_suite_tags_cases_with_source_suite():
    rep = run_suite(RunConfig(suite="all", seed=1, cases=2))
    suites_seen = {rec["suite"] for rec in rep["cases"]}
    assert {"coeff", "norms", "kulikov", "riesz", "helson"} <= suites_seen
    ids = [rec["case"] for rec in rep["cases"]]
    assert ids == list(range(len(ids)))
