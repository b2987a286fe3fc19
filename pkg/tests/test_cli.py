from __future__ import annotations

import pytest
import yaml
from typer.testing import CliRunner

from src.app import app


runner = CliRunner()


def invoke(*args: str):
    return runner.invoke(app, ["--quiet", *args])


@pytest.fixture
def second_file(tmp_path, make_graph):
    g = make_graph(17, 20, 0.15)
    path = tmp_path / "rand.txt"
    path.write_text("".join(f"n{i} n{j}\n" for i, j in g.edges()), encoding="utf-8")
    return path


def test_ingest_prints_stats_and_writes_canonical_files(g1_file, tmp_path):
    result = invoke("ingest", str(g1_file))
    assert result.exit_code == 0
    assert "n\t4" in result.stdout and "m\t4" in result.stdout
    assert (tmp_path / "g1.canonical.tsv").read_text() == "1\t2\n1\t3\n2\t3\n3\t4\n"
    assert (tmp_path / "g1.labels.tsv").read_text() == "0\t1\n1\t2\n2\t3\n3\t4\n"


def test_ingest_comment_only_file_exits_2(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n", encoding="utf-8")
    assert invoke("ingest", str(path)).exit_code == 2


def test_reingest_is_byte_identical(tmp_path):
    raw = tmp_path / "raw.txt"
    raw.write_text("z y\ny x 0.3\nz z\nz y\n", encoding="utf-8")
    first, second = tmp_path / "c1.tsv", tmp_path / "c2.tsv"
    assert invoke("ingest", str(raw), "--out", str(first)).exit_code == 0
    assert invoke("ingest", str(first), "--out", str(second)).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_predict_top_one(g1_file):
    result = invoke("predict", str(g1_file), "--method", "DCNE", "--top", "1")
    assert result.exit_code == 0
    assert result.stdout == "1\t4\t1.000000\n"


def test_predict_is_deterministic(second_file):
    args = ("predict", str(second_file), "--method", "ALG2", "--top", "15")
    assert invoke(*args).stdout == invoke(*args).stdout


def test_predict_top_zero_prints_nothing(g1_file):
    result = invoke("predict", str(g1_file), "--method", "ALG1", "--top", "0")
    assert result.exit_code == 0
    assert result.stdout == ""


@pytest.mark.parametrize(
    "extra",
    [("--method", "ALG9"), ("--method", "ALG1,DADA"), ("--horizon", "0"), ("--method", "DPAT", "--mode", "sparse")],
)
def test_predict_usage_errors_exit_2(g1_file, extra):
    assert invoke("predict", str(g1_file), *extra).exit_code == 2


def test_missing_graph_exits_2(tmp_path):
    assert invoke("predict", str(tmp_path / "missing.txt")).exit_code == 2


def evaluate(path, out, *extra):
    return invoke(
        "evaluate", str(path), "--methods", "DCNE,ALG1", "--trials", "4", "--metrics", "tpr",
        "--seed", "11", "--jobs", "1", "--out", str(out), *extra,
    )


def test_evaluate_writes_self_describing_results(g1_file, tmp_path):
    out = tmp_path / "g1.yaml"
    result = evaluate(g1_file, out)
    assert result.exit_code == 0
    doc = yaml.safe_load(out.read_text())
    assert doc["schema_version"] == 1
    assert doc["graph"]["n"] == 4
    assert doc["config"]["seed"] == 11
    assert len(doc["trials"]["DCNE"]["tpr"]) == 4
    assert set(doc["summary"]) == {"DCNE", "ALG1"}


def test_evaluate_same_seed_same_bytes(g1_file, tmp_path):
    evaluate(g1_file, tmp_path / "a.yaml")
    evaluate(g1_file, tmp_path / "b.yaml")
    assert (tmp_path / "a.yaml").read_bytes() == (tmp_path / "b.yaml").read_bytes()


def test_evaluate_rejects_infeasible_plans(g1_file, tmp_path):
    assert evaluate(g1_file, tmp_path / "x.yaml", "--metrics", "f1").exit_code == 2
    assert evaluate(g1_file, tmp_path / "x.yaml", "--fraction", "1.5").exit_code == 2
    assert not (tmp_path / "x.yaml").exists()


def test_rank_and_compare(g1_file, second_file, tmp_path):
    assert evaluate(g1_file, tmp_path / "g1.yaml").exit_code == 0
    assert evaluate(second_file, tmp_path / "rand.yaml").exit_code == 0
    tables = tmp_path / "tables"
    result = invoke("rank", str(tmp_path / "g1.yaml"), str(tmp_path / "rand.yaml"), "--out-dir", str(tables))
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "network\tDCNE\tALG1"
    assert result.stdout.splitlines()[-1].startswith("Average significant rank\t")
    for kind in ("means", "ranks", "scores"):
        assert (tables / f"{kind}_tpr.tsv").exists()

    result = invoke("compare", str(tables / "ranks_tpr.tsv"), "--adjust", "none")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "method\tDCNE\tALG1"


def test_rank_rejects_mismatched_method_sets(g1_file, second_file, tmp_path):
    evaluate(g1_file, tmp_path / "a.yaml")
    invoke(
        "evaluate", str(second_file), "--methods", "DADA,ALG1", "--trials", "4", "--metrics", "tpr",
        "--jobs", "1", "--out", str(tmp_path / "b.yaml"),
    )
    result = invoke("rank", str(tmp_path / "a.yaml"), str(tmp_path / "b.yaml"))
    assert result.exit_code == 2


def test_horizon_table(g1_file, second_file, tmp_path):
    out = tmp_path / "horizon.tsv"
    result = invoke(
        "horizon", str(g1_file), str(second_file), "--methods", "ALG1", "--horizons", "1-3",
        "--trials", "3", "--metrics", "tpr", "--jobs", "1", "--out", str(out),
    )
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "method\th\ttpr"
    assert [ln.split("\t")[:2] for ln in lines[1:]] == [["ALG1", "1"], ["ALG1", "2"], ["ALG1", "3"]]


def test_rank_accepts_a_results_directory(g1_file, second_file, tmp_path):
    results = tmp_path / "results"
    evaluate(g1_file, results / "g1.yaml")
    evaluate(second_file, results / "rand.yaml")
    result = invoke("rank", str(results))
    assert result.exit_code == 0
    assert [ln.split("\t")[0] for ln in result.stdout.splitlines()[1:3]] == ["g1", "rand"]


def test_rank_rejects_malformed_results(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("schema_version: 1\ndataset: x\n", encoding="utf-8")
    assert invoke("rank", str(bad)).exit_code == 2


def test_ingest_invalid_utf8_exits_2(tmp_path):
    path = tmp_path / "latin.txt"
    path.write_bytes(b"a b\n\xff\xfe c\n")
    assert invoke("ingest", str(path)).exit_code == 2


def test_rank_unknown_metric_in_results_exits_2(g1_file, tmp_path):
    out = tmp_path / "g1.yaml"
    assert evaluate(g1_file, out).exit_code == 0
    doc = yaml.safe_load(out.read_text())
    doc["config"]["metrics"] = ["mrr"]
    out.write_text(yaml.safe_dump(doc, sort_keys=False), encoding="utf-8")
    assert invoke("rank", str(out)).exit_code == 2


def test_unexpected_errors_exit_3(g1_file, monkeypatch):
    def broken(*args, **kwargs):
        raise KeyError("boom")

    monkeypatch.setattr("src.app.run_predict", broken)
    result = invoke("predict", str(g1_file), "--method", "DCNE")
    assert result.exit_code == 3
