import csv
import io
import shutil
import subprocess

import pytest

from dgematch.cli import main
from dgematch.graph import read_graph, write_graph
from dgematch.harness import CSV_HEADER, RunRecord, run_suite, summarize
from dgematch.oracle import oracle_enumerate
from dgematch.pipeline import PipelineConfig

from instances import triangle

TIMING_COLUMNS = {"filter_ms", "order_ms", "enum_ms", "total_ms"}


@pytest.fixture
def tri(tmp_path):
    path = tmp_path / "tri.graph"
    write_graph(triangle(), path)
    return path


@pytest.fixture
def workload(tmp_path):
    out = tmp_path / "work"
    assert main(["gen", "--seed", "1", "--out-dir", str(out), "--data-vertices", "20",
                 "--data-density", "0.3", "--labels", "3", "--num-queries", "5", "--query-vertices", "5"]) == 0
    return out


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_single_query_row(tri, capsys):
    assert main(["--data", str(tri), "--query", str(tri)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 1
    assert rows[0]["embeddings"] == "6" and rows[0]["status"] == "solved"
    assert list(rows[0]) == CSV_HEADER


def test_dump_matches_oracle(tri, tmp_path, capsys):
    dump = tmp_path / "emb.txt"
    for engine in ("dgee", "oracle"):
        assert main(["--data", str(tri), "--query", str(tri), "--engine", engine, "--dump", str(dump)]) == 0
        lines = dump.read_text().splitlines()
        got = sorted(tuple(map(int, line.split())) for line in lines)
        assert got == oracle_enumerate(triangle(), triangle())


def test_match_cap_flag(tri, capsys):
    assert main(["--data", str(tri), "--query", str(tri), "--max-matches", "2"]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert row["embeddings"] == "2" and row["status"] == "match-cap"


def test_error_exit_codes(tri, tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("t 2 1\nv 0 0 1\nv 1 0 2\ne 0 1\n")
    assert main(["--data", str(tri), "--query", str(bad)]) == 1
    assert "degree" in capsys.readouterr().err
    assert main(["--data", str(tmp_path / "missing.graph"), "--query", str(tri)]) == 1
    apart = tmp_path / "apart.graph"
    apart.write_text("t 2 0\nv 0 0 0\nv 1 0 0\n")
    assert main(["--data", str(tri), "--query", str(apart)]) == 1


def test_gen_is_deterministic(tmp_path, workload):
    again = tmp_path / "again"
    main(["gen", "--seed", "1", "--out-dir", str(again), "--data-vertices", "20",
          "--data-density", "0.3", "--labels", "3", "--num-queries", "5", "--query-vertices", "5"])
    files = sorted(p.relative_to(workload) for p in workload.rglob("*.graph"))
    assert len(files) == 6
    for rel in files:
        assert (workload / rel).read_bytes() == (again / rel).read_bytes()


def test_generated_queries_have_an_embedding(workload):
    G = read_graph(workload / "data.graph")
    for path in sorted((workload / "queries").glob("*.graph")):
        q = read_graph(path)
        assert q.vertex_count == 5
        assert oracle_enumerate(q, G, cap=1)


def test_gen_rejects_bad_density(tmp_path, capsys):
    assert main(["gen", "--seed", "1", "--out-dir", str(tmp_path), "--data-density", "1.5"]) != 0
    assert "density" in capsys.readouterr().err


def test_suite_summary_and_determinism(workload, tmp_path, capsys):
    out = tmp_path / "runs.csv"
    args = ["--data", str(workload / "data.graph"), "--query", str(workload / "queries")]
    assert main(args + ["--out", str(out)]) == 0
    summary = capsys.readouterr().out.splitlines()
    assert summary[0] == "queries=5" and summary[1] == "unsolved=0"
    first = _rows(out.read_text())
    assert main(args + ["--out", str(out), "--workers", "3"]) == 0
    second = _rows(out.read_text())
    strip = lambda rows: [{k: v for k, v in r.items() if k not in TIMING_COLUMNS} for r in rows]
    assert strip(first) == strip(second)
    assert [r["query"] for r in first] == sorted(r["query"] for r in first)


def test_suite_to_stdout_puts_summary_on_stderr(workload, capsys):
    assert main(["--data", str(workload / "data.graph"), "--query", str(workload / "queries")]) == 0
    cap = capsys.readouterr()
    assert len(_rows(cap.out)) == 5
    assert "unsolved=0" in cap.err


def test_seeded_extraction_without_query_files(workload, capsys):
    args = ["--data", str(workload / "data.graph"), "--seed", "4", "--num-queries", "3", "--query-size", "4"]
    assert main(args) == 0
    first = capsys.readouterr()
    assert main(args) == 0
    second = capsys.readouterr()
    strip = lambda text: [{k: v for k, v in r.items() if k not in TIMING_COLUMNS} for r in _rows(text)]
    assert len(strip(first.out)) == 3
    assert strip(first.out) == strip(second.out)


def test_bad_query_file_recorded_as_error(workload, tmp_path):
    qdir = tmp_path / "qs"
    shutil.copytree(workload / "queries", qdir)
    (qdir / "zz_broken.graph").write_text("nonsense\n")
    records, summary = run_suite(workload / "data.graph", qdir, PipelineConfig())
    assert records[-1].status == "error"
    assert summary.queries == 6 and summary.unsolved == 1


def test_single_vertex_query(tri, tmp_path, capsys):
    one = tmp_path / "one.graph"
    one.write_text("t 1 0\nv 0 0 0\n")
    assert main(["--data", str(tri), "--query", str(one)]) == 0
    assert _rows(capsys.readouterr().out)[0]["embeddings"] == "3"


def _record(status, total_ms):
    return RunRecord("d", "q", "fgql", "dgee", 2.0, 1, 1, 0.0, 0.0, total_ms, total_ms, status)


def test_timeouts_charged_at_budget():
    recs = [_record("solved", 10.0), _record("timeout", 1500.0), _record("match-cap", 20.0)]
    s = summarize(recs, time_limit=2.0)
    assert s.unsolved == 1
    assert s.mean_total_ms == pytest.approx((10.0 + 2000.0 + 20.0) / 3)
    assert s.lines()[0] == "queries=3"


def test_console_script_installed(tri):
    exe = shutil.which("match")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "--data", str(tri), "--query", str(tri)], capture_output=True, text=True, check=True)
    assert _rows(proc.stdout)[0]["embeddings"] == "6"
