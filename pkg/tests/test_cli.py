import csv
import io
import json
import subprocess
import sys

import pytest

from eventcluster.cli import EXIT_DATA, EXIT_USAGE, main

from .conftest import T_STAR


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def t_file(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("".join(f"{v}\n" for v in T_STAR))
    return p


def test_cluster_delta_t(t_file):
    code, out = run(["cluster", str(t_file), "--delta-t", "10"])
    assert code == 0
    doc = json.loads(out)
    assert doc["clusters"] == [[-20, -18], [1, 11], [200, 203]]
    assert doc["isolated"] == [100]


def test_cluster_negative(t_file):
    code, out = run(["cluster", str(t_file), "--delta-t", "-1"])
    assert code == 0
    assert json.loads(out)["isolated"] == T_STAR


def test_cluster_auto_mean_gap(t_file):
    code, out = run(["cluster", str(t_file), "--auto-mean-gap"])
    doc = json.loads(out)
    assert doc["delta_t"] == pytest.approx(223 / 11)
    # only the gaps 89 and 100 exceed 20.27
    assert doc["clusters"] == [[-20, 11], [200, 203]]
    assert doc["isolated"] == [100]


def test_cluster_requires_interval_choice(t_file, capsys):
    assert run(["cluster", str(t_file)])[0] == EXIT_USAGE
    assert run(["cluster", str(t_file), "--delta-t", "1", "--auto-mean-gap"])[0] == EXIT_USAGE


def test_cluster_unsorted_is_data_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1\n3\n2\n")
    code, out = run(["cluster", str(p), "--delta-t", "1"])
    assert code == EXIT_DATA
    assert out == ""
    assert "line 3" in capsys.readouterr().err


def test_cluster_sort_policy(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3\n1\n")
    code, out = run(["cluster", str(p), "--delta-t", "5", "--sort-policy", "sort"])
    assert code == 0
    assert json.loads(out)["clusters"] == [[1, 3]]
    assert "warning" in capsys.readouterr().err


def test_cluster_formats(tmp_path):
    p = tmp_path / "t.jsonl"
    p.write_text("".join(json.dumps({"ts": v}) + "\n" for v in T_STAR))
    code, out = run(["cluster", str(p), "--format", "jsonl:ts", "--delta-t", "100"])
    assert json.loads(out)["clusters"] == [[-20, 203]]
    p = tmp_path / "t.csv"
    p.write_text("id,t\n" + "".join(f"{i},{v}\n" for i, v in enumerate(T_STAR)))
    code, out = run(["cluster", str(p), "--format", "csv:t", "--delta-t", "100"])
    assert json.loads(out)["clusters"] == [[-20, 203]]


def test_missing_file_is_data_error(tmp_path):
    assert run(["cluster", str(tmp_path / "nope"), "--delta-t", "1"])[0] == EXIT_DATA


def test_sweep_csv(t_file):
    code, out = run(["sweep", str(t_file), "--f-min", "-1", "--f-max", "1", "--steps", "2"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["f", "delta_t", "c_o", "c_n", "c_s"]
    assert len(rows) == 3
    assert float(rows[1][0]) == -1.0


def test_sweep_periodic_step(tmp_path):
    p = tmp_path / "p.txt"
    assert run(["gen", "--periodic", "--n", "200", "--period", "2", "-o", str(p)])[0] == 0
    code, out = run(["sweep", str(p), "--f-min", "-1", "--f-max", "1", "--steps", "20"])
    for row in list(csv.DictReader(io.StringIO(out))):
        assert float(row["c_o"]) == (1.0 if float(row["f"]) < 0 else 0.0)


def test_sweep_bad_grid(t_file):
    assert run(["sweep", str(t_file), "--steps", "1"])[0] == EXIT_DATA


def test_gen_periodic_file(tmp_path):
    p = tmp_path / "out.txt"
    assert run(["gen", "--periodic", "--n", "3", "--period", "10", "--start", "0", "-o", str(p)])[0] == 0
    assert p.read_text() == "0\n10\n20\n"


def test_gen_burst_composite_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(["gen", "--burst-composite", "--seed", "42", "-o", str(a)])
    run(["gen", "--burst-composite", "--seed", "42", "-o", str(b)])
    assert len(a.read_text().splitlines()) == 11_000
    assert a.read_bytes() == b.read_bytes()


def test_gen_uniform_stdout():
    code, out = run(["gen", "--uniform", "--n", "5", "--lo", "0", "--hi", "1", "--seed", "1"])
    assert code == 0 and len(out.splitlines()) == 5


def test_gen_needs_n():
    assert run(["gen", "--periodic"])[0] == EXIT_USAGE


def test_gen_bad_range():
    assert run(["gen", "--uniform", "--n", "3", "--lo", "1", "--hi", "0"])[0] == EXIT_DATA


def test_bench_csv():
    code, out = run(["bench", "--sizes", "1000,2000", "--delta-t", "1e-4", "--repeats", "3"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["N"]) for r in rows] == [1000, 2000]
    assert all(float(r["r"]) > 0 for r in rows)


def test_no_subcommand():
    assert run([])[0] == EXIT_USAGE


def test_cli_output_byte_identical(t_file):
    outs = {run(["sweep", str(t_file), "--steps", "7"])[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point_stdin():
    data = "".join(f"{v}\n" for v in T_STAR).encode()
    proc = subprocess.run(
        [sys.executable, "-m", "eventcluster", "cluster", "-", "--delta-t", "10"],
        input=data, capture_output=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["isolated"] == [100]
