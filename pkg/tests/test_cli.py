"""Command-line front end: exit codes, formats, determinism."""

import json

import pytest

from bzk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_on_petersen_root(capsys):
    code, out, _ = run(capsys, "verify", "--family", "petersen", "--root", "0", "--order", "6")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["pass"] is True
    identities = {r["identity"] for r in payload["results"]}
    assert identities == {
        "walk-series-inverse", "no-tail-series", "cyclic-bump-series",
        "defect-generating-function", "route-equivalence",
    }


def test_verify_reports_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--family", "path", "--n", "4",
                       "--root", "0", "--order", "8")
    assert code == 1
    payload = json.loads(out)
    assert payload["pass"] is False
    failing = [r for r in payload["results"] if not r["pass"]]
    assert failing and all(r["first_failure"] for r in failing)


def test_zeta_all_routes_cycle4(capsys):
    code, out, _ = run(capsys, "zeta", "--family", "cycle", "--n", "4",
                       "--root", "0", "--order", "8", "--route", "all")
    assert code == 0
    payload = json.loads(out)
    assert payload["series_agree"] is True
    assert set(payload["routes"]) == {"log", "rhs", "euler", "spectral"}
    for point in payload["routes"]["spectral"]["points"]:
        assert abs(point["value"] / point["log_series_value"] - 1.0) < 1e-9


def test_zeta_csv_output(capsys):
    code, out, _ = run(capsys, "zeta", "--family", "complete", "--n", "4",
                       "--root", "0", "--order", "4", "--route", "log", "--out", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "route,m,coefficient"
    assert len(lines) == 6


def test_heat_csv_abs_diff_small(capsys):
    code, out, _ = run(capsys, "heat", "--family", "complete", "--n", "4",
                       "--root", "0", "--target", "0", "--tau-grid", "0:5:11",
                       "--t", "0", "--route", "both")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "tau,value_bessel,value_spectral,abs_diff,tail_bound"
    assert len(lines) == 12
    for line in lines[1:]:
        fields = line.split(",")
        assert float(fields[3]) < 1e-8


def test_euler_compare(capsys):
    code, out, _ = run(capsys, "euler", "--family", "cycle", "--n", "4",
                       "--root", "0", "--order", "8", "--compare")
    assert code == 0
    assert json.loads(out)["matches_log_series"] is True


def test_graphs_subcommand_and_file_input(capsys, tmp_path):
    code, out, _ = run(capsys, "graphs", "--family", "hypercube", "--d", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["vertices"] == 8
    assert payload["regular_degree"] == 3

    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
    code, out, _ = run(capsys, "graphs", "--graph", str(path))
    assert code == 0
    assert json.loads(out)["regular_degree"] == 2


def test_usage_errors(capsys):
    code, _, err = run(capsys, "zeta", "--family", "cycle", "--root", "0")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_byte_identical_output(capsys):
    args = ("zeta", "--family", "petersen", "--root", "0", "--order", "6", "--route", "log")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    args = ("verify", "--family", "complete", "--n", "4", "--root", "0", "--order", "6")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_verify_from_graph_file(capsys, tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text("# triangle\n0 1\n1 2\n2 0\n")
    code, out, _ = run(capsys, "verify", "--graph", str(path), "--order", "6")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_thread_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("BZK_THREADS", "4")
    code, out, _ = run(capsys, "verify", "--family", "cycle", "--n", "4", "--order", "6")
    assert code == 0
    assert json.loads(out)["pass"] is True
