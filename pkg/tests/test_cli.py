"""Exit codes, report shapes, and determinism of the command-line front end."""

import json

import pytest

from pdamr import cli, man_pda, render_pda
from pdamr.engine import LoadReport
from pdamr.loads import LoadPair


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def ex1_path(tmp_path):
    path = tmp_path / "ex1.pda"
    path.write_text(render_pda(man_pda(4, 2)))
    return str(path)


def test_gen_matches_library(capsys, tmp_path):
    out = tmp_path / "man.pda"
    code, stdout, _ = run(capsys, "gen", "man", "--k", "4", "--i", "2",
                          "--out", str(out))
    assert code == 0
    assert out.read_text() == render_pda(man_pda(4, 2))
    assert "(4,6,12,4)" in stdout and "tau=2" in stdout


def test_gen_to_stdout(capsys):
    code, stdout, stderr = run(capsys, "gen", "fullstar", "--k", "3", "--f", "1")
    assert code == 0
    assert stdout == "1 3\n* * *\n"
    assert "(3,1,3,0)" in stderr


def test_gen_p1(capsys, tmp_path):
    out = tmp_path / "p1.pda"
    code, stdout, _ = run(capsys, "gen", "p1", "--q", "2", "--m", "2",
                          "--out", str(out))
    assert code == 0
    assert out.read_text() == "2 4\n* 1 * 2\n2 * 1 *\n"
    assert "(4,2,4,2)" in stdout


def test_gen_bad_parameters(capsys):
    code, _, stderr = run(capsys, "gen", "man", "--k", "4", "--i", "9")
    assert code == 3
    assert "error" in stderr


def test_validate_ok_and_failure(capsys, ex1_path, tmp_path):
    code, stdout, _ = run(capsys, "validate", "--pda", ex1_path)
    assert code == 0
    assert json.loads(stdout)["results"]["ok"] is True

    bad = tmp_path / "bad.pda"
    bad.write_text("1 2\n1 1\n")
    code, stdout, _ = run(capsys, "validate", "--pda", bad.as_posix())
    assert code == 2
    payload = json.loads(stdout)
    assert payload["results"]["ok"] is False
    assert payload["results"]["violations"][0]["rule"] == "a"


def test_validate_syntax_error(capsys, tmp_path):
    bad = tmp_path / "bad.pda"
    bad.write_text("1 2\n* %\n")
    code, _, stderr = run(capsys, "validate", "--pda", bad.as_posix())
    assert code == 2
    assert "bad entry" in stderr


def test_stats(capsys, ex1_path):
    code, stdout, _ = run(capsys, "stats", "--pda", ex1_path)
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["tau"] == 2
    assert results["regular_g"] == 3
    assert results["storage_load"]["exact"] == "2"


def test_subarray(capsys, ex1_path):
    code, stdout, _ = run(capsys, "subarray", "--pda", ex1_path,
                          "--nodes", "1,2,4")
    assert code == 0
    assert stdout == "6 3\n* * 2\n* 1 3\n* 2 *\n1 * 4\n2 * *\n3 4 *\n"


def test_analyze_example(capsys, ex1_path):
    code, stdout, _ = run(capsys, "analyze", "--pda", ex1_path, "--q", "3")
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["achieved"]["r"]["exact"] == "2"
    assert results["achieved"]["l"]["exact"] == "5/12"
    assert results["optimal_l"]["exact"] == "5/12"
    assert results["gap_ratio"]["exact"] == "1"
    assert results["file_complexity"] == 6
    assert results["optimal_file_complexity"] == 6


def test_analyze_p1_gap(capsys, tmp_path):
    path = tmp_path / "p1.pda"
    run(capsys, "gen", "p1", "--q", "2", "--m", "2", "--out", str(path))
    code, stdout, _ = run(capsys, "analyze", "--pda", str(path), "--q", "3")
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["achieved"]["l"]["exact"] == "1/2"
    assert results["gap_ratio"]["exact"] == "6/5"
    assert results["file_complexity"] == 2
    assert results["optimal_file_complexity"] == 6


def test_analyze_insufficient_tau(capsys, ex1_path):
    code, _, stderr = run(capsys, "analyze", "--pda", ex1_path, "--q", "1")
    assert code == 3
    assert "minimum storage number" in stderr


def test_tradeoff_csv(capsys):
    code, stdout, _ = run(capsys, "tradeoff", "--k", "4", "--q", "3")
    assert code == 0
    lines = stdout.strip().split("\n")
    assert lines[0] == "k,q,r,l_exact,l_decimal"
    assert lines[1] == "4,3,2,5/12,0.416666666666667"
    assert lines[2] == "4,3,3,1/8,0.125"
    assert lines[3] == "4,3,4,0,0"


def test_tradeoff_all_q_spot_values(capsys):
    code, stdout, _ = run(capsys, "tradeoff", "--k", "10", "--all-q")
    assert code == 0
    rows = {tuple(line.split(",")[:3]): line.split(",")[3]
            for line in stdout.strip().split("\n")[1:]}
    assert rows[("10", "10", "2")] == "2/5"
    assert rows[("10", "8", "3")] == "119/360"
    # one row per integer r in [K-Q+1 .. K] for every Q
    assert len(rows) == sum(q for q in range(1, 11))


def test_tradeoff_json(capsys):
    code, stdout, _ = run(capsys, "tradeoff", "--k", "4", "--q", "3",
                          "--format", "json")
    assert code == 0
    points = json.loads(stdout)["results"]["points"]
    assert points[0] == {"q": 3, "r": 2,
                         "l": {"exact": "5/12", "decimal": "0.416666666666667"}}


def test_tradeoff_requires_q(capsys):
    code, _, stderr = run(capsys, "tradeoff", "--k", "4")
    assert code == 3
    assert "--q" in stderr or "all-q" in stderr


def test_simulate_toy(capsys, ex1_path):
    code, stdout, _ = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                          "--files", "6", "--functions", "3", "--iva-bits", "120")
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["l_measured"]["exact"] == "5/12"
    assert results["match"] is True
    assert results["all_reference_match"] is True
    assert all(entry["total_bits"] == 900 for entry in results["per_active_set"])


def test_simulate_suggests_minimal_v(capsys, ex1_path):
    code, _, stderr = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                          "--files", "6", "--functions", "3", "--iva-bits", "7")
    assert code == 3
    assert "--iva-bits 8" in stderr


def test_simulate_pads_functions(capsys, ex1_path):
    code, stdout, _ = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                          "--files", "6", "--functions", "4", "--iva-bits", "120")
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["functions_requested"] == 4
    assert results["functions_used"] == 6
    assert results["l_measured"]["exact"] == "5/12"
    assert results["l_measured_raw_functions"]["exact"] == "5/8"


def test_simulate_fullstar(capsys, tmp_path):
    path = tmp_path / "fs.pda"
    run(capsys, "gen", "fullstar", "--k", "3", "--f", "1", "--out", str(path))
    code, stdout, _ = run(capsys, "simulate", "--pda", str(path), "--q", "2",
                          "--files", "3", "--functions", "2", "--iva-bits", "8")
    assert code == 0
    assert json.loads(stdout)["results"]["l_measured"]["exact"] == "0"


def test_simulate_mismatch_exit_code(capsys, ex1_path, monkeypatch):
    # force a disagreement to confirm it is treated as a defect
    real = cli.measure_loads

    def broken(*args, **kwargs):
        report = real(*args, **kwargs)
        wrong = LoadPair(r=report.closed_form.r, l=report.closed_form.l + 1)
        return LoadReport(
            mode=report.mode, q_active=report.q_active,
            r_measured=report.r_measured, l_measured=report.l_measured,
            per_active_set=report.per_active_set, closed_form=wrong,
            match=False, all_reference_match=report.all_reference_match)

    monkeypatch.setattr(cli, "measure_loads", broken)
    code, _, _ = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                     "--files", "6", "--functions", "3", "--iva-bits", "120")
    assert code == 4


def test_prop1_report(capsys):
    code, stdout, _ = run(capsys, "prop1", "--k", "4", "--r", "2",
                          "--q-active", "3")
    assert code == 0
    results = json.loads(stdout)["results"]
    assert results["l_ratio"]["exact"] == "6/5"
    assert results["f_ratio"]["exact"] == "1/3"
    assert results["alpha_in_range"] and results["beta_in_range"]


def test_prop1_no_family(capsys):
    code, _, stderr = run(capsys, "prop1", "--k", "7", "--r", "3",
                          "--q-active", "7")
    assert code == 3
    assert "not 1/q" in stderr


def test_json_outputs_are_byte_stable(capsys, ex1_path):
    _, first, _ = run(capsys, "analyze", "--pda", ex1_path, "--q", "3")
    _, second, _ = run(capsys, "analyze", "--pda", ex1_path, "--q", "3")
    assert first == second
    _, first, _ = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                      "--files", "6", "--functions", "3", "--iva-bits", "120")
    _, second, _ = run(capsys, "simulate", "--pda", ex1_path, "--q", "3",
                       "--files", "6", "--functions", "3", "--iva-bits", "120")
    assert first == second


def test_missing_file(capsys):
    code, _, stderr = run(capsys, "stats", "--pda", "/nonexistent.pda")
    assert code == 3
    assert "error" in stderr
