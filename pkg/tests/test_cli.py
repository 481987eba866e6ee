"""End-to-end command tests, run in process through main(argv)."""

import io
import json

import pytest

from masseycurve.cli import main

QUINTIC = "x0^5 + x1^5 + x2^5"


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


# -- smooth -------------------------------------------------------------------


def test_smooth_text_report():
    code, text = run(["smooth", "--curve", QUINTIC])
    assert code == 0
    assert "smooth" in text and "genus 6" in text
    assert "1 3 6 10 12 12 10 6 3 1 0" in text


def test_smooth_json_report(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    code, text = run(["smooth", "--curve", QUINTIC, "--json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == 1
    assert doc["curve"] == {"degree": 5, "genus": 6, "smooth": True}
    assert doc["manifest"]["command"] == "smooth"
    assert doc["manifest"]["timestamp"] == "1970-01-01T00:00:00Z"
    assert doc["result"]["hilbert"]["9"] == 1


def test_smooth_singular_exit():
    code, text = run(["smooth", "--curve", "x0^3"])
    assert code == 3
    assert "singular" in text


def test_smooth_parse_error_exit(capsys):
    code, _ = run(["smooth", "--curve", "x0^2 +"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_curve_from_file(tmp_path):
    path = tmp_path / "curve.txt"
    path.write_text("# the quintic everyone uses\n x0^5 + x1^5 + x2^5\n")
    code, text = run(["smooth", "--curve", str(path)])
    assert code == 0
    assert "genus 6" in text


def test_multi_polynomial_curve_file_rejected(tmp_path, capsys):
    path = tmp_path / "curve.txt"
    path.write_text("x0^5\nx1^5\n")
    code, _ = run(["smooth", "--curve", str(path)])
    assert code == 2
    assert "2 polynomials" in capsys.readouterr().err


# -- cup ----------------------------------------------------------------------


def test_cup_vanishing_witness():
    code, text = run(
        ["cup", "--curve", QUINTIC, "--u0", "x0^3*x1^4 + x1^5*x2^2", "--u1", "1/4*x2^2"]
    )
    assert code == 0
    assert "vanishing" in text
    assert "1/20*x0^3*x2^2" in text


def test_cup_nonvanishing_reports_pairing():
    code, text = run(
        ["cup", "--curve", QUINTIC, "--u0", "x0^3*x1^3*x2", "--u1", "x2^2"]
    )
    assert code == 0
    assert "nonvanishing" in text
    assert "1/8000" in text


def test_cup_degree_mismatch_exit():
    code, _ = run(["cup", "--curve", QUINTIC, "--u0", "x0^2", "--u1", "x1^2"])
    assert code == 2


def test_cup_json_shape():
    code, text = run(
        [
            "cup",
            "--curve",
            QUINTIC,
            "--u0",
            "x0^3*x1^4 + x1^5*x2^2",
            "--u1",
            "1/4*x2^2",
            "--json",
        ]
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["vanishing"] is True
    assert doc["result"]["witness"]["multipliers"][1] == "1/20*x0^3*x2^2"


# -- massey -------------------------------------------------------------------


def massey_args(u0, u1, u2):
    return ["massey", "--curve", QUINTIC, f"--u0={u0}", f"--u1={u1}", f"--u2={u2}"]


def test_massey_nonzero_fixture():
    code, text = run(massey_args("-1/6*x0^3*x1^2*x2^2", "x2^2", "2/9*x0^4*x2^3"))
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["value"] == "1/8640000"
    assert doc["result"]["det"] == "8000000*x0^7*x1^7*x2^7"


def test_massey_zero_fixture():
    code, text = run(
        massey_args("x0^3*x1^4 + x1^5*x2^2", "1/4*x2^2", "1/3*x0^4*x1*x2^2")
    )
    assert code == 0
    assert json.loads(text)["result"]["value"] == "0/1"


def test_massey_undefined_exit():
    code, text = run(massey_args("x0^3*x1^3*x2", "x2^2", "x2^7"))
    assert code == 4
    doc = json.loads(text)
    assert doc["result"]["defined"] is False
    assert doc["result"]["obstruction"]["pairing"] == "1/8000"


def test_massey_singular_curve_exit():
    code, _ = run(
        ["massey", "--curve", "x0^3", "--u0", "x0^3", "--u1", "1", "--u2", "x1^3"]
    )
    assert code == 3


def test_massey_witness_file(tmp_path):
    wit = tmp_path / "w.txt"
    wit.write_text("0\n0\n-1/30*x0^3*x1^2\n0\n0\n2/45*x0^4*x2\n")
    code, text = run(
        massey_args("-1/6*x0^3*x1^2*x2^2", "x2^2", "2/9*x0^4*x2^3")
        + ["--witness-file", str(wit)]
    )
    assert code == 0
    assert json.loads(text)["result"]["value"] == "1/8640000"


def test_massey_witness_file_wrong_count(tmp_path):
    wit = tmp_path / "w.txt"
    wit.write_text("0\n0\n")
    code, _ = run(
        massey_args("-1/6*x0^3*x1^2*x2^2", "x2^2", "2/9*x0^4*x2^3")
        + ["--witness-file", str(wit)]
    )
    assert code == 2


def test_massey_manifest_pinned_runs_identical(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    args = massey_args("-1/6*x0^3*x1^2*x2^2", "x2^2", "2/9*x0^4*x2^3")
    assert run(args) == run(args)


# -- search -------------------------------------------------------------------


def test_search_end_to_end():
    code, text = run(["search", "--curve", QUINTIC, "--seed", "11"])
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["attempts"] >= 1
    assert doc["result"]["massey"]["value"].count("/") == 1


def test_search_budget_exit():
    code, _ = run(
        [
            "search",
            "--curve",
            "x0^6 + x1^6 + x2^6",
            "--seed",
            "4",
            "--max-terms",
            "30",
            "--budget",
            "2",
        ]
    )
    assert code == 5


# -- experiment ---------------------------------------------------------------


def test_experiment_csv_header_and_rows():
    code, text = run(
        ["experiment", "--n-range", "4", "--ell", "1,3", "--samples", "20", "--seed", "2"]
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n,ell,samples,vanish_count,ratio_num,ratio_den,seed,elapsed_ms"
    assert len(lines) == 3
    assert lines[1].startswith("4,1,20,")
    assert all(line.endswith(",2,0") for line in lines[1:])


def test_experiment_byte_identical_across_threads():
    base = ["experiment", "--n-range", "4,5", "--samples", "50", "--seed", "9"]
    assert run(base + ["--threads", "1"]) == run(base + ["--threads", "6"])


def test_experiment_inf_cap_token():
    code, text = run(
        ["experiment", "--n-range", "5", "--ell", "inf", "--samples", "10"]
    )
    assert code == 0
    assert text.splitlines()[1].split(",")[1] == "36"


def test_experiment_default_ell_column_empty():
    code, text = run(["experiment", "--n-range", "4", "--samples", "10"])
    assert code == 0
    assert text.splitlines()[1].split(",")[1] == ""


def test_experiment_rejects_bad_grid():
    assert run(["experiment", "--n-range", "4", "--ell", "0"])[0] == 2
    assert run(["experiment", "--n-range", "2"])[0] == 2
    assert run(["experiment", "--n-range", "5..4"])[0] == 2
    assert run(["experiment", "--n-range", "4", "--samples", "0"])[0] == 2


def test_experiment_out_file(tmp_path):
    path = tmp_path / "rows.csv"
    code, text = run(
        ["experiment", "--n-range", "3", "--samples", "10", "--out", str(path)]
    )
    assert code == 0
    assert text == ""
    assert path.read_text().startswith("n,ell,samples,")


def test_experiment_plot_renders(tmp_path):
    path = tmp_path / "ratio.png"
    code, _ = run(
        [
            "experiment",
            "--n-range",
            "3..4",
            "--ell",
            "1,inf",
            "--samples",
            "10",
            "--plot",
            str(path),
        ]
    )
    assert code == 0
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_experiment_json_rows():
    code, text = run(
        ["experiment", "--n-range", "4", "--samples", "10", "--json"]
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["curve"] is None
    assert doc["result"]["rows"][0]["n"] == 4


# -- verify-paper -------------------------------------------------------------


def test_verify_paper_passes():
    code, text = run(["verify-paper"])
    assert code == 0
    assert "all fixtures pass" in text
    assert text.count("pass") >= 8


def test_verify_paper_corrupt_mode_fails():
    code, text = run(["verify-paper", "--corrupt"])
    assert code == 1
    assert "FAIL" in text
