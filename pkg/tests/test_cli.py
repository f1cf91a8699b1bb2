import argparse
import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from stdq.cli import main, parse_grid, parse_qspec, parse_range, parse_z
from stdq.params import Phase, Symbolic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# -- argument types ----------------------------------------------------------

def test_qspec_backends():
    assert parse_qspec("real:2").q == Fraction(2) and parse_qspec("real:2").exact
    assert parse_qspec("real:9/10").q == Fraction(9, 10)
    assert parse_qspec("real:0.9").q == 0.9 and not parse_qspec("real:0.9").exact
    assert parse_qspec("phase:pi/3").theta_pi == Fraction(1, 3)
    assert parse_qspec("phase:-2*pi/3").theta_pi == Fraction(-2, 3)
    assert isinstance(parse_qspec("phase:0.4"), Phase)
    assert isinstance(parse_qspec("symbolic"), Symbolic)


@pytest.mark.parametrize("text,where", [("0.9", "position 0"), ("real:-1", "position 5"), ("real:abc", "position 5"),
                                        ("phase:4", "position 6"), ("phase:2*pi", "position 6"),
                                        ("imag:1", "position 0")])
def test_qspec_errors_name_position(text, where):
    with pytest.raises(argparse.ArgumentTypeError) as e:
        parse_qspec(text)
    assert where in str(e.value)


def test_range_grid_z():
    assert parse_range("2..5") == [2, 3, 4, 5] and parse_range("7") == [7]
    assert parse_grid("0.5:2:0.1")[-1] == 2.0 and len(parse_grid("0.5:2:0.1")) == 16
    assert parse_z("1,-2") == complex(1, -2) and parse_z("3") == 3
    for bad, fn in [("5..2", parse_range), ("1:2", parse_grid), ("1:0:0.1", parse_grid), ("a,b", parse_z)]:
        with pytest.raises(argparse.ArgumentTypeError):
            fn(bad)


# -- commands ------------------------------------------------------------------

def test_bracket_classical_is_integers(capsys):
    code, out, _ = run(capsys, "bracket", "--n", "3", "--q", "real:1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,bracket", "1,1", "2,2", "3,3"]


def test_bracket_json_schema(capsys):
    code, doc, _ = run_json(capsys, "bracket", "--n", "2", "--q", "real:2")
    assert code == 0 and doc["schema"] == "stdq/1" and doc["command"] == "bracket" and doc["ok"] is True
    assert doc["columns"] == ["k", "bracket"]
    assert [r["bracket"] for r in doc["rows"]] == [1, 2.5]


def test_bracket_at_quarter_phase(capsys):
    code, doc, _ = run_json(capsys, "bracket", "--n", "2", "--q", "phase:pi/2")
    assert code == 0 and [float(r["bracket"]) for r in doc["rows"]] == [1.0, 0.0]


def test_fock_check(capsys):
    code, doc, _ = run_json(capsys, "fock-check", "--q", "symbolic", "--dim", "5")
    assert code == 0 and doc["ok"]


def test_fib_and_general(capsys):
    code, doc, _ = run_json(capsys, "fib", "--q", "real:9/10", "--n", "6")
    assert code == 0 and len(doc["rows"]) == 6
    code, doc, _ = run_json(capsys, "fib-general", "--q", "real:1.2", "--n", "5", "--k-expr", "(q-1)^2*n")
    assert code == 0
    code, _, err = run(capsys, "fib-general", "--k-expr", "q", "--n", "3")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "fib-general", "--k-expr", "q +", "--n", "3")
    assert code == 2 and "position" in err


def test_fivepar_sample_reports_failures(capsys):
    code, doc, err = run_json(capsys, "fivepar", "--sample", "6", "--seed", "3")
    assert code == 1 and doc["ok"] is False and "verification failed" in err
    code, doc, _ = run_json(capsys, "fivepar", "--sample", "6", "--seed", "3")
    code2, doc2, _ = run_json(capsys, "fivepar", "--sample", "6", "--seed", "3")
    assert doc == doc2


def test_spectrum_and_degeneracy(capsys):
    code, doc, _ = run_json(capsys, "spectrum", "--q", "real:1", "--levels", "4")
    assert code == 0 and [r["E_n"] for r in doc["rows"]][:2] == [0.5, 1.5]
    code, doc, _ = run_json(capsys, "degeneracy", "--n", "0", "--r", "1")
    assert code == 0 and doc["rows"]
    assert "roots" in doc


def test_coherent_and_integrate(capsys):
    code, doc, _ = run_json(capsys, "coherent", "--z", "0.3,0.2")
    assert code == 0 and doc["ok"]
    code, doc, _ = run_json(capsys, "integrate", "--q", "real:1.1", "--n", "1")
    assert code == 0 and doc["ok"]


def test_qexp_family(capsys):
    assert run(capsys, "qexp", "--q", "real:3/2", "--N", "6")[0] == 0
    assert run(capsys, "qexp-inverse", "--q", "symbolic", "--N", "5")[0] == 0
    code, _, err = run(capsys, "qexp", "--q", "phase:0.3", "--N", "6")
    assert code == 2


def test_sweep_spectrum_rows_and_parallel_determinism(capsys):
    args = ["sweep", "spectrum", "--q-grid", "0.5:2:0.1", "--levels", "10", "--format", "csv"]
    code, serial, _ = run(capsys, *args)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(serial)))
    assert len(rows) == 160
    code, parallel, _ = run(capsys, *args, "--jobs", "3")
    assert code == 0 and parallel == serial


def test_sweep_needs_grid(capsys):
    code, _, err = run(capsys, "sweep", "spectrum")
    assert code == 2 and "--q-grid" in err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "bracket")[0] == 2
    assert run(capsys, "bracket", "--n", "3", "--q", "real:0")[0] == 2
    assert run(capsys, "bracket", "--n", "-1")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "bracket", "--n", "2", "--plot")[0] == 2


def test_out_and_plot(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, stdout, _ = run(capsys, "bracket", "--n", "5", "--q", "real:0.8", "--out", str(out), "--plot")
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["schema"] == "stdq/1"
    png = tmp_path / "b.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert run(capsys, "bracket", "--n", "2", "--out", str(tmp_path / "x.png"))[0] == 2


def test_sweep_plot(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "spectrum", "--q-grid", "0.8:1.2:0.2", "--levels", "3",
                     "--format", "csv", "--out", str(out), "--plot")
    assert code == 0 and (tmp_path / "s.png").exists()


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "stdq", "bracket", "--n", "2", "--q", "real:1", "--format", "csv"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.splitlines() == ["k,bracket", "1,1", "2,2"]
