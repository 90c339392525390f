import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from homometry.cli import main
from homometry.eberlein import autocorrelate
from homometry.fourier import diffraction
from homometry.measure import comb, delta, from_dict, lebesgue, to_dict
from homometry.limitperiodic import pair_with_gaussian, pd_enumerate, pd_formal_fourier
from homometry.solver import table_omega_alpha

F = Fraction
Z = comb(1)
LAM = lebesgue()


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def js(m):
    return json.dumps(to_dict(m))


@pytest.fixture
def measure_file(tmp_path):
    def write(m, name="m.json"):
        p = tmp_path / name
        p.write_text(js(m))
        return str(p)

    return write


def test_diffract_json(measure_file):
    code, out = run("diffract", measure_file(2 * LAM - Z))
    assert code == 0
    doc = json.loads(out)
    assert from_dict(doc["diffraction"]) == Z
    assert from_dict(doc["autocorrelation"]) == autocorrelate(2 * LAM - Z)


def test_diffract_inline_and_table():
    code, out = run("diffract", "--table", js(LAM))
    assert code == 0
    assert "diffraction" in out and "atom" in out


def test_diffract_output_equals_library(measure_file):
    m = table_omega_alpha(F(3, 4), 1)
    _, out = run("diffract", measure_file(m))
    assert json.loads(out)["diffraction"] == json.loads(js(diffraction(m)))


@pytest.mark.parametrize("bad", ["{not json", '{"lebesgue": "x"}', "/nonexistent/file.json"])
def test_input_errors(bad):
    code, out = run("diffract", bad)
    assert code == 2 and out == ""


def test_usage_error():
    assert run("frobnicate")[0] == 2
    assert run("pd", "tv", "--nmax", "-1")[0] == 2
    assert run("pd", "regularize", "--sigma", "0")[0] == 2
    assert run("pd", "enumerate", "--lo", "5", "--hi", "1")[0] == 2


def test_solve_constant():
    code, out = run("solve", js(delta(0)), '{"kind": "constant", "u": [1, 0]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "measure" and from_dict(doc["measure"]) == LAM


def test_solve_residue_table_cell():
    phases = json.dumps({"kind": "residue", "n": 4, "turns": ["0", "1/4", "1/2", "3/4"]})
    code, out = run("solve", js(Z), phases)
    assert code == 0
    assert from_dict(json.loads(out)["measure"]) == table_omega_alpha(F(1, 4), -1)


def test_solve_indicator_series():
    code, out = run("solve", "--terms", "2", js(Z), '{"kind": "indicator", "set": "pd_delta"}')
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "series" and doc["coefficient"] == 2 and not doc["is_measure"]
    assert from_dict(doc["head"]) == comb(F(1, 2), (0, 1))
    assert [t["spacing"] for t in doc["terms"]] == ["1/8", "1/32"]


def test_solve_errors():
    assert run("solve", js(LAM), '{"kind": "constant", "u": [1, 0]}')[0] == 2
    assert run("solve", js(Z), '{"kind": "residue", "n": 2, "turns": ["0", "0.3"]}')[0] == 2


def test_table_formats():
    code, out = run("table", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 8 and all(r["diffraction_is_Z"] for r in rows)
    cell = next(r for r in rows if r["t_alpha"] == "3/4" and r["e"] == 1)
    assert cell["weights"] == [0.5, 0.5, 0.5, -0.5]
    code, out = run("table", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    cell = next(r for r in rows if r["t_alpha"] == "1/4" and r["e"] == "-1")
    assert [float(cell[c]) for c in "abcd"] == [0, 0, 0, 1]
    code, out = run("table")
    assert code == 0 and len(out.splitlines()) == 9


def test_pd_enumerate():
    code, out = run("pd", "enumerate", "--lo", "0", "--hi", "10")
    assert code == 0
    assert [int(r["k"]) for r in csv.DictReader(io.StringIO(out))] == pd_enumerate(0, 10)


def test_pd_tv_increasing():
    code, out = run("pd", "tv", "--eps", "0", "--nmax", "8")
    vals = [float(r["value"]) for r in csv.DictReader(io.StringIO(out))]
    assert code == 0 and len(vals) == 9
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_pd_regularize_cauchy():
    code, out = run("pd", "regularize", "--jmax", "20")
    rows = list(csv.DictReader(io.StringIO(out)))
    vals = [float(r["value"]) for r in rows]
    assert code == 0 and len(vals) == 21
    assert all(abs(b - a) < 1e-6 for a, b in zip(vals, vals[1:]))
    assert vals[3] == pytest.approx(pair_with_gaussian(pd_formal_fourier(2.0**-3)).real, abs=1e-11)


def test_verify():
    assert run("verify", js(LAM), js(-LAM))[0] == 0
    assert run("verify", js(Z), js(comb(F(1, 2), (0, 1))))[0] == 0
    code, out = run("verify", js(Z), js(Z - LAM))
    assert code == 1 and "False" in out


def test_verify_with_oracle():
    code, out = run("verify", "--oracle", "1000", js(LAM), js(-LAM))
    assert code == 0 and "oracle R=1000" in out
    assert run("verify", "--oracle", "5", js(LAM), js(-LAM))[0] == 2


def test_guard_exit_code():
    code, out = run("--guard", "100", "pd", "tv", "--nmax", "8")
    assert code == 3 and out == ""


def test_tol_flag():
    near = comb(1, (1 + 1e-7,))
    assert run("verify", js(Z), js(near))[0] == 1
    assert run("--tol", "1e-6", "verify", js(Z), js(near))[0] == 0


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "homometry", "diffract", "-"],
        input=js(LAM),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert from_dict(json.loads(proc.stdout)["diffraction"]) == delta(0)
