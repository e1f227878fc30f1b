import csv
import math
import subprocess
import sys

import numpy as np
import pytest

from multipole_optics import __version__
from multipole_optics.atom import Direction, EmissionGeometry, dipole_pol_matrix_cavity
from multipole_optics.cli import CLIError, ScanSpec, main, parse_vector


def run(tmp_path, *args, name="out.csv"):
    path = tmp_path / name
    assert main([*args, "--out", str(path)]) == 0
    return path


def read_table(path):
    lines = path.read_text().splitlines()
    header = [l for l in lines if l.startswith("#")]
    rows = list(csv.reader(l for l in lines if not l.startswith("#")))
    cols = rows[0]
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    return header, {c: data[:, i] for i, c in enumerate(cols)}


# vacuum ---------------------------------------------------------------------

def test_vacuum_default_peaks_at_origin(tmp_path):
    header, t = read_table(run(tmp_path, "vacuum"))
    assert len(t["kr"]) == 400
    assert np.argmax(t["multipole_density"]) == 0
    # j_max = 10 fills kr up to about 10, so the tail keeps a sizable fraction
    assert t["multipole_density"][-1] < 0.25 * t["multipole_density"][0]
    assert np.all(t["plane_wave_baseline"] == t["plane_wave_baseline"][0])
    assert header[0] == f"# multipole_optics {__version__} vacuum"
    assert "# j_max = 10" in header


def test_vacuum_two_steps(tmp_path):
    _, t = read_table(run(tmp_path, "vacuum", "--steps", "2"))
    np.testing.assert_array_equal(t["kr"], [0.01, 20.0])


def test_vacuum_log_grid(tmp_path):
    _, t = read_table(run(tmp_path, "vacuum", "--steps", "5", "--log-grid",
                          "--kr-min", "0.1", "--kr-max", "1000"))
    np.testing.assert_allclose(np.log10(t["kr"]), [-1, 0, 1, 2, 3], atol=1e-12)


@pytest.mark.parametrize("args", [
    ["vacuum", "--kr-min", "-1"],
    ["vacuum", "--steps", "1"],
    ["vacuum", "--kr-min", "5", "--kr-max", "2"],
    ["emission", "--boundary", "free", "--kr-min", "1e-5"],
    ["dynamics", "--t-max", "0"],
    ["polmatrix"],
    ["polmatrix", "--E", "1,2"],
    ["polmatrix", "--E", "1,foo,0"],
    ["polmatrix", "--preset", "dipole-vacuum", "--kr", "-1"],
])
def test_invalid_input_exits_nonzero(args, capsys):
    assert main(args) != 0
    assert capsys.readouterr().err.startswith("error:")


def test_unwritable_path(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert main(["vacuum", "--steps", "3", "--out", str(target)]) != 0
    assert "cannot write" in capsys.readouterr().err


def test_spec_validation():
    with pytest.raises(CLIError):
        ScanSpec("vacuum", kr_min=0.0)
    with pytest.raises(CLIError):
        ScanSpec("plot")


# emission -------------------------------------------------------------------

def test_cavity_equatorial_dominance(tmp_path):
    _, t = read_table(run(tmp_path, "emission", "--steps", "2000"))
    near = t["kr"] <= 3
    assert np.all(t["I_plus"][near] > t["I_minus"][near])


def test_emission_matches_library(tmp_path):
    _, t = read_table(run(tmp_path, "emission", "--steps", "7", "--phi", "0.4"))
    # kr in the file is rounded to 12 digits, hence the looser tolerance
    for row, kr in enumerate(t["kr"]):
        P = dipole_pol_matrix_cavity(EmissionGeometry(1, Direction.EQUATORIAL, 0.4, kr)).matrix
        assert t["I_plus"][row] == pytest.approx(P[0, 0].real, rel=1e-9)
        assert t["I_minus"][row] == pytest.approx(P[2, 2].real, rel=1e-9, abs=1e-300)
        assert t["cross_re"][row] == pytest.approx(P[0, 2].real, rel=1e-9, abs=1e-15)


def test_cavity_polar_single_component(tmp_path):
    _, t = read_table(run(tmp_path, "emission", "--direction", "polar"))
    assert not t["I_minus"].any()
    assert np.all(t["I_plus"] >= 0)


def test_phase_column(tmp_path):
    _, cav = read_table(run(tmp_path, "emission", "--kr-min", "1", "--kr-max", "10",
                            name="cav.csv"))
    _, free = read_table(run(tmp_path, "emission", "--kr-min", "1", "--kr-max", "10",
                             "--boundary", "free", name="free.csv"))
    assert np.ptp(cav["phase_of_cross_term"]) == 0.0
    assert np.std(free["phase_of_cross_term"]) > 0.1


# polmatrix ------------------------------------------------------------------

def _matrix(text, name):
    lines = text.splitlines()
    start = next(i for i, l in enumerate(lines) if l.startswith(name + " "))
    return np.array([[complex(tok) for tok in lines[start + r].split()] for r in (1, 2, 3)])


def test_plane_wave_preset_block_pattern(tmp_path):
    text = run(tmp_path, "polmatrix", "--preset", "plane-wave").read_text()
    PE, PB, P = (_matrix(text, n) for n in ("P_E", "P_B", "P"))
    assert not PE[2].any() and not PE[:, 2].any()
    np.testing.assert_allclose(PB[:2, :2], PE[:2, :2], atol=1e-12)
    assert PB[2, 2] == pytest.approx(1.0)
    np.testing.assert_allclose(P[:2, :2], 2 * PE[:2, :2], atol=1e-12)
    assert "hermitian: True" in text


def test_zero_preset(tmp_path):
    text = run(tmp_path, "polmatrix", "--preset", "zero").read_text()
    for name in ("P_E", "P_B", "P"):
        assert not _matrix(text, name).any()


def test_literal_snapshot(tmp_path):
    text = run(tmp_path, "polmatrix", "--E", "1,1j,0", "--B", "0,0,2").read_text()
    np.testing.assert_allclose(_matrix(text, "P_E"), [[1, 1j, 0], [-1j, 1, 0], [0, 0, 0]])
    np.testing.assert_allclose(_matrix(text, "P_B"), np.diag([4, 4, 0]))


def test_dipole_vacuum_preset_trace_decreases(tmp_path):
    text = run(tmp_path, "polmatrix", "--preset", "dipole-vacuum",
               "--kr", "0.5", "--kr", "2.0").read_text()
    traces = [float(l.split("=")[1]) for l in text.splitlines() if "trace =" in l]
    assert len(traces) == 2 and traces[0] > traces[1]


def test_parse_vector():
    np.testing.assert_array_equal(parse_vector("1, 2j, -0.5+1j"), [1, 2j, -0.5 + 1j])


# dynamics -------------------------------------------------------------------

def test_dynamics_columns(tmp_path):
    _, t = read_table(run(tmp_path, "dynamics", "--g", "1", "--t-max", str(2 * math.pi),
                          "--steps", "401", "--eta", "0.5"))
    assert t["t"][0] == 0 and t["rabi_factor"][0] == 0 and t["ww_factor"][0] == 0
    assert t["excited_population"][0] == 1
    assert t["rabi_factor"][100] == pytest.approx(2.0)  # gt = pi/2
    assert t["rabi_factor"].max() == pytest.approx(2.0)
    np.testing.assert_allclose(t["excited_population"], np.cos(t["t"]) ** 2, atol=1e-11)


def test_dynamics_ww_tail(tmp_path):
    _, t = read_table(run(tmp_path, "dynamics", "--t-max", "200", "--eta", "0.5",
                          "--omega-k", "1.3"))
    assert abs(t["ww_factor"][-1] - 1) < 1e-10


def test_dynamics_without_decay_has_no_ww_column(tmp_path):
    _, t = read_table(run(tmp_path, "dynamics", "--steps", "3"))
    assert "ww_factor" not in t


# determinism ----------------------------------------------------------------

@pytest.mark.parametrize("args", [
    ["vacuum", "--steps", "50"],
    ["emission", "--boundary", "free", "--steps", "50"],
    ["polmatrix", "--preset", "dipole-vacuum"],
    ["dynamics", "--eta", "0.3", "--steps", "50"],
])
def test_byte_identical(tmp_path, args):
    a = run(tmp_path, *args, name="a.out").read_bytes()
    b = run(tmp_path, *args, name="b.out").read_bytes()
    assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "multipole_optics", "dynamics", "--steps", "2"],
                         capture_output=True, text=True, check=True).stdout
    assert out.splitlines()[-1].startswith("12.566370614")
