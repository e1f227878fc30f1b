import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multipole_optics.field import (
    HelicityVector,
    ModeIndex,
    Parity,
    RadialKind,
    SpacePoint,
    helicity_from_cartesian,
)
from multipole_optics.polarization import (
    Basis,
    FieldSnapshot,
    PlaneWaveMode,
    bilinear_R,
    field_dot,
    field_tensor,
    helicity_transform,
    phase_differences,
    pol_matrix_electric,
    pol_matrix_magnetic,
    pol_matrix_total,
    vacuum_polarization,
)
from multipole_optics.vacuum import (
    VacuumScanConfig,
    plane_wave_vacuum_density,
    vacuum_energy_density,
)

component = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(component, component, component).map(lambda t: np.array(t, dtype=complex))


def closed_form_P(E, B):
    """Entry-by-entry transcription of the electric and magnetic matrices."""
    Ex, Ey, Ez = E
    Bx, By, Bz = B
    c = np.conj
    PE = np.array([[c(Ex) * Ex, c(Ex) * Ey, c(Ex) * Ez],
                   [c(Ey) * Ex, c(Ey) * Ey, c(Ey) * Ez],
                   [c(Ez) * Ex, c(Ez) * Ey, c(Ez) * Ez]])
    PB = np.array([[c(By) * By + c(Bz) * Bz, -c(By) * Bx, -c(Bz) * Bx],
                   [-c(Bx) * By, c(Bx) * Bx + c(Bz) * Bz, -c(Bz) * By],
                   [-c(Bx) * Bz, -c(By) * Bz, c(Bx) * Bx + c(By) * By]])
    return PE, PB


def test_zero_tensor():
    assert not field_tensor(FieldSnapshot(np.zeros(3), np.zeros(3))).any()


def test_tensor_layout_for_ex():
    F = field_tensor(FieldSnapshot([1, 0, 0], [0, 0, 0]))
    expected = np.zeros((4, 4))
    expected[0, 1], expected[1, 0] = 1, -1
    np.testing.assert_array_equal(F, expected)


@settings(max_examples=100, deadline=None)
@given(vec3, vec3)
def test_tensor_antisymmetric(E, B):
    F = field_tensor(FieldSnapshot(E, B))
    assert not (F + F.T).any()


@settings(max_examples=200, deadline=None)
@given(vec3, vec3)
def test_bilinear_blocks_match_closed_forms(E, B):
    dec = bilinear_R(field_tensor(FieldSnapshot(E, B)))
    PE, PB = closed_form_P(E, B)
    np.testing.assert_allclose(dec.P.matrix, PE + PB, atol=1e-12 * (1 + np.abs(PE + PB).max()))
    np.testing.assert_allclose(pol_matrix_electric(E).matrix, PE, atol=1e-12)
    np.testing.assert_allclose(pol_matrix_magnetic(B).matrix, PB, atol=1e-12)
    assert dec.W_E == pytest.approx(np.vdot(E, E).real, abs=1e-12)


def test_electric_free_snapshot():
    dec = bilinear_R(field_tensor(FieldSnapshot(np.zeros(3), [1, 2j, 0.5])))
    assert dec.W_E == 0.0
    np.testing.assert_allclose(dec.P.matrix, pol_matrix_magnetic([1, 2j, 0.5]).matrix)


def test_plane_wave_reduction():
    E = np.array([0.6, 0.3 + 0.7j, 0])
    B = np.array([-E[1], E[0], 0])
    dec = bilinear_R(field_tensor(FieldSnapshot(E, B)))
    conventional = np.outer(E[:2].conj(), E[:2])
    PE = pol_matrix_electric(E).matrix
    PB = pol_matrix_magnetic(B).matrix
    assert not PE[2].any() and not PE[:, 2].any()
    np.testing.assert_allclose(PB[:2, :2], conventional)
    assert PB[2, 2] == pytest.approx(np.vdot(E, E).real)
    np.testing.assert_allclose(dec.P.matrix[:2, :2], 2 * conventional)
    assert dec.P.matrix[2, 2] == pytest.approx(np.vdot(E, E).real)


def test_electric_type_magnetic_block():
    B = np.array([0.2 + 0.1j, -0.7j, 0])
    PB = pol_matrix_magnetic(B).matrix
    c = np.conj
    expected = np.array([[c(B[1]) * B[1], -c(B[1]) * B[0], 0],
                         [-c(B[0]) * B[1], c(B[0]) * B[0], 0],
                         [0, 0, np.vdot(B, B)]])
    np.testing.assert_allclose(PB, expected)


def test_magnetic_z_and_trace():
    np.testing.assert_allclose(pol_matrix_magnetic([0, 0, 1]).matrix, np.diag([1, 1, 0]))
    B = np.array([1 + 1j, 0.5, -2j])
    assert pol_matrix_magnetic(B).trace == pytest.approx(2 * np.vdot(B, B).real)


def test_pure_positive_helicity_single_entry():
    P = pol_matrix_electric(HelicityVector(0.8j, 0, 0), Basis.HELICITY).matrix
    assert P[0, 0] == pytest.approx(0.64)
    P[0, 0] = 0
    assert not P.any()


def test_circular_cartesian():
    P = pol_matrix_electric(np.array([1, 1j, 0]) / math.sqrt(2)).matrix
    np.testing.assert_allclose(P, [[0.5, 0.5j, 0], [-0.5j, 0.5, 0], [0, 0, 0]], atol=1e-15)


def test_helicity_sign_pattern():
    a = np.array([0.3 + 0.2j, -0.5j, 1.1])
    P = pol_matrix_electric(HelicityVector.from_array(a), Basis.HELICITY).matrix
    assert P[0, 1] == pytest.approx(-np.conj(a[0]) * a[1])
    assert P[1, 2] == pytest.approx(-np.conj(a[1]) * a[2])
    assert P[0, 2] == pytest.approx(np.conj(a[0]) * a[2])


@settings(max_examples=100, deadline=None)
@given(vec3)
def test_basis_covariance_and_trace(E):
    cart = pol_matrix_electric(E)
    hel = pol_matrix_electric(E, Basis.HELICITY)
    W = helicity_transform()
    np.testing.assert_allclose(hel.matrix, W @ cart.matrix @ W.conj().T, atol=1e-12)
    np.testing.assert_allclose(hel.to(Basis.CARTESIAN).matrix, cart.matrix, atol=1e-12)
    assert hel.trace == pytest.approx(cart.trace, abs=1e-12)
    assert cart.trace == pytest.approx(np.vdot(E, E).real, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(vec3, vec3)
def test_hermitian_psd(E, B):
    for P in (pol_matrix_electric(E), pol_matrix_magnetic(B),
              pol_matrix_total(FieldSnapshot(E, B))):
        assert P.hermiticity_error() <= 1e-12
        assert P.min_eigenvalue() >= -1e-12 * (1 + np.abs(P.matrix).max())
        assert np.all(np.diag(P.matrix).real >= -1e-12)


def test_phase_differences_real_positive():
    assert tuple(phase_differences([1.0, 2.0, 3.0])) == (0.0, 0.0, 0.0)


def test_phase_differences_example():
    d = phase_differences([1, 1j, -1])
    assert d.xy == pytest.approx(-math.pi / 2)
    assert d.yz == pytest.approx(math.pi / 2 - math.pi)
    assert d.zx == pytest.approx(math.pi)


def test_phase_differences_flag_zero_components():
    d = phase_differences([1, 0, 1j])
    assert d.xy is None and d.yz is None and d.zx is not None
    assert not d.defined


nonzero = st.complex_numbers(min_magnitude=1e-3, max_magnitude=5, allow_nan=False,
                             allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.tuples(nonzero, nonzero, nonzero))
def test_phase_sum_wraps_to_zero(E):
    d = phase_differences(np.array(E))
    total = math.remainder(d.xy + d.yz + d.zx, 2 * math.pi)
    assert abs(total) < 1e-12


def test_field_dot_helicity_matches_cartesian():
    rng = np.random.default_rng(3)
    e = rng.normal(size=3) + 1j * rng.normal(size=3)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    value = field_dot(helicity_from_cartesian(e), helicity_from_cartesian(b))
    assert value == pytest.approx(np.dot(e, b))


def test_vacuum_empty():
    assert not vacuum_polarization([], SpacePoint(1.0, 0.5)).matrix.any()


def test_vacuum_plane_waves_uniform():
    modes = [PlaneWaveMode((0.3, 0.1, 0.9), mu) for mu in (1, -1)]
    a = vacuum_polarization(modes, SpacePoint(0.3, 0.2, 0.1), part="total")
    b = vacuum_polarization(modes, SpacePoint(17.0, 2.0, -1.0), part="total")
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-12)
    e_only = vacuum_polarization(modes, SpacePoint(5.0, 1.0, 0.0))
    assert e_only.trace == pytest.approx(plane_wave_vacuum_density())


DIPOLES = [ModeIndex(Parity.ELECTRIC, 1.0, 1, m) for m in (1, 0, -1)]


def test_dipole_vacuum_concentrates():
    traces = [vacuum_polarization(DIPOLES, SpacePoint(kr, 1.0, 0.2)).trace
              for kr in np.linspace(0.05, 20, 80)]
    plane = vacuum_polarization([PlaneWaveMode((0, 0, 1), mu) for mu in (1, -1)],
                                SpacePoint(0.05, 1.0, 0.2)).trace
    assert traces[0] > plane
    assert traces[-1] < 0.05 * traces[0]
    assert traces[0] == max(traces)


@pytest.mark.parametrize("kr", [0.2, 1.5, 6.0])
def test_vacuum_trace_matches_energy_density(kr):
    k = 2.0
    modes = [ModeIndex(Parity.ELECTRIC, k, j, m) for j in (1, 2) for m in range(-j, j + 1)]
    P = vacuum_polarization(modes, SpacePoint(kr, 0.8, 0.3))
    cfg = VacuumScanConfig(k=k, j_max=2, include_both_parities=False)
    assert P.trace / k == pytest.approx(vacuum_energy_density(cfg, kr), rel=1e-9)


@pytest.mark.parametrize("part", ["electric", "magnetic", "total"])
@pytest.mark.parametrize("radial", [RadialKind.CAVITY, RadialKind.OUTGOING])
def test_vacuum_hermitian_psd(part, radial):
    modes = DIPOLES + [ModeIndex(Parity.MAGNETIC, 1.0, 2, m) for m in range(-2, 3)]
    P = vacuum_polarization(modes, SpacePoint(1.3, 0.4, 2.0), radial, part)
    assert P.hermiticity_error() <= 1e-12
    assert P.min_eigenvalue() >= -1e-12


def test_vacuum_rejects_unknown_part():
    with pytest.raises(ValueError):
        vacuum_polarization(DIPOLES, SpacePoint(1.0, 0.3), part="both")
