"""Degenerate dipole Jaynes-Cummings model and single-atom emission matrices.

The atom has a triply degenerate excited level ``|e_m>`` (m = +1, 0, -1)
coupled to the ground state ``|g>`` through three independent photon
channels.  Emission polarization matrices are given in the helicity basis
in units of ``hbar omega / (3 volume)``, with ``c = 1`` throughout.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .field import (
    ATOM_CUTOFF,
    HELICITIES,
    CutoffError,
    ModeIndex,
    Parity,
    RadialKind,
    SpacePoint,
    electric_field_mode,
    mode_function,
)
from .polarization import Basis, PolarizationMatrix, pol_matrix_electric
from .specfun import spherical_bessel_j

__all__ = [
    "ATOM_LEVELS",
    "CouplingParams",
    "DecayParams",
    "Direction",
    "EmissionGeometry",
    "JCHamiltonian",
    "coupling_constant",
    "cross_term_phase",
    "dipole_pol_matrix",
    "dipole_pol_matrix_cavity",
    "dipole_pol_matrix_freespace",
    "emission_selection_rule",
    "equatorial_matrix_from_radials",
    "evolve_dressed",
    "intensity_unit",
    "jc_hamiltonian",
    "polar_matrix_from_radials",
    "rabi_factor",
    "selection_ratio",
    "ww_factor",
]

ATOM_LEVELS = ("g", 1, 0, -1)


@dataclass(frozen=True)
class CouplingParams:
    k0: float
    k: float
    D: float

    def __post_init__(self):
        if self.k0 <= 0 or self.k <= 0:
            raise ValueError("k0 and k must be positive")


def coupling_constant(p: CouplingParams, m: int | None = None) -> float:
    """``g = k0 / sqrt(k) * D`` (c = 1); the same for every ``m``."""
    if m is not None and m not in HELICITIES:
        raise ValueError(f"m must be one of {HELICITIES}, got {m}")
    return p.k0 / math.sqrt(p.k) * p.D


@dataclass(frozen=True)
class JCHamiltonian:
    """Hamiltonian matrix on ``atom (g, e+1, e0, e-1) x Fock^3`` with labels."""

    matrix: np.ndarray
    labels: tuple
    n_max: int

    def index(self, atom, photons=(0, 0, 0)) -> int:
        return self.labels.index((atom, tuple(photons)))

    def single_excitation_block(self, m: int) -> np.ndarray:
        """2x2 block on ``|e_m; 0>, |g; 1_m>``."""
        one = tuple(int(mu == m) for mu in HELICITIES)
        idx = [self.index(m), self.index("g", one)]
        return self.matrix[np.ix_(idx, idx)]


def jc_hamiltonian(g: float, omega: float, omega0: float, n_max: int = 1) -> JCHamiltonian:
    """``H/hbar = sum_m [omega a_m^+ a_m + omega0 R_mm + g (R_mg a_m + a_m^+ R_gm)]``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    nf = n_max + 1
    a = np.diag(np.sqrt(np.arange(1, nf)), 1)
    eye_f = np.eye(nf)

    def photon_op(op, channel):
        ops = [op if c == channel else eye_f for c in range(3)]
        return np.kron(np.kron(ops[0], ops[1]), ops[2])

    def atom_op(row, col):
        op = np.zeros((4, 4))
        op[ATOM_LEVELS.index(row), ATOM_LEVELS.index(col)] = 1.0
        return op

    eye_photons = np.eye(nf ** 3)
    dim = 4 * nf ** 3
    H = np.zeros((dim, dim))
    for c, m in enumerate(HELICITIES):
        am = photon_op(a, c)
        H += omega * np.kron(np.eye(4), am.T @ am)
        H += omega0 * np.kron(atom_op(m, m), eye_photons)
        H += g * (np.kron(atom_op(m, "g"), am) + np.kron(atom_op("g", m), am.T))
    labels = tuple(
        (level, photons)
        for level in ATOM_LEVELS
        for photons in itertools.product(range(nf), repeat=3)
    )
    return JCHamiltonian(H, labels, n_max)


def evolve_dressed(g: float, t: float, m: int) -> np.ndarray:
    """Resonant amplitudes ``(<e_m;0|psi>, <g;1_m|psi>) = (cos gt, -i sin gt)``.

    Interaction picture: the common phase ``exp(-i omega0 t)`` is dropped.
    """
    if m not in HELICITIES:
        raise ValueError(f"m must be one of {HELICITIES}, got {m}")
    return 0.5 * sum(
        np.exp(-1j * ell * g * t) * np.array([1.0, ell]) for ell in (1, -1)
    )


def rabi_factor(g: float, t: float) -> float:
    return 1.0 - math.cos(2 * g * t)


@dataclass(frozen=True)
class DecayParams:
    eta: float
    delta_omega: float = 0.0
    omega_k: float = 1.0
    omega_0: float = 1.0

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError("decay rate eta must be >= 0")


def ww_factor(p: DecayParams, t: float) -> float:
    """Weisskopf-Wigner envelope ``1 - 2 e^{-eta t/2} cos(detuning t) + e^{-eta t}``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    detuning = p.omega_k - p.omega_0 - p.delta_omega
    half = math.exp(-0.5 * p.eta * t)
    return 1.0 - 2.0 * half * math.cos(detuning * t) + half * half


class Direction(enum.Enum):
    POLAR = "polar"
    EQUATORIAL = "equatorial"

    @property
    def theta(self) -> float:
        return 0.0 if self is Direction.POLAR else math.pi / 2


@dataclass(frozen=True)
class EmissionGeometry:
    m_initial: int = 1
    direction: Direction = Direction.EQUATORIAL
    phi: float = 0.0
    kr: float = 1.0
    boundary: RadialKind = RadialKind.CAVITY
    cutoff: float = ATOM_CUTOFF

    def __post_init__(self):
        if self.m_initial not in HELICITIES:
            raise ValueError(f"m_initial must be one of {HELICITIES}")
        if self.kr <= 0:
            raise ValueError("kr must be positive")
        if self.boundary is RadialKind.OUTGOING and self.kr < self.cutoff:
            raise CutoffError(f"kr = {self.kr} below atom cutoff {self.cutoff}")

    @property
    def point(self) -> SpacePoint:
        return SpacePoint(self.kr, self.direction.theta, self.phi)


def intensity_unit(k: float = 1.0) -> float:
    """``hbar omega / 3V`` expressed in mode-function units (2 pi hbar c / V = 1)."""
    return k / (6 * math.pi)


def dipole_pol_matrix(geom: EmissionGeometry, k: float = 1.0) -> PolarizationMatrix:
    """Single-photon P_E of the electric dipole mode ``m_initial`` at ``geom``.

    Built from the field amplitudes, valid for any direction and ``m``.
    """
    mode = ModeIndex(Parity.ELECTRIC, k, 1, geom.m_initial)
    e = electric_field_mode(mode, geom.point, geom.boundary, geom.cutoff)
    return pol_matrix_electric(e, Basis.HELICITY) * (1.0 / intensity_unit(k))


def equatorial_matrix_from_radials(j0: float, j2: float, jm1: float, jm3: float,
                                   phi: float) -> np.ndarray:
    """Equatorial m = +1 matrix from the real and imaginary radial channels.

    ``(j0, j2)`` are the standing-wave parts and ``(jm1, jm3)`` the
    ``j_{-1}, j_{-3}`` parts of the outgoing wave; zero the latter for the
    cavity.
    """
    gamma_p = 0.25 * j2 + j0
    gamma_m = 0.25 * jm3 + jm1
    cross = -0.75 * complex(j2 * gamma_p + jm3 * gamma_m,
                            j2 * gamma_m - jm3 * gamma_p) * np.exp(2j * phi)
    mat = np.zeros((3, 3), dtype=complex)
    mat[0, 0] = gamma_p ** 2 + gamma_m ** 2
    mat[2, 2] = 9.0 / 16.0 * (j2 ** 2 + jm3 ** 2)
    mat[0, 2] = cross
    mat[2, 0] = cross.conjugate()
    return mat


def polar_matrix_from_radials(j0: float, j2: float, jm1: float, jm3: float) -> np.ndarray:
    mat = np.zeros((3, 3), dtype=complex)
    mat[0, 0] = (0.5 * j2 - j0) ** 2 + (0.5 * jm3 - jm1) ** 2
    return mat


def _radials(kr: float, outgoing: bool) -> tuple[float, float, float, float]:
    j0 = spherical_bessel_j(0, kr)
    j2 = spherical_bessel_j(2, kr)
    if not outgoing:
        return j0, j2, 0.0, 0.0
    return j0, j2, spherical_bessel_j(-1, kr), spherical_bessel_j(-3, kr)


def _closed_form(geom: EmissionGeometry, outgoing: bool) -> PolarizationMatrix:
    radials = _radials(geom.kr, outgoing)
    if geom.direction is Direction.POLAR:
        mat = polar_matrix_from_radials(*radials)
    else:
        mat = equatorial_matrix_from_radials(*radials, geom.phi)
    return PolarizationMatrix(mat, Basis.HELICITY)


def _mirror(p: PolarizationMatrix) -> PolarizationMatrix:
    # m -> -m: P_{-m}[-mu, -nu] = (-1)^(mu+nu) conj(P_m[mu, nu]) for standing waves
    signs = np.array([[(-1) ** (mu + nu) for nu in HELICITIES] for mu in HELICITIES])
    flipped = (signs * p.matrix.conj())[::-1, ::-1]
    return PolarizationMatrix(flipped.copy(), Basis.HELICITY)


def dipole_pol_matrix_cavity(geom: EmissionGeometry) -> PolarizationMatrix:
    """Closed-form standing-wave emission matrix (helicity basis, hbar omega/3V = 1).

    ``m = +1`` uses the analytic entries, ``m = -1`` the mirror relabelling
    ``mu -> -mu`` of the conjugate, and ``m = 0`` the dyadic assembly.
    """
    if geom.boundary is not RadialKind.CAVITY:
        raise ValueError("dipole_pol_matrix_cavity needs boundary = CAVITY")
    if geom.m_initial == 0:
        return dipole_pol_matrix(geom)
    plus = _closed_form(EmissionGeometry(1, geom.direction, geom.phi, geom.kr), False)
    return plus if geom.m_initial == 1 else _mirror(plus)


def dipole_pol_matrix_freespace(geom: EmissionGeometry) -> PolarizationMatrix:
    """Closed-form outgoing-wave emission matrix for ``m = +1``.

    Other ``m`` fall back to the dyadic assembly.
    """
    if geom.boundary is not RadialKind.OUTGOING:
        raise ValueError("dipole_pol_matrix_freespace needs boundary = OUTGOING")
    if geom.m_initial != 1:
        return dipole_pol_matrix(geom)
    return _closed_form(geom, True)


def cross_term_phase(kr: float, phi: float, boundary: RadialKind) -> float:
    """Phase ``2 phi + arctan(...)`` of the equatorial (+, -) element.

    The element is written as ``-(3/4) |...| exp(i phase)``; the arctangent
    is taken on its principal branch, so the phase is defined modulo pi.
    Standing waves give exactly ``2 phi``.
    """
    j0, j2, jm1, jm3 = _radials(kr, boundary is RadialKind.OUTGOING)
    gamma_p = 0.25 * j2 + j0
    gamma_m = 0.25 * jm3 + jm1
    num = gamma_m * j2 - gamma_p * jm3
    den = gamma_p * j2 + gamma_m * jm3
    if den == 0.0:
        return 2 * phi + math.copysign(math.pi / 2, num)
    return 2 * phi + math.atan(num / den)


def selection_ratio(m: int, kr: float = 1e-3, theta: float = 0.7, phi: float = 0.3) -> float:
    """Largest ``|V_{mu}| / |V_{m}|`` over ``mu != m`` for the dipole mode ``m``."""
    p = SpacePoint(kr, theta, phi)
    mode = ModeIndex(Parity.ELECTRIC, 1.0, 1, m)
    values = {mu: abs(mode_function(mode, mu, p)) for mu in HELICITIES}
    return max(values[mu] for mu in HELICITIES if mu != m) / values[m]


def emission_selection_rule(m: int, kr: float = 1e-3) -> int:
    """Helicity carried near the source by the photon of the ``|1,m> -> |0,0>`` line."""
    if m not in HELICITIES:
        raise ValueError(f"m must be one of {HELICITIES}, got {m}")
    p = SpacePoint(kr, 0.7, 0.3)
    mode = ModeIndex(Parity.ELECTRIC, 1.0, 1, m)
    return max(HELICITIES, key=lambda mu: abs(mode_function(mode, mu, p)))
