"""Generalized 3x3 polarization matrices built from the field-strength tensor.

The 4x4 antisymmetric tensor ``F`` carries ``E`` in its first row and ``B``
in the spatial block.  The bilinear ``R = F^H F`` splits into the scalar
``W_E = E^H E``, a Poynting-like vector ``S`` and the 3x3 block
``P = P_E + P_B``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .field import (
    ATOM_CUTOFF,
    HELICITIES,
    HelicityVector,
    ModeIndex,
    RadialKind,
    SpacePoint,
    chi,
    electric_field_mode,
    helicity_from_cartesian,
    magnetic_field_mode,
    plane_wave_mode,
)
from .vacuum import plane_wave_vacuum_density

__all__ = [
    "Basis",
    "BilinearDecomposition",
    "FieldSnapshot",
    "PhaseDifferences",
    "PlaneWaveMode",
    "PolarizationMatrix",
    "HELICITY_SIGNS",
    "bilinear_R",
    "field_dot",
    "field_tensor",
    "helicity_transform",
    "phase_differences",
    "pol_matrix_electric",
    "pol_matrix_magnetic",
    "pol_matrix_total",
    "vacuum_polarization",
]

# (-1)^(mu + nu) over rows/cols ordered (+1, 0, -1)
HELICITY_SIGNS = np.array([[(-1) ** (mu + nu) for nu in HELICITIES] for mu in HELICITIES],
                          dtype=float)


class Basis(enum.Enum):
    CARTESIAN = "cartesian"
    HELICITY = "helicity"


def helicity_transform() -> np.ndarray:
    """Unitary ``W`` with ``P_helicity = W P_cartesian W^H``.

    Rows are ``chi_{-mu}`` for ``mu = +1, 0, -1``.
    """
    return np.array([chi(-mu) for mu in HELICITIES])


@dataclass(frozen=True)
class PolarizationMatrix:
    matrix: np.ndarray
    basis: Basis = Basis.CARTESIAN

    def to(self, basis: Basis) -> "PolarizationMatrix":
        if basis is self.basis:
            return self
        w = helicity_transform()
        if basis is Basis.HELICITY:
            return PolarizationMatrix(w @ self.matrix @ w.conj().T, basis)
        return PolarizationMatrix(w.conj().T @ self.matrix @ w, basis)

    def __add__(self, other: "PolarizationMatrix") -> "PolarizationMatrix":
        return PolarizationMatrix(self.matrix + other.to(self.basis).matrix, self.basis)

    def __mul__(self, scalar: float) -> "PolarizationMatrix":
        return PolarizationMatrix(scalar * self.matrix, self.basis)

    __rmul__ = __mul__

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.linalg.eigvalsh(herm).min())

    def entry(self, mu: int, nu: int) -> complex:
        """Helicity-labelled entry; only meaningful in the helicity basis."""
        return complex(self.matrix[HELICITIES.index(mu), HELICITIES.index(nu)])


@dataclass(frozen=True)
class FieldSnapshot:
    """Cartesian complex amplitudes of E and B at one point."""

    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", _as_cartesian(self.E))
        object.__setattr__(self, "B", _as_cartesian(self.B))


@dataclass(frozen=True)
class BilinearDecomposition:
    W_E: float
    S: np.ndarray
    P: PolarizationMatrix
    R: np.ndarray


class PhaseDifferences(NamedTuple):
    """Wrapped phase differences; ``None`` marks an undefined (zero) component."""

    xy: Optional[float]
    yz: Optional[float]
    zx: Optional[float]

    @property
    def defined(self) -> bool:
        return None not in self


def _as_cartesian(v) -> np.ndarray:
    if isinstance(v, HelicityVector):
        return v.to_cartesian()
    v = np.asarray(v, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected a complex 3-vector, got shape {v.shape}")
    return v


def field_tensor(s: FieldSnapshot) -> np.ndarray:
    Ex, Ey, Ez = s.E
    Bx, By, Bz = s.B
    return np.array([
        [0, Ex, Ey, Ez],
        [-Ex, 0, -Bz, By],
        [-Ey, Bz, 0, -Bx],
        [-Ez, -By, Bx, 0],
    ], dtype=complex)


def bilinear_R(F: np.ndarray) -> BilinearDecomposition:
    """Form ``R = F^H F`` and cut it into ``W_E``, ``S`` and ``P``."""
    F = np.asarray(F, dtype=complex)
    R = F.conj().T @ F
    return BilinearDecomposition(
        W_E=float(R[0, 0].real),
        S=R[0, 1:].copy(),
        P=PolarizationMatrix(R[1:, 1:].copy(), Basis.CARTESIAN),
        R=R,
    )


def pol_matrix_electric(E, basis: Basis = Basis.CARTESIAN) -> PolarizationMatrix:
    """Electric polarization matrix, entries ``conj(E_i) E_j``.

    In the helicity basis the entries are ``(-1)^(mu+nu) conj(E_mu) E_nu``
    with rows ordered ``+1, 0, -1``.
    """
    if basis is Basis.HELICITY:
        a = E.as_array() if isinstance(E, HelicityVector) else \
            helicity_from_cartesian(E).as_array()
        return PolarizationMatrix(HELICITY_SIGNS * np.outer(a.conj(), a), Basis.HELICITY)
    e = _as_cartesian(E)
    return PolarizationMatrix(np.outer(e.conj(), e), Basis.CARTESIAN)


def pol_matrix_magnetic(B, basis: Basis = Basis.CARTESIAN) -> PolarizationMatrix:
    """Magnetic polarization matrix: ``|B|^2`` on the diagonal minus ``B_i conj(B_j)``."""
    b = _as_cartesian(B)
    mat = np.vdot(b, b).real * np.eye(3, dtype=complex) - np.outer(b, b.conj())
    return PolarizationMatrix(mat, Basis.CARTESIAN).to(basis)


def pol_matrix_total(s: FieldSnapshot, basis: Basis = Basis.CARTESIAN) -> PolarizationMatrix:
    return pol_matrix_electric(s.E, basis) + pol_matrix_magnetic(s.B, basis)


def field_dot(E, B) -> complex:
    """Bilinear ``E . B`` (no conjugation).

    For helicity vectors this is the contraction ``sum_mu (-1)^mu E_mu B_{-mu}``.
    """
    if isinstance(E, HelicityVector) and isinstance(B, HelicityVector):
        return sum((-1) ** mu * E[mu] * B[-mu] for mu in HELICITIES)
    return complex(np.dot(_as_cartesian(E), _as_cartesian(B)))


def _wrap(angle: float) -> float:
    wrapped = math.remainder(angle, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def phase_differences(E, atol: float = 0.0) -> PhaseDifferences:
    """Wrapped differences ``arg E_i - arg E_j`` for the pairs xy, yz, zx."""
    e = _as_cartesian(E)
    args = [None if abs(c) <= atol else math.atan2(c.imag, c.real) for c in e]

    def diff(i, j):
        if args[i] is None or args[j] is None:
            return None
        return _wrap(args[i] - args[j])

    return PhaseDifferences(diff(0, 1), diff(1, 2), diff(2, 0))


@dataclass(frozen=True)
class PlaneWaveMode:
    """Plane-wave mode of wavenumber ``k`` along ``direction`` with helicity ``mu``."""

    direction: tuple
    mu: int
    k: float = 1.0

    def __post_init__(self):
        if self.mu not in (1, -1):
            raise ValueError("plane waves carry only helicity +1 or -1")


def _point_to_cartesian(p: SpacePoint) -> np.ndarray:
    st = math.sin(p.theta)
    return p.kr * np.array([st * math.cos(p.phi), st * math.sin(p.phi), math.cos(p.theta)])


def _plane_fields(mode: PlaneWaveMode, p: SpacePoint) -> tuple[HelicityVector, HelicityVector]:
    # kr of the point is measured in units of 1/mode.k
    r = _point_to_cartesian(p) / mode.k
    vec = plane_wave_mode(mode.direction, mode.mu, r, mode.k)
    # |E|^2 = k * (plane-wave level / 2): same per-k units as the multipole modes
    amp = 1j * math.sqrt(mode.k * 0.5 * plane_wave_vacuum_density())
    e = amp * vec
    n = np.asarray(mode.direction, dtype=float)
    n = n / np.linalg.norm(n)
    b = helicity_from_cartesian(np.cross(n, e.to_cartesian()))
    return e, b


ModeLike = Union[ModeIndex, PlaneWaveMode]


def vacuum_polarization(modes: Sequence[ModeLike], p: SpacePoint,
                        radial: RadialKind = RadialKind.CAVITY,
                        part: str = "electric",
                        cutoff: float = ATOM_CUTOFF) -> PolarizationMatrix:
    """Zero-point polarization matrix in the helicity basis.

    The commutator of each mode contributes the c-number dyadic of its
    single-photon amplitudes.  ``part`` selects ``"electric"``,
    ``"magnetic"`` or ``"total"``.
    """
    if part not in ("electric", "magnetic", "total"):
        raise ValueError(f"unknown part {part!r}")
    total = np.zeros((3, 3), dtype=complex)
    for mode in modes:
        if isinstance(mode, PlaneWaveMode):
            e, b = _plane_fields(mode, p)
        else:
            e = electric_field_mode(mode, p, radial, cutoff)
            b = magnetic_field_mode(mode, p, radial, cutoff) if part != "electric" else None
        if part in ("electric", "total"):
            total += pol_matrix_electric(e, Basis.HELICITY).matrix
        if part in ("magnetic", "total"):
            total += pol_matrix_magnetic(b, Basis.HELICITY).matrix
    return PolarizationMatrix(total, Basis.HELICITY)
