"""Helicity-basis vectors and multipole / plane-wave mode functions.

Conventions
-----------
The helicity unit vectors are ``chi_{+1} = -(e_x + i e_y)/sqrt(2)``,
``chi_0 = e_z`` and ``chi_{-1} = (e_x - i e_y)/sqrt(2)``.  A
:class:`HelicityVector` stores the components ``a_mu = chi_mu . v`` (plain
dot product, no conjugation), so that ``v = sum_mu (-1)^mu a_mu chi_{-mu}``.
This is exactly the pairing used in the vector-potential expansion, hence
the ``mu`` component of a mode field equals ``V_mu`` itself.

Normalisation uses ``2 pi hbar c / volume = 1``:
``gamma_E = 1/sqrt(k (2j+1))`` and ``gamma_M = 1/sqrt(k)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    DomainError,
    clebsch_gordan,
    spherical_bessel_j,
    spherical_hankel1,
    spherical_harmonic,
)

__all__ = [
    "ATOM_CUTOFF",
    "HELICITIES",
    "CutoffError",
    "HelicityVector",
    "ModeIndex",
    "Parity",
    "RadialKind",
    "SpacePoint",
    "chi",
    "helicity_from_cartesian",
    "helicity_unitary",
    "radial_function",
    "mode_function",
    "mode_components",
    "electric_field_mode",
    "magnetic_field_mode",
    "plane_wave_mode",
]

# storage / row order everywhere
HELICITIES = (1, 0, -1)

# default k * r_a for outgoing waves
ATOM_CUTOFF = 1e-3

_SQRT_HALF = math.sqrt(0.5)

_CHI = {
    1: np.array([-_SQRT_HALF, -1j * _SQRT_HALF, 0.0]),
    0: np.array([0.0, 0.0, 1.0], dtype=complex),
    -1: np.array([_SQRT_HALF, -1j * _SQRT_HALF, 0.0]),
}


class CutoffError(DomainError):
    """Outgoing-wave evaluation inside the atom radius."""


def chi(mu: int) -> np.ndarray:
    """Cartesian components of the helicity unit vector ``chi_mu``."""
    return _CHI[mu].copy()


def helicity_unitary() -> np.ndarray:
    """Unitary ``U`` with rows ``chi_mu`` (order +1, 0, -1): ``a = U @ v``."""
    return np.array([_CHI[mu] for mu in HELICITIES])


@dataclass(frozen=True)
class HelicityVector:
    """Complex 3-vector stored by helicity components (``+1, 0, -1``)."""

    plus: complex
    zero: complex
    minus: complex

    def __getitem__(self, mu: int) -> complex:
        return {1: self.plus, 0: self.zero, -1: self.minus}[mu]

    def as_array(self) -> np.ndarray:
        return np.array([self.plus, self.zero, self.minus], dtype=complex)

    def to_cartesian(self) -> np.ndarray:
        return sum((-1) ** mu * self[mu] * _CHI[-mu] for mu in HELICITIES)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.as_array()) ** 2))

    @classmethod
    def from_array(cls, a) -> "HelicityVector":
        a = np.asarray(a, dtype=complex)
        return cls(complex(a[0]), complex(a[1]), complex(a[2]))

    def __add__(self, other: "HelicityVector") -> "HelicityVector":
        return HelicityVector.from_array(self.as_array() + other.as_array())

    def __mul__(self, scalar: complex) -> "HelicityVector":
        return HelicityVector.from_array(scalar * self.as_array())

    __rmul__ = __mul__


def helicity_from_cartesian(v) -> HelicityVector:
    """Helicity components ``a_{+-1} = -+(v_x +- i v_y)/sqrt(2)``, ``a_0 = v_z``."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return HelicityVector.from_array(helicity_unitary() @ v)


class Parity(enum.Enum):
    ELECTRIC = "E"
    MAGNETIC = "M"


class RadialKind(enum.Enum):
    CAVITY = "cavity"      # standing waves, f = j_ell
    OUTGOING = "free"      # outgoing waves, f = h1_ell


@dataclass(frozen=True)
class ModeIndex:
    kind: Parity
    k: float
    j: int
    m: int

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        if self.j < 1:
            raise ValueError(f"multipole order j must be >= 1, got {self.j}")
        if abs(self.m) > self.j:
            raise ValueError(f"|m| <= j violated: j={self.j}, m={self.m}")

    @property
    def gamma(self) -> float:
        if self.kind is Parity.ELECTRIC:
            return 1.0 / math.sqrt(self.k * (2 * self.j + 1))
        return 1.0 / math.sqrt(self.k)

    def partner(self) -> "ModeIndex":
        """Same (k, j, m) with the opposite parity."""
        other = Parity.MAGNETIC if self.kind is Parity.ELECTRIC else Parity.ELECTRIC
        return ModeIndex(other, self.k, self.j, self.m)


@dataclass(frozen=True)
class SpacePoint:
    kr: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if self.kr < 0:
            raise ValueError(f"kr must be >= 0, got {self.kr}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")


def radial_function(ell: int, kr: float, radial: RadialKind,
                    cutoff: float = ATOM_CUTOFF) -> complex:
    if radial is RadialKind.CAVITY:
        return spherical_bessel_j(ell, kr)
    if kr < cutoff:
        raise CutoffError(f"kr = {kr} is inside the atom cutoff {cutoff}")
    return spherical_hankel1(ell, kr)


def _angular_term(ell: int, j: int, m: int, mu: int, theta: float, phi: float) -> complex:
    mm = m - mu
    if ell < 0 or abs(mm) > ell:
        return 0.0
    cg = clebsch_gordan(1, mu, ell, mm, j, m)
    if cg == 0.0:
        return 0.0
    return cg * spherical_harmonic(ell, mm, theta, phi)


def mode_function(mode: ModeIndex, mu: int, p: SpacePoint,
                  radial: RadialKind = RadialKind.CAVITY,
                  cutoff: float = ATOM_CUTOFF) -> complex:
    """Multipole mode function ``V_{lambda k j m mu}`` at ``p``.

    Electric modes mix the ``ell = j + 1`` and ``ell = j - 1`` channels with
    weights ``sqrt(j)`` and ``-sqrt(j + 1)``; magnetic modes use ``ell = j``.
    """
    if mu not in HELICITIES:
        raise ValueError(f"mu must be one of {HELICITIES}, got {mu}")
    j, m = mode.j, mode.m
    th, ph = p.theta, p.phi
    if mode.kind is Parity.MAGNETIC:
        ang = _angular_term(j, j, m, mu, th, ph)
        if ang == 0.0:
            return 0j
        return mode.gamma * radial_function(j, p.kr, radial, cutoff) * ang
    up = _angular_term(j + 1, j, m, mu, th, ph)
    down = _angular_term(j - 1, j, m, mu, th, ph)
    value = 0j
    if up != 0.0:
        value += math.sqrt(j) * radial_function(j + 1, p.kr, radial, cutoff) * up
    if down != 0.0:
        value -= math.sqrt(j + 1) * radial_function(j - 1, p.kr, radial, cutoff) * down
    return mode.gamma * value


def mode_components(mode: ModeIndex, p: SpacePoint,
                    radial: RadialKind = RadialKind.CAVITY,
                    cutoff: float = ATOM_CUTOFF) -> HelicityVector:
    """All three ``V_mu`` of one mode, packed as a :class:`HelicityVector`."""
    return HelicityVector(*(mode_function(mode, mu, p, radial, cutoff) for mu in HELICITIES))


def electric_field_mode(mode: ModeIndex, p: SpacePoint,
                        radial: RadialKind = RadialKind.CAVITY,
                        cutoff: float = ATOM_CUTOFF) -> HelicityVector:
    """Single-photon electric field amplitude of ``mode``.

    ``E = i k sum_mu (-1)^mu chi_{-mu} V_mu``, so the helicity components
    are ``i k V_mu``.  Electric modes use their own ``V_E``; magnetic modes
    use ``V_M``.
    """
    return (1j * mode.k) * mode_components(mode, p, radial, cutoff)


def magnetic_field_mode(mode: ModeIndex, p: SpacePoint,
                        radial: RadialKind = RadialKind.CAVITY,
                        cutoff: float = ATOM_CUTOFF) -> HelicityVector:
    """Single-photon magnetic induction amplitude of ``mode``.

    The parities swap: an electric mode's B is ``-i k V_M`` and a magnetic
    mode's B is ``+i k V_E`` (same k, j, m).
    """
    sign = -1.0 if mode.kind is Parity.ELECTRIC else 1.0
    return (sign * 1j * mode.k) * mode_components(mode.partner(), p, radial, cutoff)


def _transverse_frame(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    theta = math.acos(max(-1.0, min(1.0, direction[2])))
    phi = math.atan2(direction[1], direction[0])
    e1 = np.array([math.cos(theta) * math.cos(phi), math.cos(theta) * math.sin(phi),
                   -math.sin(theta)])
    e2 = np.array([-math.sin(phi), math.cos(phi), 0.0])
    return e1, e2


def plane_wave_mode(direction, mu: int, r, k: float = 1.0) -> HelicityVector:
    """Plane-wave mode vector ``(-1)^mu chi'_{-mu} exp(i k n.r)``.

    ``chi'`` is the helicity basis whose ``chi'_0`` lies along ``direction``.
    The result is expressed in the lab helicity basis; for propagation
    along ``z`` it has the single component ``a_mu = exp(i k z)``.
    """
    if mu == 0:
        raise ValueError("plane waves carry only helicity +1 or -1")
    if mu not in (1, -1):
        raise ValueError(f"mu must be +1 or -1, got {mu}")
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    e1, e2 = _transverse_frame(n)
    chi_local = {1: -(e1 + 1j * e2) * _SQRT_HALF, -1: (e1 - 1j * e2) * _SQRT_HALF}
    vec = (-1) ** mu * chi_local[-mu]
    phase = np.exp(1j * k * float(np.dot(n, np.asarray(r, dtype=float))))
    return helicity_from_cartesian(phase * vec)
