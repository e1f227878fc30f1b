"""Zero-point energy density of the multipole field at a single wavenumber.

Densities are returned in units of ``hbar omega / (4 volume)`` per mode, the
natural unit of the angular/radial bracket.  In these units the position-
independent plane-wave level is ``1 / (3 pi)``: it is fixed so that the
electric-dipole density at the source (three modes) and the plane-wave
level (two polarizations) stand in the ratio 3 : 2 of their vacuum quanta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .field import ModeIndex, Parity, SpacePoint, mode_function, HELICITIES
from .specfun import sine_integral, spherical_bessel_j

__all__ = [
    "NoCrossingError",
    "QUANTA_PER_UNIT",
    "VacuumScanConfig",
    "concentration_radius",
    "dof_ratio",
    "magnetic_sum_rule_residual",
    "plane_wave_vacuum_density",
    "shell_densities",
    "vacuum_energy_density",
    "vacuum_energy_density_at",
]

# multiply a density by this to count vacuum quanta (1/2 per mode)
QUANTA_PER_UNIT = 3 * math.pi


class NoCrossingError(RuntimeError):
    """The density never falls below the baseline on the scan grid."""


def _default_grid() -> tuple:
    return tuple(np.linspace(0.01, 20.0, 2000))


@dataclass(frozen=True)
class VacuumScanConfig:
    k: float = 1.0
    j_max: int = 10
    kr_grid: Sequence[float] = field(default_factory=_default_grid)
    include_both_parities: bool = True

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("k must be positive")
        if self.j_max < 1:
            raise ValueError("j_max must be >= 1")
        grid = np.asarray(self.kr_grid, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ValueError("kr_grid needs at least two points")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ValueError("kr_grid must be strictly increasing and positive")
        object.__setattr__(self, "kr_grid", tuple(float(x) for x in grid))


def shell_densities(j: int, kr: float) -> tuple[float, float]:
    """(electric, magnetic) density of the j-shell after the m, mu, angle sums.

    The cross term between the ``j+1`` and ``j-1`` channels cancels in the
    sum over ``m`` and ``mu``, leaving
    ``[j j_{j+1}^2 + (j+1) j_{j-1}^2] / 4pi`` and ``(2j+1) j_j^2 / 4pi``.
    """
    up = spherical_bessel_j(j + 1, kr)
    down = spherical_bessel_j(j - 1, kr)
    mid = spherical_bessel_j(j, kr)
    four_pi = 4 * math.pi
    return (j * up * up + (j + 1) * down * down) / four_pi, (2 * j + 1) * mid * mid / four_pi


def vacuum_energy_density(cfg: VacuumScanConfig, kr: float) -> float:
    """Angle-independent zero-point density, summed over j <= j_max."""
    if kr <= 0:
        raise ValueError(f"kr must be positive, got {kr}")
    terms = []
    for j in range(1, cfg.j_max + 1):
        electric, magnetic = shell_densities(j, kr)
        terms.append(electric)
        if cfg.include_both_parities:
            terms.append(magnetic)
    return math.fsum(terms)


def vacuum_energy_density_at(cfg: VacuumScanConfig, p: SpacePoint) -> float:
    """Same density by explicit summation of ``k |V|^2`` over j, m, mu at a point.

    Independent of the closed radial form; used to confirm the angular
    independence.
    """
    if p.kr <= 0:
        raise ValueError(f"kr must be positive, got {p.kr}")
    kinds = (Parity.ELECTRIC, Parity.MAGNETIC) if cfg.include_both_parities \
        else (Parity.ELECTRIC,)
    terms = []
    for j in range(1, cfg.j_max + 1):
        for m in range(-j, j + 1):
            for mu in HELICITIES:
                for kind in kinds:
                    v = mode_function(ModeIndex(kind, cfg.k, j, m), mu, p)
                    terms.append(cfg.k * abs(v) ** 2)
    return math.fsum(terms)


def plane_wave_vacuum_density() -> float:
    """Uniform plane-wave level in the same units (two polarizations)."""
    return 1.0 / (3 * math.pi)


def dof_ratio(j_max: int) -> Fraction:
    """Vacuum-quanta ratio multipole (j = 1..j_max, one parity) : plane wave."""
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    return Fraction(sum(2 * j + 1 for j in range(1, j_max + 1)), 2)


def concentration_radius(cfg: VacuumScanConfig, baseline: Optional[float] = None,
                         tol: float = 1e-4) -> float:
    """First kr on the grid where the density drops below the plane-wave level.

    The bracketing grid interval is refined by Brent's method to ``tol``.
    """
    level = plane_wave_vacuum_density() if baseline is None else baseline
    grid = cfg.kr_grid
    previous = vacuum_energy_density(cfg, grid[0]) - level
    for lo, hi in zip(grid[:-1], grid[1:]):
        current = vacuum_energy_density(cfg, hi) - level
        if previous > 0 >= current:
            return brentq(lambda x: vacuum_energy_density(cfg, x) - level, lo, hi, xtol=tol)
        previous = current
    raise NoCrossingError(
        f"density never crosses {level:.6g} on kr in [{grid[0]}, {grid[-1]}]"
    )


def magnetic_sum_rule_residual(z: float, j_max: int = 40) -> float:
    """Residual of the magnetic-channel partial sum against ``Si(2z) / 2z``.

    Per-mode magnetic shells ``4pi/(2j+1) * rho_M,j = j_j(z)^2`` plus the
    ``j_0`` term sum to ``(pi / 2z) sum_l J_{l+1/2}(z)^2 -> Si(2z) / (2z)``.
    """
    total = [spherical_bessel_j(0, z) ** 2]
    for j in range(1, j_max + 1):
        _, magnetic = shell_densities(j, z)
        total.append(magnetic * 4 * math.pi / (2 * j + 1))
    return math.fsum(total) - sine_integral(2 * z) / (2 * z)
