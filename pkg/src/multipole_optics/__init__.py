"""Quantum multipole radiation of a single atom: mode functions, zero-point
energy density and generalized 3x3 polarization matrices."""

__version__ = "0.1.0"

from .specfun import (  # noqa: E402
    DomainError,
    clebsch_gordan,
    sine_integral,
    spherical_bessel_j,
    spherical_hankel1,
    spherical_harmonic,
)
from .field import (  # noqa: E402
    CutoffError,
    HelicityVector,
    ModeIndex,
    Parity,
    RadialKind,
    SpacePoint,
    electric_field_mode,
    helicity_from_cartesian,
    magnetic_field_mode,
    mode_function,
    plane_wave_mode,
)
from .vacuum import (  # noqa: E402
    VacuumScanConfig,
    concentration_radius,
    dof_ratio,
    plane_wave_vacuum_density,
    vacuum_energy_density,
)
from .polarization import (  # noqa: E402
    Basis,
    FieldSnapshot,
    PolarizationMatrix,
    bilinear_R,
    field_tensor,
    phase_differences,
    pol_matrix_electric,
    pol_matrix_magnetic,
    vacuum_polarization,
)
from .atom import (  # noqa: E402
    CouplingParams,
    DecayParams,
    Direction,
    EmissionGeometry,
    coupling_constant,
    dipole_pol_matrix_cavity,
    dipole_pol_matrix_freespace,
    emission_selection_rule,
    evolve_dressed,
    jc_hamiltonian,
    rabi_factor,
    ww_factor,
)
