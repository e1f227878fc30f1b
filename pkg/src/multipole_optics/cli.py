"""Command-line scans writing CSV tables (and matrix dumps for ``polmatrix``)."""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from .atom import (
    DecayParams,
    Direction,
    EmissionGeometry,
    cross_term_phase,
    dipole_pol_matrix_cavity,
    dipole_pol_matrix_freespace,
    evolve_dressed,
    rabi_factor,
    ww_factor,
)
from .field import ATOM_CUTOFF, ModeIndex, Parity, RadialKind, SpacePoint
from .polarization import (
    Basis,
    FieldSnapshot,
    PlaneWaveMode,
    PolarizationMatrix,
    bilinear_R,
    field_tensor,
    pol_matrix_electric,
    pol_matrix_magnetic,
    vacuum_polarization,
)
from .vacuum import (
    NoCrossingError,
    VacuumScanConfig,
    concentration_radius,
    plane_wave_vacuum_density,
    shell_densities,
    vacuum_energy_density,
)

SUBCOMMANDS = ("vacuum", "emission", "polmatrix", "dynamics")
_BOUNDARIES = {"cavity": RadialKind.CAVITY, "free": RadialKind.OUTGOING}


class CLIError(Exception):
    """User-facing error; reported on stderr with a nonzero exit code."""


@dataclass(frozen=True)
class ScanSpec:
    subcommand: str
    kr_min: float = 0.01
    kr_max: float = 20.0
    kr_steps: int = 400
    j_max: int = 10
    m_initial: int = 1
    direction: str = "equatorial"
    boundary: str = "cavity"
    phi: float = 0.0
    log_grid: bool = False
    g: float = 1.0
    t_max: float = 4 * math.pi
    eta: Optional[float] = None
    delta_omega: float = 0.0
    omega_k: float = 1.0
    omega0: float = 1.0
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise CLIError(f"unknown subcommand {self.subcommand!r}")
        if self.kr_steps < 2:
            raise CLIError("--steps must be >= 2")
        if self.subcommand in ("vacuum", "emission"):
            if not self.kr_min > 0:
                raise CLIError(f"--kr-min must be > 0, got {self.kr_min}")
            if not self.kr_max > self.kr_min:
                raise CLIError("--kr-max must exceed --kr-min")
        if self.subcommand == "dynamics" and not self.t_max > 0:
            raise CLIError("--t-max must be > 0")

    def kr_grid(self) -> np.ndarray:
        if self.log_grid:
            return np.geomspace(self.kr_min, self.kr_max, self.kr_steps)
        return np.linspace(self.kr_min, self.kr_max, self.kr_steps)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return f"{value:.12g}"


_ECHOED = {
    "vacuum": ("kr_min", "kr_max", "kr_steps", "log_grid", "j_max"),
    "emission": ("kr_min", "kr_max", "kr_steps", "log_grid", "m_initial", "direction",
                 "boundary", "phi"),
    "dynamics": ("g", "t_max", "kr_steps", "m_initial", "eta", "delta_omega", "omega_k",
                 "omega0"),
}


def _header(spec: ScanSpec, extra: Sequence[str] = ()) -> list[str]:
    lines = [f"# multipole_optics {__version__} {spec.subcommand}"]
    params = asdict(spec)
    for key in _ECHOED[spec.subcommand]:
        lines.append(f"# {key} = {params[key]}")
    lines.extend(f"# {line}" for line in extra)
    return lines


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc}") from exc


def _table(spec: ScanSpec, columns: Sequence[str], rows: Iterable[Sequence],
           extra_header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in _header(spec, extra_header):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def run_vacuum_scan(spec: ScanSpec) -> str:
    """Table of kr, multipole vacuum density and plane-wave baseline."""
    grid = spec.kr_grid()
    cfg = VacuumScanConfig(j_max=spec.j_max, kr_grid=tuple(grid))
    baseline = plane_wave_vacuum_density()
    densities = [vacuum_energy_density(cfg, kr) for kr in grid]
    last_shell = max(sum(shell_densities(spec.j_max, kr)) / d for kr, d in zip(grid, densities))
    try:
        radius = f"{concentration_radius(cfg):.12g}"
    except NoCrossingError:
        radius = "none on grid"
    extra = [
        "units = hbar*omega/(4V) per mode",
        f"last shell j={spec.j_max} max relative contribution = {last_shell:.3e}",
        f"concentration radius kr0 = {radius}",
    ]
    rows = ((kr, d, baseline) for kr, d in zip(grid, densities))
    text = _table(spec, ("kr", "multipole_density", "plane_wave_baseline"), rows, extra)
    _emit(text, spec.output_path)
    return text


def run_emission_scan(spec: ScanSpec) -> str:
    """Table of the m-initial dipole emission matrix entries vs kr."""
    boundary = _BOUNDARIES[spec.boundary]
    direction = Direction(spec.direction)
    grid = spec.kr_grid()
    if boundary is RadialKind.OUTGOING and grid[0] < ATOM_CUTOFF:
        raise CLIError(f"free-space scan needs kr >= atom cutoff {ATOM_CUTOFF}")
    build = dipole_pol_matrix_cavity if boundary is RadialKind.CAVITY \
        else dipole_pol_matrix_freespace
    rows = []
    for kr in grid:
        geom = EmissionGeometry(spec.m_initial, direction, spec.phi, float(kr), boundary)
        mat = build(geom)
        cross = mat.entry(1, -1)
        if direction is Direction.EQUATORIAL and spec.m_initial == 1:
            phase = cross_term_phase(float(kr), spec.phi, boundary)
        elif abs(cross) > 0:
            phase = math.atan2(cross.imag, cross.real)
        else:
            phase = float("nan")
        rows.append((kr, mat.entry(1, 1).real, mat.entry(-1, -1).real, phase,
                     cross.real, cross.imag))
    columns = ("kr", "I_plus", "I_minus", "phase_of_cross_term", "cross_re", "cross_im")
    text = _table(spec, columns, rows, ["units = hbar*omega/(3V)"])
    _emit(text, spec.output_path)
    return text


def run_dynamics(spec: ScanSpec) -> str:
    """Time factors on a uniform grid ``t in [0, t_max]``."""
    times = np.linspace(0.0, spec.t_max, spec.kr_steps)
    decay = None
    if spec.eta is not None:
        decay = DecayParams(spec.eta, spec.delta_omega, spec.omega_k, spec.omega0)
    columns = ["t", "rabi_factor"]
    if decay is not None:
        columns.append("ww_factor")
    columns.append("excited_population")
    rows = []
    for t in times:
        row = [t, rabi_factor(spec.g, t)]
        if decay is not None:
            row.append(ww_factor(decay, t))
        row.append(abs(evolve_dressed(spec.g, t, spec.m_initial)[0]) ** 2)
        rows.append(row)
    text = _table(spec, columns, rows)
    _emit(text, spec.output_path)
    return text


def parse_vector(text: str) -> np.ndarray:
    """Parse ``"1,1j,0"`` (Python complex literals) into a complex 3-vector."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise CLIError(f"expected three comma-separated components, got {text!r}")
    try:
        return np.array([complex(p.replace(" ", "")) for p in parts])
    except ValueError as exc:
        raise CLIError(f"malformed component in {text!r}") from exc


def _format_matrix(name: str, p: PolarizationMatrix) -> list[str]:
    lines = [f"{name} [{p.basis.value}]"]
    for row in p.matrix:
        lines.append("  " + "  ".join(f"{c.real:+.12g}{c.imag:+.12g}j" for c in row))
    lines.append(f"  hermitian: {p.hermiticity_error() <= 1e-12} "
                 f"(max |P - P^H| = {p.hermiticity_error():.3e})")
    return lines


def run_polmatrix(spec: ScanSpec, E=None, B=None, preset: Optional[str] = None,
                  kr_values: Sequence[float] = (0.5, 2.0), basis: str = "cartesian") -> str:
    """Dump P_E, P_B, P for a snapshot, or P_vac for a preset mode set."""
    lines = [f"# multipole_optics {__version__} polmatrix preset={preset}"]
    target = Basis(basis)
    if preset in (None, "plane-wave", "zero"):
        if preset == "plane-wave":
            E = np.array([1.0, 1j, 0.0]) / math.sqrt(2)
            B = np.cross([0.0, 0.0, 1.0], E)
        elif preset == "zero":
            E = B = np.zeros(3)
        if E is None:
            raise CLIError("polmatrix needs --E/--B or --preset")
        snap = FieldSnapshot(E, np.zeros(3) if B is None else B)
        dec = bilinear_R(field_tensor(snap))
        lines.append(f"W_E = {dec.W_E:.12g}")
        lines.append("S = " + "  ".join(f"{c.real:+.12g}{c.imag:+.12g}j" for c in dec.S))
        lines += _format_matrix("P_E", pol_matrix_electric(snap.E).to(target))
        lines += _format_matrix("P_B", pol_matrix_magnetic(snap.B).to(target))
        lines += _format_matrix("P", dec.P.to(target))
    elif preset in ("dipole-vacuum", "plane-vacuum"):
        if preset == "dipole-vacuum":
            modes = [ModeIndex(Parity.ELECTRIC, 1.0, 1, m) for m in (1, 0, -1)]
        else:
            modes = [PlaneWaveMode((0.0, 0.0, 1.0), mu) for mu in (1, -1)]
        for kr in kr_values:
            if kr <= 0:
                raise CLIError(f"kr must be positive, got {kr}")
            pvac = vacuum_polarization(modes, SpacePoint(kr, math.pi / 2, spec.phi))
            lines += _format_matrix(f"P_vac(kr={kr:g})", pvac)
            lines.append(f"  trace = {pvac.trace:.12g}")
    else:
        raise CLIError(f"unknown preset {preset!r}")
    text = "\n".join(lines) + "\n"
    _emit(text, spec.output_path)
    return text


def _add_grid_flags(p: argparse.ArgumentParser, kr_max: float = 20.0) -> None:
    p.add_argument("--kr-min", type=float, default=0.01)
    p.add_argument("--kr-max", type=float, default=kr_max)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--log-grid", action="store_true", help="log-spaced kr grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multipole-optics",
        description="Spatial structure of single-atom multipole radiation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    vac = sub.add_parser("vacuum", help="zero-point energy density vs kr")
    _add_grid_flags(vac)
    vac.add_argument("--jmax", type=int, default=10)
    vac.add_argument("--out", default=None)

    em = sub.add_parser("emission", help="dipole emission intensities vs kr")
    _add_grid_flags(em)
    em.add_argument("--m", type=int, default=1, choices=(1, 0, -1))
    em.add_argument("--direction", choices=("polar", "equatorial"), default="equatorial")
    em.add_argument("--boundary", choices=("cavity", "free"), default="cavity")
    em.add_argument("--phi", type=float, default=0.0)
    em.add_argument("--out", default=None)

    pm = sub.add_parser("polmatrix", help="dump polarization matrices")
    pm.add_argument("--E", default=None, help='complex 3-vector, e.g. "1,1j,0"')
    pm.add_argument("--B", default=None, help="complex 3-vector")
    pm.add_argument("--preset", choices=("plane-wave", "zero", "dipole-vacuum", "plane-vacuum"))
    pm.add_argument("--kr", type=float, action="append", help="kr for vacuum presets")
    pm.add_argument("--phi", type=float, default=0.0)
    pm.add_argument("--basis", choices=("cartesian", "helicity"), default="cartesian")
    pm.add_argument("--out", default=None)

    dyn = sub.add_parser("dynamics", help="Rabi and Weisskopf-Wigner time factors")
    dyn.add_argument("--g", type=float, default=1.0)
    dyn.add_argument("--t-max", type=float, default=4 * math.pi)
    dyn.add_argument("--steps", type=int, default=400)
    dyn.add_argument("--m", type=int, default=1, choices=(1, 0, -1))
    dyn.add_argument("--eta", type=float, default=None)
    dyn.add_argument("--delta-omega", type=float, default=0.0)
    dyn.add_argument("--omega-k", type=float, default=1.0)
    dyn.add_argument("--omega0", type=float, default=1.0)
    dyn.add_argument("--out", default=None)
    return parser


def _spec_from_args(args: argparse.Namespace) -> ScanSpec:
    common = dict(subcommand=args.subcommand, output_path=args.out)
    if args.subcommand == "vacuum":
        return ScanSpec(kr_min=args.kr_min, kr_max=args.kr_max, kr_steps=args.steps,
                        j_max=args.jmax, log_grid=args.log_grid, **common)
    if args.subcommand == "emission":
        return ScanSpec(kr_min=args.kr_min, kr_max=args.kr_max, kr_steps=args.steps,
                        m_initial=args.m, direction=args.direction, boundary=args.boundary,
                        phi=args.phi, log_grid=args.log_grid, **common)
    if args.subcommand == "dynamics":
        return ScanSpec(g=args.g, t_max=args.t_max, kr_steps=args.steps, m_initial=args.m,
                        eta=args.eta, delta_omega=args.delta_omega, omega_k=args.omega_k,
                        omega0=args.omega0, **common)
    return ScanSpec(phi=args.phi, **common)


_RUNNERS: dict[str, Callable[[ScanSpec], str]] = {
    "vacuum": run_vacuum_scan,
    "emission": run_emission_scan,
    "dynamics": run_dynamics,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.subcommand == "polmatrix":
            E = parse_vector(args.E) if args.E else None
            B = parse_vector(args.B) if args.B else None
            run_polmatrix(spec, E, B, args.preset, tuple(args.kr or (0.5, 2.0)), args.basis)
        else:
            _RUNNERS[args.subcommand](spec)
    except (CLIError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
