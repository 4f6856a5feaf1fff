"""Optical response of the driven cavity in the linearized rotating frame.

The probe reflection/transmission coefficient follows from eliminating the
mechanical modes from the frequency-domain Langevin equations and applying
input-output theory a_out = sqrt(2*kappa_ext) * a - a_in:

    R(omega) = 2*kappa_ext / D(omega) - 1,
    D(omega) = kappa + i*(delta - omega) + s * sum_j |G_j|^2 * chi_j(omega),

with s = +1 on the anti-Stokes (beam-splitter) side and s = -1 on the Stokes
(amplifier) side, and per-branch mechanical susceptibilities

    anti-Stokes: chi_j(omega) = 1 / (gamma_j + i*(omega_j - omega))
    Stokes:      chi_j(omega) = 1 / (gamma_j - i*(omega_j + omega)).

Frequencies are rotating-frame, i.e. measured from the pump; the anti-Stokes
resonance sits near +omega_m and the Stokes one near -omega_m. The Fourier
convention is f(omega) = integral e^{+i*omega*t} f(t) dt.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadGrid, PoleOnRealAxis
from .model import DerivedDrive, Sideband, SystemSpec

# Under this |D|, in units of kappa, a real-axis evaluation is meaningless.
_POLE_GUARD = 1e-30


@dataclass
class FrequencyGrid:
    """Uniform probe-frequency grid.

    center defaults (None) to the sideband resonance: +mean mechanical
    frequency on the anti-Stokes side, -mean on the Stokes side.
    """

    halfwidth: float
    npoints: int
    center: float | None = None


@dataclass
class Spectrum:
    """Sampled response. omega strictly increasing, r complex."""

    omega: np.ndarray
    r: np.ndarray

    def __post_init__(self) -> None:
        self.omega = np.asarray(self.omega, dtype=float)
        self.r = np.asarray(self.r, dtype=complex)
        if self.omega.ndim != 1 or self.omega.shape != self.r.shape:
            raise BadGrid("omega and r must be 1-d arrays of equal length")
        if not np.all(np.diff(self.omega) > 0.0):
            raise BadGrid("omega must be strictly increasing")

    @property
    def re(self) -> np.ndarray:
        return self.r.real

    @property
    def im(self) -> np.ndarray:
        return self.r.imag

    @property
    def abs_sq(self) -> np.ndarray:
        return np.abs(self.r) ** 2


def susceptibilities(
    drive: DerivedDrive,
    spec: SystemSpec,
    omega: float | np.ndarray,
    sideband: Sideband,
) -> tuple[np.ndarray, np.ndarray]:
    """Cavity and per-mode mechanical susceptibilities at probe frequency.

    Returns
    -------
    (chi_c, chi_m)
        chi_c has the shape of omega; chi_m has shape (N,) + shape
        of omega, one row per mechanical mode.
    """
    w = np.asarray(omega, dtype=float)
    chi_c = 1.0 / (spec.kappa + 1j * (drive.delta - w))
    omegas = np.array([m.omega for m in spec.modes], dtype=float)
    gammas = np.array([m.gamma for m in spec.modes], dtype=float)
    flat = np.atleast_1d(w).ravel()
    if sideband is Sideband.ANTI_STOKES:
        denom = gammas[:, None] + 1j * (omegas[:, None] - flat[None, :])
    else:
        denom = gammas[:, None] - 1j * (omegas[:, None] + flat[None, :])
    chi_m = (1.0 / denom).reshape((len(omegas),) + w.shape)
    return chi_c, chi_m


def response_at(
    drive: DerivedDrive,
    spec: SystemSpec,
    omega: float | np.ndarray,
    sideband: Sideband,
) -> complex | np.ndarray:
    """Probe response R(omega) on the chosen sideband branch.

    Scalar in, scalar out; array in, array out. Raises PoleOnRealAxis if the
    denominator magnitude drops below 1e-30 * kappa anywhere on the requested
    frequencies (only possible on the Stokes side at an instability).
    """
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w1 = np.atleast_1d(w)
    _, chi_m = susceptibilities(drive, spec, w1, sideband)
    g_sq = drive.coupling_mags_sq
    mech = np.tensordot(g_sq, chi_m, axes=(0, 0))
    denom = spec.kappa + 1j * (drive.delta - w1) + sideband.sign * mech
    bad = np.abs(denom) < _POLE_GUARD * spec.kappa
    if np.any(bad):
        w_bad = float(w1[np.argmax(bad)])
        raise PoleOnRealAxis(
            f"response denominator vanishes at omega = {w_bad!r}"
        )
    r = 2.0 * spec.kappa_ext / denom - 1.0
    return complex(r[0]) if scalar else r


def sweep(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband,
    grid: FrequencyGrid,
) -> Spectrum:
    """Sample R over a uniform grid around the sideband resonance.

    Raises BadGrid for npoints < 2, non-positive or non-finite halfwidth,
    or a non-finite center.
    """
    if grid.npoints < 2:
        raise BadGrid(f"npoints must be >= 2, got {grid.npoints}")
    if not (grid.halfwidth > 0.0 and np.isfinite(grid.halfwidth)):
        raise BadGrid(f"halfwidth must be > 0 and finite, got {grid.halfwidth}")
    center = grid.center
    if center is None:
        center = sideband.sign * spec.omega_mech_mean
    if not np.isfinite(center):
        raise BadGrid(f"center must be finite, got {center}")
    omega = np.linspace(center - grid.halfwidth, center + grid.halfwidth, grid.npoints)
    return Spectrum(omega=omega, r=response_at(drive, spec, omega, sideband))
