"""Frozen figure-reproduction parameter families and their CSV tables.

All presets share one platform: total cavity linewidth kappa/2pi = 1.0 MHz,
fully output-coupled (kappa_ext = kappa), a mechanical pair at 10*kappa with
damping 1e-4*kappa, driven on an exact or near-exact sideband. The tables are
emitted in kappa-normalized units with raw rad/s columns appended, ready for
the plotting frontend.
"""

from __future__ import annotations

import math

import numpy as np

from .model import DriveConfig, MechMode, Sideband, SystemSpec, derive_drive
from .response import FrequencyGrid, sweep
from .spectra import roots_two_mode_closed_form

KAPPA_SI = 2.0 * math.pi * 1.0e6  # rad/s; all other constants in kappa units

KAPPA = 1.0
OMEGA_M = 10.0 * KAPPA
GAMMA = 1.0e-4 * KAPPA
OMEGA_CAVITY = 1.9e8 * KAPPA

# Per-mode couplings: the absorbing pair sits well inside the collective
# regime, the amplifying pair at half the instability boundary.
COUPLING_ABSORB = 1.5 * math.sqrt(KAPPA * GAMMA)
COUPLING_GAIN = 0.5 * math.sqrt(KAPPA * GAMMA)

SWEEP_HALFWIDTH = 20.0 * GAMMA
SWEEP_POINTS = 2001
SCAN_MAX = 1.0 * GAMMA
SCAN_POINTS = 2001

PRESET_NAMES = ("fig2", "fig3", "fig4", "bifurcation")


def _pair(split: float) -> SystemSpec:
    """Two modes at OMEGA_M +- split, identical damping."""
    return SystemSpec(
        kappa_ext=KAPPA,
        kappa_int=0.0,
        omega_cavity=OMEGA_CAVITY,
        modes=[
            MechMode(omega=OMEGA_M + split, gamma=GAMMA),
            MechMode(omega=OMEGA_M - split, gamma=GAMMA),
        ],
    )


def _single() -> SystemSpec:
    return SystemSpec(
        kappa_ext=KAPPA,
        kappa_int=0.0,
        omega_cavity=OMEGA_CAVITY,
        modes=[MechMode(omega=OMEGA_M, gamma=GAMMA)],
    )


def _driven(spec: SystemSpec, sideband: Sideband, coupling: float, offset: float = 0.0):
    config = DriveConfig(
        sideband=sideband,
        delta_offset=offset,
        coupling_override=[coupling] * spec.n_modes,
        omega_m_ref=OMEGA_M,
    )
    return derive_drive(spec, config)


def _label(value: float) -> str:
    return ("%g" % value).replace(".", "p").replace("-", "m")


def _split_family(
    sideband: Sideband, coupling: float, splits_over_gamma: tuple[float, ...]
) -> tuple[list[str], np.ndarray]:
    """Spectra for a family of mode splittings, plus the one-mode reference.

    The reference keeps the same per-mode coupling, which is what the overlay
    comparison against the collective pair is about.
    """
    center = sideband.sign * OMEGA_M
    grid = FrequencyGrid(halfwidth=SWEEP_HALFWIDTH, npoints=SWEEP_POINTS, center=center)
    header = ["omega_rel_gamma", "omega_rad_s"]
    columns: list[np.ndarray] = []
    omega = np.array([])
    for split_g in splits_over_gamma:
        spec = _pair(split_g * GAMMA)
        spectrum = sweep(_driven(spec, sideband, coupling), spec, sideband, grid)
        omega = spectrum.omega
        tag = "dw" + _label(split_g)
        header += [f"re_r_{tag}", f"im_r_{tag}", f"abs_r_sq_{tag}"]
        columns += [spectrum.re, spectrum.im, spectrum.abs_sq]
    single = _single()
    spectrum = sweep(_driven(single, sideband, coupling), single, sideband, grid)
    header += ["re_r_n1", "im_r_n1", "abs_r_sq_n1"]
    columns += [spectrum.re, spectrum.im, spectrum.abs_sq]
    data = np.column_stack(
        [(omega - center) / GAMMA, omega * KAPPA_SI] + columns
    )
    return header, data


def _detuned_family(
    sideband: Sideband, coupling: float, deltas_over_kappa: tuple[float, ...]
) -> tuple[list[str], np.ndarray]:
    """Degenerate-pair spectra for a family of drive detuning offsets."""
    center = sideband.sign * OMEGA_M
    grid = FrequencyGrid(halfwidth=SWEEP_HALFWIDTH, npoints=SWEEP_POINTS, center=center)
    header = ["omega_rel_gamma", "omega_rad_s"]
    columns: list[np.ndarray] = []
    omega = np.array([])
    for delta_k in deltas_over_kappa:
        spec = _pair(0.0)
        drive = _driven(spec, sideband, coupling, offset=delta_k * KAPPA)
        spectrum = sweep(drive, spec, sideband, grid)
        omega = spectrum.omega
        tag = "d" + _label(delta_k)
        header += [f"re_r_{tag}", f"im_r_{tag}", f"abs_r_sq_{tag}"]
        columns += [spectrum.re, spectrum.im, spectrum.abs_sq]
    data = np.column_stack(
        [(omega - center) / GAMMA, omega * KAPPA_SI] + columns
    )
    return header, data


def _bifurcation_table() -> tuple[list[str], np.ndarray]:
    """Closed-form root pair vs mode splitting, resonant and detuned.

    Roots sit near -OMEGA_M (amplifying sideband); the scaled columns are
    (Re omega + OMEGA_M)/GAMMA and Im omega/GAMMA so the two detuning families
    share axes. Raw rad/s columns follow the scaled ones.
    """
    splits = np.linspace(0.0, SCAN_MAX, SCAN_POINTS)
    header = ["delta_omega_over_gamma"]
    scaled: list[np.ndarray] = []
    raw: list[np.ndarray] = []
    raw_header: list[str] = []
    for delta_k in (0.0, 0.1):
        plus = np.empty(splits.size, dtype=complex)
        minus = np.empty(splits.size, dtype=complex)
        for i, split in enumerate(splits):
            spec = _pair(split)
            drive = _driven(spec, Sideband.STOKES, COUPLING_GAIN, offset=delta_k * KAPPA)
            plus[i], minus[i] = roots_two_mode_closed_form(drive, spec, Sideband.STOKES)
        tag = "d" + _label(delta_k)
        header += [f"re_wp_{tag}", f"im_wp_{tag}", f"re_wm_{tag}", f"im_wm_{tag}"]
        scaled += [
            (plus.real + OMEGA_M) / GAMMA,
            plus.imag / GAMMA,
            (minus.real + OMEGA_M) / GAMMA,
            minus.imag / GAMMA,
        ]
        raw_header += [
            f"re_wp_rad_s_{tag}",
            f"im_wp_rad_s_{tag}",
            f"re_wm_rad_s_{tag}",
            f"im_wm_rad_s_{tag}",
        ]
        raw += [
            plus.real * KAPPA_SI,
            plus.imag * KAPPA_SI,
            minus.real * KAPPA_SI,
            minus.imag * KAPPA_SI,
        ]
    data = np.column_stack([splits / GAMMA] + scaled + raw)
    return header + raw_header, data


def preset_table(name: str) -> tuple[list[str], np.ndarray]:
    """Header and rows for one named preset."""
    if name == "fig2":
        return _split_family(Sideband.ANTI_STOKES, COUPLING_ABSORB, (0.0, 4.5))
    if name == "fig3":
        return _split_family(Sideband.STOKES, COUPLING_GAIN, (0.0, 1.25))
    if name == "fig4":
        return _detuned_family(Sideband.STOKES, COUPLING_GAIN, (0.0, 0.1, 0.3))
    if name == "bifurcation":
        return _bifurcation_table()
    raise ValueError(f"unknown preset {name!r}")
