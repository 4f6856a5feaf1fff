"""System description and drive bookkeeping.

A single driven cavity mode couples to N mechanical modes. The pump laser is
parked near one motional sideband of the cavity; after linearization around
the strong intracavity field the photon-phonon interaction is characterized by
the field-enhanced couplings G_j = alpha * g0_j, where alpha is the classical
steady-state amplitude. Everything downstream (response, mode structure,
stability, thresholds) consumes a SystemSpec plus a DerivedDrive.

Units: any consistent angular-frequency unit works; all formulas are
homogeneous in rates except the pump-power conversion, which involves
hbar * omega_laser and therefore expects absolute SI rad/s.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    EmptyModeList,
    InconsistentDrive,
    NonPositiveFrequency,
    NonPositiveRate,
)

HBAR = 1.054571817e-34  # J*s


class Sideband(enum.Enum):
    """Which motional sideband the pump addresses.

    ANTI_STOKES: pump below cavity resonance (Delta = +omega_m + delta),
    beam-splitter interaction, cooling / absorption side.
    STOKES: pump above cavity resonance (Delta = -omega_m + delta),
    two-mode-squeezing interaction, gain side.
    """

    ANTI_STOKES = "anti_stokes"
    STOKES = "stokes"

    @property
    def sign(self) -> int:
        """+1 on the anti-Stokes side, -1 on the Stokes side."""
        return 1 if self is Sideband.ANTI_STOKES else -1


@dataclass
class MechMode:
    """One mechanical oscillator.

    Parameters
    ----------
    omega:
        Resonance frequency (angular), > 0.
    gamma:
        Amplitude decay rate, > 0. The energy linewidth is 2*gamma.
    g0:
        Single-photon coupling rate (real). Only used when the drive is
        specified through pump power; may be 0 when couplings are overridden.
    """

    omega: float
    gamma: float
    g0: float = 0.0

    def __post_init__(self) -> None:
        _check_mode(self)


@dataclass
class SystemSpec:
    """Cavity plus mechanical mode ensemble.

    kappa_ext / kappa_int are amplitude decay rates through the input port and
    internal loss; the total amplitude decay is kappa = kappa_ext + kappa_int
    and the cavity energy linewidth is 2*kappa.
    """

    kappa_ext: float
    kappa_int: float
    omega_cavity: float
    modes: list[MechMode]

    def __post_init__(self) -> None:
        validate_spec(self)

    @property
    def kappa(self) -> float:
        return self.kappa_ext + self.kappa_int

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def omega_mech_mean(self) -> float:
        return float(np.mean([m.omega for m in self.modes]))

    @property
    def gamma_mech_mean(self) -> float:
        return float(np.mean([m.gamma for m in self.modes]))


def _check_mode(mode: MechMode, index: int | None = None) -> None:
    tag = f"modes[{index}]." if index is not None else ""
    if not (mode.omega > 0.0) or not math.isfinite(mode.omega):
        raise NonPositiveFrequency(f"{tag}omega must be > 0, got {mode.omega}")
    if not (mode.gamma > 0.0) or not math.isfinite(mode.gamma):
        raise NonPositiveRate(f"{tag}gamma must be > 0, got {mode.gamma}")
    if not math.isfinite(mode.g0):
        raise NonPositiveRate(f"{tag}g0 must be finite, got {mode.g0}")


def validate_spec(spec: SystemSpec) -> None:
    """Check every SystemSpec invariant, naming the offending field.

    Raises NonPositiveRate, NonPositiveFrequency, or EmptyModeList.
    """
    if not (spec.kappa_ext > 0.0) or not math.isfinite(spec.kappa_ext):
        raise NonPositiveRate(f"kappa_ext must be > 0, got {spec.kappa_ext}")
    if spec.kappa_int < 0.0 or not math.isfinite(spec.kappa_int):
        raise NonPositiveRate(f"kappa_int must be >= 0, got {spec.kappa_int}")
    if not (spec.omega_cavity > 0.0) or not math.isfinite(spec.omega_cavity):
        raise NonPositiveFrequency(
            f"omega_cavity must be > 0, got {spec.omega_cavity}"
        )
    if len(spec.modes) == 0:
        raise EmptyModeList("modes must contain at least one mechanical mode")
    for j, mode in enumerate(spec.modes):
        _check_mode(mode, j)


@dataclass
class DriveConfig:
    """Pump placement and strength.

    Exactly one of `power` (watts, converted through kappa_ext and the pump
    photon energy) or `coupling_override` (field-enhanced couplings |G_j|,
    real and non-negative, same units as kappa) must be given.

    delta_offset is the residual detuning from the exact sideband:
    Delta = omega_m_ref + delta_offset on the anti-Stokes side and
    Delta = -omega_m_ref + delta_offset on the Stokes side, with
    Delta = omega_cavity - omega_laser.

    omega_m_ref defaults to the system's mean mechanical frequency.
    """

    sideband: Sideband
    delta_offset: float = 0.0
    power: float | None = None
    coupling_override: Sequence[float] | None = None
    omega_m_ref: float | None = None

    def __post_init__(self) -> None:
        if (self.power is None) == (self.coupling_override is None):
            raise InconsistentDrive(
                "exactly one of power / coupling_override must be set"
            )
        if self.power is not None and not (
            self.power > 0.0 and math.isfinite(self.power)
        ):
            raise NonPositiveRate(f"power must be > 0, got {self.power}")
        if self.coupling_override is not None:
            vals = list(self.coupling_override)
            for j, g in enumerate(vals):
                if isinstance(g, complex) or not math.isfinite(g) or g < 0.0:
                    raise InconsistentDrive(
                        f"coupling_override[{j}] must be real and >= 0, got {g!r}"
                    )
            self.coupling_override = vals
        if self.omega_m_ref is not None and not (self.omega_m_ref > 0.0):
            raise NonPositiveFrequency(
                f"omega_m_ref must be > 0, got {self.omega_m_ref}"
            )


@dataclass
class DerivedDrive:
    """Quantities fixed once pump and system are combined.

    delta:
        Pump-cavity detuning omega_cavity - omega_laser.
    e_l, alpha:
        Pump amplitude sqrt(2*kappa_ext*P/(hbar*omega_laser)) and classical
        intracavity amplitude e_l/(kappa + i*delta). None when the couplings
        were overridden directly.
    couplings:
        Field-enhanced couplings G_j (complex; the phase is alpha's phase and
        drops out of every observable, which the tests pin down).
    gamma_opt:
        Per-mode optical damping scale |G_j|^2 / kappa.
    """

    delta: float
    e_l: float | None
    alpha: complex | None
    couplings: np.ndarray
    gamma_opt: np.ndarray

    @property
    def coupling_mags_sq(self) -> np.ndarray:
        return np.abs(self.couplings) ** 2


def derive_drive(spec: SystemSpec, config: DriveConfig) -> DerivedDrive:
    """Resolve a DriveConfig against a SystemSpec.

    Parameters
    ----------
    spec:
        Validated system description.
    config:
        Pump placement and strength.

    Returns
    -------
    DerivedDrive
        With detuning, pump/intracavity amplitudes (power route only), the
        field-enhanced couplings, and per-mode optical damping |G_j|^2/kappa.

    Raises
    ------
    InconsistentDrive
        If coupling_override length disagrees with the mode count, or both /
        neither strength channels are set.
    NonPositiveFrequency
        If the implied pump frequency is not positive (power route).
    """
    validate_spec(spec)
    omega_ref = (
        config.omega_m_ref
        if config.omega_m_ref is not None
        else spec.omega_mech_mean
    )
    delta = config.sideband.sign * omega_ref + config.delta_offset
    kappa = spec.kappa

    if (config.power is None) == (config.coupling_override is None):
        raise InconsistentDrive(
            "exactly one of power / coupling_override must be set"
        )

    if config.coupling_override is not None:
        vals = np.asarray(config.coupling_override, dtype=float)
        if vals.shape != (spec.n_modes,):
            raise InconsistentDrive(
                f"coupling_override has {vals.size} entries for "
                f"{spec.n_modes} modes"
            )
        couplings = vals.astype(complex)
        return DerivedDrive(
            delta=delta,
            e_l=None,
            alpha=None,
            couplings=couplings,
            gamma_opt=np.abs(couplings) ** 2 / kappa,
        )

    omega_laser = spec.omega_cavity - delta
    if not omega_laser > 0.0:
        raise NonPositiveFrequency(
            f"implied pump frequency must be > 0, got {omega_laser}"
        )
    e_l = math.sqrt(2.0 * spec.kappa_ext * config.power / (HBAR * omega_laser))
    alpha = e_l / (kappa + 1j * delta)
    g0 = np.array([m.g0 for m in spec.modes], dtype=float)
    couplings = alpha * g0
    return DerivedDrive(
        delta=delta,
        e_l=e_l,
        alpha=alpha,
        couplings=couplings,
        gamma_opt=np.abs(couplings) ** 2 / kappa,
    )
