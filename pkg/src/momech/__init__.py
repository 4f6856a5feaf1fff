"""Linearized multimode optomechanics: response, mode structure, stability.

One driven cavity mode, N mechanical modes, rotating-wave regime. The package
computes the probe response on either motional sideband, the collective pole
and residue structure (superradiant/dark mode splitting and its bifurcation),
drift-matrix stability, phonon-lasing pump thresholds, and time-domain
cross-validation trajectories, plus a CSV-emitting CLI with figure presets.
"""

from .errors import (
    BadGrid,
    ConfigError,
    DegeneratePoles,
    EmptyModeList,
    InconsistentDrive,
    MomechError,
    NonPositiveFrequency,
    NonPositiveRate,
    NotConverged,
    NotDegenerate,
    NumericError,
    PoleOnRealAxis,
    SchemaError,
    StepTooCoarse,
    UnstableSystem,
    WrongModeCount,
)
from .model import (
    HBAR,
    DerivedDrive,
    DriveConfig,
    MechMode,
    Sideband,
    SystemSpec,
    derive_drive,
    validate_spec,
)
from .response import FrequencyGrid, Spectrum, response_at, susceptibilities, sweep
from .spectra import (
    Approximation,
    BifurcationPoint,
    ModeStructure,
    bifurcation_point,
    characteristic_roots,
    constant_cavity_susceptibility,
    effective_mode_matrix,
    equivalent_single_mode,
    residues,
    roots_two_mode_closed_form,
)
from .stability import (
    DriftMatrix,
    StabilityReport,
    ThresholdResult,
    assemble_drift,
    is_stable,
    routh_hurwitz_stable,
    threshold_power,
)
from .timedomain import (
    ProbeDrive,
    Trajectory,
    free_decay,
    integrate,
    steady_state_output,
)

__version__ = "0.1.0"

__all__ = [
    "HBAR",
    "Approximation",
    "BadGrid",
    "BifurcationPoint",
    "ConfigError",
    "DegeneratePoles",
    "DerivedDrive",
    "DriftMatrix",
    "DriveConfig",
    "EmptyModeList",
    "FrequencyGrid",
    "InconsistentDrive",
    "MechMode",
    "ModeStructure",
    "MomechError",
    "NonPositiveFrequency",
    "NonPositiveRate",
    "NotConverged",
    "NotDegenerate",
    "NumericError",
    "PoleOnRealAxis",
    "ProbeDrive",
    "SchemaError",
    "Sideband",
    "Spectrum",
    "StabilityReport",
    "StepTooCoarse",
    "SystemSpec",
    "ThresholdResult",
    "Trajectory",
    "UnstableSystem",
    "WrongModeCount",
    "assemble_drift",
    "bifurcation_point",
    "characteristic_roots",
    "constant_cavity_susceptibility",
    "derive_drive",
    "effective_mode_matrix",
    "equivalent_single_mode",
    "free_decay",
    "integrate",
    "is_stable",
    "residues",
    "response_at",
    "roots_two_mode_closed_form",
    "routh_hurwitz_stable",
    "steady_state_output",
    "susceptibilities",
    "sweep",
    "threshold_power",
    "validate_spec",
]
