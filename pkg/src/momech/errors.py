"""Exception hierarchy.

Two branches matter to callers: ConfigError for bad inputs or violated
preconditions (CLI exit code 2) and NumericError for failures arising during
computation on valid inputs (CLI exit code 3).
"""

from __future__ import annotations


class MomechError(Exception):
    """Base class for all package errors."""


class ConfigError(MomechError):
    """Invalid input data or violated operation precondition."""


class NumericError(MomechError):
    """Numerical failure while processing valid input."""


class SchemaError(ConfigError):
    """Run-configuration JSON does not match the documented schema."""


class NonPositiveRate(ConfigError):
    """A decay rate that must be positive (or non-negative) is not."""


class NonPositiveFrequency(ConfigError):
    """A frequency that must be positive is not."""


class EmptyModeList(ConfigError):
    """A system spec carries no mechanical modes."""


class InconsistentDrive(ConfigError):
    """Drive configuration is over- or under-determined, or malformed."""


class BadGrid(ConfigError):
    """Frequency grid parameters cannot produce a valid sweep."""


class WrongModeCount(ConfigError):
    """Operation requires a specific number of mechanical modes."""


class NotDegenerate(ConfigError):
    """Operation requires identical (degenerate) mechanical modes."""


class StepTooCoarse(ConfigError):
    """Integration step does not resolve the fastest dynamical scale."""


class PoleOnRealAxis(NumericError):
    """Response denominator vanishes at a requested real frequency."""


class DegeneratePoles(NumericError):
    """Residue extraction requires simple, well-separated poles."""


class UnstableSystem(NumericError):
    """Drift matrix has an eigenvalue with non-negative real part."""


class NotConverged(NumericError):
    """Iterative or windowed estimate failed its convergence gate."""
