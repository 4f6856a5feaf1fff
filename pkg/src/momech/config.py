"""Strict JSON run-configuration parsing.

One JSON document describes one run: a `system` block in SI units (ordinary
frequencies in Hz, converted to angular rates on ingest), a `drive` block, and
optional task blocks. Unknown keys are rejected everywhere; every consumer of
a block validates types and ranges before any physics runs.

Internally every task except the lasing threshold works in units of the total
cavity linewidth (kappa = 1); the threshold needs absolute power and therefore
runs on the SI-rate system directly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .errors import InconsistentDrive, SchemaError
from .model import DerivedDrive, DriveConfig, MechMode, Sideband, SystemSpec, derive_drive

TWO_PI = 2.0 * math.pi

_SIDEBANDS = {
    "anti_stokes": Sideband.ANTI_STOKES,
    "stokes": Sideband.STOKES,
}


def _check_keys(obj: Mapping[str, Any], allowed: Sequence[str], required: Sequence[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise SchemaError(f"{where}: unknown key(s) {unknown}")
    missing = sorted(set(required) - set(obj))
    if missing:
        raise SchemaError(f"{where}: missing required key(s) {missing}")


def _number(obj: Mapping[str, Any], key: str, where: str, *, default: float | None = None) -> float | None:
    if key not in obj:
        return default
    value = obj[key]
    # bool is an int subclass; a JSON true/false here is always a mistake.
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}.{key}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{where}.{key}: must be finite, got {value!r}")
    return value


def _integer(obj: Mapping[str, Any], key: str, where: str, *, default: int | None = None) -> int | None:
    if key not in obj:
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def _positive(value: float | None, key: str, where: str) -> float | None:
    if value is not None and not value > 0.0:
        raise SchemaError(f"{where}.{key}: must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class GridBlock:
    """Sweep grid in figure-style units: halfwidth scaled by the mean damping."""

    halfwidth_over_gamma: float
    npoints: int
    center_over_kappa: float | None


@dataclass(frozen=True)
class ScanBlock:
    """Mode-splitting scan for the two-root collision diagram."""

    min_over_gamma: float
    max_over_gamma: float
    npoints: int


@dataclass(frozen=True)
class RunConfig:
    """Parsed, validated run description.

    spec_si holds the system in SI angular rates. Task code asks for the
    kappa-normalized twin via spec_normalized()/drive_normalized(); only the
    threshold task touches spec_si, because watts are not scale-free.
    """

    spec_si: SystemSpec
    sideband: Sideband
    delta_over_kappa: float
    power_w: float | None
    coupling_units: list[float] | None
    grid: GridBlock | None
    probes_over_gamma: list[float] | None
    scan: ScanBlock | None
    threshold_n: list[int] | None
    roots_approximation: str
    residues_approximation: str

    @property
    def kappa_si(self) -> float:
        return self.spec_si.kappa

    def spec_normalized(self) -> SystemSpec:
        k = self.spec_si.kappa
        return SystemSpec(
            kappa_ext=self.spec_si.kappa_ext / k,
            kappa_int=self.spec_si.kappa_int / k,
            omega_cavity=self.spec_si.omega_cavity / k,
            modes=[
                MechMode(omega=m.omega / k, gamma=m.gamma / k)
                for m in self.spec_si.modes
            ],
        )

    def normalized_couplings(self) -> list[float]:
        """|G_j| in kappa units, from either the direct override or the power."""
        spec = self.spec_si
        if self.coupling_units is not None:
            scale = math.sqrt(spec.kappa * spec.gamma_mech_mean) / spec.kappa
            return [u * scale for u in self.coupling_units]
        if self.power_w is None:
            raise InconsistentDrive(
                "this task needs a drive strength: set drive.power_w or drive.coupling"
            )
        drive_si = derive_drive(
            spec,
            DriveConfig(
                sideband=self.sideband,
                delta_offset=self.delta_over_kappa * spec.kappa,
                power=self.power_w,
            ),
        )
        return [abs(g) / spec.kappa for g in drive_si.couplings]

    def drive_normalized(self) -> DerivedDrive:
        return derive_drive(
            self.spec_normalized(),
            DriveConfig(
                sideband=self.sideband,
                delta_offset=self.delta_over_kappa,
                coupling_override=self.normalized_couplings(),
            ),
        )


def _parse_system(obj: Mapping[str, Any]) -> SystemSpec:
    _check_keys(
        obj,
        ["kappa_ext_hz", "kappa_int_hz", "omega_cavity_hz", "modes"],
        ["kappa_ext_hz", "omega_cavity_hz", "modes"],
        "system",
    )
    kappa_ext = _positive(_number(obj, "kappa_ext_hz", "system"), "kappa_ext_hz", "system")
    kappa_int = _number(obj, "kappa_int_hz", "system", default=0.0)
    if kappa_int < 0.0:
        raise SchemaError(f"system.kappa_int_hz: must be >= 0, got {kappa_int!r}")
    omega_cavity = _positive(_number(obj, "omega_cavity_hz", "system"), "omega_cavity_hz", "system")
    raw_modes = obj["modes"]
    if not isinstance(raw_modes, list) or not raw_modes:
        raise SchemaError("system.modes: expected a non-empty array")
    modes = []
    for j, entry in enumerate(raw_modes):
        where = f"system.modes[{j}]"
        _check_keys(entry, ["omega_hz", "gamma_hz", "g0_hz"], ["omega_hz", "gamma_hz"], where)
        omega = _positive(_number(entry, "omega_hz", where), "omega_hz", where)
        gamma = _positive(_number(entry, "gamma_hz", where), "gamma_hz", where)
        g0 = _number(entry, "g0_hz", where, default=0.0)
        if g0 < 0.0:
            raise SchemaError(f"{where}.g0_hz: must be >= 0, got {g0!r}")
        modes.append(MechMode(omega=TWO_PI * omega, gamma=TWO_PI * gamma, g0=TWO_PI * g0))
    return SystemSpec(
        kappa_ext=TWO_PI * kappa_ext,
        kappa_int=TWO_PI * kappa_int,
        omega_cavity=TWO_PI * omega_cavity,
        modes=modes,
    )


def _parse_drive(obj: Mapping[str, Any], n_modes: int) -> tuple[Sideband, float, float | None, list[float] | None]:
    _check_keys(
        obj,
        ["sideband", "delta_over_kappa", "power_w", "coupling"],
        ["sideband"],
        "drive",
    )
    name = obj["sideband"]
    if name not in _SIDEBANDS:
        raise SchemaError(
            f"drive.sideband: expected one of {sorted(_SIDEBANDS)}, got {name!r}"
        )
    delta = _number(obj, "delta_over_kappa", "drive", default=0.0)
    power = _positive(_number(obj, "power_w", "drive"), "power_w", "drive")
    coupling: list[float] | None = None
    if "coupling" in obj:
        raw = obj["coupling"]
        values = raw if isinstance(raw, list) else [raw] * n_modes
        if len(values) != n_modes:
            raise SchemaError(
                f"drive.coupling: expected {n_modes} entries, got {len(values)}"
            )
        coupling = []
        for j, u in enumerate(values):
            if isinstance(u, bool) or not isinstance(u, (int, float)) or not math.isfinite(u) or u < 0.0:
                raise SchemaError(
                    f"drive.coupling[{j}]: expected a finite number >= 0, got {u!r}"
                )
            coupling.append(float(u))
    if power is not None and coupling is not None:
        raise SchemaError("drive: power_w and coupling are mutually exclusive")
    return _SIDEBANDS[name], delta, power, coupling


def _parse_grid(obj: Mapping[str, Any]) -> GridBlock:
    _check_keys(
        obj,
        ["halfwidth_over_gamma", "npoints", "center_over_kappa"],
        ["halfwidth_over_gamma", "npoints"],
        "grid",
    )
    # Range checks for halfwidth/npoints live in the sweep itself (BadGrid);
    # here only shape and finiteness are enforced.
    return GridBlock(
        halfwidth_over_gamma=_number(obj, "halfwidth_over_gamma", "grid"),
        npoints=_integer(obj, "npoints", "grid"),
        center_over_kappa=_number(obj, "center_over_kappa", "grid"),
    )


def _parse_probes(obj: Mapping[str, Any]) -> list[float]:
    _check_keys(obj, ["offsets_over_gamma"], ["offsets_over_gamma"], "probes")
    raw = obj["offsets_over_gamma"]
    if not isinstance(raw, list) or not raw:
        raise SchemaError("probes.offsets_over_gamma: expected a non-empty array")
    out = []
    for j, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise SchemaError(
                f"probes.offsets_over_gamma[{j}]: expected a finite number, got {v!r}"
            )
        out.append(float(v))
    return out


def _parse_scan(obj: Mapping[str, Any]) -> ScanBlock:
    _check_keys(
        obj,
        ["min_over_gamma", "max_over_gamma", "npoints"],
        ["max_over_gamma", "npoints"],
        "delta_omega_scan",
    )
    lo = _number(obj, "min_over_gamma", "delta_omega_scan", default=0.0)
    hi = _number(obj, "max_over_gamma", "delta_omega_scan")
    if lo < 0.0 or not hi > lo:
        raise SchemaError(
            f"delta_omega_scan: need 0 <= min < max, got {lo!r} .. {hi!r}"
        )
    return ScanBlock(min_over_gamma=lo, max_over_gamma=hi, npoints=_integer(obj, "npoints", "delta_omega_scan"))


def _parse_threshold(obj: Mapping[str, Any]) -> list[int]:
    _check_keys(obj, ["n_values"], ["n_values"], "threshold")
    raw = obj["n_values"]
    if not isinstance(raw, list) or not raw:
        raise SchemaError("threshold.n_values: expected a non-empty array")
    out = []
    for j, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise SchemaError(
                f"threshold.n_values[{j}]: expected an integer >= 1, got {v!r}"
            )
        out.append(v)
    return out


_APPROXIMATIONS = ("exact", "constant_chi_c")


def _parse_approximation(obj: Mapping[str, Any], where: str) -> str:
    _check_keys(obj, ["approximation"], [], where)
    name = obj.get("approximation", "exact")
    if name not in _APPROXIMATIONS:
        raise SchemaError(
            f"{where}.approximation: expected one of {list(_APPROXIMATIONS)}, got {name!r}"
        )
    return name


def parse_config(document: Mapping[str, Any]) -> RunConfig:
    """Validate a decoded JSON document and assemble the run description."""
    _check_keys(
        document,
        ["system", "drive", "grid", "probes", "delta_omega_scan", "threshold", "roots", "residues"],
        ["system", "drive"],
        "config",
    )
    spec_si = _parse_system(document["system"])
    sideband, delta, power, coupling = _parse_drive(document["drive"], spec_si.n_modes)
    return RunConfig(
        spec_si=spec_si,
        sideband=sideband,
        delta_over_kappa=delta,
        power_w=power,
        coupling_units=coupling,
        grid=_parse_grid(document["grid"]) if "grid" in document else None,
        probes_over_gamma=_parse_probes(document["probes"]) if "probes" in document else None,
        scan=_parse_scan(document["delta_omega_scan"]) if "delta_omega_scan" in document else None,
        threshold_n=_parse_threshold(document["threshold"]) if "threshold" in document else None,
        roots_approximation=_parse_approximation(document.get("roots", {}), "roots"),
        residues_approximation=_parse_approximation(document.get("residues", {}), "residues"),
    )


def load_config(path: str) -> RunConfig:
    """Read and validate a run configuration from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("config root must be a JSON object")
    return parse_config(document)
