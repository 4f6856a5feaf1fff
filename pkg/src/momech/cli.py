"""Subcommand dispatch and bit-stable CSV emission.

Exit codes: 0 success, 2 configuration error (bad JSON, schema violation,
violated precondition), 3 numeric failure on valid input (instability,
degenerate poles). Errors print one JSON line on stderr:
{"error": "<class>", "message": "<detail>"}.

CSV contract: UTF-8, LF line endings, header row, floats in scientific
notation with 17 significant digits, written atomically (temp file + rename)
so reruns with the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
from typing import Iterable, Sequence

import numpy as np

from .config import RunConfig, load_config
from .errors import BadGrid, ConfigError, NumericError, SchemaError, UnstableSystem, WrongModeCount
from .model import DerivedDrive, DriveConfig, MechMode, Sideband, SystemSpec, derive_drive
from .presets import PRESET_NAMES, preset_table
from .response import FrequencyGrid, response_at, sweep
from .spectra import Approximation, bifurcation_point, characteristic_roots, residues, roots_two_mode_closed_form
from .stability import is_stable, threshold_power
from .timedomain import ProbeDrive, integrate, steady_state_output

_APPROX = {
    "exact": Approximation.EXACT,
    "constant_chi_c": Approximation.CONSTANT_CHI_C,
}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.16e}"


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write atomically: the target never holds a partial table."""
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _normalized(cfg: RunConfig) -> tuple[SystemSpec, DerivedDrive]:
    spec = cfg.spec_normalized()
    return spec, cfg.drive_normalized()


def cmd_sweep(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    if cfg.grid is None:
        raise SchemaError("sweep needs a grid block in the config")
    spec, drive = _normalized(cfg)
    gamma = spec.gamma_mech_mean
    npoints = cfg.grid.npoints if args.points is None else args.points
    grid = FrequencyGrid(
        halfwidth=cfg.grid.halfwidth_over_gamma * gamma,
        npoints=npoints,
        center=cfg.grid.center_over_kappa,
    )
    spectrum = sweep(drive, spec, cfg.sideband, grid)
    center = grid.center
    if center is None:
        center = cfg.sideband.sign * spec.omega_mech_mean
    header = ["omega_rel_gamma", "omega_over_kappa", "omega_rad_s", "re_r", "im_r", "abs_r_sq"]
    rows = zip(
        (spectrum.omega - center) / gamma,
        spectrum.omega,
        spectrum.omega * cfg.kappa_si,
        spectrum.re,
        spectrum.im,
        spectrum.abs_sq,
    )
    write_csv(args.out, header, rows)


def cmd_roots(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    spec, drive = _normalized(cfg)
    roots = characteristic_roots(
        drive, spec, cfg.sideband, approximation=_APPROX[cfg.roots_approximation]
    )
    header = [
        "index",
        "re_omega_over_kappa",
        "im_omega_over_kappa",
        "decay_over_kappa",
        "re_omega_rad_s",
        "im_omega_rad_s",
        "kappa_rad_s",
    ]
    rows = [
        [k, w.real, w.imag, -w.imag, w.real * cfg.kappa_si, w.imag * cfg.kappa_si, cfg.kappa_si]
        for k, w in enumerate(roots)
    ]
    write_csv(args.out, header, rows)


def cmd_residues(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    spec, drive = _normalized(cfg)
    structure = residues(
        drive, spec, cfg.sideband, approximation=_APPROX[cfg.residues_approximation]
    )
    gamma = spec.gamma_mech_mean
    bif = structure.bifurcation_delta_omega
    bif_over_gamma = None if bif is None else bif / gamma
    header = [
        "index",
        "re_pole_over_kappa",
        "im_pole_over_kappa",
        "decay_over_kappa",
        "re_residue",
        "im_residue",
        "abs_residue",
        "is_dark",
        "re_pole_rad_s",
        "im_pole_rad_s",
        "bifurcation_delta_omega_over_gamma",
    ]
    rows = [
        [
            k,
            structure.poles[k].real,
            structure.poles[k].imag,
            structure.decay_rates[k],
            structure.residues[k].real,
            structure.residues[k].imag,
            abs(structure.residues[k]),
            bool(structure.is_dark[k]),
            structure.poles[k].real * cfg.kappa_si,
            structure.poles[k].imag * cfg.kappa_si,
            bif_over_gamma,
        ]
        for k in range(structure.poles.size)
    ]
    write_csv(args.out, header, rows)


def cmd_bifurcation(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    if cfg.spec_si.n_modes != 2:
        raise WrongModeCount(
            f"bifurcation scan needs exactly 2 modes, got {cfg.spec_si.n_modes}"
        )
    if cfg.scan is None:
        raise SchemaError("bifurcation needs a delta_omega_scan block in the config")
    if cfg.scan.npoints < 2:
        raise BadGrid(f"delta_omega_scan.npoints must be >= 2, got {cfg.scan.npoints}")
    spec, drive = _normalized(cfg)
    gamma = spec.gamma_mech_mean
    center = cfg.sideband.sign * spec.omega_mech_mean
    couplings = [abs(g) for g in drive.couplings]
    mean = spec.omega_mech_mean
    splits = np.linspace(
        cfg.scan.min_over_gamma * gamma, cfg.scan.max_over_gamma * gamma, cfg.scan.npoints
    )
    plus = np.empty(splits.size, dtype=complex)
    minus = np.empty(splits.size, dtype=complex)
    for i, split in enumerate(splits):
        split_spec = SystemSpec(
            kappa_ext=spec.kappa_ext,
            kappa_int=spec.kappa_int,
            omega_cavity=spec.omega_cavity,
            modes=[
                MechMode(omega=mean + split, gamma=spec.modes[0].gamma),
                MechMode(omega=mean - split, gamma=spec.modes[1].gamma),
            ],
        )
        split_drive = derive_drive(
            split_spec,
            DriveConfig(
                sideband=cfg.sideband,
                delta_offset=cfg.delta_over_kappa,
                coupling_override=couplings,
                omega_m_ref=mean,
            ),
        )
        plus[i], minus[i] = roots_two_mode_closed_form(split_drive, split_spec, cfg.sideband)
    analytic = numeric = None
    collision = None
    if cfg.delta_over_kappa == 0.0:
        point = bifurcation_point(drive, spec, cfg.sideband)
        analytic = point.analytic / gamma
        numeric = point.numeric / gamma
        collision = point.collision
    header = [
        "delta_omega_over_gamma",
        "re_wp_rel_gamma",
        "im_wp_over_gamma",
        "re_wm_rel_gamma",
        "im_wm_over_gamma",
        "re_wp_rad_s",
        "im_wp_rad_s",
        "re_wm_rad_s",
        "im_wm_rad_s",
        "bif_analytic_over_gamma",
        "bif_numeric_over_gamma",
        "collision",
    ]
    rows = zip(
        splits / gamma,
        (plus.real - center) / gamma,
        plus.imag / gamma,
        (minus.real - center) / gamma,
        minus.imag / gamma,
        plus.real * cfg.kappa_si,
        plus.imag * cfg.kappa_si,
        minus.real * cfg.kappa_si,
        minus.imag * cfg.kappa_si,
        [analytic] * splits.size,
        [numeric] * splits.size,
        [collision] * splits.size,
    )
    write_csv(args.out, header, rows)


def cmd_stability(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    spec, drive = _normalized(cfg)
    report = is_stable(drive, spec, cfg.sideband)
    header = [
        "index",
        "re_lambda_over_kappa",
        "im_lambda_over_kappa",
        "stable",
        "margin_over_kappa",
        "margin_rad_s",
        "coupling_sum_over_kappa_sq",
        "damping_product_over_kappa_sq",
    ]
    rows = [
        [
            k,
            lam.real,
            lam.imag,
            report.stable,
            report.margin,
            report.margin * cfg.kappa_si,
            report.coupling_sum,
            report.damping_product,
        ]
        for k, lam in enumerate(report.eigenvalues)
    ]
    write_csv(args.out, header, rows)


def cmd_threshold(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    delta_si = cfg.delta_over_kappa * cfg.kappa_si
    n_values: list[int | None] = list(cfg.threshold_n) if cfg.threshold_n else [None]
    header = ["n_modes", "p_th_analytic_w", "p_th_bisection_w", "n_times_p_analytic_w"]
    rows = []
    for n in n_values:
        result = threshold_power(cfg.spec_si, delta_offset=delta_si, n_override=n)
        rows.append(
            [result.n_modes, result.analytic, result.bisection, result.n_modes * result.analytic]
        )
    write_csv(args.out, header, rows)


def _drawn_system(seed: int) -> tuple[SystemSpec, DerivedDrive, Sideband]:
    """Seeded random stable parameter set for the cross-validation helper."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 3))
    omega_m = float(rng.uniform(5.0, 20.0))
    gamma = float(10.0 ** rng.uniform(-5.0, -3.0))
    kappa_ext = float(rng.uniform(0.5, 1.0))
    spec = SystemSpec(
        kappa_ext=kappa_ext,
        kappa_int=1.0 - kappa_ext,
        omega_cavity=1e8,
        modes=[MechMode(omega=omega_m, gamma=gamma) for _ in range(n)],
    )
    stokes = bool(rng.integers(0, 2))
    sideband = Sideband.STOKES if stokes else Sideband.ANTI_STOKES
    # Total coupling stays below the amplification boundary on the gain side.
    u_total = float(rng.uniform(0.1, 0.85)) if stokes else float(rng.uniform(0.1, 3.0))
    g_each = u_total * np.sqrt(gamma / n)
    offset = float(rng.uniform(-0.3, 0.3))
    drive = derive_drive(
        spec,
        DriveConfig(
            sideband=sideband,
            delta_offset=offset,
            coupling_override=[g_each] * n,
        ),
    )
    return spec, drive, sideband


def cmd_oracle(args: argparse.Namespace) -> None:
    """Demodulated time-domain ratio vs the frequency-domain response."""
    offsets = None
    if args.config is not None:
        cfg = load_config(args.config)
        spec, drive = _normalized(cfg)
        sideband = cfg.sideband
        offsets = cfg.probes_over_gamma
    else:
        spec, drive, sideband = _drawn_system(args.seed)
    if offsets is None:
        if args.points < 1:
            raise BadGrid(f"--points must be >= 1, got {args.points}")
        offsets = np.linspace(-2.0, 2.0, args.points).tolist()
    report = is_stable(drive, spec, sideband)
    if not report.stable:
        raise UnstableSystem(
            f"time-domain cross-check needs a stable system, margin {report.margin!r}"
        )
    t_end = 60.0 / report.margin
    gamma = spec.gamma_mech_mean
    center = sideband.sign * spec.omega_mech_mean
    header = [
        "probe_rel_gamma",
        "probe_over_kappa",
        "re_ratio_time",
        "im_ratio_time",
        "re_r_freq",
        "im_r_freq",
        "abs_diff",
    ]
    rows = []
    for off in offsets:
        omega_p = center + off * gamma
        probe = ProbeDrive(omega_p=omega_p)
        trajectory = integrate(drive, spec, sideband, probe, t_end=t_end)
        ratio = steady_state_output(trajectory, probe)
        expected = complex(response_at(drive, spec, omega_p, sideband))
        rows.append(
            [off, omega_p, ratio.real, ratio.imag, expected.real, expected.imag, abs(ratio - expected)]
        )
    write_csv(args.out, header, rows)


def cmd_preset(args: argparse.Namespace) -> None:
    header, data = preset_table(args.name)
    write_csv(args.out, header, data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momech",
        description="Optical response, collective modes, stability, and lasing threshold of a sideband-driven multimode mechanical cavity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, description: str, *, config: str = "required"):
        p = sub.add_parser(name, help=description, description=description)
        p.set_defaults(handler=handler)
        if config == "required":
            p.add_argument("--config", required=True, help="JSON run configuration")
        elif config == "optional":
            p.add_argument("--config", default=None, help="JSON run configuration")
        p.add_argument("--out", required=True, help="output CSV path")
        return p

    p = add("sweep", cmd_sweep, "response spectrum over a frequency grid")
    p.add_argument("--points", type=int, default=None, help="override grid.npoints")
    add("roots", cmd_roots, "characteristic roots (poles) of the response")
    add("residues", cmd_residues, "pole/residue table with dark-mode flags")
    add("bifurcation", cmd_bifurcation, "two-root collision scan vs mode splitting")
    add("stability", cmd_stability, "drift-matrix eigenvalues and margin")
    add("threshold", cmd_threshold, "instability threshold pump power (SI)")
    p = add("oracle", cmd_oracle, "time-domain vs frequency-domain cross-check", config="optional")
    p.add_argument("--seed", type=int, default=0, help="draw seed when no config is given")
    p.add_argument("--points", type=int, default=5, help="probe count when none configured")
    p = sub.add_parser("preset", help="emit a frozen figure-reproduction table")
    p.set_defaults(handler=cmd_preset)
    p.add_argument("name", choices=PRESET_NAMES)
    p.add_argument("--out", required=True, help="output CSV path")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.handler(args)
    except ConfigError as exc:
        _report(exc)
        return 2
    except NumericError as exc:
        _report(exc)
        return 3
    return 0


def _report(exc: Exception) -> None:
    line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
    print(line, file=sys.stderr)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
