"""Time-domain cross-validation of the frequency-domain response.

A coherent probe tone at rotating-frame frequency omega_p drives the cavity
input; the linearized first-moment system x' = M x + F0 * e^{-i*omega_p*t}
is marched from the vacuum state and the emitted field is demodulated at the
probe frequency once transients have died. The demodulated ratio must
reproduce response_at(omega_p) without sharing any of its algebra, which is
the point of this module.

Integration strategy: substituting y = x * e^{+i*omega_p*t} moves the system
into the probe co-rotating frame, y' = (M + i*omega_p*I) y + F0, where the
forcing is constant and the fast sideband oscillation is absent. The
classical fixed-step RK4 one-step map for this autonomous linear system is
the affine map y -> T y + p with

    T = I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24,
    p = h * (I + hA/2 + (hA)^2/6 + (hA)^3/24) F0,      A = M + i*omega_p*I,

and long horizons are evaluated by composing that map with binary powering,
which reproduces the step-by-step RK4 iterate exactly (same map, same step)
at a cost logarithmic in the step count. Sampled states are rotated back to
the lab rotating frame before they are stored, so trajectories and the
demodulator are frame-agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotConverged, StepTooCoarse, UnstableSystem
from .model import DerivedDrive, Sideband, SystemSpec
from .stability import assemble_drift, is_stable

# Sampled points kept per trajectory regardless of step count.
_TARGET_SAMPLES = 4096


@dataclass
class ProbeDrive:
    """Coherent probe tone on the cavity input.

    omega_p is the rotating-frame probe frequency (signed; Stokes probes sit
    near -omega_m). amplitude is the input field a_in, nonzero.
    """

    omega_p: float
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if self.amplitude == 0:
            raise ValueError("probe amplitude must be nonzero")


@dataclass
class Trajectory:
    """Sampled trajectory in the lab rotating frame.

    states[k] is (a, b_1, ..., b_N) (anti-Stokes) or (a, b_1^dag, ...)
    (Stokes) at times[k]; a_out[k] = sqrt(2*kappa_ext)*a - a_in(t_k).
    """

    times: np.ndarray
    states: np.ndarray
    a_out: np.ndarray

    def __post_init__(self) -> None:
        if not np.all(np.diff(self.times) > 0.0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(self.states)) and np.all(np.isfinite(self.a_out))):
            raise ValueError("trajectory contains non-finite samples")


def _rk4_affine_map(a: np.ndarray, f0: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """One-step RK4 map (T, p) for y' = A y + F0: y_next = T y + p."""
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    ha = h * a
    ha2 = ha @ ha
    ha3 = ha2 @ ha
    ha4 = ha3 @ ha
    t = eye + ha + ha2 / 2.0 + ha3 / 6.0 + ha4 / 24.0
    p = h * (eye + ha / 2.0 + ha2 / 6.0 + ha3 / 24.0) @ f0
    return t, p


def _compose_steps(
    t: np.ndarray, p: np.ndarray, count: int
) -> tuple[np.ndarray, np.ndarray]:
    """Affine map applied `count` times, by binary powering.

    (T, p) composed k times is (T^k, (I + T + ... + T^{k-1}) p), accumulated
    with the doubling identity p_{2k} = T_k p_k + p_k.
    """
    t_acc = np.eye(t.shape[0], dtype=complex)
    p_acc = np.zeros_like(p)
    t_pow, p_pow = t, p
    k = count
    while k > 0:
        if k & 1:
            p_acc = t_pow @ p_acc + p_pow
            t_acc = t_pow @ t_acc
        k >>= 1
        if k:
            p_pow = t_pow @ p_pow + p_pow
            t_pow = t_pow @ t_pow
    return t_acc, p_acc


def rk4_reference_steps(
    a: np.ndarray, f0: np.ndarray, h: float, y0: np.ndarray, n_steps: int
) -> np.ndarray:
    """Explicit stage-by-stage RK4 on y' = A y + F0 (test reference).

    Returns states after each step, shape (n_steps + 1, dim). Exists so the
    composed-map fast path can be pinned against a textbook integrator.
    """
    out = np.empty((n_steps + 1, len(y0)), dtype=complex)
    out[0] = y0
    y = y0.astype(complex)
    for i in range(n_steps):
        k1 = a @ y + f0
        k2 = a @ (y + 0.5 * h * k1) + f0
        k3 = a @ (y + 0.5 * h * k2) + f0
        k4 = a @ (y + h * k3) + f0
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    return out


def _fastest_scale(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband, omega_p: float
) -> float:
    """Largest frequency scale of the probe-frame system."""
    s = sideband.sign
    mech = max(abs(s * m.omega - omega_p) for m in spec.modes)
    return max(spec.kappa, abs(drive.delta - omega_p), mech)


def integrate(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband,
    probe: ProbeDrive,
    t_end: float | None = None,
    dt: float | None = None,
) -> Trajectory:
    """March the probed system from the vacuum state with fixed-step RK4.

    Parameters
    ----------
    t_end:
        Horizon; defaults to 20 / stability margin, which lets transients
        decay by e^-20. Demodulating through steady_state_output at its
        1e-8 drift gate typically needs t_end >= 60 / margin, passed
        explicitly.
    dt:
        Fixed step; defaults to 0.01 / (fastest probe-frame scale). Raises
        StepTooCoarse when larger than that bound, since the RK4 map would
        no longer resolve the fastest retained dynamics.

    Raises
    ------
    UnstableSystem
        If the drift matrix has a non-negative stability margin.
    """
    report = is_stable(drive, spec, sideband)
    if not report.stable:
        raise UnstableSystem(
            f"cannot integrate: stability margin {report.margin!r} <= 0"
        )
    if t_end is None:
        t_end = 20.0 / report.margin
    if not (t_end > 0.0 and math.isfinite(t_end)):
        raise ValueError(f"t_end must be positive and finite, got {t_end}")
    fast = _fastest_scale(drive, spec, sideband, probe.omega_p)
    dt_max = 0.01 / fast
    if dt is None:
        dt = dt_max
    if dt > dt_max * (1.0 + 1e-12):
        raise StepTooCoarse(
            f"dt = {dt!r} exceeds 0.01 / (fastest scale {fast!r})"
        )

    m = assemble_drift(drive, spec, sideband).matrix
    a = m + 1j * probe.omega_p * np.eye(m.shape[0], dtype=complex)
    f0 = np.zeros(m.shape[0], dtype=complex)
    f0[0] = math.sqrt(2.0 * spec.kappa_ext) * probe.amplitude

    n_steps = max(1, math.ceil(t_end / dt))
    stride = max(1, n_steps // _TARGET_SAMPLES)
    n_samples = n_steps // stride
    n_steps = n_samples * stride

    t1, p1 = _rk4_affine_map(a, f0, dt)
    t_s, p_s = _compose_steps(t1, p1, stride)

    dim = m.shape[0]
    probe_frame = np.empty((n_samples + 1, dim), dtype=complex)
    y = np.zeros(dim, dtype=complex)
    probe_frame[0] = y
    for i in range(n_samples):
        y = t_s @ y + p_s
        probe_frame[i + 1] = y

    times = dt * stride * np.arange(n_samples + 1)
    phase = np.exp(-1j * probe.omega_p * times)
    states = probe_frame * phase[:, None]
    a_in = probe.amplitude * phase
    a_out = math.sqrt(2.0 * spec.kappa_ext) * states[:, 0] - a_in
    return Trajectory(times=times, states=states, a_out=a_out)


def free_decay(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband,
    initial_state: np.ndarray,
    t_end: float,
    dt: float | None = None,
) -> Trajectory:
    """Unforced evolution from a given state (probe off).

    Same RK4 map with zero forcing; useful for energy-decay checks. a_out
    reduces to sqrt(2*kappa_ext) * a.
    """
    m = assemble_drift(drive, spec, sideband).matrix
    fast = _fastest_scale(drive, spec, sideband, 0.0)
    dt_max = 0.01 / fast
    if dt is None:
        dt = dt_max
    if dt > dt_max * (1.0 + 1e-12):
        raise StepTooCoarse(
            f"dt = {dt!r} exceeds 0.01 / (fastest scale {fast!r})"
        )
    y = np.asarray(initial_state, dtype=complex)
    if y.shape != (m.shape[0],):
        raise ValueError(
            f"initial_state must have shape ({m.shape[0]},), got {y.shape}"
        )
    n_steps = max(1, math.ceil(t_end / dt))
    stride = max(1, n_steps // _TARGET_SAMPLES)
    n_samples = n_steps // stride
    t1, _ = _rk4_affine_map(m, np.zeros(m.shape[0], dtype=complex), dt)
    t_s, _ = _compose_steps(t1, np.zeros(m.shape[0], dtype=complex), stride)
    states = np.empty((n_samples + 1, m.shape[0]), dtype=complex)
    states[0] = y
    for i in range(n_samples):
        y = t_s @ y
        states[i + 1] = y
    times = dt * stride * np.arange(n_samples + 1)
    a_out = math.sqrt(2.0 * spec.kappa_ext) * states[:, 0]
    return Trajectory(times=times, states=states, a_out=a_out)


def steady_state_output(trajectory: Trajectory, probe: ProbeDrive) -> complex:
    """Demodulated steady-state output/input ratio at the probe frequency.

    Averages a_out(t) * e^{+i*omega_p*t} / a_in over the final quarter of the
    trajectory and insists the preceding quarter agrees to 1e-8 relative
    (window-to-window drift); otherwise the trajectory has not reached steady
    state and NotConverged is raised.
    """
    t = trajectory.times
    span = t[-1] - t[0]
    demod = trajectory.a_out * np.exp(1j * probe.omega_p * t) / probe.amplitude
    last = t >= t[-1] - 0.25 * span
    prev = (t >= t[-1] - 0.5 * span) & ~last
    r_last = complex(np.mean(demod[last]))
    r_prev = complex(np.mean(demod[prev]))
    drift = abs(r_last - r_prev)
    if drift > 1e-8 * max(abs(r_last), 1e-300):
        raise NotConverged(
            f"window-to-window drift {drift!r} exceeds 1e-8 relative to "
            f"|ratio| = {abs(r_last)!r}; lengthen t_end"
        )
    return r_last
