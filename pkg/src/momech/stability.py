"""Linear stability and the phonon-lasing threshold.

The first-moment dynamics close on the vector x = (a, b_1, ..., b_N) on the
anti-Stokes side and x = (a, b_1^dag, ..., b_N^dag) on the Stokes side,
x' = M x. The anti-Stokes drift is dissipative plus i*(Hermitian) and is
therefore stable at any coupling; the Stokes drift contains the
parametric-gain pairing and destabilizes once the collective coupling
overwhelms the geometric mean of the dampings. For degenerate modes driven
on the Stokes sideband resonance the boundary is exactly

    sum_j |G_j|^2 = mean(gamma_j) * kappa,

which converts to a pump power threshold scaling as 1/N: superradiant
reduction of the lasing threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentDrive, NotDegenerate, NumericError, WrongModeCount
from .model import (
    HBAR,
    DerivedDrive,
    DriveConfig,
    MechMode,
    Sideband,
    SystemSpec,
    derive_drive,
)


@dataclass
class DriftMatrix:
    """Drift matrix of the linearized first-moment equations.

    matrix[0, 0] = -(kappa + i*delta); matrix[j, j] is the rotating-frame
    mechanical pole, -(gamma_j + i*omega_j) on the anti-Stokes side and
    -(gamma_j - i*omega_j) on the Stokes side; the couplings sit at
    matrix[0, j] = +i*G_j and matrix[j, 0] = +i*conj(G_j) (anti-Stokes) or
    -i*conj(G_j) (Stokes).
    """

    matrix: np.ndarray
    sideband: Sideband

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted by decreasing real part."""
        vals = np.linalg.eigvals(self.matrix)
        return vals[np.argsort(-vals.real, kind="stable")]


@dataclass
class StabilityReport:
    """Eigenvalue verdict plus the degenerate closed-form comparison.

    margin = -max Re(eigenvalue): positive means stable. coupling_sum and
    damping_product report sum_j |G_j|^2 and mean(gamma_j)*kappa, whose
    ordering reproduces the verdict for degenerate resonant Stokes driving.
    """

    stable: bool
    margin: float
    eigenvalues: np.ndarray
    coupling_sum: float
    damping_product: float


@dataclass
class ThresholdResult:
    """Pump power at the lasing instability.

    analytic: hbar*omega_l*(kappa^2 + delta^2)*mean(gamma)*kappa
    / (2*kappa_ext*N*g0^2). bisection: eigenvalue-margin sign change located
    to 1e-6 relative. n_modes: the N the threshold refers to.
    """

    analytic: float
    bisection: float
    n_modes: int


def assemble_drift(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> DriftMatrix:
    """Build the (N+1) x (N+1) complex drift matrix."""
    n = spec.n_modes
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[0, 0] = -(spec.kappa + 1j * drive.delta)
    for j, mode in enumerate(spec.modes, start=1):
        g = drive.couplings[j - 1]
        m[0, j] = 1j * g
        if sideband is Sideband.ANTI_STOKES:
            m[j, j] = -(mode.gamma + 1j * mode.omega)
            m[j, 0] = 1j * np.conj(g)
        else:
            m[j, j] = -(mode.gamma - 1j * mode.omega)
            m[j, 0] = -1j * np.conj(g)
    return DriftMatrix(matrix=m, sideband=sideband)


def is_stable(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> StabilityReport:
    """Eigenvalue stability of the drift matrix.

    Also reports the degenerate closed-form quantities sum_j |G_j|^2 and
    mean(gamma_j)*kappa; their ordering agrees with the eigenvalue sign for
    degenerate modes driven on the Stokes sideband resonance (exactly so,
    not just asymptotically, which the tests pin down).
    """
    drift = assemble_drift(drive, spec, sideband)
    vals = drift.eigenvalues
    margin = -float(np.max(vals.real))
    return StabilityReport(
        stable=bool(margin > 0.0),
        margin=margin,
        eigenvalues=vals,
        coupling_sum=float(np.sum(drive.coupling_mags_sq)),
        damping_product=spec.gamma_mech_mean * spec.kappa,
    )


def _characteristic_coefficients(matrix: np.ndarray) -> np.ndarray:
    """det(lambda*I - A) coefficients, high power first, via trace recursion.

    Faddeev-LeVerrier: c_0 = 1, B_0 = I;
    c_k = -tr(A @ B_{k-1}) / k, B_k = A @ B_{k-1} + c_k * I.
    Pure matrix products, no eigendecomposition, so the Routh-Hurwitz verdict
    built on top is an independent route to stability.
    """
    n = matrix.shape[0]
    coeffs = np.empty(n + 1, dtype=matrix.dtype)
    coeffs[0] = 1.0
    b = np.eye(n, dtype=matrix.dtype)
    for k in range(1, n + 1):
        ab = matrix @ b
        c = -np.trace(ab) / k
        coeffs[k] = c
        b = ab + c * np.eye(n, dtype=matrix.dtype)
    return coeffs


def routh_hurwitz_stable(drift: DriftMatrix) -> bool:
    """Routh-Hurwitz verdict on the drift matrix (cross-check, N <= 3).

    The complex system is realified as [[Re, -Im], [Im, Re]], giving a real
    characteristic polynomial of degree 2*(N+1); stability then reads off the
    first column of the Routh table. Marginal cases (a zero first-column
    entry) raise, since the table test is undefined there.
    """
    m = drift.matrix
    n = m.shape[0] - 1
    if n > 3:
        raise WrongModeCount(
            f"Routh-Hurwitz cross-check supports N <= 3 modes, got {n}"
        )
    real_block = np.block([[m.real, -m.imag], [m.imag, m.real]])
    coeffs = _characteristic_coefficients(real_block).real
    return _routh_first_column_positive(coeffs)


def _routh_first_column_positive(coeffs: np.ndarray) -> bool:
    """First-column Routh test for a real polynomial, high power first."""
    c = np.asarray(coeffs, dtype=float)
    if c[0] < 0.0:
        c = -c
    deg = len(c) - 1
    width = (deg + 2) // 2
    rows = np.zeros((deg + 1, width))
    rows[0, : len(c[0::2])] = c[0::2]
    rows[1, : len(c[1::2])] = c[1::2]
    for i in range(2, deg + 1):
        pivot = rows[i - 1, 0]
        if pivot == 0.0:
            raise NumericError(
                "Routh table pivot vanished; system is marginal or the "
                "polynomial is degenerate"
            )
        for j in range(width - 1):
            rows[i, j] = (
                rows[i - 1, 0] * rows[i - 2, j + 1]
                - rows[i - 2, 0] * rows[i - 1, j + 1]
            ) / pivot
    first = rows[: deg + 1, 0]
    return bool(np.all(first[1:] > 0.0))


def threshold_power(
    spec: SystemSpec,
    delta_offset: float = 0.0,
    n_override: int | None = None,
) -> ThresholdResult:
    """Pump power at which Stokes driving destabilizes degenerate modes.

    Closed form with Delta = -omega_m + delta_offset and omega_l =
    omega_cavity - Delta:

        P_th = hbar * omega_l * (kappa^2 + Delta^2) * mean(gamma) * kappa
               / (2 * kappa_ext * N * g0^2)

    verified by bisecting the eigenvalue stability margin in pump power to
    1e-6 relative. n_override clones the (single, degenerate) mode species to
    a different count before computing, which is how the 1/N scaling is
    exercised without rebuilding specs by hand.

    Requires degenerate modes (frequencies, dampings, and g0 equal to 1e-9
    relative) with g0 > 0; expects absolute SI units since hbar enters.
    """
    omegas = np.array([m.omega for m in spec.modes], dtype=float)
    gammas = np.array([m.gamma for m in spec.modes], dtype=float)
    g0s = np.array([m.g0 for m in spec.modes], dtype=float)
    for name, arr in (("omega", omegas), ("gamma", gammas), ("g0", g0s)):
        ref = np.max(np.abs(arr))
        if ref > 0.0 and np.ptp(arr) > 1e-9 * ref:
            raise NotDegenerate(
                f"threshold needs degenerate modes; {name} spread: {arr!r}"
            )
    g0 = float(g0s[0])
    if not g0 > 0.0:
        raise InconsistentDrive(f"threshold needs g0 > 0, got {g0}")

    n = n_override if n_override is not None else spec.n_modes
    if n < 1:
        raise WrongModeCount(f"n_override must be >= 1, got {n}")
    if n != spec.n_modes:
        mode = spec.modes[0]
        spec = SystemSpec(
            kappa_ext=spec.kappa_ext,
            kappa_int=spec.kappa_int,
            omega_cavity=spec.omega_cavity,
            modes=[
                MechMode(omega=mode.omega, gamma=mode.gamma, g0=mode.g0)
                for _ in range(n)
            ],
        )

    omega_m = spec.omega_mech_mean
    delta = -omega_m + delta_offset
    omega_l = spec.omega_cavity - delta
    gamma = spec.gamma_mech_mean
    kappa = spec.kappa
    analytic = (
        HBAR
        * omega_l
        * (kappa**2 + delta**2)
        * gamma
        * kappa
        / (2.0 * spec.kappa_ext * n * g0**2)
    )

    def margin(power: float) -> float:
        config = DriveConfig(
            sideband=Sideband.STOKES, delta_offset=delta_offset, power=power
        )
        drive = derive_drive(spec, config)
        return is_stable(drive, spec, Sideband.STOKES).margin

    lo, hi = 0.5 * analytic, 1.5 * analytic
    for _ in range(200):
        if margin(lo) > 0.0:
            break
        lo *= 0.5
    else:
        raise NumericError("failed to bracket threshold from below")
    for _ in range(200):
        if margin(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise NumericError("failed to bracket threshold from above")
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(
        analytic=analytic, bisection=0.5 * (lo + hi), n_modes=n
    )
