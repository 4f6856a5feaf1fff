"""Collective mode structure: poles, residues, and the root bifurcation.

The response denominator D(omega) has N+1 complex roots (N mechanical-branch
poles plus one cavity-branch pole). In the sideband-resolved regime
(omega_m >> kappa) the cavity susceptibility is flat across the mechanical
resonances and may be frozen at its sideband-center value chi_c; the N
mechanical poles are then the eigenvalues of the effective mode matrix

    M_eff = diag(s*omega_j - i*gamma_j) - i*s*chi_c * g g^T,   g_j = |G_j|,

a diagonal matrix plus a rank-one coupling mediated by the cavity. s = +1 on
the anti-Stokes side, -1 on the Stokes side. For two modes the eigenvalues
close in radicals:

    omega_pm = (we_1 + we_2)/2 +- sqrt((we_1 - we_2)^2 - 4*chi_c^2*g1^2*g2^2)/2
    we_j     = s*omega_j - i*(gamma_j + s*chi_c*g_j^2)

whose discriminant changes sign at the collective-regime boundary: for mode
splitting below chi_c*g1*g2 the two roots share a real part and split in
decay rate (one superradiant/gain mode, one dark mode); above it they split
in frequency instead. Residues of (R+1)/(2*kappa_ext) at each pole quantify
how strongly the pole couples to the probe; a dark mode has a vanishing one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    DegeneratePoles,
    InconsistentDrive,
    NotDegenerate,
    NumericError,
    WrongModeCount,
)
from .model import DerivedDrive, MechMode, Sideband, SystemSpec

# Relative spread below which modes count as degenerate, poles as colliding.
_DEGENERACY_RTOL = 1e-9
# Residue magnitude (relative to the largest) below which a pole is dark.
_DARK_THRESHOLD = 1e-3


class Approximation(enum.Enum):
    """Root-finding variant.

    CONSTANT_CHI_C: freeze the cavity susceptibility at the sideband center;
    N mechanical-branch roots from the effective mode matrix.
    EXACT: clear denominators of the full D(omega); N+1 roots from the
    companion matrix of the degree-(N+1) monic polynomial.
    """

    CONSTANT_CHI_C = "constant_chi_c"
    EXACT = "exact"


@dataclass
class ModeStructure:
    """Poles and probe-coupling weights of the response.

    decay_rates[k] = -Im(poles[k]); is_dark flags poles whose residue
    magnitude is below 1e-3 of the largest. bifurcation_delta_omega is the
    closed-form collective-regime half-splitting |chi_c|*g1*g2 (None unless
    N = 2).
    """

    poles: np.ndarray
    residues: np.ndarray
    decay_rates: np.ndarray
    is_dark: np.ndarray
    bifurcation_delta_omega: float | None


@dataclass
class BifurcationPoint:
    """Mode-splitting value where the two collective roots collide.

    analytic: closed form |chi_c| * g1 * g2 (equals g1*g2/kappa on resonance).
    numeric: bisected zero of the root-separation discriminant; 0.0 when the
    separation never closes (no collective regime, or asymmetric optical
    damping keeps the roots apart at every real splitting).
    collision: True when the located point is a genuine root collision.
    """

    analytic: float
    numeric: float
    collision: bool


def constant_cavity_susceptibility(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> complex:
    """Cavity susceptibility frozen at the sideband center s*omega_mean.

    Reduces to 1/kappa for resonant sideband driving and stays complex,
    1/(kappa + i*delta_offset), off resonance.
    """
    center = sideband.sign * spec.omega_mech_mean
    return 1.0 / (spec.kappa + 1j * (drive.delta - center))


def _bare_mech_poles(spec: SystemSpec, sideband: Sideband) -> np.ndarray:
    s = sideband.sign
    return np.array(
        [s * m.omega - 1j * m.gamma for m in spec.modes], dtype=complex
    )


def _effective_poles(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> np.ndarray:
    """Single-mode dressed poles we_j = s*omega_j - i*(gamma_j + s*chi_c*g_j^2)."""
    s = sideband.sign
    chi_c = constant_cavity_susceptibility(drive, spec, sideband)
    return _bare_mech_poles(spec, sideband) - 1j * s * chi_c * drive.coupling_mags_sq


def effective_mode_matrix(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> np.ndarray:
    """N x N effective mechanical dynamics matrix (frozen cavity).

    Diagonal of bare rotating-frame poles s*omega_j - i*gamma_j, plus the
    rank-one cavity-mediated coupling -i*s*chi_c*g_i*g_j.
    """
    s = sideband.sign
    chi_c = constant_cavity_susceptibility(drive, spec, sideband)
    g = np.abs(drive.couplings)
    return np.diag(_bare_mech_poles(spec, sideband)) - 1j * s * chi_c * np.outer(g, g)


def _sort_roots(roots: np.ndarray) -> np.ndarray:
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def roots_two_mode_closed_form(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> tuple[complex, complex]:
    """Two-mode collective roots in closed form (frozen cavity).

    Returns (omega_plus, omega_minus) with the square-root branch fixed so
    omega_plus has the larger real part; when the real parts coincide (below
    the bifurcation) omega_plus is the slower-decaying root.

    Raises WrongModeCount unless the system has exactly two modes.
    """
    if spec.n_modes != 2:
        raise WrongModeCount(
            f"closed form needs exactly 2 modes, got {spec.n_modes}"
        )
    chi_c = constant_cavity_susceptibility(drive, spec, sideband)
    g = np.abs(drive.couplings)
    we1, we2 = _effective_poles(drive, spec, sideband)
    disc = (we1 - we2) ** 2 - 4.0 * chi_c**2 * g[0] ** 2 * g[1] ** 2
    sq = np.sqrt(complex(disc))
    if sq.real < 0.0 or (sq.real == 0.0 and sq.imag < 0.0):
        sq = -sq
    half = 0.5 * (we1 + we2)
    return complex(half + 0.5 * sq), complex(half - 0.5 * sq)


def _cleared_polynomial(
    drive: DerivedDrive, spec: SystemSpec, sideband: Sideband
) -> np.ndarray:
    """Monic degree-(N+1) coefficients (low to high) of the cleared D(omega).

    D(omega) * i * prod_j (omega - wj0) =
        (omega - wc0) * prod_j (omega - wj0)
        - s * sum_j |G_j|^2 * prod_{k != j} (omega - wk0)
    with wc0 = delta - i*kappa and wj0 = s*omega_j - i*gamma_j.
    """
    s = sideband.sign
    wc0 = drive.delta - 1j * spec.kappa
    mech = _bare_mech_poles(spec, sideband)
    g_sq = drive.coupling_mags_sq
    poly = npoly.polyfromroots(np.append(mech, wc0))
    for j in range(spec.n_modes):
        others = npoly.polyfromroots(np.delete(mech, j))
        poly = npoly.polyadd(poly, -s * g_sq[j] * others)
    return poly


def characteristic_roots(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband,
    approximation: Approximation,
) -> np.ndarray:
    """Poles of the response on the chosen sideband branch.

    CONSTANT_CHI_C returns the N eigenvalues of the effective mode matrix;
    EXACT returns all N+1 roots of the cleared-denominator polynomial via its
    companion matrix. Either way the roots are sorted by real part
    (ties broken by imaginary part).
    """
    if approximation is Approximation.CONSTANT_CHI_C:
        roots = np.linalg.eigvals(effective_mode_matrix(drive, spec, sideband))
    else:
        coeffs = _cleared_polynomial(drive, spec, sideband)
        roots = np.roots(coeffs[::-1])
    return _sort_roots(np.asarray(roots, dtype=complex))


def residues(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband,
    approximation: Approximation,
) -> ModeStructure:
    """Poles plus residues of (R(omega) + 1) / (2*kappa_ext).

    The cleared rational form is C * Q(omega) / P(omega) with
    Q = prod_j (omega - wj0), P monic with the characteristic roots, and
    C = i (EXACT) or chi_c (CONSTANT_CHI_C); each residue is evaluated
    analytically as C * Q(w_k) / P'(w_k) with P'(w_k) = prod_{m != k}
    (w_k - w_m).

    Raises DegeneratePoles unless all roots are simple with pairwise
    separation above 1e-9 * kappa.
    """
    poles = characteristic_roots(drive, spec, sideband, approximation)
    n = len(poles)
    sep = np.abs(poles[:, None] - poles[None, :])
    np.fill_diagonal(sep, np.inf)
    if np.min(sep) <= _DEGENERACY_RTOL * spec.kappa:
        raise DegeneratePoles(
            f"minimum pole separation {np.min(sep):.3e} is below "
            f"{_DEGENERACY_RTOL:.0e} * kappa"
        )
    mech = _bare_mech_poles(spec, sideband)
    if approximation is Approximation.EXACT:
        scale: complex = 1j
    else:
        scale = constant_cavity_susceptibility(drive, spec, sideband)
    res = np.empty(n, dtype=complex)
    for k in range(n):
        q = np.prod(poles[k] - mech)
        dp = np.prod(poles[k] - np.delete(poles, k))
        res[k] = scale * q / dp
    # Darkness is a property of the mechanical branch: the broadband
    # cavity-branch pole (decay comparable to kappa, EXACT form only) always
    # couples to the probe and would otherwise mask the narrow poles, whose
    # residues are smaller by order gamma_opt/kappa.
    mechanical = -poles.imag < 0.5 * spec.kappa
    reference = np.max(np.abs(res[mechanical])) if np.any(mechanical) else np.max(np.abs(res))
    is_dark = (np.abs(res) < _DARK_THRESHOLD * reference) & mechanical
    bif = None
    if spec.n_modes == 2:
        chi_c = constant_cavity_susceptibility(drive, spec, sideband)
        g = np.abs(drive.couplings)
        bif = float(np.abs(chi_c) * g[0] * g[1])
    return ModeStructure(
        poles=poles,
        residues=res,
        decay_rates=-poles.imag,
        is_dark=is_dark,
        bifurcation_delta_omega=bif,
    )


def bifurcation_point(
    drive: DerivedDrive,
    spec: SystemSpec,
    sideband: Sideband = Sideband.STOKES,
) -> BifurcationPoint:
    """Locate the mode-splitting at which the two collective roots collide.

    The splitting knob dw slides the two mode frequencies to mean +- dw while
    keeping each mode's damping and coupling fixed. The analytic collision
    point is |chi_c|*g1*g2; the numeric one bisects the real root-separation
    measure |we_1 - we_2|^2 - 4*|chi_c*g1*g2|^2 to 1e-9 relative, which equals
    the closed-form discriminant whenever the effective dampings match. The
    two values are cross-asserted when a genuine collision exists.

    Requires N = 2 and resonant sideband driving (zero detuning offset).
    """
    if spec.n_modes != 2:
        raise WrongModeCount(
            f"bifurcation_point needs exactly 2 modes, got {spec.n_modes}"
        )
    omega_ref = spec.omega_mech_mean
    offset = drive.delta - sideband.sign * omega_ref
    if abs(offset) > 1e-9 * spec.kappa:
        raise InconsistentDrive(
            "bifurcation_point requires resonant sideband driving, "
            f"got detuning offset {offset!r}"
        )
    s = sideband.sign
    chi_c = constant_cavity_susceptibility(drive, spec, sideband)
    g = np.abs(drive.couplings)
    gammas = np.array([m.gamma for m in spec.modes], dtype=float)
    analytic = float(np.abs(chi_c) * g[0] * g[1])

    # we_1 - we_2 at splitting dw, mode 1 at omega_ref + dw, mode 2 below.
    def sep_sq_minus_target(dw: float) -> float:
        dwe = (
            s * 2.0 * dw
            - 1j * (gammas[0] - gammas[1])
            - 1j * s * chi_c * (g[0] ** 2 - g[1] ** 2)
        )
        return float(np.abs(dwe) ** 2 - 4.0 * np.abs(chi_c * g[0] * g[1]) ** 2)

    floor = 1e-30 * spec.kappa**2
    f0 = sep_sq_minus_target(0.0)
    if f0 >= 0.0:
        # Roots never approach: either no collective regime (g1*g2 = 0) or
        # mismatched effective dampings hold them apart at every real dw.
        return BifurcationPoint(
            analytic=analytic, numeric=0.0, collision=bool(f0 <= floor)
        )
    hi = max(2.0 * analytic, spec.gamma_mech_mean)
    for _ in range(200):
        if sep_sq_minus_target(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise NumericError("failed to bracket the root-collision point")
    lo = 0.0
    while hi - lo > 1e-9 * hi:
        mid = 0.5 * (lo + hi)
        if sep_sq_minus_target(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    numeric = 0.5 * (lo + hi)

    # Genuine collision also needs the complex discriminant to vanish there.
    dwe = (
        s * 2.0 * numeric
        - 1j * (gammas[0] - gammas[1])
        - 1j * s * chi_c * (g[0] ** 2 - g[1] ** 2)
    )
    disc = dwe**2 - 4.0 * chi_c**2 * g[0] ** 2 * g[1] ** 2
    disc_scale = max(np.abs(dwe) ** 2, 4.0 * np.abs(chi_c * g[0] * g[1]) ** 2)
    collision = bool(np.abs(disc) <= 1e-6 * disc_scale)
    if collision and abs(numeric - analytic) > 1e-6 * max(analytic, 1e-300):
        raise NumericError(
            f"closed-form collision point {analytic!r} and bisected value "
            f"{numeric!r} disagree beyond 1e-6 relative"
        )
    return BifurcationPoint(analytic=analytic, numeric=numeric, collision=collision)


def equivalent_single_mode(
    drive: DerivedDrive, spec: SystemSpec
) -> tuple[SystemSpec, DerivedDrive]:
    """Collapse N degenerate modes into one with coupling sqrt(N) * G.

    The response of N identical modes depends only on sum_j |G_j|^2 * chi(omega)
    = N*|G|^2*chi(omega), so a single mode with coupling sqrt(N)*G reproduces
    it identically. Raises NotDegenerate unless frequencies, dampings, and
    coupling magnitudes all agree to 1e-9 relative.
    """
    omegas = np.array([m.omega for m in spec.modes], dtype=float)
    gammas = np.array([m.gamma for m in spec.modes], dtype=float)
    mags = np.abs(drive.couplings)
    for name, arr in (("omega", omegas), ("gamma", gammas), ("|G|", mags)):
        ref = np.max(np.abs(arr))
        if ref > 0.0 and np.ptp(arr) > _DEGENERACY_RTOL * ref:
            raise NotDegenerate(
                f"mode {name} values spread beyond 1e-9 relative: {arr!r}"
            )
    n = spec.n_modes
    root_n = np.sqrt(float(n))
    mode = MechMode(
        omega=spec.modes[0].omega,
        gamma=spec.modes[0].gamma,
        g0=root_n * spec.modes[0].g0,
    )
    spec_one = SystemSpec(
        kappa_ext=spec.kappa_ext,
        kappa_int=spec.kappa_int,
        omega_cavity=spec.omega_cavity,
        modes=[mode],
    )
    drive_one = DerivedDrive(
        delta=drive.delta,
        e_l=drive.e_l,
        alpha=drive.alpha,
        couplings=np.array([root_n * drive.couplings[0]], dtype=complex),
        gamma_opt=np.array([n * drive.gamma_opt[0]], dtype=float),
    )
    return spec_one, drive_one
