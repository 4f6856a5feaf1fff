"""Collective roots and residues: frozen closed forms, cross-route agreement."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from momech import (
    Approximation,
    DegeneratePoles,
    DriveConfig,
    InconsistentDrive,
    MechMode,
    NotDegenerate,
    Sideband,
    SystemSpec,
    WrongModeCount,
    assemble_drift,
    bifurcation_point,
    characteristic_roots,
    constant_cavity_susceptibility,
    derive_drive,
    effective_mode_matrix,
    equivalent_single_mode,
    residues,
    response_at,
    roots_two_mode_closed_form,
    susceptibilities,
)

KAPPA = 1.0
OMEGA_M = 10.0
GAMMA = 1e-4

# Strong pair, anti-Stokes: each |G|^2 = 2.25*kappa*Gamma, gamma_opt = 2.25*Gamma.
G_ABSORB = 1.5 * np.sqrt(KAPPA * GAMMA)
# Weak pair, Stokes: each |G|^2 = 0.25*kappa*Gamma, gamma_opt = 0.25*Gamma.
G_GAIN = 0.5 * np.sqrt(KAPPA * GAMMA)


def pair_spec(split=0.0, gamma=GAMMA, gamma2=None):
    return SystemSpec(
        kappa_ext=KAPPA,
        kappa_int=0.0,
        omega_cavity=1e4,
        modes=[
            MechMode(omega=OMEGA_M + split, gamma=gamma),
            MechMode(omega=OMEGA_M - split, gamma=gamma2 or gamma),
        ],
    )


def driven(spec, sideband, couplings, delta_offset=0.0):
    if np.isscalar(couplings):
        couplings = [couplings] * spec.n_modes
    config = DriveConfig(
        sideband=sideband,
        delta_offset=delta_offset,
        coupling_override=list(couplings),
    )
    return derive_drive(spec, config)


def scrappy_spec():
    """Three unequal modes, nothing degenerate, nothing symmetric."""
    return SystemSpec(
        kappa_ext=0.7,
        kappa_int=0.3,
        omega_cavity=1e4,
        modes=[
            MechMode(omega=9.5, gamma=1.0e-4),
            MechMode(omega=10.0, gamma=2.0e-4),
            MechMode(omega=10.8, gamma=0.5e-4),
        ],
    )


def assert_root_sets_match(got, expected, tol):
    """Greedy nearest-neighbor pairing; immune to tie-breaking jitter."""
    got = list(np.asarray(got, dtype=complex))
    for w in np.asarray(expected, dtype=complex):
        dists = [abs(w - g) for g in got]
        k = int(np.argmin(dists))
        assert dists[k] <= tol, f"no root within {tol} of {w}: {dists[k]}"
        got.pop(k)
    assert not got


class TestClosedFormRoots:
    def test_degenerate_gain_pair_splits_in_decay_only(self):
        # Equal effective poles, discriminant -4*(G^2/kappa)^2: the plus root
        # decays at Gamma - 2*gamma_opt = 0.5*Gamma, the minus root at Gamma.
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        w_plus, w_minus = roots_two_mode_closed_form(drive, spec, Sideband.STOKES)
        assert w_plus == pytest.approx(-OMEGA_M - 0.5j * GAMMA, abs=1e-15)
        assert w_minus == pytest.approx(-OMEGA_M - 1.0j * GAMMA, abs=1e-15)

    def test_degenerate_absorption_pair_splits_in_decay_only(self):
        # Anti-Stokes: the long-lived root keeps the bare decay Gamma, the
        # superradiant one picks up 2*gamma_opt = 4.5*Gamma on top.
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        w_plus, w_minus = roots_two_mode_closed_form(
            drive, spec, Sideband.ANTI_STOKES
        )
        assert w_plus == pytest.approx(OMEGA_M - 1.0j * GAMMA, abs=1e-15)
        assert w_minus == pytest.approx(OMEGA_M - 5.5j * GAMMA, abs=1e-15)

    def test_well_split_pair_shares_decay_and_splits_in_frequency(self):
        # Splitting 1.25*Gamma is five times the collective boundary
        # 0.25*Gamma, so disc = (6.25 - 0.25)*Gamma^2 > 0: both roots decay at
        # Gamma - gamma_opt = 0.75*Gamma and sit at -omega_m +- sqrt(6)/2*Gamma.
        spec = pair_spec(split=1.25 * GAMMA)
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        w_plus, w_minus = roots_two_mode_closed_form(drive, spec, Sideband.STOKES)
        half_split = 0.5 * np.sqrt(6.0) * GAMMA
        assert w_plus.real == pytest.approx(-OMEGA_M + half_split, abs=1e-12)
        assert w_minus.real == pytest.approx(-OMEGA_M - half_split, abs=1e-12)
        assert -w_plus.imag == pytest.approx(0.75 * GAMMA, rel=1e-12)
        assert -w_minus.imag == pytest.approx(0.75 * GAMMA, rel=1e-12)
        assert w_plus.real > w_minus.real

    def test_rejects_wrong_mode_count(self):
        spec = SystemSpec(
            kappa_ext=KAPPA,
            kappa_int=0.0,
            omega_cavity=1e4,
            modes=[MechMode(omega=OMEGA_M, gamma=GAMMA)],
        )
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        with pytest.raises(WrongModeCount):
            roots_two_mode_closed_form(drive, spec, Sideband.STOKES)


class TestRootRouteAgreement:
    def test_closed_form_matches_eigenvalues_on_seeded_draws(self):
        rng = np.random.default_rng(734512)
        for _ in range(1000):
            omega_m = 10.0 ** rng.uniform(0.7, 1.7)
            gamma = 10.0 ** rng.uniform(-6.0, -3.0)
            u1, u2 = 10.0 ** rng.uniform(-3.0, 0.0, size=2)
            g1 = u1 * np.sqrt(KAPPA * gamma)
            g2 = u2 * np.sqrt(KAPPA * gamma)
            dw = rng.uniform(0.0, 10.0) * g1 * g2 / KAPPA
            sideband = Sideband.STOKES if rng.uniform() < 0.5 else Sideband.ANTI_STOKES
            offset = rng.uniform(-0.5, 0.5) if rng.uniform() < 0.5 else 0.0
            spec = SystemSpec(
                kappa_ext=KAPPA,
                kappa_int=0.0,
                omega_cavity=1e5,
                modes=[
                    MechMode(omega=omega_m + dw, gamma=gamma),
                    MechMode(omega=omega_m - dw, gamma=gamma),
                ],
            )
            drive = driven(spec, sideband, [g1, g2], delta_offset=offset)
            closed = roots_two_mode_closed_form(drive, spec, sideband)
            eig = np.linalg.eigvals(effective_mode_matrix(drive, spec, sideband))
            scale = max(np.max(np.abs(eig)), KAPPA)
            assert_root_sets_match(eig, closed, tol=1e-9 * scale)

    def test_full_roots_match_drift_eigenvalues_times_i(self):
        # Independent route: the response poles are i times the drift matrix
        # eigenvalues, first-moment derivation vs cleared polynomial.
        for spec, sideband, g in [
            (scrappy_spec(), Sideband.ANTI_STOKES, [0.02, 0.011, 0.007]),
            (scrappy_spec(), Sideband.STOKES, [0.004, 0.003, 0.005]),
            (pair_spec(split=1.25 * GAMMA), Sideband.STOKES, G_GAIN),
        ]:
            drive = driven(spec, sideband, g)
            exact = characteristic_roots(
                drive, spec, sideband, Approximation.EXACT
            )
            drift = assemble_drift(drive, spec, sideband)
            expected = 1j * np.linalg.eigvals(drift.matrix)
            assert_root_sets_match(exact, expected, tol=1e-9 * OMEGA_M)

    def test_exact_root_count_and_cavity_branch(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        exact = characteristic_roots(
            drive, spec, Sideband.ANTI_STOKES, Approximation.EXACT
        )
        const = characteristic_roots(
            drive, spec, Sideband.ANTI_STOKES, Approximation.CONSTANT_CHI_C
        )
        assert exact.shape == (3,)
        assert const.shape == (2,)
        cavity = exact[np.argmax(-exact.imag)]
        assert abs(cavity - (drive.delta - 1j * KAPPA)) < 1e-2 * KAPPA

    def test_exact_decay_sum_is_total_dissipation(self):
        # Trace identity: the cleared cubic's decay rates add to kappa + 2*Gamma.
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        exact = characteristic_roots(
            drive, spec, Sideband.ANTI_STOKES, Approximation.EXACT
        )
        assert np.sum(-exact.imag) == pytest.approx(KAPPA + 2.0 * GAMMA, rel=1e-12)

    def test_exact_degenerate_absorption_decays(self):
        # The cleared cubic factors as (w - d)*[(w - wc0)(w - d) - 2G^2] when
        # both modes sit at d: the dark root is d = omega_m - i*Gamma exactly
        # and the quadratic puts the superradiant decay, with no frozen-cavity
        # step, at (kappa + Gamma - sqrt((kappa - Gamma)^2 - 4*sum|G|^2))/2.
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        exact = characteristic_roots(
            drive, spec, Sideband.ANTI_STOKES, Approximation.EXACT
        )
        mech = exact[-exact.imag < 0.5 * KAPPA]
        assert mech.shape == (2,)
        g_sq_total = float(np.sum(drive.coupling_mags_sq))
        bright_decay = 0.5 * (
            KAPPA + GAMMA - np.sqrt((KAPPA - GAMMA) ** 2 - 4.0 * g_sq_total)
        )
        assert_root_sets_match(
            mech,
            [OMEGA_M - 1j * GAMMA, OMEGA_M - 1j * bright_decay],
            tol=1e-7 * KAPPA,
        )

    def test_exact_degenerate_gain_decays(self):
        # Stokes flips the quadratic's constant term, so the narrowed decay
        # is (kappa + Gamma - sqrt((kappa - Gamma)^2 + 4*sum|G|^2))/2.
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        exact = characteristic_roots(
            drive, spec, Sideband.STOKES, Approximation.EXACT
        )
        mech = exact[-exact.imag < 0.5 * KAPPA]
        assert mech.shape == (2,)
        g_sq_total = float(np.sum(drive.coupling_mags_sq))
        gain_decay = 0.5 * (
            KAPPA + GAMMA - np.sqrt((KAPPA - GAMMA) ** 2 + 4.0 * g_sq_total)
        )
        assert_root_sets_match(
            mech,
            [-OMEGA_M - 1j * GAMMA, -OMEGA_M - 1j * gain_decay],
            tol=1e-7 * KAPPA,
        )

    def test_frozen_cavity_approximation_error_is_first_order(self):
        # Freezing the cavity drops terms that add up to a relative decay
        # error of 2*(gamma_opt/kappa)*(Gamma + 2*gamma_opt)/(Gamma + ...),
        # about 4.5*Gamma/kappa here: linear in Gamma/kappa at fixed
        # gamma_opt/Gamma, shrinking tenfold per decade.
        rel_diffs = []
        for gamma in (1e-2, 1e-3, 1e-4):
            spec = pair_spec(gamma=gamma)
            g = 1.5 * np.sqrt(KAPPA * gamma)
            drive = driven(spec, Sideband.ANTI_STOKES, g)
            exact = characteristic_roots(
                drive, spec, Sideband.ANTI_STOKES, Approximation.EXACT
            )
            const = characteristic_roots(
                drive, spec, Sideband.ANTI_STOKES, Approximation.CONSTANT_CHI_C
            )
            bright_exact = np.max(-exact[-exact.imag < 0.5 * KAPPA].imag)
            bright_const = np.max(-const.imag)
            rel_diffs.append(abs(bright_exact - bright_const) / bright_const)
        assert rel_diffs[0] > rel_diffs[1] > rel_diffs[2]
        assert rel_diffs[1] < 5e-3
        assert rel_diffs[2] < 5e-4
        for coarse, fine in zip(rel_diffs, rel_diffs[1:]):
            assert 5.0 < coarse / fine < 20.0

    def test_split_pair_exact_and_frozen_cavity_agree(self):
        spec = pair_spec(split=1.25 * GAMMA)
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        exact = characteristic_roots(
            drive, spec, Sideband.STOKES, Approximation.EXACT
        )
        const = characteristic_roots(
            drive, spec, Sideband.STOKES, Approximation.CONSTANT_CHI_C
        )
        mech = exact[-exact.imag < 0.5 * KAPPA]
        assert_root_sets_match(mech, const, tol=1e-7 * KAPPA)


class TestResidues:
    def test_degenerate_gain_pair_residues_and_flags(self):
        # Partial fractions of chi_c*Q/P: the dark combination decouples with
        # residue exactly zero, the amplified one carries 2*i*chi_c^2*G^2.
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        ms = residues(drive, spec, Sideband.STOKES, Approximation.CONSTANT_CHI_C)
        order = np.argsort(-np.abs(ms.residues))
        bright, dark = order[0], order[1]
        g_sq_total = float(np.sum(drive.coupling_mags_sq))
        assert ms.residues[bright] == pytest.approx(
            1j * g_sq_total / KAPPA**2, rel=1e-8
        )
        assert abs(ms.residues[dark]) <= 1e-12 * abs(ms.residues[bright])
        assert ms.is_dark[dark] and not ms.is_dark[bright]
        assert ms.decay_rates[bright] == pytest.approx(0.5 * GAMMA, rel=1e-9)
        assert ms.decay_rates[dark] == pytest.approx(GAMMA, rel=1e-9)
        assert ms.bifurcation_delta_omega == pytest.approx(0.25 * GAMMA, rel=1e-12)

    def test_exact_form_keeps_cavity_pole_bright(self):
        # The broadband cavity pole carries an O(1) residue; it must neither
        # be flagged dark nor hide the darkness of the decoupled mech pole.
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        ms = residues(drive, spec, Sideband.ANTI_STOKES, Approximation.EXACT)
        cavity = int(np.argmax(ms.decay_rates))
        assert abs(ms.residues[cavity]) == pytest.approx(1.0, rel=1e-2)
        assert not ms.is_dark[cavity]
        mech = [k for k in range(3) if k != cavity]
        mags = np.abs(ms.residues[mech])
        dark, bright = mech[int(np.argmin(mags))], mech[int(np.argmax(mags))]
        assert ms.is_dark[dark] and not ms.is_dark[bright]
        # Superradiant residue -i*gamma_opt_total/kappa to leading order.
        g_sq_total = float(np.sum(drive.coupling_mags_sq))
        assert ms.residues[bright] == pytest.approx(
            -1j * g_sq_total / KAPPA**2, rel=1e-2
        )

    def test_exact_residues_sum_to_i(self):
        # deg Q = deg P - 1 with both monic up to the i prefactor, so the
        # residues of i*Q/P add to exactly i whatever the parameters.
        spec = scrappy_spec()
        drive = driven(spec, Sideband.STOKES, [0.004, 0.003, 0.005])
        ms = residues(drive, spec, Sideband.STOKES, Approximation.EXACT)
        assert np.sum(ms.residues) == pytest.approx(1j, rel=1e-8)

    def test_frozen_cavity_residue_sum_rule(self):
        # sum_k A_k = -i * s * chi_c^2 * sum_j |G_j|^2 on either sideband.
        for sideband, g in [
            (Sideband.ANTI_STOKES, [0.02, 0.011, 0.007]),
            (Sideband.STOKES, [0.004, 0.003, 0.005]),
        ]:
            spec = scrappy_spec()
            drive = driven(spec, sideband, g, delta_offset=0.07)
            chi_c = constant_cavity_susceptibility(drive, spec, sideband)
            ms = residues(drive, spec, sideband, Approximation.CONSTANT_CHI_C)
            expected = -1j * sideband.sign * chi_c**2 * np.sum(
                drive.coupling_mags_sq
            )
            assert np.sum(ms.residues) == pytest.approx(expected, rel=1e-8)

    def test_exact_partial_fractions_rebuild_the_response(self):
        # Complete oracle: summing A_k/(w - w_k) over all N+1 poles must
        # reproduce (R+1)/(2*kappa_ext) from the direct formula everywhere.
        spec = scrappy_spec()
        for sideband, g in [
            (Sideband.ANTI_STOKES, [0.02, 0.011, 0.007]),
            (Sideband.STOKES, [0.004, 0.003, 0.005]),
        ]:
            drive = driven(spec, sideband, g)
            ms = residues(drive, spec, sideband, Approximation.EXACT)
            center = sideband.sign * spec.omega_mech_mean
            w = np.linspace(center - 1.0, center + 1.0, 2001)
            rebuilt = 2.0 * spec.kappa_ext * np.sum(
                ms.residues[:, None] / (w[None, :] - ms.poles[:, None]), axis=0
            ) - 1.0
            direct = response_at(drive, spec, w, sideband)
            # Pole locations carry companion-matrix noise of order 1e-11 that
            # the near-resonant points amplify by |A|/depth^2; 1e-6 still
            # pins six digits of every residue.
            scale = 1.0 + np.max(np.abs(direct))
            assert np.max(np.abs(rebuilt - direct)) <= 1e-6 * scale

    def test_frozen_cavity_partial_fractions_rebuild_frozen_response(self):
        # Same oracle against the frozen-chi_c response assembled inline from
        # the susceptibilities, a different arithmetic path entirely.
        spec = scrappy_spec()
        sideband = Sideband.STOKES
        drive = driven(spec, sideband, [0.004, 0.003, 0.005])
        ms = residues(drive, spec, sideband, Approximation.CONSTANT_CHI_C)
        chi_c = constant_cavity_susceptibility(drive, spec, sideband)
        center = sideband.sign * spec.omega_mech_mean
        w = np.linspace(center - 0.05, center + 0.05, 1001)
        _, chi_m = susceptibilities(drive, spec, w, sideband)
        mech = np.tensordot(drive.coupling_mags_sq, chi_m, axes=(0, 0))
        direct = 1.0 / (1.0 / chi_c + sideband.sign * mech)
        rebuilt = chi_c + np.sum(
            ms.residues[:, None] / (w[None, :] - ms.poles[:, None]), axis=0
        )
        assert np.max(np.abs(rebuilt - direct)) <= 1e-8 * np.max(np.abs(direct))

    def test_dark_residue_scales_with_splitting_squared(self):
        # Slightly split gain pair: |A_minus|/|A_plus| = dw^2/(4*gamma_opt^2)
        # up to O(dw^2/gamma_opt^2) corrections.
        gamma_opt = 0.25 * GAMMA
        dw = 1e-3 * gamma_opt
        spec = pair_spec(split=dw)
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        ms = residues(drive, spec, Sideband.STOKES, Approximation.CONSTANT_CHI_C)
        w_plus, w_minus = roots_two_mode_closed_form(drive, spec, Sideband.STOKES)
        a = {}
        for label, pole in (("plus", w_plus), ("minus", w_minus)):
            k = int(np.argmin(np.abs(ms.poles - pole)))
            a[label] = ms.residues[k]
        ratio = abs(a["minus"]) / abs(a["plus"])
        assert ratio == pytest.approx(dw**2 / (4.0 * gamma_opt**2), rel=1e-4)
        assert ratio < 1e-2

    def test_residue_magnitudes_equalize_above_the_bifurcation(self):
        # Symmetric split pair above the boundary: Q at the two poles are
        # complex conjugates, so the magnitudes match identically.
        gamma_opt = 0.25 * GAMMA
        for dw in (1.25 * GAMMA, 10.0 * gamma_opt):
            spec = pair_spec(split=dw)
            drive = driven(spec, Sideband.STOKES, G_GAIN)
            ms = residues(
                drive, spec, Sideband.STOKES, Approximation.CONSTANT_CHI_C
            )
            mags = np.sort(np.abs(ms.residues))
            assert mags[1] / mags[0] == pytest.approx(1.0, rel=1e-9)
            assert not np.any(ms.is_dark)

    def test_collided_poles_are_rejected(self):
        # Two uncoupled identical modes give a genuinely repeated pole.
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, 0.0)
        with pytest.raises(DegeneratePoles):
            residues(drive, spec, Sideband.STOKES, Approximation.CONSTANT_CHI_C)


class TestBifurcationLocator:
    def test_symmetric_gain_pair_collides_at_quarter_gamma(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        bp = bifurcation_point(drive, spec, Sideband.STOKES)
        assert bp.analytic == pytest.approx(0.25 * GAMMA, rel=1e-12)
        assert bp.numeric == pytest.approx(bp.analytic, rel=1e-6)
        assert bp.collision

    def test_symmetric_absorption_pair_collides_at_gamma_opt(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.ANTI_STOKES, G_ABSORB)
        bp = bifurcation_point(drive, spec, Sideband.ANTI_STOKES)
        assert bp.analytic == pytest.approx(2.25 * GAMMA, rel=1e-12)
        assert bp.numeric == pytest.approx(bp.analytic, rel=1e-6)
        assert bp.collision

    def test_single_coupled_mode_never_bifurcates(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, [0.0, G_GAIN])
        bp = bifurcation_point(drive, spec, Sideband.STOKES)
        assert bp.analytic == 0.0
        assert bp.numeric == 0.0
        assert not bp.collision

    def test_unequal_couplings_cross_without_colliding(self):
        # g1^2 = 2*g2^2: the real separation closes at
        # chi_c*g2^2*sqrt(7)/2 but the complex discriminant stays away from
        # zero, so the closest approach is not a collision.
        g2 = G_GAIN
        g1 = np.sqrt(2.0) * g2
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, [g1, g2])
        bp = bifurcation_point(drive, spec, Sideband.STOKES)
        expected = (g2**2 / KAPPA) * np.sqrt(7.0) / 2.0
        assert bp.numeric == pytest.approx(expected, rel=1e-6)
        assert not bp.collision
        assert bp.analytic == pytest.approx(np.sqrt(2.0) * g2**2 / KAPPA, rel=1e-12)

    def test_unequal_dampings_keep_roots_apart(self):
        # gamma_1 - gamma_2 = Gamma exceeds 2*chi_c*g^2 = 0.5*Gamma: the
        # separation never closes at any real splitting.
        spec = pair_spec(gamma=2.0 * GAMMA, gamma2=GAMMA)
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        bp = bifurcation_point(drive, spec, Sideband.STOKES)
        assert bp.numeric == 0.0
        assert not bp.collision

    def test_rejects_off_resonant_drive(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, G_GAIN, delta_offset=0.1 * KAPPA)
        with pytest.raises(InconsistentDrive):
            bifurcation_point(drive, spec, Sideband.STOKES)

    def test_rejects_wrong_mode_count(self):
        spec = scrappy_spec()
        drive = driven(spec, Sideband.STOKES, [0.004, 0.003, 0.005])
        with pytest.raises(WrongModeCount):
            bifurcation_point(drive, spec, Sideband.STOKES)

    def test_detuned_drive_lifts_the_collision(self):
        # With a 0.1*kappa offset chi_c^2 leaves the positive real axis, so
        # the discriminant keeps a nonzero imaginary part at every real
        # splitting; closest approach of the roots is about 0.22*Gamma.
        min_sep = np.inf
        for dw in np.linspace(0.0, 0.5 * GAMMA, 401):
            spec = pair_spec(split=dw)
            drive = driven(spec, Sideband.STOKES, G_GAIN, delta_offset=0.1 * KAPPA)
            w_plus, w_minus = roots_two_mode_closed_form(
                drive, spec, Sideband.STOKES
            )
            min_sep = min(min_sep, abs(w_plus - w_minus))
        assert 0.2 * GAMMA < min_sep < 0.25 * GAMMA


class TestEquivalentSingleMode:
    def test_rejects_split_frequencies(self):
        spec = pair_spec(split=1.25 * GAMMA)
        drive = driven(spec, Sideband.STOKES, G_GAIN)
        with pytest.raises(NotDegenerate):
            equivalent_single_mode(drive, spec)

    def test_rejects_unequal_couplings(self):
        spec = pair_spec()
        drive = driven(spec, Sideband.STOKES, [G_GAIN, 2.0 * G_GAIN])
        with pytest.raises(NotDegenerate):
            equivalent_single_mode(drive, spec)


@st.composite
def frozen_cavity_cases(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    omegas = [
        draw(st.floats(min_value=5.0, max_value=50.0)) for _ in range(n)
    ]
    gammas = [
        draw(st.floats(min_value=1e-5, max_value=1e-3)) for _ in range(n)
    ]
    # Capped so no Stokes draw can push a pole near the real axis, which
    # would amplify eigenvalue noise beyond the reconstruction tolerance.
    couplings = [
        draw(st.floats(min_value=0.0, max_value=1e-3)) for _ in range(n)
    ]
    sideband = draw(st.sampled_from(list(Sideband)))
    offset = draw(st.floats(min_value=-0.3, max_value=0.3))
    return omegas, gammas, couplings, sideband, offset


@given(frozen_cavity_cases())
@settings(max_examples=50, deadline=None)
def test_frozen_cavity_partial_fractions_hold_for_random_systems(case):
    omegas, gammas, couplings, sideband, offset = case
    spec = SystemSpec(
        kappa_ext=KAPPA,
        kappa_int=0.0,
        omega_cavity=1e4,
        modes=[MechMode(omega=w, gamma=g) for w, g in zip(omegas, gammas)],
    )
    drive = driven(spec, sideband, couplings, delta_offset=offset)
    try:
        ms = residues(drive, spec, sideband, Approximation.CONSTANT_CHI_C)
    except DegeneratePoles:
        assume(False)
    seps = np.abs(ms.poles[:, None] - ms.poles[None, :])
    np.fill_diagonal(seps, np.inf)
    assume(np.min(seps) > 1e-3 * min(gammas))
    chi_c = constant_cavity_susceptibility(drive, spec, sideband)
    center = sideband.sign * spec.omega_mech_mean
    halfwidth = 0.5 * (max(omegas) - min(omegas)) + 50.0 * max(gammas)
    w = np.linspace(center - halfwidth, center + halfwidth, 201)
    _, chi_m = susceptibilities(drive, spec, w, sideband)
    mech = np.tensordot(drive.coupling_mags_sq, chi_m, axes=(0, 0))
    direct = 1.0 / (1.0 / chi_c + sideband.sign * mech)
    rebuilt = chi_c + np.sum(
        ms.residues[:, None] / (w[None, :] - ms.poles[:, None]), axis=0
    )
    assert np.max(np.abs(rebuilt - direct)) <= 1e-6 * (
        1.0 + np.max(np.abs(direct))
    )
