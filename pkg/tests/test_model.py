"""Spec validation and drive derivation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momech import (
    HBAR,
    DriveConfig,
    EmptyModeList,
    InconsistentDrive,
    MechMode,
    NonPositiveFrequency,
    NonPositiveRate,
    Sideband,
    SystemSpec,
    derive_drive,
    validate_spec,
)


def make_spec(**over):
    base = dict(
        kappa_ext=1.0,
        kappa_int=0.0,
        omega_cavity=1e4,
        modes=[MechMode(omega=10.0, gamma=1e-4)],
    )
    base.update(over)
    return SystemSpec(**base)


class TestValidation:
    def test_valid_spec_passes(self):
        validate_spec(make_spec())

    def test_kappa_ext_must_be_positive(self):
        with pytest.raises(NonPositiveRate, match="kappa_ext"):
            make_spec(kappa_ext=0.0)

    def test_kappa_int_may_be_zero_but_not_negative(self):
        make_spec(kappa_int=0.0)
        with pytest.raises(NonPositiveRate, match="kappa_int"):
            make_spec(kappa_int=-0.1)

    def test_omega_cavity_must_be_positive(self):
        with pytest.raises(NonPositiveFrequency, match="omega_cavity"):
            make_spec(omega_cavity=-1.0)

    def test_empty_mode_list_rejected(self):
        with pytest.raises(EmptyModeList):
            make_spec(modes=[])

    def test_mode_errors_name_the_field(self):
        with pytest.raises(NonPositiveFrequency, match="omega"):
            MechMode(omega=0.0, gamma=1.0)
        with pytest.raises(NonPositiveRate, match="gamma"):
            MechMode(omega=1.0, gamma=0.0)

    def test_mode_index_reported_for_bad_list_entry(self):
        spec = make_spec()
        spec.modes.append(MechMode(omega=1.0, gamma=1.0))
        spec.modes[1].gamma = -1.0
        with pytest.raises(NonPositiveRate, match=r"modes\[1\]\.gamma"):
            validate_spec(spec)


class TestDriveConfig:
    def test_exactly_one_strength_channel(self):
        with pytest.raises(InconsistentDrive):
            DriveConfig(sideband=Sideband.STOKES)
        with pytest.raises(InconsistentDrive):
            DriveConfig(
                sideband=Sideband.STOKES, power=1e-9, coupling_override=[0.1]
            )

    def test_coupling_override_must_be_real_nonnegative(self):
        with pytest.raises(InconsistentDrive, match=r"coupling_override\[0\]"):
            DriveConfig(sideband=Sideband.STOKES, coupling_override=[-0.1])

    def test_override_length_checked_against_mode_count(self):
        spec = make_spec()
        config = DriveConfig(
            sideband=Sideband.STOKES, coupling_override=[0.1, 0.1]
        )
        with pytest.raises(InconsistentDrive, match="2 entries for 1 modes"):
            derive_drive(spec, config)


class TestDetuning:
    def test_anti_stokes_detuning_is_mech_frequency_plus_offset(self):
        spec = make_spec()
        drive = derive_drive(
            spec,
            DriveConfig(
                sideband=Sideband.ANTI_STOKES,
                delta_offset=0.25,
                coupling_override=[0.01],
            ),
        )
        assert drive.delta == pytest.approx(10.0 + 0.25, abs=0.0)

    def test_stokes_detuning_is_negative_mech_frequency_plus_offset(self):
        spec = make_spec()
        drive = derive_drive(
            spec,
            DriveConfig(
                sideband=Sideband.STOKES,
                delta_offset=0.25,
                coupling_override=[0.01],
            ),
        )
        assert drive.delta == pytest.approx(-10.0 + 0.25, abs=0.0)

    def test_reference_frequency_defaults_to_mode_mean(self):
        spec = make_spec(
            modes=[
                MechMode(omega=9.0, gamma=1e-4),
                MechMode(omega=11.0, gamma=1e-4),
            ]
        )
        drive = derive_drive(
            spec,
            DriveConfig(
                sideband=Sideband.ANTI_STOKES, coupling_override=[0.01, 0.01]
            ),
        )
        assert drive.delta == pytest.approx(10.0, abs=0.0)

    def test_explicit_reference_frequency_wins(self):
        spec = make_spec()
        drive = derive_drive(
            spec,
            DriveConfig(
                sideband=Sideband.ANTI_STOKES,
                omega_m_ref=12.0,
                coupling_override=[0.01],
            ),
        )
        assert drive.delta == pytest.approx(12.0, abs=0.0)


class TestPowerRoute:
    # SI-ish numbers: microwave cavity at 5 GHz, 10 MHz mechanics.
    def si_spec(self, g0_hz=100.0):
        twopi = 2.0 * math.pi
        return SystemSpec(
            kappa_ext=twopi * 5e5,
            kappa_int=twopi * 5e5,
            omega_cavity=twopi * 5e9,
            modes=[MechMode(omega=twopi * 1e7, gamma=twopi * 100.0, g0=twopi * g0_hz)],
        )

    def test_pump_amplitude_matches_hand_formula(self):
        spec = self.si_spec()
        power = 1e-9
        drive = derive_drive(
            spec, DriveConfig(sideband=Sideband.STOKES, power=power)
        )
        omega_l = spec.omega_cavity - drive.delta
        expected = math.sqrt(2.0 * spec.kappa_ext * power / (HBAR * omega_l))
        assert drive.e_l == pytest.approx(expected, rel=1e-15)

    def test_intracavity_amplitude_balances_pump(self):
        # |alpha| * sqrt(kappa^2 + delta^2) recovers the pump amplitude.
        spec = self.si_spec()
        drive = derive_drive(
            spec, DriveConfig(sideband=Sideband.STOKES, power=1e-9)
        )
        recon = abs(drive.alpha) * math.hypot(spec.kappa, drive.delta)
        assert recon == pytest.approx(drive.e_l, rel=1e-14)

    def test_couplings_are_alpha_times_g0(self):
        spec = self.si_spec()
        drive = derive_drive(
            spec, DriveConfig(sideband=Sideband.STOKES, power=1e-9)
        )
        assert drive.couplings[0] == pytest.approx(
            drive.alpha * spec.modes[0].g0, rel=1e-15
        )

    def test_optical_damping_scales_linearly_in_power(self):
        spec = self.si_spec()
        d1 = derive_drive(spec, DriveConfig(sideband=Sideband.STOKES, power=1e-9))
        d2 = derive_drive(spec, DriveConfig(sideband=Sideband.STOKES, power=3e-9))
        assert d2.gamma_opt[0] / d1.gamma_opt[0] == pytest.approx(3.0, rel=1e-12)

    def test_negative_pump_frequency_rejected(self):
        # Sideband so far detuned the implied pump frequency would go negative.
        spec = self.si_spec()
        config = DriveConfig(
            sideband=Sideband.ANTI_STOKES,
            delta_offset=2.0 * spec.omega_cavity,
            power=1e-9,
        )
        with pytest.raises(NonPositiveFrequency, match="pump"):
            derive_drive(spec, config)

    def test_derivation_is_pure(self):
        spec = self.si_spec()
        config = DriveConfig(sideband=Sideband.STOKES, power=1e-9)
        a = derive_drive(spec, config)
        b = derive_drive(spec, config)
        assert a.delta == b.delta
        assert a.e_l == b.e_l
        assert a.alpha == b.alpha
        assert np.array_equal(a.couplings, b.couplings)
        assert np.array_equal(a.gamma_opt, b.gamma_opt)


@settings(max_examples=100, deadline=None)
@given(
    kappa_ext=st.floats(1e3, 1e8),
    kappa_int=st.floats(0.0, 1e8),
    power=st.floats(1e-15, 1e-3),
    offset_frac=st.floats(-0.5, 0.5),
)
def test_amplitude_identity_holds_across_parameter_space(
    kappa_ext, kappa_int, power, offset_frac
):
    # |alpha| (kappa^2 + delta^2)^(1/2) == e_l, any drive.
    twopi = 2.0 * math.pi
    spec = SystemSpec(
        kappa_ext=kappa_ext,
        kappa_int=kappa_int,
        omega_cavity=twopi * 5e9,
        modes=[MechMode(omega=twopi * 1e7, gamma=twopi * 100.0, g0=twopi * 50.0)],
    )
    config = DriveConfig(
        sideband=Sideband.STOKES,
        delta_offset=offset_frac * spec.kappa,
        power=power,
    )
    drive = derive_drive(spec, config)
    recon = abs(drive.alpha) * math.hypot(spec.kappa, drive.delta)
    assert recon == pytest.approx(drive.e_l, rel=1e-12)
