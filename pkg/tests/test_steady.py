"""Steady-state amplitudes, thermal occupations, drive calibration."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magnocool.constants import HBAR, KB, TWO_PI
from magnocool.errors import ConvergenceError, ParameterError
from magnocool.params import Detunings, SystemParams
from magnocool.steady import (
    bose_occupation,
    effective_coupling,
    rabi_for_target_coupling,
    resonant_steady_state,
    steady_state,
    thermal_occupations,
)
from tests.conftest import make_point


def make_system(**overrides) -> SystemParams:
    fields = dict(
        omega_a=TWO_PI * 10e9,
        omega_m=TWO_PI * 10e9,
        omega_b=TWO_PI * 10e6,
        gamma_b=TWO_PI * 100.0,
        kappa_a=TWO_PI * 5e6,
        kappa_m=TWO_PI * 10e6,
        g_a=TWO_PI * 18e6,
        g_m=TWO_PI * 0.01,
        rabi=0.0,
        omega_0=TWO_PI * 10e9,
        T=0.010,
        eta=0.9,
    )
    fields.update(overrides)
    return SystemParams(**fields)


# -- Bose occupation ---------------------------------------------------------

# frozen against 1 / (exp(hbar omega / kB T) - 1) at omega_b = 2 pi x 10 MHz
FROZEN_N_B = {
    0.010: 20.340618351800995,
    4.0: 8334.14766443625,
    293.0: 610512.4406877074,
}


@pytest.mark.parametrize("T,expected", sorted(FROZEN_N_B.items()))
def test_bose_occupation_frozen_values(T, expected):
    omega = TWO_PI * 10e6
    assert math.isclose(bose_occupation(omega, T), expected, rel_tol=1e-12)
    # and against a from-scratch evaluation of the same closed form
    assert math.isclose(bose_occupation(omega, T),
                        1.0 / math.expm1(HBAR * omega / (KB * T)),
                        rel_tol=1e-12)


def test_bose_occupation_edge_cases():
    assert bose_occupation(TWO_PI * 10e6, 0.0) == 0.0
    # a 10 GHz mode at 10 mK is frozen out to below 1e-20 quanta
    assert bose_occupation(TWO_PI * 10e9, 0.010) < 1e-20
    with pytest.raises(ParameterError):
        bose_occupation(0.0, 1.0)
    with pytest.raises(ParameterError):
        bose_occupation(TWO_PI * 10e6, -1.0)


@given(T=st.floats(1e-4, 1e3), factor=st.floats(1.01, 1e3))
@settings(max_examples=50, deadline=None)
def test_bose_occupation_monotonic(T, factor):
    omega = TWO_PI * 10e6
    # increasing temperature adds quanta, increasing frequency removes them
    assert bose_occupation(omega, T * factor) > bose_occupation(omega, T)
    assert bose_occupation(omega * factor, T) < bose_occupation(omega, T)


def test_thermal_occupations_uses_each_mode_frequency():
    occ = thermal_occupations(make_point(T=4.0))
    assert math.isclose(occ.n_b, FROZEN_N_B[4.0], rel_tol=1e-12)
    assert occ.n_a == occ.n_m  # degenerate 10 GHz modes
    assert math.isclose(occ.n_a, 7.844643679458342, rel_tol=1e-12)
    # at 10 mK the gigahertz modes are frozen out while the mechanics is not
    cold = thermal_occupations(make_point())
    assert cold.n_a < 1e-20 and cold.n_b > 20.0


# -- Resonant closed form ----------------------------------------------------

def test_resonant_amplitudes_closed_form():
    params = make_system(rabi=1e10)
    ss, det = resonant_steady_state(params)
    denom = params.g_a**2 + params.kappa_a * params.kappa_m
    # magnon amplitude is real and positive, cavity purely imaginary
    assert ss.mean_m.imag == 0.0
    assert math.isclose(ss.mean_m.real, params.rabi * params.kappa_a / denom,
                        rel_tol=1e-12)
    assert ss.mean_a.real == 0.0
    assert math.isclose(ss.mean_a.imag,
                        -params.g_a * params.rabi / denom, rel_tol=1e-12)
    # static displacement follows the magnon population
    assert math.isclose(ss.mean_q,
                        -params.g_m * abs(ss.mean_m) ** 2 / params.omega_b,
                        rel_tol=1e-12)
    assert ss.mean_p == 0.0
    # the drive detunings absorb the static shift: effective detuning is zero
    assert abs(ss.delta_m_tilde) <= 1e-9 * params.kappa_m
    assert det.delta_a == 0.0


def test_zero_drive_is_dark():
    ss, _ = resonant_steady_state(make_system(rabi=0.0))
    assert ss.mean_a == 0 and ss.mean_m == 0 and ss.mean_q == 0.0


def test_effective_coupling_scales_with_amplitude():
    params = make_system()
    assert effective_coupling(params, 0.0) == 0.0
    assert math.isclose(effective_coupling(params, 1e8),
                        math.sqrt(2.0) * params.g_m * 1e8, rel_tol=1e-14)
    # the modulus enters, not the phase
    assert math.isclose(effective_coupling(params, 1e8 * 1j),
                        effective_coupling(params, 1e8), rel_tol=1e-14)


# -- Drive calibration round trip --------------------------------------------

@pytest.mark.parametrize("G_m_hz", [0.5e6, 2e6, 4e6])
def test_rabi_round_trip(G_m_hz):
    params = make_system()
    target = TWO_PI * G_m_hz
    drive = rabi_for_target_coupling(params, target)
    ss, _ = resonant_steady_state(make_system(rabi=drive))
    achieved = effective_coupling(params, ss.mean_m)
    assert math.isclose(achieved, target, rel_tol=1e-12)


def test_rabi_calibration_edges():
    params = make_system()
    assert rabi_for_target_coupling(params, 0.0) == 0.0
    with pytest.raises(ParameterError):
        rabi_for_target_coupling(params, -1.0)
    with pytest.raises(ParameterError):
        rabi_for_target_coupling(make_system(g_m=0.0), TWO_PI * 1e6)


# -- General fixed-point solve ----------------------------------------------

def test_detuned_solve_satisfies_self_consistency():
    params = make_system(rabi=1e11)
    det = Detunings(delta_a=TWO_PI * 1e6, delta_m=TWO_PI * 3e6)
    ss = steady_state(params, det)
    # the solved effective detuning must equal the bare one plus the shift
    assert math.isclose(ss.delta_m_tilde,
                        det.delta_m + params.g_m * ss.mean_q,
                        rel_tol=1e-10, abs_tol=1e-6 * params.kappa_m)


def test_detuned_solve_matches_resonant_branch():
    params = make_system(rabi=1e10)
    res, det = resonant_steady_state(params)
    gen = steady_state(params, det)
    assert math.isclose(gen.mean_m.real, res.mean_m.real, rel_tol=1e-9)
    assert abs(gen.mean_m.imag) <= 1e-9 * abs(res.mean_m)


@given(
    drive=st.floats(1e6, 1e11),
    delta_hz=st.floats(-5e6, 5e6),
)
@settings(max_examples=30, deadline=None)
def test_fixed_point_property(drive, delta_hz):
    params = make_system(rabi=drive)
    det = Detunings(delta_a=TWO_PI * delta_hz, delta_m=TWO_PI * delta_hz)
    ss = steady_state(params, det)
    residual = ss.delta_m_tilde - (det.delta_m + params.g_m * ss.mean_q)
    assert abs(residual) <= 1e-9 * max(abs(ss.delta_m_tilde), params.kappa_m)


def test_bistable_drive_raises_convergence_error():
    # strong drive plus large detuning makes the shift multivalued; the
    # damped iteration then cycles instead of settling
    params = make_system(g_m=TWO_PI * 200.0, rabi=3e13,
                         omega_0=TWO_PI * 10e9 - 3e8)
    det = Detunings(delta_a=3e8, delta_m=3e8)
    with pytest.raises(ConvergenceError) as info:
        steady_state(params, det)
    assert info.value.achieved > 0.0


def test_parameter_validation_messages():
    with pytest.raises(ParameterError, match="kappa_a"):
        make_system(kappa_a=0.0)
    with pytest.raises(ParameterError, match="eta"):
        make_system(eta=1.5)
    with pytest.raises(ParameterError, match="T"):
        make_system(T=-0.1)
    with pytest.raises(ParameterError, match="rabi"):
        make_system(rabi=-1.0)
