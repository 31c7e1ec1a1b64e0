"""Classical steady state of the driven cavity-magnon-mechanics system.

The magnon mode is driven at rate ``rabi``; the mechanical mode shifts the
magnon frequency through the dispersive coupling ``g_m``, so the effective
magnon detuning has to be found self-consistently.  A damped fixed-point
iteration handles the generic case; the resonant working point used by the
cooling analysis has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import HBAR, KB
from .errors import ConvergenceError, ParameterError
from .params import Detunings, Occupations, OperatingPoint, SystemParams


def bose_occupation(omega: float, T: float) -> float:
    """Mean thermal quanta of a mode at angular frequency ``omega``.

    Zero temperature gives exactly zero occupation.
    """
    if omega <= 0.0:
        raise ParameterError("bose_occupation requires omega > 0")
    if T < 0.0:
        raise ParameterError("bose_occupation requires T >= 0")
    if T == 0.0:
        return 0.0
    x = HBAR * omega / (KB * T)
    if x > 700.0:  # exp would overflow; occupation is zero to double precision
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_occupations(point: OperatingPoint) -> Occupations:
    """Bath occupations at the operating point's mode frequencies."""
    return Occupations(n_a=bose_occupation(point.omega_a, point.T),
                       n_m=bose_occupation(point.omega_m, point.T),
                       n_b=bose_occupation(point.omega_b, point.T))


@dataclass(frozen=True)
class SteadyState:
    """Mean-field amplitudes and the self-consistent magnon detuning."""

    mean_a: complex
    mean_m: complex
    mean_q: float
    mean_p: float
    delta_m_tilde: float


def _amplitudes(params: SystemParams, delta_a: float,
                delta_m_tilde: float) -> tuple[complex, complex]:
    denom = (params.g_a ** 2
             + (params.kappa_a + 1j * delta_a)
             * (params.kappa_m + 1j * delta_m_tilde))
    mean_m = params.rabi * (params.kappa_a + 1j * delta_a) / denom
    mean_a = -1j * params.g_a * params.rabi / denom
    return mean_a, mean_m


def steady_state(params: SystemParams,
                 detunings: Detunings | None = None,
                 *,
                 rel_tol: float = 1e-12,
                 max_iter: int = 10_000) -> SteadyState:
    """Solve the mean-field steady state for given drive detunings.

    The effective magnon detuning obeys
    ``delta_m_tilde = delta_m + g_m * mean_q`` with ``mean_q`` itself a
    function of ``delta_m_tilde``; the loop is closed by damped fixed-point
    iteration (damping 1/2).  Non-convergence signals a multistable or
    strongly driven regime and raises :class:`ConvergenceError`.
    """
    if detunings is None:
        detunings = Detunings.from_drive(params)

    x = detunings.delta_m  # current guess for the effective detuning
    scale_floor = params.kappa_m
    for _ in range(max_iter):
        _, mean_m = _amplitudes(params, detunings.delta_a, x)
        mean_q = -params.g_m * abs(mean_m) ** 2 / params.omega_b
        target = detunings.delta_m + params.g_m * mean_q
        new = x + 0.5 * (target - x)
        if abs(new - x) <= rel_tol * max(abs(new), scale_floor):
            x = new
            break
        x = new
    else:
        raise ConvergenceError(
            "steady-state detuning iteration did not converge; "
            "the drive is likely in a multistable regime",
            achieved=abs(target - x))

    mean_a, mean_m = _amplitudes(params, detunings.delta_a, x)
    mean_q = -params.g_m * abs(mean_m) ** 2 / params.omega_b
    return SteadyState(mean_a=mean_a, mean_m=mean_m, mean_q=mean_q,
                       mean_p=0.0, delta_m_tilde=x)


def resonant_steady_state(params: SystemParams) -> tuple[SteadyState, Detunings]:
    """Closed-form steady state at the resonant working point.

    Resonant means zero cavity detuning and zero *effective* magnon
    detuning; the returned :class:`Detunings` carries the bare magnon
    detuning that realizes this once the static mechanical shift is
    included.  The magnon amplitude is real and nonnegative here, which
    fixes the phase convention for the effective coupling.
    """
    denom = params.g_a ** 2 + params.kappa_a * params.kappa_m
    mean_m = params.rabi * params.kappa_a / denom
    mean_a = -1j * params.g_a * params.rabi / denom
    mean_q = -params.g_m * mean_m ** 2 / params.omega_b
    detunings = Detunings(delta_a=0.0, delta_m=-params.g_m * mean_q)
    ss = SteadyState(mean_a=mean_a, mean_m=complex(mean_m), mean_q=mean_q,
                     mean_p=0.0, delta_m_tilde=0.0)
    return ss, detunings


def effective_coupling(params: SystemParams, mean_m: complex) -> float:
    """Drive-enhanced magnomechanical coupling, magnitude convention.

    At the resonant working point the magnon amplitude is real positive
    and the magnitude equals the signed value.
    """
    return math.sqrt(2.0) * params.g_m * abs(mean_m)


def rabi_for_target_coupling(params: SystemParams, G_m_target: float) -> float:
    """Drive strength that realizes a requested effective coupling.

    Inverts the resonant relation between drive and effective coupling.
    A zero target needs no drive; a negative one has no meaning.
    """
    if G_m_target < 0.0:
        raise ParameterError("G_m_target must be nonnegative")
    if G_m_target == 0.0:
        return 0.0
    if params.g_m <= 0.0:
        raise ParameterError(
            "g_m must be positive to realize a nonzero effective coupling")
    denom = params.g_a ** 2 + params.kappa_a * params.kappa_m
    return G_m_target * denom / (math.sqrt(2.0) * params.g_m * params.kappa_a)
