"""Susceptibilities, feedback gain and noise spectral densities.

Everything here is vectorized over the angular frequency argument.
Frequencies are angular (rad/s) and the position/momentum NSDs are
symmetrized, in units of inverse angular frequency, so variances are
(1/2pi) integrals over omega.

The feedback loop measures the cavity amplitude quadrature and pushes back
on the mechanical momentum through a designed gain profile: inside the
loop band the gain inverts the cavity-magnon transduction chain so that
the closed-loop self-energy is purely imaginary and proportional to
frequency, which raises the mechanical damping by the factor (1 + g0)
without pulling the resonance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR, KB
from .errors import ParameterError
from .params import FeedbackConfig, Occupations, OperatingPoint
from .steady import thermal_occupations

THERMAL_MODELS = ("exact", "markovian")


def chi_mode(omega, kappa: float):
    """Natural susceptibility of a lossy mode, 1 / (kappa - i omega)."""
    return 1.0 / (kappa - 1j * np.asarray(omega, dtype=float))


def chi_ma(omega, point: OperatingPoint):
    """Magnon susceptibility dressed by the cavity, 1 / (1/chi_m + g_a^2 chi_a)."""
    omega = np.asarray(omega, dtype=float)
    return 1.0 / (point.kappa_m - 1j * omega
                  + point.g_a ** 2 * chi_mode(omega, point.kappa_a))


def gain(omega, point: OperatingPoint, feedback: FeedbackConfig):
    """Designed feedback gain; exactly zero outside the loop band."""
    omega = np.asarray(omega, dtype=float)
    if feedback.g0 == 0.0:
        return np.zeros(omega.shape, dtype=complex)
    if point.G_m <= 0.0 or point.g_a <= 0.0:
        raise ParameterError(
            "designed gain needs g_a > 0 and G_m > 0 when g0 > 0")
    value = (1j * point.gamma_b * omega * feedback.g0
             / (np.sqrt(point.eta) * point.omega_b * point.g_a * point.G_m
                * chi_mode(omega, point.kappa_a) * chi_ma(omega, point)))
    edge = feedback.band_edge(point.omega_b)
    return np.where(np.abs(omega) <= edge, value, 0.0 + 0.0j)


def zeta(omega, point: OperatingPoint, feedback: FeedbackConfig):
    """Feedback self-energy entering the effective mechanical susceptibility."""
    omega = np.asarray(omega, dtype=float)
    return (np.sqrt(point.eta) * point.g_a * point.G_m
            * chi_mode(omega, point.kappa_a) * chi_ma(omega, point)
            * gain(omega, point, feedback))


def chi_b_eff(omega, point: OperatingPoint, feedback: FeedbackConfig):
    """Closed-loop mechanical susceptibility."""
    omega = np.asarray(omega, dtype=float)
    return point.omega_b / (point.omega_b ** 2 - omega ** 2
                            - 1j * point.gamma_b * omega
                            - zeta(omega, point, feedback) * point.omega_b)


def _thermal_force_nsd(omega, point: OperatingPoint, n_b: float,
                       thermal: str):
    """Mechanical-bath force NSD, exact (coth) or Markovian (flat)."""
    omega = np.asarray(omega, dtype=float)
    if thermal == "markovian":
        return np.broadcast_to(point.gamma_b * (2.0 * n_b + 1.0),
                               omega.shape).copy()
    if thermal != "exact":
        raise ParameterError(
            f"thermal must be one of {THERMAL_MODELS}, got {thermal!r}")
    scale = point.gamma_b / point.omega_b
    if point.T == 0.0:
        return scale * np.abs(omega)
    x = HBAR * omega / (2.0 * KB * point.T)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = scale * omega / np.tanh(x)
    # omega -> 0 limit of omega * coth(hbar omega / 2 kB T)
    return np.where(omega == 0.0, 2.0 * point.gamma_b * KB * point.T
                    / (HBAR * point.omega_b), value)


@dataclass(frozen=True)
class NsdTerms:
    """Force-side noise spectral densities feeding the mechanical mode."""

    a_ba: np.ndarray    # cavity back-action
    m_ba: np.ndarray    # magnon back-action
    b_th: np.ndarray    # mechanical thermal bath
    fb_am: np.ndarray   # cavity/magnon noise routed through the loop
    q_imp: np.ndarray   # fed-back measurement imprecision

    def total(self) -> np.ndarray:
        return self.a_ba + self.m_ba + self.b_th + self.fb_am + self.q_imp

    def as_dict(self) -> dict[str, np.ndarray]:
        return {"a_ba": self.a_ba, "m_ba": self.m_ba, "b_th": self.b_th,
                "fb_am": self.fb_am, "q_imp": self.q_imp}


def nsd_terms(omega, point: OperatingPoint, feedback: FeedbackConfig,
              occupations: Occupations | None = None,
              thermal: str = "exact") -> NsdTerms:
    """All force-side NSD contributions at the given frequencies.

    The loop term combines three pieces: amplified shot plus detection
    vacuum noise, magnon back-action re-entering through the loop, and a
    negative cross-correlation between the directly measured cavity noise
    and its in-loop copy.  The combination is nonnegative at every
    frequency; the cavity/magnon pieces cancel exactly when the two bath
    occupations coincide.
    """
    omega = np.asarray(omega, dtype=float)
    if occupations is None:
        occupations = thermal_occupations(point)
    n_a, n_m, n_b = occupations.n_a, occupations.n_m, occupations.n_b

    chain = np.abs(chi_mode(omega, point.kappa_a) * chi_ma(omega, point)) ** 2
    a_ba = (point.g_a ** 2 * point.G_m ** 2 * chain
            * point.kappa_a * (2.0 * n_a + 1.0))
    m_ba = (point.G_m ** 2 * np.abs(chi_ma(omega, point)) ** 2
            * point.kappa_m * (2.0 * n_m + 1.0))
    b_th = _thermal_force_nsd(omega, point, n_b, thermal)

    g_abs2 = np.abs(gain(omega, point, feedback)) ** 2
    eta = point.eta
    fb_am = (g_abs2 / (4.0 * point.kappa_a)
             * (eta * (2.0 * n_a + 1.0) + (1.0 - eta))
             + eta * g_abs2 * point.g_a ** 2 * chain
             * point.kappa_m * (2.0 * n_m + 1.0)
             - eta * g_abs2 * point.g_a ** 2 * chain
             * point.kappa_m * (2.0 * n_a + 1.0))
    q_imp = g_abs2 * feedback.s_imp

    return NsdTerms(a_ba=a_ba, m_ba=m_ba, b_th=b_th, fb_am=fb_am,
                    q_imp=q_imp)


def s_q(omega, point: OperatingPoint, feedback: FeedbackConfig,
        occupations: Occupations | None = None, thermal: str = "exact"):
    """Symmetrized position NSD of the mechanical mode."""
    omega = np.asarray(omega, dtype=float)
    terms = nsd_terms(omega, point, feedback, occupations, thermal)
    return np.abs(chi_b_eff(omega, point, feedback)) ** 2 * terms.total()


def s_p(omega, point: OperatingPoint, feedback: FeedbackConfig,
        occupations: Occupations | None = None, thermal: str = "exact"):
    """Symmetrized momentum NSD, (omega/omega_b)^2 times the position NSD."""
    omega = np.asarray(omega, dtype=float)
    return (omega / point.omega_b) ** 2 * s_q(omega, point, feedback,
                                              occupations, thermal)


def damping_modification(point: OperatingPoint, feedback: FeedbackConfig) -> float:
    """In-band mechanical damping increase, (omega_b / omega) Im zeta.

    Constant across the loop band for the designed gain; returns
    g0 * gamma_b so the effective damping is (1 + g0) * gamma_b.
    """
    return feedback.g0 * point.gamma_b


def spectrum_columns(omega, point: OperatingPoint, feedback: FeedbackConfig,
                     thermal: str = "exact") -> dict[str, np.ndarray]:
    """Spectrum table columns keyed by their export names."""
    omega = np.asarray(omega, dtype=float)
    occ = thermal_occupations(point)
    terms = nsd_terms(omega, point, feedback, occ, thermal)
    filt = np.abs(chi_b_eff(omega, point, feedback)) ** 2
    sq = filt * terms.total()
    return {
        "omega_over_2pi_Hz": omega / (2.0 * np.pi),
        "S_a_ba": terms.a_ba,
        "S_m_ba": terms.m_ba,
        "S_b_th": terms.b_th,
        "S_fb_am": terms.fb_am,
        "S_q_imp": terms.q_imp,
        "S_q": sq,
        "S_p": (omega / point.omega_b) ** 2 * sq,
    }
