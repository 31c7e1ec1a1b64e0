"""Drift matrix, stability, steady-state variances and gain optimization.

The quadrature ordering throughout is (X_a, Y_a, X_m, Y_m, q, p): cavity
amplitude and phase, magnon amplitude and phase, mechanical position and
momentum.  Variances are obtained by integrating the noise spectral
densities; an independent Lyapunov route exists for the open-loop
Markovian case and is used as a cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

from . import quadrature, spectra
from .errors import MagnocoolError, ParameterError, UnstableSystemError
from .params import FeedbackConfig, Occupations, OperatingPoint
from .steady import thermal_occupations

NOISE_SOURCES = ("a_ba", "m_ba", "b_th", "fb_am", "q_imp")

# Margin on the spectral abscissa below which the system counts as stable,
# relative to the mechanical frequency.
STABILITY_MARGIN = 1e-6


@dataclass(frozen=True)
class Numerics:
    """Knobs for the variance quadrature.

    omega_max_factor : integration half-range in units of omega_b
    rel_tol          : per-component relative tolerance of the integrals
    max_intervals    : adaptive refinement budget
    thermal          : mechanical bath model, "exact" or "markovian"
    """

    omega_max_factor: float = 20.0
    rel_tol: float = 1e-6
    max_intervals: int = 4096
    thermal: str = "exact"

    def __post_init__(self):
        if self.omega_max_factor <= 0.0:
            raise ParameterError("omega_max_factor must be strictly positive")
        if not 0.0 < self.rel_tol < 1.0:
            raise ParameterError("rel_tol must lie in (0, 1)")
        if self.max_intervals < 8:
            raise ParameterError("max_intervals must be at least 8")
        if self.thermal not in spectra.THERMAL_MODELS:
            raise ParameterError(
                f"thermal must be one of {spectra.THERMAL_MODELS}")


@dataclass(frozen=True)
class DriftMatrix:
    """Linearized drift matrix with its construction variant."""

    entries: np.ndarray
    variant: str
    omega_b: float


def _drift_skeleton(point: OperatingPoint) -> np.ndarray:
    a = np.zeros((6, 6))
    a[0, 0] = -point.kappa_a
    a[0, 3] = point.g_a
    a[1, 1] = -point.kappa_a
    a[1, 2] = -point.g_a
    a[2, 1] = point.g_a
    a[2, 2] = -point.kappa_m
    a[3, 0] = -point.g_a
    a[3, 3] = -point.kappa_m
    a[3, 4] = -point.G_m
    a[4, 5] = point.omega_b
    a[5, 2] = -point.G_m
    return a


def drift_matrix(point: OperatingPoint,
                 feedback: FeedbackConfig | None = None) -> DriftMatrix:
    """Drift matrix with the designed in-band gain folded in.

    For the designed gain the loop shifts nothing and only scales the
    mechanical damping, so the matrix is frequency independent:
    the damping entry becomes -(1 + g0) * gamma_b.
    """
    g0 = 0.0 if feedback is None else feedback.g0
    a = _drift_skeleton(point)
    a[5, 4] = -point.omega_b
    a[5, 5] = -(1.0 + g0) * point.gamma_b
    return DriftMatrix(entries=a, variant="designed_gain",
                       omega_b=point.omega_b)


def drift_matrix_at(point: OperatingPoint, feedback: FeedbackConfig,
                    omega: float) -> DriftMatrix:
    """Drift matrix with the loop self-energy evaluated at one frequency.

    The general frequency-dependent form: the position coupling picks up
    Re zeta(omega) and the damping entry -(omega_b / omega) Im zeta(omega).
    """
    if omega == 0.0:
        raise ParameterError(
            "the frequency-dependent variant is undefined at omega = 0; "
            "use drift_matrix for the designed-gain closed form")
    z = complex(spectra.zeta(omega, point, feedback))
    a = _drift_skeleton(point)
    a[5, 4] = -point.omega_b + z.real
    a[5, 5] = -point.gamma_b - (point.omega_b / omega) * z.imag
    return DriftMatrix(entries=a, variant="frequency_dependent",
                       omega_b=point.omega_b)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    spectral_abscissa: float
    eigenvalues: np.ndarray
    tolerance: float


def stability_report(a: DriftMatrix) -> StabilityReport:
    """Eigenvalue test: stable iff every mode decays beyond the margin."""
    eigenvalues = np.linalg.eigvals(a.entries)
    abscissa = float(np.max(eigenvalues.real))
    tolerance = STABILITY_MARGIN * a.omega_b
    return StabilityReport(stable=abscissa < -tolerance,
                           spectral_abscissa=abscissa,
                           eigenvalues=eigenvalues,
                           tolerance=tolerance)


def is_stable(a: DriftMatrix) -> bool:
    return stability_report(a).stable


def markovian_diffusion(point: OperatingPoint,
                        occupations: Occupations | None = None) -> np.ndarray:
    """Diffusion matrix for delta-correlated baths (open loop only)."""
    if occupations is None:
        occupations = thermal_occupations(point)
    return np.diag([
        point.kappa_a * (2.0 * occupations.n_a + 1.0),
        point.kappa_a * (2.0 * occupations.n_a + 1.0),
        point.kappa_m * (2.0 * occupations.n_m + 1.0),
        point.kappa_m * (2.0 * occupations.n_m + 1.0),
        0.0,
        point.gamma_b * (2.0 * occupations.n_b + 1.0),
    ])


def lyapunov_covariance(a: DriftMatrix, diffusion: np.ndarray) -> np.ndarray:
    """Steady covariance from A V + V A^T = -D; requires a stable A."""
    report = stability_report(a)
    if not report.stable:
        raise UnstableSystemError(
            "Lyapunov covariance needs a stable drift matrix "
            f"(spectral abscissa {report.spectral_abscissa:.3g})",
            spectral_abscissa=report.spectral_abscissa)
    return scipy.linalg.solve_continuous_lyapunov(a.entries, -np.asarray(diffusion))


@dataclass(frozen=True)
class CoolingResult:
    """Steady mechanical variances and effective occupation.

    breakdown maps each noise source to its (var_q, var_p) contribution;
    the contributions sum to the totals by linearity of the spectra.
    """

    var_q: float
    var_p: float
    n_eff: float
    stable: bool
    g0_used: float
    spectral_abscissa: float
    breakdown: dict[str, tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        if self.var_q + self.var_p < 1.0 - 1e-6:
            raise MagnocoolError(
                "computed variances violate the Heisenberg bound "
                f"(var_q + var_p = {self.var_q + self.var_p!r}); "
                "this indicates an internal error")


def _forced_nodes(point: OperatingPoint, feedback: FeedbackConfig,
                  omega_max: float) -> list[float]:
    edge = feedback.band_edge(point.omega_b)
    nodes = {0.0, point.omega_b, -point.omega_b, edge, -edge}
    return [w for w in nodes if abs(w) < omega_max]


def variances(point: OperatingPoint, feedback: FeedbackConfig,
              numerics: Numerics = Numerics()) -> tuple[dict[str, tuple[float, float]], quadrature.QuadratureResult]:
    """Per-source (var_q, var_p) contributions via one vector quadrature.

    Integrates ten components at once (five noise sources, position and
    momentum weighting) over [-F omega_b, F omega_b] with the mechanical
    resonance and band edges as forced partition nodes.
    """
    occ = thermal_occupations(point)
    omega_max = numerics.omega_max_factor * point.omega_b

    def integrand(omega: np.ndarray) -> np.ndarray:
        terms = spectra.nsd_terms(omega, point, feedback, occ,
                                  numerics.thermal)
        filt = np.abs(spectra.chi_b_eff(omega, point, feedback)) ** 2
        momentum = (omega / point.omega_b) ** 2
        cols = [filt * getattr(terms, name) for name in NOISE_SOURCES]
        cols += [momentum * c for c in cols[:5]]
        return np.stack(cols, axis=-1)

    result = quadrature.integrate(
        integrand, -omega_max, omega_max,
        points=_forced_nodes(point, feedback, omega_max),
        rel_tol=numerics.rel_tol,
        max_intervals=numerics.max_intervals)

    scaled = result.value / (2.0 * math.pi)
    breakdown = {name: (float(scaled[i]), float(scaled[i + 5]))
                 for i, name in enumerate(NOISE_SOURCES)}
    return breakdown, result


def effective_occupation(point: OperatingPoint, feedback: FeedbackConfig,
                         numerics: Numerics = Numerics()) -> CoolingResult:
    """Effective phonon occupation (var_q + var_p - 1) / 2 at a stable point.

    Raises :class:`UnstableSystemError` before integrating anything if the
    closed-loop drift matrix fails the eigenvalue test.
    """
    report = stability_report(drift_matrix(point, feedback))
    if not report.stable:
        raise UnstableSystemError(
            f"operating point is dynamically unstable at g0 = {feedback.g0:g} "
            f"(spectral abscissa {report.spectral_abscissa:.6g} rad/s)",
            spectral_abscissa=report.spectral_abscissa)

    breakdown, _ = variances(point, feedback, numerics)
    var_q = sum(v[0] for v in breakdown.values())
    var_p = sum(v[1] for v in breakdown.values())
    return CoolingResult(var_q=var_q, var_p=var_p,
                         n_eff=(var_q + var_p - 1.0) / 2.0,
                         stable=True, g0_used=feedback.g0,
                         spectral_abscissa=report.spectral_abscissa,
                         breakdown=breakdown)


@dataclass(frozen=True)
class GainOptimum:
    """Result of a loop-gain scan with optional local refinement."""

    g0_opt: float
    best: CoolingResult
    scan_g0: np.ndarray
    scan_results: tuple[CoolingResult | None, ...]   # None where unstable
    unstable_g0: tuple[float, ...]


def optimize_gain(point: OperatingPoint, feedback: FeedbackConfig,
                  g0_range: tuple[float, float] = (1.0, 1e4),
                  numerics: Numerics = Numerics(),
                  *,
                  grid: np.ndarray | None = None,
                  points_per_decade: int = 40,
                  refine: bool = True) -> GainOptimum:
    """Minimize n_eff over the loop gain on a log grid.

    Unstable gains are excluded from the minimum and recorded.  With
    ``refine`` a golden-section search on log(g0) between the grid
    neighbors of the scan minimum polishes the optimum; otherwise the
    best grid point is returned as is.
    """
    if grid is None:
        lo, hi = g0_range
        if not (0.0 < lo < hi):
            raise ParameterError("g0_range must satisfy 0 < lo < hi")
        decades = math.log10(hi / lo)
        count = max(2, int(round(decades * points_per_decade)) + 1)
        grid = np.geomspace(lo, hi, count)
    else:
        grid = np.asarray(grid, dtype=float)
        if len(grid) < 1 or np.any(grid <= 0.0):
            raise ParameterError("g0 grid must be nonempty and positive")

    cache: dict[float, CoolingResult | None] = {}
    unstable: list[float] = []

    def evaluate(g0: float) -> CoolingResult | None:
        if g0 not in cache:
            try:
                cache[g0] = effective_occupation(
                    point, replace(feedback, g0=g0), numerics)
            except UnstableSystemError:
                cache[g0] = None
                unstable.append(g0)
        return cache[g0]

    scan = tuple(evaluate(float(g)) for g in grid)
    finite = [i for i, r in enumerate(scan) if r is not None]
    if not finite:
        raise UnstableSystemError(
            f"no stable gain found in [{grid[0]:g}, {grid[-1]:g}]")
    i_min = min(finite, key=lambda i: scan[i].n_eff)

    if refine and len(grid) > 1:
        # Golden-section search on the log axis between the neighbors of
        # the scan minimum.
        left = math.log(grid[max(i_min - 1, 0)])
        right = math.log(grid[min(i_min + 1, len(grid) - 1)])
        ratio = (math.sqrt(5.0) - 1.0) / 2.0

        def objective(u: float) -> float:
            r = evaluate(math.exp(u))
            return math.inf if r is None else r.n_eff

        c = right - ratio * (right - left)
        d = left + ratio * (right - left)
        fc, fd = objective(c), objective(d)
        while right - left > 1e-4:
            if fc < fd:
                right, d, fd = d, c, fc
                c = right - ratio * (right - left)
                fc = objective(c)
            else:
                left, c, fc = c, d, fd
                d = left + ratio * (right - left)
                fd = objective(d)

    candidates = [(g, r) for g, r in cache.items() if r is not None]
    g0_opt, best = min(candidates, key=lambda item: item[1].n_eff)
    return GainOptimum(g0_opt=g0_opt, best=best, scan_g0=grid,
                       scan_results=scan, unstable_g0=tuple(unstable))


def min_imp_noise(point: OperatingPoint) -> float:
    """Measurement-imprecision floor compatible with the back-action level.

    The imprecision-back-action uncertainty product bounds the detector
    noise floor from below by one quarter of the inverse total back-action
    NSD, both referred to the measured cavity amplitude quadrature and
    evaluated at the mechanical resonance.  Returned in the package's
    s_imp convention (inverse angular frequency).
    """
    if point.G_m <= 0.0:
        raise ParameterError("min_imp_noise requires G_m > 0")
    occ = thermal_occupations(point)
    quiet = FeedbackConfig(g0=0.0)
    terms = spectra.nsd_terms(np.array([point.omega_b]), point, quiet, occ)
    back_action = float(terms.a_ba[0] + terms.m_ba[0])
    chain = abs(spectra.chi_mode(point.omega_b, point.kappa_a)
                * spectra.chi_ma(point.omega_b, point)) ** 2
    return (point.eta * point.g_a ** 2 * point.G_m ** 2 * chain
            / (4.0 * back_action))
