"""Parameter records for the driven cavity-magnon-mechanics model.

Two levels are distinguished.  :class:`SystemParams` describes the physical
device plus its microwave drive and is the input to the steady-state solve.
:class:`OperatingPoint` is the linearized working point the spectral and
cooling calculations consume; it replaces the bare magnomechanical coupling
and drive by the effective coupling ``G_m`` they produce.

All frequencies and rates are angular (rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ParameterError


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


@dataclass(frozen=True)
class SystemParams:
    """Device and drive parameters.

    omega_a, omega_m, omega_b : mode frequencies (cavity, magnon, mechanics)
    gamma_b                   : mechanical energy damping rate
    kappa_a, kappa_m          : cavity / magnon amplitude decay rates
    g_a                       : cavity-magnon beam-splitter coupling
    g_m                       : bare magnomechanical coupling per phonon
    rabi                      : magnon drive strength (Rabi rate)
    omega_0                   : drive frequency
    T                         : bath temperature in kelvin
    eta                       : homodyne detection efficiency
    """

    omega_a: float
    omega_m: float
    omega_b: float
    gamma_b: float
    kappa_a: float
    kappa_m: float
    g_a: float
    g_m: float
    rabi: float
    omega_0: float
    T: float
    eta: float

    def __post_init__(self):
        for name in ("omega_a", "omega_m", "omega_b", "gamma_b",
                     "kappa_a", "kappa_m", "omega_0"):
            _require(getattr(self, name) > 0.0,
                     f"{name} must be strictly positive")
        for name in ("g_a", "g_m", "rabi"):
            _require(getattr(self, name) >= 0.0,
                     f"{name} must be nonnegative")
        _require(self.T >= 0.0, "T must be nonnegative")
        _require(0.0 < self.eta <= 1.0, "eta must lie in (0, 1]")


@dataclass(frozen=True)
class Detunings:
    """Drive-frame detunings of the cavity and magnon modes."""

    delta_a: float
    delta_m: float

    @classmethod
    def from_drive(cls, params: SystemParams) -> "Detunings":
        return cls(delta_a=params.omega_a - params.omega_0,
                   delta_m=params.omega_m - params.omega_0)


@dataclass(frozen=True)
class OperatingPoint:
    """Linearized working point at resonant drive.

    Carries everything the spectral engine needs: decay rates, the
    cavity-magnon coupling ``g_a``, the effective (drive-enhanced)
    magnomechanical coupling ``G_m``, detection efficiency and the
    temperature, plus the mode frequencies that fix the thermal
    occupations of the three baths.
    """

    omega_a: float
    omega_m: float
    omega_b: float
    gamma_b: float
    kappa_a: float
    kappa_m: float
    g_a: float
    G_m: float
    T: float
    eta: float

    def __post_init__(self):
        for name in ("omega_a", "omega_m", "omega_b", "gamma_b",
                     "kappa_a", "kappa_m"):
            _require(getattr(self, name) > 0.0,
                     f"{name} must be strictly positive")
        for name in ("g_a", "G_m"):
            _require(getattr(self, name) >= 0.0,
                     f"{name} must be nonnegative")
        _require(self.T >= 0.0, "T must be nonnegative")
        _require(0.0 < self.eta <= 1.0, "eta must lie in (0, 1]")

    @classmethod
    def from_system(cls, params: SystemParams, G_m: float) -> "OperatingPoint":
        return cls(omega_a=params.omega_a, omega_m=params.omega_m,
                   omega_b=params.omega_b, gamma_b=params.gamma_b,
                   kappa_a=params.kappa_a, kappa_m=params.kappa_m,
                   g_a=params.g_a, G_m=G_m, T=params.T, eta=params.eta)


@dataclass(frozen=True)
class FeedbackConfig:
    """Feedback loop settings.

    g0              : dimensionless loop gain (0 switches the loop off)
    s_imp           : white measurement-imprecision NSD, per (rad/s)
    band_half_width : half width of the rectangular loop filter, rad/s;
                      None resolves to twice the mechanical frequency
    band_shape      : only "rect" is implemented
    """

    g0: float = 0.0
    s_imp: float = 0.0
    band_half_width: float | None = None
    band_shape: str = "rect"

    def __post_init__(self):
        _require(self.g0 >= 0.0, "g0 must be nonnegative")
        _require(self.s_imp >= 0.0, "s_imp must be nonnegative")
        if self.band_half_width is not None:
            _require(self.band_half_width > 0.0,
                     "band_half_width must be strictly positive")
        _require(self.band_shape == "rect",
                 f"unsupported band_shape {self.band_shape!r}; only 'rect' exists")

    def band_edge(self, omega_b: float) -> float:
        """Effective filter half width for a mechanical frequency."""
        if self.band_half_width is not None:
            return self.band_half_width
        return 2.0 * omega_b


@dataclass(frozen=True)
class Occupations:
    """Mean thermal quanta of the cavity, magnon and mechanical baths."""

    n_a: float
    n_m: float
    n_b: float

    def __post_init__(self):
        for name in ("n_a", "n_m", "n_b"):
            _require(getattr(self, name) >= 0.0,
                     f"{name} must be nonnegative")


def replace_fields(record, **updates):
    """dataclasses.replace with a friendlier unknown-field error."""
    valid = {f.name for f in fields(record)}
    for key in updates:
        if key not in valid:
            raise ParameterError(f"unknown field {key!r} for {type(record).__name__}")
    from dataclasses import replace

    return replace(record, **updates)
