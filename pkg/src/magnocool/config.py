"""Run configuration: a sectioned key-value file and its typed model.

The on-disk format is INI with [system], [feedback], [numerics], [sweep]
and [output] sections.  User-facing frequencies are ordinary (Hz) and
converted to angular units at the boundary; ``T_K`` is kelvin and ``eta``
dimensionless.  Parsing is strict: unknown sections or keys are rejected
so typos cannot silently fall back to defaults.  ``dumps`` and ``parse``
round-trip exactly.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, field, replace

from .constants import rad_from_hz
from .cooling import Numerics
from .errors import ParameterError
from .params import FeedbackConfig, OperatingPoint, SystemParams
from .steady import effective_coupling, rabi_for_target_coupling, resonant_steady_state

S_IMP_UNITS = ("per-rad-per-sec", "per-hertz")
SCALES = ("lin", "log")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis: parameter name, scale, range and point count."""

    name: str
    scale: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.scale not in SCALES:
            raise ParameterError(
                f"axis {self.name}: scale must be one of {SCALES}")
        if not self.hi > self.lo:
            raise ParameterError(f"axis {self.name}: need hi > lo")
        if self.scale == "log" and self.lo <= 0.0:
            raise ParameterError(f"axis {self.name}: log scale needs lo > 0")
        if self.count < 2:
            raise ParameterError(f"axis {self.name}: need count >= 2")

    def values(self):
        import numpy as np

        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)

    def spec_string(self) -> str:
        return f"{self.name}:{self.scale}:{self.lo!r}:{self.hi!r}:{self.count}"


def parse_axis(spec: str) -> AxisSpec:
    """Parse "name:scale:lo:hi:count", e.g. "g0:log:1:1e4:200"."""
    parts = spec.split(":")
    if len(parts) != 5:
        raise ParameterError(
            f"axis spec {spec!r} must have 5 colon-separated fields "
            "(name:scale:lo:hi:count)")
    name, scale, lo, hi, count = parts
    try:
        return AxisSpec(name=name, scale=scale, lo=float(lo), hi=float(hi),
                        count=int(count))
    except ValueError as exc:
        raise ParameterError(f"axis spec {spec!r}: {exc}") from None


@dataclass(frozen=True)
class SystemSection:
    """Device, drive and environment in user units (Hz, K).

    Exactly one of ``G_m_hz`` (effective coupling target) and ``rabi_hz``
    (explicit drive) may be set.  Leaving ``omega_0_hz`` unset selects the
    resonant working point.
    """

    omega_a_hz: float = 10e9
    omega_m_hz: float = 10e9
    omega_b_hz: float = 10e6
    gamma_b_hz: float = 100.0
    kappa_a_hz: float = 5e6
    kappa_m_hz: float = 10e6
    g_a_hz: float = 18e6
    g_m_hz: float = 0.01
    G_m_hz: float | None = 2e6
    rabi_hz: float | None = None
    omega_0_hz: float | None = None
    T_K: float = 0.010
    eta: float = 0.9

    def __post_init__(self):
        if self.G_m_hz is not None and self.rabi_hz is not None:
            raise ParameterError(
                "set exactly one of G_m_hz and rabi_hz, not both")
        if self.G_m_hz is None and self.rabi_hz is None:
            raise ParameterError("one of G_m_hz and rabi_hz is required")

    def to_system_params(self) -> SystemParams:
        base = SystemParams(
            omega_a=rad_from_hz(self.omega_a_hz),
            omega_m=rad_from_hz(self.omega_m_hz),
            omega_b=rad_from_hz(self.omega_b_hz),
            gamma_b=rad_from_hz(self.gamma_b_hz),
            kappa_a=rad_from_hz(self.kappa_a_hz),
            kappa_m=rad_from_hz(self.kappa_m_hz),
            g_a=rad_from_hz(self.g_a_hz),
            g_m=rad_from_hz(self.g_m_hz),
            rabi=0.0,
            omega_0=rad_from_hz(
                self.omega_0_hz if self.omega_0_hz is not None
                else self.omega_a_hz),
            T=self.T_K,
            eta=self.eta)
        if self.rabi_hz is not None:
            return replace(base, rabi=rad_from_hz(self.rabi_hz))
        return replace(base, rabi=rabi_for_target_coupling(
            base, rad_from_hz(self.G_m_hz)))

    def to_operating_point(self) -> OperatingPoint:
        params = self.to_system_params()
        if self.G_m_hz is not None:
            return OperatingPoint.from_system(params, rad_from_hz(self.G_m_hz))
        ss, _ = resonant_steady_state(params)
        return OperatingPoint.from_system(
            params, effective_coupling(params, ss.mean_m))


@dataclass(frozen=True)
class FeedbackSection:
    """Loop settings in user units; see FeedbackConfig for semantics."""

    g0: float = 0.0
    s_imp: float = 0.0
    s_imp_unit: str = "per-rad-per-sec"
    band_half_width_hz: float | None = None
    band_shape: str = "rect"

    def __post_init__(self):
        if self.s_imp_unit not in S_IMP_UNITS:
            raise ParameterError(
                f"s_imp_unit must be one of {S_IMP_UNITS}")

    def to_feedback_config(self) -> FeedbackConfig:
        s_imp = self.s_imp
        if self.s_imp_unit == "per-hertz":
            s_imp = s_imp / (2.0 * math.pi)
        band = (None if self.band_half_width_hz is None
                else rad_from_hz(self.band_half_width_hz))
        return FeedbackConfig(g0=self.g0, s_imp=s_imp,
                              band_half_width=band,
                              band_shape=self.band_shape)


@dataclass(frozen=True)
class NumericsSection:
    omega_max_factor: float = 20.0
    quad_rel_tol: float = 1e-6
    max_intervals: int = 4096
    thermal: str = "exact"

    def to_numerics(self) -> Numerics:
        return Numerics(omega_max_factor=self.omega_max_factor,
                        rel_tol=self.quad_rel_tol,
                        max_intervals=self.max_intervals,
                        thermal=self.thermal)


@dataclass(frozen=True)
class SweepSection:
    axes: tuple[AxisSpec, ...] = ()
    optimize_g0: bool = False
    g0_lo: float = 1.0
    g0_hi: float = 1e4

    def __post_init__(self):
        if not 0.0 < self.g0_lo < self.g0_hi:
            raise ParameterError("need 0 < g0_lo < g0_hi")


@dataclass(frozen=True)
class OutputSection:
    path: str | None = None
    format: str = "csv"
    precision: int = 9

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ParameterError(f"format must be one of {FORMATS}")
        if not 1 <= self.precision <= 17:
            raise ParameterError("precision must lie in [1, 17]")


@dataclass(frozen=True)
class RunConfig:
    system: SystemSection = field(default_factory=SystemSection)
    feedback: FeedbackSection = field(default_factory=FeedbackSection)
    numerics: NumericsSection = field(default_factory=NumericsSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    output: OutputSection = field(default_factory=OutputSection)


# Field tables drive both parsing and serialization so the two cannot
# drift apart.  Kinds: f float, of optional float, i int, b bool, s string,
# os optional string, axes axis-spec list.
_SCHEMA = {
    "system": [
        ("omega_a_hz", "f"), ("omega_m_hz", "f"), ("omega_b_hz", "f"),
        ("gamma_b_hz", "f"), ("kappa_a_hz", "f"), ("kappa_m_hz", "f"),
        ("g_a_hz", "f"), ("g_m_hz", "f"), ("G_m_hz", "of"),
        ("rabi_hz", "of"), ("omega_0_hz", "of"), ("T_K", "f"), ("eta", "f"),
    ],
    "feedback": [
        ("g0", "f"), ("s_imp", "f"), ("s_imp_unit", "s"),
        ("band_half_width_hz", "of"), ("band_shape", "s"),
    ],
    "numerics": [
        ("omega_max_factor", "f"), ("quad_rel_tol", "f"),
        ("max_intervals", "i"), ("thermal", "s"),
    ],
    "sweep": [
        ("axes", "axes"), ("optimize_g0", "b"),
        ("g0_lo", "f"), ("g0_hi", "f"),
    ],
    "output": [
        ("path", "os"), ("format", "s"), ("precision", "i"),
    ],
}

_SECTION_TYPES = {
    "system": SystemSection,
    "feedback": FeedbackSection,
    "numerics": NumericsSection,
    "sweep": SweepSection,
    "output": OutputSection,
}

_BOOL_WORDS = {"true": True, "yes": True, "1": True,
               "false": False, "no": False, "0": False}


def _parse_value(section: str, key: str, kind: str, raw: str):
    raw = raw.strip()
    where = f"[{section}] {key}"
    if kind in ("of", "os") and raw == "":
        return None
    try:
        if kind in ("f", "of"):
            value = float(raw)
            if math.isnan(value) or math.isinf(value):
                raise ValueError("must be finite")
            return value
        if kind == "i":
            return int(raw)
        if kind == "b":
            if raw.lower() not in _BOOL_WORDS:
                raise ValueError("expected true/false")
            return _BOOL_WORDS[raw.lower()]
        if kind == "axes":
            if raw == "":
                return ()
            return tuple(parse_axis(part.strip())
                         for part in raw.split(",") if part.strip())
        return raw
    except ParameterError as exc:
        raise ParameterError(f"{where}: {exc}") from None
    except ValueError as exc:
        raise ParameterError(f"{where}: invalid value {raw!r} ({exc})") from None


def _format_value(kind: str, value) -> str:
    if value is None:
        return ""
    if kind in ("f", "of"):
        return repr(float(value))
    if kind == "b":
        return "true" if value else "false"
    if kind == "axes":
        return ", ".join(ax.spec_string() for ax in value)
    return str(value)


def parse(text: str) -> RunConfig:
    """Parse configuration text; unknown sections or keys are errors."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                   interpolation=None)
    cp.optionxform = str  # keys like T_K and G_m_hz are case sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParameterError(f"malformed config: {exc}") from None

    sections = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ParameterError(f"unknown section [{section}]")
        known = dict(_SCHEMA[section])
        kwargs = {}
        for key, raw in cp.items(section):
            if key not in known:
                raise ParameterError(f"unknown key {key!r} in [{section}]")
            kwargs[key] = _parse_value(section, key, known[key], raw)
        sections[section] = _SECTION_TYPES[section](**kwargs)
    return RunConfig(**sections)


def load(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def dumps(config: RunConfig) -> str:
    """Serialize with canonical section and key order."""
    out = io.StringIO()
    for section, keys in _SCHEMA.items():
        record = getattr(config, section)
        out.write(f"[{section}]\n")
        for key, kind in keys:
            # None serializes as an empty value; skipping the key instead
            # would resurrect a non-None default on the next parse
            value = _format_value(kind, getattr(record, key))
            out.write(f"{key} = {value}\n" if value else f"{key} =\n")
        out.write("\n")
    return out.getvalue()


SWEEPABLE_SYSTEM = ("omega_b_hz", "gamma_b_hz", "kappa_a_hz", "kappa_m_hz",
                    "g_a_hz", "g_m_hz", "G_m_hz", "T_K", "eta")
SWEEPABLE_FEEDBACK = ("g0", "s_imp", "band_half_width_hz")


def apply_axis_value(config: RunConfig, name: str, value: float) -> RunConfig:
    """Return a config with one sweepable parameter replaced."""
    if name in SWEEPABLE_SYSTEM:
        updates = {name: float(value)}
        if name == "G_m_hz":
            updates["rabi_hz"] = None  # the axis overrides an explicit drive
        return replace(config, system=replace(config.system, **updates))
    if name in SWEEPABLE_FEEDBACK:
        return replace(config,
                       feedback=replace(config.feedback, **{name: float(value)}))
    raise ParameterError(
        f"axis {name!r} is not sweepable; choose one of "
        f"{SWEEPABLE_SYSTEM + SWEEPABLE_FEEDBACK}")
