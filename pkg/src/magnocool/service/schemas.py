"""Request and response models for the HTTP API.

Requests mirror the config file sections field for field (Hz units);
defaults are the baseline parameter set, so an empty body is a valid
request everywhere.  Domain constraints live in the core dataclasses;
violations surface as 422 with a machine-readable code.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from .. import config as config_mod


class SystemModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

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

    def to_section(self) -> config_mod.SystemSection:
        return config_mod.SystemSection(**self.model_dump())


class FeedbackModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    g0: float = 0.0
    s_imp: float = 0.0
    s_imp_unit: str = "per-rad-per-sec"
    band_half_width_hz: float | None = None
    band_shape: str = "rect"

    def to_section(self) -> config_mod.FeedbackSection:
        return config_mod.FeedbackSection(**self.model_dump())


class NumericsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega_max_factor: float = 20.0
    quad_rel_tol: float = 1e-6
    max_intervals: int = 4096
    thermal: str = "exact"

    def to_section(self) -> config_mod.NumericsSection:
        return config_mod.NumericsSection(**self.model_dump())


class AxisModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    scale: str = "log"
    lo: float
    hi: float
    count: int = Field(default=100, ge=2)

    def to_spec(self) -> config_mod.AxisSpec:
        return config_mod.AxisSpec(name=self.name, scale=self.scale,
                                   lo=self.lo, hi=self.hi, count=self.count)


class GridModel(BaseModel):
    """Frequency grid for spectrum evaluation, in Hz."""

    model_config = ConfigDict(extra="forbid")

    scale: str = "lin"
    lo_hz: float
    hi_hz: float
    count: int = Field(default=2001, ge=2)


class ComplexValue(BaseModel):
    re: float
    im: float


class SteadyStateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()


class SteadyStateResponse(BaseModel):
    mean_a: ComplexValue
    mean_m: ComplexValue
    mean_q: float
    mean_p: float
    delta_m_tilde_hz: float
    rabi_hz: float
    G_m_hz: float
    n_a: float
    n_m: float
    n_b: float


class SpectrumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    feedback: FeedbackModel = FeedbackModel()
    numerics: NumericsModel = NumericsModel()
    grid: GridModel = GridModel(lo_hz=-20e6, hi_hz=20e6)


class TableResponse(BaseModel):
    columns: list[str]
    rows: list[list[float | bool | None]]
    summary: dict[str, float | bool | str | None] = {}


class CoolRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    feedback: FeedbackModel = FeedbackModel()
    numerics: NumericsModel = NumericsModel()
    axis: AxisModel = AxisModel(name="g0", scale="log", lo=1.0, hi=1e4,
                                count=200)
    refine: bool = True


class Sweep2dRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    feedback: FeedbackModel = FeedbackModel()
    numerics: NumericsModel = NumericsModel()
    axes: list[AxisModel] = Field(min_length=2, max_length=2)
    optimize_g0: bool = False
    cap: float = 10.0


class StabilityRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    feedback: FeedbackModel = FeedbackModel()


class StabilityResponse(BaseModel):
    stable: bool
    spectral_abscissa: float
    tolerance: float
    eigenvalues: list[ComplexValue]


class HealthResponse(BaseModel):
    status: str
    version: str
