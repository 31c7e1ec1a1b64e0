"""HTTP service exposing the cooling model.

Thin handlers: each one converts the request models into core records,
calls the corresponding operation and shapes the result into a table or
report.  Domain errors map onto status codes: 422 for parameter problems,
409 for instability and non-convergence, each with a machine-readable
``code`` the CLI translates into its exit status.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, config as config_mod, spectra, sweep
from ..cooling import (drift_matrix, effective_occupation, min_imp_noise,
                       optimize_gain, stability_report, NOISE_SOURCES)
from ..constants import TWO_PI, hz_from_rad
from ..errors import (ConvergenceError, MagnocoolError, ParameterError,
                      UnstableSystemError)
from ..steady import (bose_occupation, effective_coupling,
                      resonant_steady_state, steady_state)
from . import schemas

COOL_COLUMNS = (["g0", "n_eff", "var_q", "var_p", "stable"]
                + [f"var_q_{s}" for s in NOISE_SOURCES]
                + [f"var_p_{s}" for s in NOISE_SOURCES])

SWEEP2D_COLUMNS = ["x", "y", "log10_n_eff", "stable", "above_cap"]


def _error_payload(exc: MagnocoolError) -> dict:
    detail: dict = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, UnstableSystemError) and exc.spectral_abscissa is not None:
        detail["spectral_abscissa"] = exc.spectral_abscissa
    if isinstance(exc, ConvergenceError) and exc.achieved is not None:
        detail["achieved"] = exc.achieved
    return {"detail": detail}


def create_app() -> FastAPI:
    app = FastAPI(title="magnocool", version=__version__)

    @app.exception_handler(MagnocoolError)
    async def _domain_error(request: Request, exc: MagnocoolError):
        status = 422 if isinstance(exc, ParameterError) else 409
        return JSONResponse(status_code=status, content=_error_payload(exc))

    @app.get("/api/health", response_model=schemas.HealthResponse)
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/steady-state", response_model=schemas.SteadyStateResponse)
    def steady_state_report(req: schemas.SteadyStateRequest):
        section = req.system.to_section()
        params = section.to_system_params()
        if section.omega_0_hz is None:
            ss, _ = resonant_steady_state(params)
        else:
            ss = steady_state(params)
        return {
            "mean_a": {"re": ss.mean_a.real, "im": ss.mean_a.imag},
            "mean_m": {"re": ss.mean_m.real, "im": ss.mean_m.imag},
            "mean_q": ss.mean_q,
            "mean_p": ss.mean_p,
            "delta_m_tilde_hz": hz_from_rad(ss.delta_m_tilde),
            "rabi_hz": hz_from_rad(params.rabi),
            "G_m_hz": hz_from_rad(effective_coupling(params, ss.mean_m)),
            "n_a": bose_occupation(params.omega_a, params.T),
            "n_m": bose_occupation(params.omega_m, params.T),
            "n_b": bose_occupation(params.omega_b, params.T),
        }

    @app.post("/api/spectrum", response_model=schemas.TableResponse)
    def spectrum(req: schemas.SpectrumRequest):
        point = req.system.to_section().to_operating_point()
        feedback = req.feedback.to_section().to_feedback_config()
        numerics = req.numerics.to_section().to_numerics()
        grid = req.grid
        if grid.scale == "log":
            if grid.lo_hz <= 0.0:
                raise ParameterError("log frequency grid needs lo_hz > 0")
            nu = np.geomspace(grid.lo_hz, grid.hi_hz, grid.count)
        elif grid.scale == "lin":
            nu = np.linspace(grid.lo_hz, grid.hi_hz, grid.count)
        else:
            raise ParameterError("grid scale must be 'lin' or 'log'")

        columns = spectra.spectrum_columns(TWO_PI * nu, point, feedback,
                                           numerics.thermal)
        report = stability_report(drift_matrix(point, feedback))
        names = list(columns.keys())
        rows = [[float(columns[c][i]) for c in names]
                for i in range(len(nu))]
        return {
            "columns": names,
            "rows": rows,
            "summary": {"stable": report.stable,
                        "spectral_abscissa": report.spectral_abscissa},
        }

    @app.post("/api/cool", response_model=schemas.TableResponse)
    def cool(req: schemas.CoolRequest):
        if req.axis.name != "g0":
            raise ParameterError("the cool axis must be named 'g0'")
        point = req.system.to_section().to_operating_point()
        feedback = req.feedback.to_section().to_feedback_config()
        numerics = req.numerics.to_section().to_numerics()
        optimum = optimize_gain(point, feedback, numerics=numerics,
                                grid=req.axis.to_spec().values(),
                                refine=req.refine)
        rows = []
        for g0, result in zip(optimum.scan_g0, optimum.scan_results):
            if result is None:
                rows.append([float(g0), None, None, None, False]
                            + [None] * (2 * len(NOISE_SOURCES)))
                continue
            rows.append([float(g0), result.n_eff, result.var_q,
                         result.var_p, True]
                        + [result.breakdown[s][0] for s in NOISE_SOURCES]
                        + [result.breakdown[s][1] for s in NOISE_SOURCES])
        return {
            "columns": COOL_COLUMNS,
            "rows": rows,
            "summary": {"g0_opt": optimum.g0_opt,
                        "n_eff_min": optimum.best.n_eff},
        }

    @app.post("/api/sweep2d", response_model=schemas.TableResponse)
    def sweep2d(req: schemas.Sweep2dRequest):
        cfg = config_mod.RunConfig(
            system=req.system.to_section(),
            feedback=req.feedback.to_section(),
            numerics=req.numerics.to_section(),
            sweep=config_mod.SweepSection(optimize_g0=req.optimize_g0))
        axes = tuple(ax.to_spec() for ax in req.axes)
        records = sweep.run_sweep(cfg, axes, optimize=req.optimize_g0)
        rows = []
        for record in records:
            if record.n_eff is None or record.n_eff <= 0.0:
                log_n = None
            else:
                log_n = math.log10(record.n_eff)
            rows.append([record.values[0], record.values[1], log_n,
                         record.stable,
                         record.n_eff is not None and record.n_eff > req.cap])
        return {
            "columns": SWEEP2D_COLUMNS,
            "rows": rows,
            "summary": {"x": axes[0].name, "y": axes[1].name,
                        "g0": req.feedback.g0,
                        "optimize_g0": req.optimize_g0},
        }

    @app.post("/api/stability", response_model=schemas.StabilityResponse)
    def stability(req: schemas.StabilityRequest):
        point = req.system.to_section().to_operating_point()
        feedback = req.feedback.to_section().to_feedback_config()
        report = stability_report(drift_matrix(point, feedback))
        order = np.lexsort((report.eigenvalues.imag,
                            -report.eigenvalues.real))
        return {
            "stable": report.stable,
            "spectral_abscissa": report.spectral_abscissa,
            "tolerance": report.tolerance,
            "eigenvalues": [{"re": float(ev.real), "im": float(ev.imag)}
                            for ev in report.eigenvalues[order]],
        }

    @app.post("/api/min-imp-noise")
    def imp_noise_floor(req: schemas.StabilityRequest):
        point = req.system.to_section().to_operating_point()
        return {"s_imp_min": min_imp_noise(point),
                "s_imp_unit": "per-rad-per-sec"}

    return app


app = create_app()
