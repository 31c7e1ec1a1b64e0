"""Parameter sweeps over one or two axes, optionally in parallel.

Points are evaluated independently, so the grid is farmed out to a
process pool when it is large enough to pay for the forking.  Results
come back in grid order (first axis slowest) regardless of worker count,
and a sweep is bit-identical between serial and parallel runs.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import config as config_mod
from .cooling import effective_occupation, optimize_gain
from .errors import ParameterError, UnstableSystemError

# Below this many points the pool startup dominates; stay serial.
_PARALLEL_THRESHOLD = 8


@dataclass(frozen=True)
class SweepRecord:
    """Outcome at one grid point; n_eff and variances are None if unstable."""

    values: tuple[float, ...]
    n_eff: float | None
    var_q: float | None
    var_p: float | None
    stable: bool
    g0_used: float
    breakdown: dict[str, tuple[float, float]]


def worker_count(n_points: int) -> int:
    env = os.environ.get("MAGNOCOOL_WORKERS", "").strip()
    if env:
        try:
            requested = int(env)
        except ValueError:
            raise ParameterError(
                f"MAGNOCOOL_WORKERS must be an integer, got {env!r}") from None
        return max(1, requested)
    return max(1, min(os.cpu_count() or 1, 8, n_points))


def _evaluate_point(payload) -> SweepRecord:
    cfg, names, values, optimize = payload
    for name, value in zip(names, values):
        cfg = config_mod.apply_axis_value(cfg, name, value)
    point = cfg.system.to_operating_point()
    feedback = cfg.feedback.to_feedback_config()
    numerics = cfg.numerics.to_numerics()
    try:
        if optimize:
            optimum = optimize_gain(point, feedback,
                                    (cfg.sweep.g0_lo, cfg.sweep.g0_hi),
                                    numerics)
            result = optimum.best
            g0_used = optimum.g0_opt
        else:
            result = effective_occupation(point, feedback, numerics)
            g0_used = feedback.g0
    except UnstableSystemError:
        return SweepRecord(values=tuple(values), n_eff=None, var_q=None,
                           var_p=None, stable=False, g0_used=feedback.g0,
                           breakdown={})
    return SweepRecord(values=tuple(values), n_eff=result.n_eff,
                       var_q=result.var_q, var_p=result.var_p, stable=True,
                       g0_used=g0_used, breakdown=result.breakdown)


def run_sweep(cfg: config_mod.RunConfig,
              axes: tuple[config_mod.AxisSpec, ...],
              *,
              optimize: bool = False) -> list[SweepRecord]:
    """Evaluate the axis grid; records are in grid order."""
    if not 1 <= len(axes) <= 2:
        raise ParameterError("sweeps support one or two axes")
    names = [ax.name for ax in axes]
    if optimize and "g0" in names:
        raise ParameterError("cannot optimize g0 while sweeping it")
    if len(set(names)) != len(names):
        raise ParameterError("sweep axes must be distinct")

    grids = [ax.values() for ax in axes]
    combos = list(itertools.product(*[list(map(float, g)) for g in grids]))
    payloads = [(cfg, names, values, optimize) for values in combos]

    workers = worker_count(len(payloads))
    if workers == 1 or len(payloads) < _PARALLEL_THRESHOLD:
        return [_evaluate_point(p) for p in payloads]
    chunk = max(1, len(payloads) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_point, payloads, chunksize=chunk))
