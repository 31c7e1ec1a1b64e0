"""Command line client for the cooling service.

Every subcommand builds a request from the config file (plus a few
overrides), sends it to the HTTP API and renders the response.  By
default the service runs in process; ``--server`` points the same
commands at a remote instance instead.

Exit status: 0 success, 2 validation failure, 3 unstable operating
point, 4 non-convergence.
"""

from __future__ import annotations

import json
import sys
from dataclasses import asdict

import click
import httpx

from . import config as config_mod
from . import emit
from .errors import ParameterError

_EXIT_BY_CODE = {"validation": 2, "unstable": 3, "no-convergence": 4}


class ServiceClient:
    """Uniform POST interface over in-process and remote transports."""

    def __init__(self, server: str | None):
        if server is None:
            import warnings

            with warnings.catch_warnings():
                # the in-process transport is an implementation detail;
                # keep its deprecation chatter off the CLI's stderr
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)
        else:
            self._client = httpx.Client(base_url=server, timeout=600.0)

    def post(self, path: str, payload: dict) -> dict:
        try:
            response = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            click.echo(f"error: cannot reach service ({exc})", err=True)
            sys.exit(1)
        if response.status_code == 200:
            return response.json()
        self._fail(response)

    def _fail(self, response) -> None:
        detail = None
        try:
            detail = response.json().get("detail")
        except ValueError:
            pass
        if isinstance(detail, dict) and "message" in detail:
            click.echo(f"error: {detail['message']}", err=True)
            sys.exit(_EXIT_BY_CODE.get(detail.get("code"), 1))
        if isinstance(detail, list):  # request model validation
            for item in detail:
                loc = ".".join(str(p) for p in item.get("loc", []))
                click.echo(f"error: {loc}: {item.get('msg')}", err=True)
            sys.exit(2)
        click.echo(f"error: service returned {response.status_code}", err=True)
        sys.exit(1)


def _load_config(path: str | None) -> config_mod.RunConfig:
    if path is None:
        return config_mod.RunConfig()
    return config_mod.load(path)


def _die_validation(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _sections_payload(cfg: config_mod.RunConfig) -> dict:
    return {
        "system": asdict(cfg.system),
        "feedback": asdict(cfg.feedback),
        "numerics": asdict(cfg.numerics),
    }


def _axis_payload(axis: config_mod.AxisSpec) -> dict:
    return {"name": axis.name, "scale": axis.scale, "lo": axis.lo,
            "hi": axis.hi, "count": axis.count}


def _parse_axes(cfg: config_mod.RunConfig, axis_options: tuple[str, ...]):
    if axis_options:
        try:
            return tuple(config_mod.parse_axis(a) for a in axis_options)
        except ParameterError as exc:
            _die_validation(str(exc))
    return cfg.sweep.axes


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _render_table(cfg, response: dict, fmt: str | None, out: str | None) -> None:
    fmt = fmt or cfg.output.format
    out = out if out is not None else cfg.output.path
    text = emit.render(fmt, response["columns"], response["rows"],
                       cfg.output.precision, response.get("summary"))
    _write_output(text, out)


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False),
              default=None, help="Run configuration file (INI).")
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, config_path, server):
    """Feedback-cooling simulator for cavity magnomechanics."""
    try:
        cfg = _load_config(config_path)
    except ParameterError as exc:
        _die_validation(str(exc))
    except OSError as exc:
        _die_validation(f"cannot read config: {exc}")
    ctx.obj = {"config": cfg, "client": ServiceClient(server)}


_fmt_option = click.option("--format", "fmt",
                           type=click.Choice(config_mod.FORMATS),
                           default=None, help="Output format.")
_out_option = click.option("--out", default=None, type=click.Path(),
                           help="Output file; default stdout.")


@main.command("steady-state")
@_out_option
@click.pass_obj
def steady_state_cmd(obj, out):
    """Mean-field amplitudes, effective coupling and bath occupations."""
    response = obj["client"].post(
        "/api/steady-state", {"system": asdict(obj["config"].system)})
    _write_output(json.dumps(response, indent=2) + "\n", out)


@main.command("spectrum")
@click.option("--grid", default=None, metavar="SCALE:LO_HZ:HI_HZ:COUNT",
              help="Frequency grid; default lin:-2*omega_b:2*omega_b:2001.")
@_fmt_option
@_out_option
@click.pass_obj
def spectrum_cmd(obj, grid, fmt, out):
    """Noise spectral densities on a frequency grid."""
    cfg = obj["config"]
    if grid is None:
        edge = 2.0 * cfg.system.omega_b_hz
        grid_payload = {"scale": "lin", "lo_hz": -edge, "hi_hz": edge,
                        "count": 2001}
    else:
        parts = grid.split(":")
        if len(parts) != 4:
            _die_validation(f"grid {grid!r} must be scale:lo_hz:hi_hz:count")
        try:
            grid_payload = {"scale": parts[0], "lo_hz": float(parts[1]),
                            "hi_hz": float(parts[2]), "count": int(parts[3])}
        except ValueError as exc:
            _die_validation(f"grid {grid!r}: {exc}")
    payload = _sections_payload(cfg)
    payload["grid"] = grid_payload
    _render_table(cfg, obj["client"].post("/api/spectrum", payload), fmt, out)


@main.command("cool")
@click.option("--axis", "axis_options", multiple=True,
              metavar="NAME:SCALE:LO:HI:COUNT",
              help="Gain axis; must be named g0.")
@click.option("--refine/--no-refine", default=True,
              help="Polish the optimum between grid points.")
@_fmt_option
@_out_option
@click.pass_obj
def cool_cmd(obj, axis_options, refine, fmt, out):
    """Effective occupation versus loop gain, with the optimum."""
    cfg = obj["config"]
    axes = _parse_axes(cfg, axis_options)
    if len(axes) > 1:
        _die_validation("cool takes a single axis")
    axis = axes[0] if axes else config_mod.AxisSpec(
        name="g0", scale="log", lo=cfg.sweep.g0_lo, hi=cfg.sweep.g0_hi,
        count=200)
    payload = _sections_payload(cfg)
    payload["axis"] = _axis_payload(axis)
    payload["refine"] = refine
    _render_table(cfg, obj["client"].post("/api/cool", payload), fmt, out)


@main.command("sweep2d")
@click.option("--axis", "axis_options", multiple=True,
              metavar="NAME:SCALE:LO:HI:COUNT",
              help="Sweep axis; give exactly two.")
@click.option("--optimize-g0", is_flag=True, default=None,
              help="Optimize the loop gain at every grid point.")
@_fmt_option
@_out_option
@click.pass_obj
def sweep2d_cmd(obj, axis_options, optimize_g0, fmt, out):
    """Effective occupation over a two-parameter grid."""
    cfg = obj["config"]
    axes = _parse_axes(cfg, axis_options)
    if len(axes) != 2:
        _die_validation("sweep2d needs exactly two axes "
                        "(--axis twice or [sweep] axes in the config)")
    payload = _sections_payload(cfg)
    payload["axes"] = [_axis_payload(ax) for ax in axes]
    payload["optimize_g0"] = (cfg.sweep.optimize_g0 if optimize_g0 is None
                              else optimize_g0)
    _render_table(cfg, obj["client"].post("/api/sweep2d", payload), fmt, out)


@main.command("stability")
@_out_option
@click.pass_obj
def stability_cmd(obj, out):
    """Drift-matrix eigenvalues and the stability verdict."""
    cfg = obj["config"]
    payload = {"system": asdict(cfg.system),
               "feedback": asdict(cfg.feedback)}
    response = obj["client"].post("/api/stability", payload)
    _write_output(json.dumps(response, indent=2) + "\n", out)


if __name__ == "__main__":
    main()
