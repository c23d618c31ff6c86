"""HTTP backend for the interactive surface explorer.

Stateless GET endpoints serving JSON grids:

* ``/surface``  -- correlation surface for one parameter set
* ``/swapdiff`` -- both surfaces of a (nu, rho) swap plus the pointwise
  difference extremes
* ``/parts``    -- the three-factor split at one distance
* ``/health``   -- liveness probe

Responses are serialized deterministically (sorted keys, no whitespace), so
equal query strings produce byte-identical bodies and any cache may key on
the URL.  Malformed query parameters get a 400 with a machine-readable error
body; numeric failures inside an otherwise valid request get a 422.
"""

from __future__ import annotations

import json
import math

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .covariance import DEFAULT_HALF_WIDTH, DEFAULT_RESOLUTION, surface_grid, surface_to_json
from .kernel import MaternParams, Parametrization, matern_corr_parts
from .analysis import swap_difference

__all__ = ["create_app", "DEFAULT_PORT", "PORT_ENV_VAR"]

DEFAULT_PORT = 8571
PORT_ENV_VAR = "MATERNKIT_PORT"

_MAX_RESOLUTION = 512


class _BadQuery(ValueError):
    """Client-side parameter problem; maps to HTTP 400."""


def _json_response(payload: dict, status: int = 200) -> Response:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return Response(content=body, status_code=status, media_type="application/json")


def _error(status: int, message: str) -> Response:
    return _json_response({"error": message}, status=status)


def _get_float(q, name: str, default: float | None = None,
               positive: bool = True) -> float:
    raw = q.get(name)
    if raw is None:
        if default is None:
            raise _BadQuery(f"missing query parameter {name!r}")
        return default
    try:
        value = float(raw)
    except ValueError:
        raise _BadQuery(f"{name} must be a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise _BadQuery(f"{name} must be finite")
    if positive and value <= 0:
        raise _BadQuery(f"{name} must be > 0")
    return value


def _get_params(q, defaults: dict) -> MaternParams:
    nu = _get_float(q, "nu")
    scale = _get_float(q, "scale")
    try:
        tag = Parametrization.parse(q.get("param", "range"))
    except ValueError as exc:
        raise _BadQuery(str(exc)) from None
    try:
        return MaternParams(nu=nu, scale=scale, parametrization=tag)
    except ValueError as exc:
        raise _BadQuery(str(exc)) from None


def create_app(grid_defaults: dict | None = None) -> FastAPI:
    """Build the explorer backend.

    grid_defaults may override ``half_width`` and ``resolution`` for
    requests that do not spell them out.
    """
    defaults = {
        "half_width": DEFAULT_HALF_WIDTH,
        "resolution": DEFAULT_RESOLUTION,
    }
    if grid_defaults:
        defaults.update(grid_defaults)

    app = FastAPI(title="maternkit explorer backend", docs_url=None, redoc_url=None)
    # local single-user exploration backend; allow the static UI to fetch
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["GET"])

    @app.get("/health")
    def health() -> Response:
        return _json_response({"status": "ok"})

    @app.get("/surface")
    def surface(request: Request) -> Response:
        q = request.query_params
        try:
            params = _get_params(q, defaults)
            half_width = _get_float(q, "half_width", defaults["half_width"])
            resolution = int(_get_float(q, "resolution", float(defaults["resolution"])))
            if not (2 <= resolution <= _MAX_RESOLUTION):
                raise _BadQuery(f"resolution must be in [2, {_MAX_RESOLUTION}]")
        except _BadQuery as exc:
            return _error(400, str(exc))
        try:
            surf = surface_grid(params, half_width=half_width, resolution=resolution)
        except (ValueError, OverflowError, FloatingPointError) as exc:
            return _error(422, str(exc))
        return _json_response(surface_to_json(surf))

    @app.get("/swapdiff")
    def swapdiff(request: Request) -> Response:
        q = request.query_params
        try:
            nu = _get_float(q, "nu")
            rho = _get_float(q, "rho")
            half_width = _get_float(q, "half_width", defaults["half_width"])
            resolution = int(_get_float(q, "resolution", float(defaults["resolution"])))
            if not (2 <= resolution <= _MAX_RESOLUTION):
                raise _BadQuery(f"resolution must be in [2, {_MAX_RESOLUTION}]")
        except _BadQuery as exc:
            return _error(400, str(exc))
        try:
            surf_ab = surface_grid(
                MaternParams(nu=nu, scale=rho), half_width=half_width, resolution=resolution
            )
            surf_ba = surface_grid(
                MaternParams(nu=rho, scale=nu), half_width=half_width, resolution=resolution
            )
            row = swap_difference(nu, rho)
        except (ValueError, OverflowError, FloatingPointError) as exc:
            return _error(422, str(exc))
        diff = surf_ab.z - surf_ba.z
        return _json_response(
            {
                "nu": nu,
                "rho": rho,
                "min_diff": row.min_diff,
                "max_diff": row.max_diff,
                "surface": surface_to_json(surf_ab),
                "surface_swapped": surface_to_json(surf_ba),
                "surface_min_diff": float(diff.min()),
                "surface_max_diff": float(diff.max()),
            }
        )

    @app.get("/parts")
    def parts(request: Request) -> Response:
        q = request.query_params
        try:
            params = _get_params(q, defaults)
            d = _get_float(q, "d")
        except _BadQuery as exc:
            return _error(400, str(exc))
        try:
            pv = matern_corr_parts(params, d)
        except (ValueError, OverflowError, FloatingPointError) as exc:
            return _error(422, str(exc))
        return _json_response(
            {
                "constant": pv.constant,
                "power": pv.power,
                "bessel": pv.bessel,
                "log_scale": pv.log_scale,
                "correlation": pv.correlation(),
            }
        )

    return app
