"""Point sets, distances, correlation matrices, GP sampling, surface grids.

Locations live in R^1, R^2, or on a sphere of radius R (lat/lon degrees).
On the sphere two metrics are offered: great-circle distance R * dsigma and
chordal distance 2 R sin(dsigma / 2).  Great-circle distance keeps the Matern
family positive definite only for nu <= 1/2 (Guinness & Fuentes 2016), so
assembling a great-circle matrix with a larger order is an error unless the
caller explicitly opts into the unsafe combination.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .kernel import MaternParams, matern_corr

__all__ = [
    "Metric",
    "PointSet",
    "CovarianceMatrix",
    "CorrelationSurface",
    "CholeskyFactor",
    "NotPositiveDefiniteError",
    "pairwise_distances",
    "correlation_matrix",
    "cholesky_with_jitter",
    "sample_gaussian_process",
    "surface_grid",
    "surface_to_json",
    "surface_to_csv",
    "grid_to_csv",
]

DEFAULT_HALF_WIDTH = 5.0
DEFAULT_RESOLUTION = 101
DEFAULT_JITTER_MAX = 1e-4


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Raised when a matrix cannot be factored even at the jitter cap."""


class Metric(Enum):
    EUCLIDEAN = "euclidean"
    GREAT_CIRCLE = "great_circle"
    CHORDAL = "chordal"


@dataclass(frozen=True)
class PointSet:
    """Locations plus the metric used for their pairwise distances.

    coords is (n,) or (n, 1) or (n, 2); for the sphere metrics the two
    columns are (lat, lon) in degrees on a sphere of radius ``radius``.
    """

    coords: np.ndarray
    metric: Metric = Metric.EUCLIDEAN
    radius: float = 1.0

    def __post_init__(self) -> None:
        arr = np.asarray(self.coords, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[1] not in (1, 2) or arr.shape[0] == 0:
            raise ValueError("coords must be a nonempty (n,), (n,1) or (n,2) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        if self.metric is not Metric.EUCLIDEAN:
            if arr.shape[1] != 2:
                raise ValueError("sphere metrics need (lat, lon) pairs")
            lat, lon = arr[:, 0], arr[:, 1]
            if np.any(np.abs(lat) > 90.0) or np.any(np.abs(lon) > 180.0):
                raise ValueError("need lat in [-90, 90] and lon in [-180, 180] degrees")
            if not (math.isfinite(self.radius) and self.radius > 0):
                raise ValueError("sphere radius must be positive")
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    def __len__(self) -> int:
        return self.coords.shape[0]


def _central_angle(lat: np.ndarray, lon: np.ndarray) -> np.ndarray:
    # haversine form, stable for small separations
    phi = np.radians(lat)
    lam = np.radians(lon)
    dphi = 0.5 * (phi[:, None] - phi[None, :])
    dlam = 0.5 * (lam[:, None] - lam[None, :])
    hav = np.sin(dphi) ** 2 + np.cos(phi)[:, None] * np.cos(phi)[None, :] * np.sin(dlam) ** 2
    return 2.0 * np.arcsin(np.sqrt(np.clip(hav, 0.0, 1.0)))


def pairwise_distances(points: PointSet) -> np.ndarray:
    """Symmetric matrix of pairwise distances under the point set's metric."""
    xy = points.coords
    if points.metric is Metric.EUCLIDEAN:
        diff = xy[:, None, :] - xy[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1))
    else:
        dsigma = _central_angle(xy[:, 0], xy[:, 1])
        if points.metric is Metric.GREAT_CIRCLE:
            dist = points.radius * dsigma
        else:  # chordal: straight line through the sphere
            dist = 2.0 * points.radius * np.sin(0.5 * dsigma)
    np.fill_diagonal(dist, 0.0)
    return dist


class MatrixKind(Enum):
    CORRELATION = "correlation"
    COVARIANCE = "covariance"


@dataclass(frozen=True)
class CovarianceMatrix:
    """Dense symmetric correlation or covariance matrix with provenance."""

    values: np.ndarray
    kind: MatrixKind
    params: MaternParams | None = None
    metric: Metric = Metric.EUCLIDEAN

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(v, v.T, rtol=0.0, atol=1e-14):
            raise ValueError("matrix must be symmetric to 1e-14")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def to_covariance(self) -> "CovarianceMatrix":
        """Scale a correlation matrix by sigma2 of its provenance params."""
        if self.kind is MatrixKind.COVARIANCE:
            return self
        sigma2 = self.params.sigma2 if self.params is not None else 1.0
        return CovarianceMatrix(
            values=sigma2 * self.values,
            kind=MatrixKind.COVARIANCE,
            params=self.params,
            metric=self.metric,
        )


def correlation_matrix(
    params: MaternParams,
    points: PointSet,
    unsafe_great_circle: bool = False,
) -> CovarianceMatrix:
    """Assemble the Matern correlation matrix over a point set.

    Entry (i, j) is ``matern_corr(params, dist(i, j))``; the diagonal is
    exactly 1.  Great-circle distances are rejected for nu > 1/2 (positive
    definiteness fails there) unless ``unsafe_great_circle`` is set.
    """
    if (
        points.metric is Metric.GREAT_CIRCLE
        and params.nu > 0.5
        and not unsafe_great_circle
    ):
        raise ValueError(
            "great-circle distance keeps the Matern family positive definite "
            "only for nu <= 1/2 (Guinness & Fuentes 2016); use the chordal "
            "metric, or pass unsafe_great_circle=True to override"
        )
    dist = pairwise_distances(points)
    vals = matern_corr(params, dist)
    np.fill_diagonal(vals, 1.0)
    return CovarianceMatrix(
        values=vals, kind=MatrixKind.CORRELATION, params=params, metric=points.metric
    )


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular factor L with the jitter that was added to succeed."""

    lower: np.ndarray
    jitter: float

    @property
    def n(self) -> int:
        return self.lower.shape[0]


def cholesky_with_jitter(
    matrix,
    jitter_start: float | None = None,
    jitter_max: float = DEFAULT_JITTER_MAX,
) -> CholeskyFactor:
    """Cholesky factorization, escalating diagonal jitter until it succeeds.

    The jitter schedule is {0, jitter_start, 10 * jitter_start, ...} capped at
    ``jitter_max``; the smallest value that factors is kept.  The default
    start is 1e-10 times the mean diagonal.

    Raises
    ------
    NotPositiveDefiniteError
        If factorization still fails at the cap.
    """
    m = matrix.values if isinstance(matrix, CovarianceMatrix) else np.asarray(matrix, float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if jitter_start is None:
        jitter_start = 1e-10 * float(np.mean(np.diag(m)))
    if jitter_start <= 0:
        jitter_start = 1e-10
    jitter = 0.0
    while True:
        try:
            lower = np.linalg.cholesky(m + jitter * np.eye(m.shape[0]))
            return CholeskyFactor(lower=lower, jitter=jitter)
        except np.linalg.LinAlgError:
            nxt = jitter_start if jitter == 0.0 else jitter * 10.0
            if nxt > jitter_max:
                raise NotPositiveDefiniteError(
                    f"not positive definite even with jitter {jitter:g} "
                    f"(cap {jitter_max:g})"
                ) from None
            jitter = nxt


def sample_gaussian_process(
    factor: CholeskyFactor, seed: int, n_draws: int = 1
) -> np.ndarray:
    """Draw zero-mean Gaussian fields with covariance L L^T.

    Returns an (n_draws, n) array, one draw per row, computed as L z with
    standard normal z from ``numpy.random.default_rng(seed)``.  Equal seeds
    give identical output.
    """
    if n_draws < 1:
        raise ValueError("n_draws must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((factor.n, n_draws))
    return (factor.lower @ z).T


@dataclass(frozen=True)
class CorrelationSurface:
    """Correlation over a square displacement grid, z(i, j) = corr(|(x, y)|)."""

    x_grid: np.ndarray
    y_grid: np.ndarray
    z: np.ndarray
    params: MaternParams

    def origin_value(self) -> float:
        """z at the grid point closest to the displacement origin."""
        i = int(np.argmin(np.abs(self.y_grid)))
        j = int(np.argmin(np.abs(self.x_grid)))
        return float(self.z[i, j])


def surface_grid(
    params: MaternParams,
    half_width: float = DEFAULT_HALF_WIDTH,
    resolution: int = DEFAULT_RESOLUTION,
) -> CorrelationSurface:
    """Correlation surface over [-half_width, half_width]^2.

    z[i, j] = corr(sqrt(x_j^2 + y_i^2)) on a uniform resolution x resolution
    grid; rows follow y, columns follow x.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if not (math.isfinite(half_width) and half_width > 0):
        raise ValueError("half_width must be positive")
    g = np.linspace(-half_width, half_width, resolution)
    r = np.sqrt(g[None, :] ** 2 + g[:, None] ** 2)
    z = matern_corr(params, r)
    return CorrelationSurface(x_grid=g, y_grid=g.copy(), z=z, params=params)


def _params_meta(params: MaternParams) -> dict:
    return {
        "nu": params.nu,
        "scale": params.scale,
        "sigma2": params.sigma2,
        "parametrization": params.parametrization.value,
        "dim": params.dim,
    }


def surface_to_json(surface: CorrelationSurface) -> dict:
    """Surface as the {x, y, z, params} object served to the explorer."""
    return {
        "x": surface.x_grid.tolist(),
        "y": surface.y_grid.tolist(),
        "z": surface.z.tolist(),
        "params": _params_meta(surface.params),
    }


def grid_to_csv(x, y, z, meta: dict | None = None) -> str:
    """(x, y, z) long-format CSV with a '# key=value' metadata header."""
    buf = io.StringIO()
    if meta:
        for key in sorted(meta):
            buf.write(f"# {key}={meta[key]}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "z"])
    z = np.asarray(z)
    for i, yv in enumerate(np.asarray(y)):
        for j, xv in enumerate(np.asarray(x)):
            writer.writerow([repr(float(xv)), repr(float(yv)), repr(float(z[i, j]))])
    return buf.getvalue()


def surface_to_csv(surface: CorrelationSurface) -> str:
    """Surface in the long (x, y, z) CSV format with params in the header."""
    return grid_to_csv(
        surface.x_grid, surface.y_grid, surface.z, meta=_params_meta(surface.params)
    )
