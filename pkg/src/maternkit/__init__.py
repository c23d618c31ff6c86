"""maternkit: the Matern correlation family end to end.

Bessel-K numerics, the four standard parametrizations, pointwise evaluation
with the three-part decomposition, covariance matrices and Gaussian-process
sampling, the conditional two-process joint covariance, and the likelihood
analysis around the microergodic quantity sigma2 * kappa^(2 nu).
"""

from .special_functions import (
    BesselOrder,
    PartValues,
    bessel_k,
    constant_part,
    half_integer_p,
    log_bessel_k,
    power_part,
)
from .kernel import (
    MaternParams,
    Parametrization,
    closed_form_corr,
    convert_params,
    gaussian_limit_corr,
    matern_corr,
    matern_corr_parts,
    spectral_density,
)
from .covariance import (
    CholeskyFactor,
    CorrelationSurface,
    CovarianceMatrix,
    Metric,
    NotPositiveDefiniteError,
    PointSet,
    cholesky_with_jitter,
    correlation_matrix,
    pairwise_distances,
    sample_gaussian_process,
    surface_grid,
    surface_to_csv,
    surface_to_json,
)
from .conditional_joint import (
    JointCovariance,
    TentOperator,
    blocks_to_csv,
    build_joint,
    build_tent,
    matern32_params,
    render_blocks,
)
from .analysis import (
    FitResult,
    RidgeProfile,
    SwapDiffRow,
    equivalence_growth,
    fit_mle,
    gaussian_kl,
    microergodic,
    neg_log_likelihood,
    power_curve_mse,
    profile_ridge,
    swap_difference,
)

__version__ = "0.1.0"

__all__ = [
    "BesselOrder",
    "PartValues",
    "bessel_k",
    "constant_part",
    "half_integer_p",
    "log_bessel_k",
    "power_part",
    "MaternParams",
    "Parametrization",
    "closed_form_corr",
    "convert_params",
    "gaussian_limit_corr",
    "matern_corr",
    "matern_corr_parts",
    "spectral_density",
    "CholeskyFactor",
    "CorrelationSurface",
    "CovarianceMatrix",
    "Metric",
    "NotPositiveDefiniteError",
    "PointSet",
    "cholesky_with_jitter",
    "correlation_matrix",
    "pairwise_distances",
    "sample_gaussian_process",
    "surface_grid",
    "surface_to_csv",
    "surface_to_json",
    "JointCovariance",
    "TentOperator",
    "blocks_to_csv",
    "build_joint",
    "build_tent",
    "matern32_params",
    "render_blocks",
    "FitResult",
    "RidgeProfile",
    "SwapDiffRow",
    "equivalence_growth",
    "fit_mle",
    "gaussian_kl",
    "microergodic",
    "neg_log_likelihood",
    "power_curve_mse",
    "profile_ridge",
    "swap_difference",
    "__version__",
]
