"""Bijective, numerically stable parametrizations of constrained spaces.

Each map sends ℝᵏ onto a constrained set (positive reals, intervals,
simplices, spheres, balls, positive-definite / correlation matrices, …) with
an exact inverse, and is generic over the dual scalars in
:mod:`reparam.autodiff`, so gradients and Hessians of anything built on top
flow through unchanged.  :mod:`reparam.param_tree` composes maps into flat
parameter vectors for optimization; :mod:`reparam.inference` runs MLE with
Fisher-information confidence intervals on top of that.
"""

from ._errors import (
    ConvergenceError,
    DomainError,
    NotPositiveDefiniteError,
    ParseError,
    ReparamError,
    ShapeError,
    SingularMatrixError,
)
from .autodiff import (
    DualScalar,
    HyperDualScalar,
    fd_gradient,
    gradient,
    hessian,
    jacobian,
    value_grad,
    value_grad_hess,
)
from .scalar_maps import (
    erf,
    erfinv,
    expit,
    gaussian_to_logistic,
    half_line_to_reals,
    interval_to_reals,
    log1pexp,
    log_ndtr,
    logexpm1,
    logistic_to_gaussian,
    logit,
    ndtr,
    ndtr_inv,
    reals_to_half_line,
    reals_to_interval,
    softplus,
    softplusinv,
)
from .vector_maps import (
    ball_to_reals,
    chi2_cdf_approx,
    chi2_cdf_approx_inv,
    half_sphere_to_reals,
    reals_to_ball,
    reals_to_half_sphere,
    reals_to_simplex,
    reals_to_sphere,
    simplex_to_reals,
    sphere_to_reals,
)
from .matrix_maps import (
    corr_to_reals,
    diag_pd_to_reals,
    diag_to_reals,
    reals_to_corr,
    reals_to_diag,
    reals_to_diag_pd,
    reals_to_spd,
    reals_to_sym,
    spd_to_reals,
    sym_to_reals,
)
from .param_tree import (
    MatrixCorrelation,
    MatrixDiag,
    MatrixDiagPosDef,
    MatrixSym,
    MatrixSymPosDef,
    NamedTuple,
    Real,
    RealBounded,
    RealBounded01,
    RealLowerBounded,
    RealNegative,
    RealPositive,
    RealUpperBounded,
    Tuple,
    VectorBall,
    VectorHalfSphere,
    VectorSimplex,
    VectorSphere,
    params_to_reals1d,
    parse_spec,
    reals1d_to_params,
    render,
    size,
)
from .stat_oracles import (
    Rng,
    chi2_cdf_numeric,
    ks_test,
    sample_gumbel,
    sample_multivariate_student,
    sample_uniform_ball,
    sample_uniform_simplex,
    sample_uniform_sphere,
)
from .inference import (
    FitConfig,
    FitReport,
    delta_method_ci,
    fit_mle,
    gumbel_loglik,
    gumbel_moment_init,
    spd_det,
    student_loglik,
    student_moment_init,
)

__version__ = "0.1.0"
