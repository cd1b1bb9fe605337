"""Multiplicative random walks on positive definite matrices.

Samplers for the classical matrix laws (Wishart, inverse Wishart, matrix
beta of both types), symmetrised-product walk constructions, exponential
functionals and their inverse Wishart limits, Kesten-type fixed points,
Lyapunov exponents with closed forms, the scalar kernel algebra behind the
hidden-Markov structure of the walk, and a self-checking verification suite.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    EigenFailure,
    EmptySample,
    InsufficientBinCount,
    NotPositiveDefinite,
    PosDefWalksError,
    QuadratureNoConvergence,
    SingularTransform,
    StepOverflow,
    TruncationFailure,
)
from .matcore import (
    SplitKind,
    cholesky,
    congruence,
    det,
    eigenvalues,
    identity,
    invert,
    is_posdef,
    lambda_max,
    lambda_min,
    logdet,
    posdef,
    split_factor,
    sqrt_factor,
    sym_product,
    sym_product_alt,
    symmetrize,
    trace,
)
from .special import (
    DEFAULT_QUAD,
    KernelBundleD1,
    Law,
    ModelParams,
    QuadratureCdf,
    QuadratureSpec,
    density_wrt_mu,
    digamma,
    integrate_mu_d1,
    kernel_densities_d1,
    log_multivariate_gamma,
    multivariate_beta,
    multivariate_gamma,
    phi_d1,
)
from .matdist import (
    BartlettSpec,
    make_stream,
    sample,
    sample_bartlett,
    sample_beta1,
    sample_beta2,
    sample_factor,
    sample_inv_beta1,
    sample_inv_wishart,
    sample_wishart,
)
from .walks import (
    Construction,
    GrskState,
    KestenState,
    WalkConfig,
    WalkTrace,
    dufresne_series,
    grsk_my_identity_check,
    grsk_product_identity_gap,
    grsk_step,
    grsk_trajectory,
    kesten_prime_step,
    kesten_samples,
    kesten_step,
    simulate_walk,
    simulate_walks,
    trace_from_increments,
    walk_closed,
    walk_step,
)
from .lyapunov import (
    LyapunovReport,
    closed_form_mu,
    empirical_mu_cholesky,
    empirical_mu_eigen,
)
from .verify import (
    CHECK_NAMES,
    Functional,
    TestReport,
    check_beta_gamma,
    check_construction_equivalence,
    check_dufresne,
    check_fixed_point,
    check_intertwining_d1,
    check_lukacs,
    check_my_markov_d1,
    ks_one_sample,
    ks_two_sample,
    run_all,
    run_check,
)

__all__ = [
    "__version__",
    "BartlettSpec",
    "CHECK_NAMES",
    "Construction",
    "DEFAULT_QUAD",
    "DomainError",
    "EigenFailure",
    "EmptySample",
    "Functional",
    "GrskState",
    "InsufficientBinCount",
    "KernelBundleD1",
    "KestenState",
    "Law",
    "LyapunovReport",
    "ModelParams",
    "NotPositiveDefinite",
    "PosDefWalksError",
    "QuadratureCdf",
    "QuadratureNoConvergence",
    "QuadratureSpec",
    "SingularTransform",
    "SplitKind",
    "StepOverflow",
    "TestReport",
    "TruncationFailure",
    "WalkConfig",
    "WalkTrace",
    "check_beta_gamma",
    "check_construction_equivalence",
    "check_dufresne",
    "check_fixed_point",
    "check_intertwining_d1",
    "check_lukacs",
    "check_my_markov_d1",
    "cholesky",
    "closed_form_mu",
    "congruence",
    "density_wrt_mu",
    "det",
    "digamma",
    "dufresne_series",
    "eigenvalues",
    "empirical_mu_cholesky",
    "empirical_mu_eigen",
    "grsk_my_identity_check",
    "grsk_product_identity_gap",
    "grsk_step",
    "grsk_trajectory",
    "identity",
    "integrate_mu_d1",
    "invert",
    "is_posdef",
    "kernel_densities_d1",
    "kesten_prime_step",
    "kesten_samples",
    "kesten_step",
    "ks_one_sample",
    "ks_two_sample",
    "lambda_max",
    "lambda_min",
    "log_multivariate_gamma",
    "logdet",
    "make_stream",
    "multivariate_beta",
    "multivariate_gamma",
    "phi_d1",
    "posdef",
    "run_all",
    "run_check",
    "sample",
    "sample_bartlett",
    "sample_beta1",
    "sample_beta2",
    "sample_factor",
    "sample_inv_beta1",
    "sample_inv_wishart",
    "sample_wishart",
    "simulate_walk",
    "simulate_walks",
    "split_factor",
    "sqrt_factor",
    "sym_product",
    "sym_product_alt",
    "symmetrize",
    "trace",
    "trace_from_increments",
    "walk_closed",
    "walk_step",
]
