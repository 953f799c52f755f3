"""dualstat: statistically dual distribution evaluators and verification tools.

The package covers four layers:

* ``special``: incomplete gamma/beta, normal cdf, and their inverses;
* ``distributions``: Poisson, Gamma, Normal, negative binomial, and Beta
  evaluators in both the observable and the parameter (dual) readings;
* ``identities`` / ``intervals``: machine-precision residuals of the duality
  identities and the confidence intervals they induce;
* ``reconstruct``: a deterministic Monte Carlo engine that rebuilds the
  parameter distribution from simulated observations and tests it against
  the predicted dual law.
"""

from .distributions import (
    BetaModel,
    GammaModel,
    NegBinomialModel,
    NormalModel,
    PoissonModel,
    beta_pdf,
    dual_gamma_cdf,
    dual_gamma_pdf,
    gamma_pdf,
    neg_binomial_pmf,
    normal_pdf,
    poisson_cdf,
    poisson_pmf,
)
from .errors import ConvergenceError, DomainError
from .identities import (
    RESIDUAL_TOLERANCE,
    IdentityReport,
    eq5_residual,
    eq8_residual,
    eq11_residual,
    eq12_residual,
    eq17_residual,
    eq18_residual,
    sweep,
)
from .intervals import (
    POLICIES,
    ConfidenceInterval,
    eq13_verify,
    normal_interval,
    parameter_error_distribution,
    poisson_interval,
)
from .reconstruct import (
    KS_ALPHA,
    KS_CRITICAL,
    Histogram,
    NormalTarget,
    PoissonTarget,
    ReconstructionConfig,
    ReconstructionResult,
    ks_statistic,
    poisson_sample,
    reconstruct_normal_parameter,
    reconstruct_poisson_parameter,
)
from .special import (
    DEFAULT_TOLERANCE,
    ToleranceConfig,
    gamma_quantile,
    log_gamma,
    reg_inc_beta,
    reg_lower_inc_gamma,
    std_normal_cdf,
    std_normal_quantile,
)

__version__ = "0.1.0"

__all__ = [
    "BetaModel",
    "ConfidenceInterval",
    "ConvergenceError",
    "DEFAULT_TOLERANCE",
    "DomainError",
    "GammaModel",
    "Histogram",
    "IdentityReport",
    "KS_ALPHA",
    "KS_CRITICAL",
    "NegBinomialModel",
    "NormalModel",
    "NormalTarget",
    "POLICIES",
    "PoissonModel",
    "PoissonTarget",
    "RESIDUAL_TOLERANCE",
    "ReconstructionConfig",
    "ReconstructionResult",
    "ToleranceConfig",
    "beta_pdf",
    "dual_gamma_cdf",
    "dual_gamma_pdf",
    "eq5_residual",
    "eq8_residual",
    "eq11_residual",
    "eq12_residual",
    "eq13_verify",
    "eq17_residual",
    "eq18_residual",
    "gamma_pdf",
    "gamma_quantile",
    "ks_statistic",
    "log_gamma",
    "neg_binomial_pmf",
    "normal_interval",
    "normal_pdf",
    "parameter_error_distribution",
    "poisson_cdf",
    "poisson_interval",
    "poisson_pmf",
    "poisson_sample",
    "reconstruct_normal_parameter",
    "reconstruct_poisson_parameter",
    "reg_inc_beta",
    "reg_lower_inc_gamma",
    "std_normal_cdf",
    "std_normal_quantile",
    "sweep",
]
