"""Parameterized evaluators for the five distribution families.

Each family comes in two readings: the usual one (density/pmf of the
observable given the parameter) and the dual one (density of the parameter
given the observed value).  ``dual_gamma_pdf`` shares one code path with
``poisson_pmf`` so the two readings agree bit for bit, and ``normal_pdf``
is symmetric in value and mean by construction.

All factorial and binomial weights go through ``log_gamma`` so counts far
beyond 170 evaluate without overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .special import log_gamma, reg_lower_inc_gamma


@dataclass(frozen=True)
class PoissonModel:
    """Poisson event count with rate ``mu``."""

    mu: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise DomainError(f"Poisson rate must be positive, got mu={self.mu}")


@dataclass(frozen=True)
class GammaModel:
    """Gamma density a^shape * x^(shape-1) * exp(-a*x) / Gamma(shape).

    ``scale_a`` multiplies x in the exponent (an inverse scale); the usual
    scale parameter is ``1 / scale_a``.
    """

    scale_a: float
    shape: float

    def __post_init__(self):
        if not self.scale_a > 0.0:
            raise DomainError(f"scale_a must be positive, got {self.scale_a}")
        if not self.shape > 0.0:
            raise DomainError(f"shape must be positive, got {self.shape}")

    @property
    def mean(self) -> float:
        return self.shape / self.scale_a

    @property
    def variance(self) -> float:
        return self.shape / (self.scale_a * self.scale_a)

    @property
    def mode(self) -> float:
        if self.shape < 1.0:
            return 0.0
        return (self.shape - 1.0) / self.scale_a


@dataclass(frozen=True)
class NormalModel:
    """Normal with mean ``mean_a`` and standard deviation ``sigma``."""

    mean_a: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class NegBinomialModel:
    """Negative binomial: failures k before success n+1, success odds p.

    pmf(k) = (n+k)! / (n! k!) * p^(n+1) * (1-p)^k.  p = 0 is allowed for
    identity checks but makes the pmf identically zero (degenerate, not a
    normalizable distribution).
    """

    n: int
    p: float

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class BetaModel:
    """Beta density (n+m+1)!/(n! m!) * x^n * (1-x)^m on 0 < x < 1."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if self.m < 0 or self.m != int(self.m):
            raise DomainError(f"m must be a non-negative integer, got {self.m}")


def _check_count(name: str, value: int) -> None:
    if value < 0 or value != int(value):
        raise DomainError(f"{name} must be a non-negative integer, got {value}")


def _poisson_weight(n: int, mu: float) -> float:
    """mu^n e^-mu / n! in log space; the shared Poisson/dual-Gamma kernel.

    Accepts mu = 0 by continuity (weight 1 at n = 0, else 0) so identity
    sums can be evaluated at the boundary.
    """
    if mu == 0.0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(mu) - mu - log_gamma(n + 1.0))


def poisson_pmf(n: int, model: PoissonModel) -> float:
    """Probability of observing ``n`` events at rate ``model.mu``."""
    _check_count("n", n)
    return _poisson_weight(n, model.mu)


def poisson_cdf(n_hat: int, model: PoissonModel) -> float:
    """P(count <= n_hat) at rate ``model.mu``, via the incomplete gamma complement."""
    _check_count("n_hat", n_hat)
    return 1.0 - reg_lower_inc_gamma(n_hat + 1.0, model.mu)


def gamma_pdf(x: float, model: GammaModel) -> float:
    """Gamma density at x > 0."""
    if not x > 0.0:
        raise DomainError(f"gamma_pdf requires x > 0, got {x}")
    a, k = model.scale_a, model.shape
    return math.exp(k * math.log(a) - a * x + (k - 1.0) * math.log(x) - log_gamma(k))


def dual_gamma_pdf(mu: float, n_hat: int) -> float:
    """Density of the rate parameter given an observed count ``n_hat``.

    Same formula and same code path as ``poisson_pmf(n_hat, PoissonModel(mu))``:
    a Gamma(shape n_hat + 1, scale 1) density in mu.
    """
    _check_count("n_hat", n_hat)
    if not mu > 0.0:
        raise DomainError(f"dual_gamma_pdf requires mu > 0, got {mu}")
    return _poisson_weight(n_hat, mu)


def dual_gamma_cdf(mu: float, n_hat: int) -> float:
    """Mass of the dual Gamma on [0, mu]."""
    _check_count("n_hat", n_hat)
    if mu < 0.0:
        raise DomainError(f"dual_gamma_cdf requires mu >= 0, got {mu}")
    return reg_lower_inc_gamma(n_hat + 1.0, mu)


def normal_pdf(x: float, model: NormalModel) -> float:
    """Normal density; symmetric under exchanging x with the mean."""
    z = (x - model.mean_a) / model.sigma
    return math.exp(-0.5 * z * z) / (model.sigma * math.sqrt(2.0 * math.pi))


def neg_binomial_pmf(k: int, model: NegBinomialModel) -> float:
    """Negative binomial pmf at k >= 0 failures."""
    _check_count("k", k)
    n, p = model.n, model.p
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0 if k == 0 else 0.0
    log_tail = k * math.log1p(-p) if k > 0 else 0.0
    return math.exp(
        log_gamma(n + k + 1.0)
        - log_gamma(n + 1.0)
        - log_gamma(k + 1.0)
        + (n + 1.0) * math.log(p)
        + log_tail
    )


def beta_pdf(x: float, model: BetaModel) -> float:
    """Beta density at 0 < x < 1."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"beta_pdf requires 0 < x < 1, got {x}")
    n, m = model.n, model.m
    log_x = n * math.log(x) if n > 0 else 0.0
    log_1mx = m * math.log1p(-x) if m > 0 else 0.0
    return math.exp(
        log_gamma(n + m + 2.0)
        - log_gamma(n + 1.0)
        - log_gamma(m + 1.0)
        + log_x
        + log_1mx
    )
