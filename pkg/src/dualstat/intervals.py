"""Confidence intervals for the Poisson rate and the Normal mean.

The Poisson interval is built from the dual Gamma: the pair (mu1, mu2)
encloses dual-Gamma mass equal to the confidence level, which is the same
statement as cdf(n_hat; mu1) - cdf(n_hat; mu2) = level on the observation
side.  Four endpoint policies are exposed; ``central`` is the default.

``achieved`` is always recomputed from the cdfs of the finished interval,
never copied from the request, so it doubles as the verification hook.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import GammaModel, _poisson_weight
from .errors import DomainError
from .special import (
    DEFAULT_TOLERANCE,
    ToleranceConfig,
    gamma_quantile,
    reg_lower_inc_gamma,
    std_normal_cdf,
    std_normal_quantile,
)

POLICIES = ("central", "shortest", "upper_limit", "lower_limit")


@dataclass(frozen=True)
class ConfidenceInterval:
    """Interval endpoints with the requested and recomputed coverage.

    Unbounded sides carry ``math.inf`` / ``-math.inf``; serialization turns
    them into "inf" / "-inf" tokens.
    """

    lower: float
    upper: float
    level: float
    policy: str
    achieved: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(
                f"interval bounds out of order: ({self.lower}, {self.upper})"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "level": self.level,
            "policy": self.policy,
            "achieved": self.achieved,
        }


def _check_level(level: float) -> None:
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")


def _check_policy(policy: str) -> None:
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}, expected one of {POLICIES}")


def _dual_gamma_mass(n_hat: int, lower: float, upper: float) -> float:
    """Dual-Gamma mass between the bounds, treating inf as the full tail."""
    hi = 1.0 if math.isinf(upper) else reg_lower_inc_gamma(n_hat + 1.0, upper)
    lo = 0.0 if lower == 0.0 else reg_lower_inc_gamma(n_hat + 1.0, lower)
    return hi - lo


def _shortest_lower_tail(n_hat: int, level: float, tol: ToleranceConfig) -> float:
    """Lower tail mass q1 of the minimum-width interval (n_hat >= 1).

    The width of [Q(q1), Q(q1 + level)] is stationary where the dual-Gamma
    density takes equal values at both endpoints; that equal-density root is
    bracketed in q1 and found by bisection.
    """
    a = n_hat + 1.0
    alpha = 1.0 - level

    def density_gap(q1: float) -> float:
        mu1 = gamma_quantile(a, q1, tol)
        mu2 = gamma_quantile(a, q1 + level, tol)
        return _poisson_weight(n_hat, mu1) - _poisson_weight(n_hat, mu2)

    lo = alpha * 1e-12
    hi = alpha * (1.0 - 1e-12)
    # density_gap < 0 near q1 = 0 (density vanishes at mu = 0 for n_hat >= 1)
    # and > 0 near q1 = alpha (density vanishes in the far upper tail).
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if density_gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * alpha:
            break
    return 0.5 * (lo + hi)


def poisson_interval(
    n_hat: int,
    level: float,
    policy: str = "central",
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> ConfidenceInterval:
    """Confidence interval for the Poisson rate after observing ``n_hat`` events."""
    if not isinstance(n_hat, int) or n_hat < 0:
        raise DomainError(f"n_hat must be a non-negative integer, got {n_hat}")
    _check_level(level)
    _check_policy(policy)
    a = n_hat + 1.0
    alpha = 1.0 - level
    if policy == "central":
        lower = gamma_quantile(a, 0.5 * alpha, tol)
        upper = gamma_quantile(a, 1.0 - 0.5 * alpha, tol)
    elif policy == "upper_limit":
        lower = 0.0
        upper = gamma_quantile(a, level, tol)
    elif policy == "lower_limit":
        lower = gamma_quantile(a, alpha, tol)
        upper = math.inf
    else:  # shortest
        if n_hat == 0:
            # Mode sits at mu = 0, so the shortest interval is pinned there.
            lower = 0.0
            upper = gamma_quantile(a, level, tol)
        else:
            q1 = _shortest_lower_tail(n_hat, level, tol)
            lower = gamma_quantile(a, q1, tol)
            upper = gamma_quantile(a, q1 + level, tol)
    achieved = _dual_gamma_mass(n_hat, lower, upper)
    return ConfidenceInterval(lower, upper, level, policy, achieved)


def eq13_verify(interval: ConfidenceInterval, n_hat: int) -> float:
    """Signed residual of the defining coverage condition for a rate interval.

    Returns (cdf(n_hat; lower) - cdf(n_hat; upper)) - level, where the count
    cdf at an infinite rate is its limit 0.
    """
    if not isinstance(n_hat, int) or n_hat < 0:
        raise DomainError(f"n_hat must be a non-negative integer, got {n_hat}")
    if interval.lower < 0.0:
        raise DomainError(f"rate interval bounds must be >= 0, got {interval.lower}")
    a = n_hat + 1.0
    cdf_lower = 1.0 - reg_lower_inc_gamma(a, interval.lower)
    cdf_upper = (
        0.0 if math.isinf(interval.upper) else 1.0 - reg_lower_inc_gamma(a, interval.upper)
    )
    return (cdf_lower - cdf_upper) - interval.level


def parameter_error_distribution(n_hat: int) -> GammaModel:
    """Distribution of the rate given an observed count: Gamma(n_hat + 1, scale 1).

    Mean and variance are both n_hat + 1; the mode sits at n_hat.
    """
    if not isinstance(n_hat, int) or n_hat < 0:
        raise DomainError(f"n_hat must be a non-negative integer, got {n_hat}")
    return GammaModel(scale_a=1.0, shape=n_hat + 1.0)


def normal_interval(
    x_hat: float,
    sigma: float,
    level: float,
    policy: str = "central",
    tol: ToleranceConfig = DEFAULT_TOLERANCE,
) -> ConfidenceInterval:
    """Confidence interval for the Normal mean from one observation.

    By symmetry the shortest interval coincides with the central one.
    """
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    _check_level(level)
    _check_policy(policy)
    if policy in ("central", "shortest"):
        z = std_normal_quantile(0.5 * (1.0 + level), tol)
        lower = x_hat - z * sigma
        upper = x_hat + z * sigma
    elif policy == "upper_limit":
        lower = -math.inf
        upper = x_hat + std_normal_quantile(level, tol) * sigma
    else:  # lower_limit
        lower = x_hat - std_normal_quantile(level, tol) * sigma
        upper = math.inf
    hi = 1.0 if math.isinf(upper) else std_normal_cdf((upper - x_hat) / sigma)
    lo = 0.0 if math.isinf(lower) else std_normal_cdf((lower - x_hat) / sigma)
    return ConfidenceInterval(lower, upper, level, policy, hi - lo)
