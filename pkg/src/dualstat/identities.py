"""Residual evaluators for the duality identities.

Each evaluator assembles the identity's terms exactly as written, with two
ground rules that keep the residuals at rounding-noise level:

* infinite count sums are carried as cdf complements, never truncated;
* every density integral is a cdf difference, so reversed limits come out
  signed automatically.

A residual within ``RESIDUAL_TOLERANCE`` of zero is the machine-checkable
statement that the paired distributions describe the same probability mass.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .distributions import NegBinomialModel, _poisson_weight, neg_binomial_pmf
from .errors import DomainError
from .special import reg_inc_beta, reg_lower_inc_gamma, std_normal_cdf

RESIDUAL_TOLERANCE = 1e-10

IDENTITY_IDS = ("EQ5", "EQ8", "EQ11", "EQ12", "EQ17", "EQ18")

# Right-hand side each identity's terms must sum to.
_RHS = {"EQ5": 0.0, "EQ8": 0.0, "EQ11": 0.0, "EQ12": 1.0, "EQ17": 1.0, "EQ18": 1.0}


@dataclass(frozen=True)
class IdentityReport:
    """One identity evaluation: inputs, per-term values, signed residual.

    ``residual`` equals the ordered sum of the term values minus ``rhs``;
    re-summing the terms in order reproduces it exactly.
    """

    identity_id: str
    inputs: dict
    terms: tuple
    residual: float

    @property
    def rhs(self) -> float:
        return _RHS[self.identity_id]

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "inputs": dict(self.inputs),
            "terms": {label: value for label, value in self.terms},
            "residual": self.residual,
        }


def _build_report(identity_id: str, inputs: dict, terms: list) -> IdentityReport:
    total = 0.0
    for _, value in terms:
        total += value
    return IdentityReport(
        identity_id=identity_id,
        inputs=inputs,
        terms=tuple(terms),
        residual=total - _RHS[identity_id],
    )


def _poisson_sum(lo: int, hi: int, mu: float) -> float:
    """Sum of Poisson weights for counts lo..hi inclusive (empty when hi < lo)."""
    total = 0.0
    for i in range(lo, hi + 1):
        total += _poisson_weight(i, mu)
    return total


def _normal_mass(center: float, lo: float, hi: float, sigma: float) -> float:
    """Signed Normal(center, sigma) mass between lo and hi."""
    return std_normal_cdf((hi - center) / sigma) - std_normal_cdf((lo - center) / sigma)


def eq5_residual(mu1: float, mu2: float, n: int, m: int) -> IdentityReport:
    """Four-term balance between Gamma masses and Poisson partial sums.

    Swapping the rate from mu1 to mu2 moves exactly as much probability
    through the counts n+1..m as the two dual-Gamma integrals carry.
    """
    if mu1 < 0.0 or mu2 < 0.0:
        raise DomainError(f"rates must be non-negative, got mu1={mu1}, mu2={mu2}")
    if not (isinstance(n, int) and isinstance(m, int)) or n < 0 or m <= n:
        raise DomainError(f"need integer m > n >= 0, got n={n}, m={m}")
    terms = [
        (
            "gamma_m_mass_mu1_to_mu2",
            reg_lower_inc_gamma(m + 1.0, mu2) - reg_lower_inc_gamma(m + 1.0, mu1),
        ),
        ("poisson_sum_at_mu2", _poisson_sum(n + 1, m, mu2)),
        (
            "gamma_n_mass_mu2_to_mu1",
            reg_lower_inc_gamma(n + 1.0, mu1) - reg_lower_inc_gamma(n + 1.0, mu2),
        ),
        ("neg_poisson_sum_at_mu1", -_poisson_sum(n + 1, m, mu1)),
    ]
    return _build_report("EQ5", {"mu1": mu1, "mu2": mu2, "n": n, "m": m}, terms)


def eq12_residual(mu1: float, mu2: float, n_hat: int) -> IdentityReport:
    """Tail at mu1 + dual-Gamma mass between the rates + head at mu2 = 1.

    The infinite upper sum is represented exactly as a cdf complement; the
    middle integral is signed, so mu2 < mu1 is fine.
    """
    if mu1 < 0.0 or mu2 < 0.0:
        raise DomainError(f"rates must be non-negative, got mu1={mu1}, mu2={mu2}")
    if not isinstance(n_hat, int) or n_hat < 0:
        raise DomainError(f"n_hat must be a non-negative integer, got {n_hat}")
    a = n_hat + 1.0
    head_mu1 = 1.0 - reg_lower_inc_gamma(a, mu1)
    head_mu2 = 1.0 - reg_lower_inc_gamma(a, mu2)
    terms = [
        ("poisson_tail_at_mu1", 1.0 - head_mu1),
        (
            "gamma_mass_mu1_to_mu2",
            reg_lower_inc_gamma(a, mu2) - reg_lower_inc_gamma(a, mu1),
        ),
        ("poisson_head_at_mu2", head_mu2),
    ]
    return _build_report("EQ12", {"mu1": mu1, "mu2": mu2, "n_hat": n_hat}, terms)


def eq8_residual(b: float, c: float, d: float, sigma: float) -> IdentityReport:
    """Normal self-duality: the parameter-slot and value-slot integrals agree.

    Both terms reduce to the same cdf difference, so the residual is exactly
    the rounding noise of one subtraction.
    """
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    terms = [
        ("parameter_reading_mass", _normal_mass(b, c, d, sigma)),
        ("neg_variable_reading_mass", -_normal_mass(b, c, d, sigma)),
    ]
    return _build_report("EQ8", {"b": b, "c": c, "d": d, "sigma": sigma}, terms)


def eq11_residual(p: float, n: int, m: int) -> IdentityReport:
    """Beta cdf versus negative binomial head sum."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if n < 0 or m < 0 or not (isinstance(n, int) and isinstance(m, int)):
        raise DomainError(f"need integers n, m >= 0, got n={n}, m={m}")
    model = NegBinomialModel(n=n, p=p)
    head = 0.0
    for k in range(m + 1):
        head += neg_binomial_pmf(k, model)
    terms = [
        ("beta_cdf_at_p", reg_inc_beta(n + 1.0, m + 1.0, p)),
        ("neg_negbinomial_head", -head),
    ]
    return _build_report("EQ11", {"p": p, "n": n, "m": m}, terms)


def eq17_residual(x_hat: float, c: float, d: float, sigma: float) -> IdentityReport:
    """Two value-slot tails around a parameter-slot core sum to one.

    c and d may be any reals; a negative offset just makes the middle mass
    signed.
    """
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    lo = x_hat - c
    hi = x_hat + d
    terms = [
        ("lower_tail_mass", std_normal_cdf((lo - x_hat) / sigma)),
        ("parameter_core_mass", _normal_mass(x_hat, lo, hi, sigma)),
        ("upper_tail_mass", 1.0 - std_normal_cdf((hi - x_hat) / sigma)),
    ]
    return _build_report(
        "EQ17", {"x_hat": x_hat, "c": c, "d": d, "sigma": sigma}, terms
    )


def eq18_residual(x_hat: float, c: float, d: float, sigma: float) -> IdentityReport:
    """Shifted-mean tails around the parameter-slot core sum to one.

    The outer integrals recentre the observation density at x_hat - c and
    x_hat + d; non-negative offsets are required.
    """
    if c < 0.0 or d < 0.0:
        raise DomainError(f"offsets must be non-negative, got c={c}, d={d}")
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    lo = x_hat - c
    hi = x_hat + d
    terms = [
        ("upper_tail_from_shifted_low", 1.0 - std_normal_cdf((x_hat - lo) / sigma)),
        ("parameter_core_mass", _normal_mass(x_hat, lo, hi, sigma)),
        ("lower_tail_from_shifted_high", std_normal_cdf((x_hat - hi) / sigma)),
    ]
    return _build_report(
        "EQ18", {"x_hat": x_hat, "c": c, "d": d, "sigma": sigma}, terms
    )


# Documented input ranges for the randomized sweep.
SWEEP_RANGES = {
    "mu": (0.0, 50.0),
    "count_max": 60,
    "offset": (-20.0, 20.0),
    "sigma": (0.1, 10.0),
    "p": (0.0, 1.0),
}


def _draw_inputs(identity_id: str, rng: random.Random):
    mu_lo, mu_hi = SWEEP_RANGES["mu"]
    cmax = SWEEP_RANGES["count_max"]
    off_lo, off_hi = SWEEP_RANGES["offset"]
    sig_lo, sig_hi = SWEEP_RANGES["sigma"]
    if identity_id == "EQ5":
        n = rng.randint(0, cmax - 1)
        m = rng.randint(n + 1, cmax)
        return (rng.uniform(mu_lo, mu_hi), rng.uniform(mu_lo, mu_hi), n, m)
    if identity_id == "EQ12":
        return (
            rng.uniform(mu_lo, mu_hi),
            rng.uniform(mu_lo, mu_hi),
            rng.randint(0, cmax),
        )
    if identity_id == "EQ8":
        return (
            rng.uniform(off_lo, off_hi),
            rng.uniform(off_lo, off_hi),
            rng.uniform(off_lo, off_hi),
            rng.uniform(sig_lo, sig_hi),
        )
    if identity_id == "EQ11":
        return (rng.uniform(0.0, 1.0), rng.randint(0, cmax), rng.randint(0, cmax))
    if identity_id == "EQ17":
        return (
            rng.uniform(off_lo, off_hi),
            rng.uniform(off_lo, off_hi),
            rng.uniform(off_lo, off_hi),
            rng.uniform(sig_lo, sig_hi),
        )
    if identity_id == "EQ18":
        return (
            rng.uniform(off_lo, off_hi),
            rng.uniform(0.0, off_hi),
            rng.uniform(0.0, off_hi),
            rng.uniform(sig_lo, sig_hi),
        )
    raise DomainError(f"unknown identity id {identity_id!r}")


_EVALUATORS = {
    "EQ5": eq5_residual,
    "EQ8": eq8_residual,
    "EQ11": eq11_residual,
    "EQ12": eq12_residual,
    "EQ17": eq17_residual,
    "EQ18": eq18_residual,
}


def evaluate(identity_id: str, *args) -> IdentityReport:
    """Dispatch to one identity evaluator by id (EQ5, EQ8, ...)."""
    key = identity_id.upper()
    if key not in _EVALUATORS:
        raise DomainError(f"unknown identity id {identity_id!r}")
    return _EVALUATORS[key](*args)


def sweep(count: int, seed: int, tolerance: float = RESIDUAL_TOLERANCE) -> list:
    """Randomized residual sweep: ``count`` input tuples per identity.

    Returns one summary dict per identity with the worst residual seen and
    whether every residual stayed within ``tolerance``.  Deterministic for a
    fixed seed.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    rng = random.Random(seed)
    summaries = []
    for identity_id in IDENTITY_IDS:
        fn = _EVALUATORS[identity_id]
        worst = -1.0
        worst_inputs = None
        for _ in range(count):
            args = _draw_inputs(identity_id, rng)
            report = fn(*args)
            magnitude = abs(report.residual)
            if magnitude > worst:
                worst = magnitude
                worst_inputs = report.inputs
        summaries.append(
            {
                "identity_id": identity_id,
                "count": count,
                "max_abs_residual": worst,
                "worst_inputs": worst_inputs,
                "ok": worst <= tolerance,
            }
        )
    return summaries
