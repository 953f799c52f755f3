"""Scalar special functions: log-gamma, regularized incomplete gamma and beta,
and the standard normal cdf, with guarded-Newton inverses for the quantiles.

Everything here is a pure function of its arguments.  The incomplete gamma
function uses the classic series / continued-fraction split at x = a + 1;
the incomplete beta uses the continued fraction with the symmetry split.
Iterative schemes run to machine precision and use ``ToleranceConfig`` only
for stopping targets of the inverses and for iteration caps.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

_EPS = sys.float_info.epsilon
_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ToleranceConfig:
    """Stopping targets and iteration budget for the iterative routines.

    ``abs_tol`` bounds the residual of the quantile inversions, ``rel_tol``
    bounds their relative step size, and ``max_iter`` caps every loop.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.rel_tol > 0.0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_TOLERANCE = ToleranceConfig()


def log_gamma(z: float) -> float:
    """Natural log of the gamma function for z > 0."""
    if not z > 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z}")
    return math.lgamma(z)


def _gamma_series(a: float, x: float, max_iter: int) -> float:
    # Lower series: P(a,x) = x^a e^-x / Gamma(a) * sum_n x^n / (a(a+1)...(a+n))
    gln = math.lgamma(a)
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(max_iter):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - gln)
    raise ConvergenceError(
        f"incomplete gamma series did not converge for a={a}, x={x}"
    )


def _gamma_cont_frac(a: float, x: float, max_iter: int) -> float:
    # Upper tail Q(a,x) by modified Lentz continued fraction.
    gln = math.lgamma(a)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + a * math.log(x) - gln)
    raise ConvergenceError(
        f"incomplete gamma continued fraction did not converge for a={a}, x={x}"
    )


def reg_lower_inc_gamma(
    a: float, x: float, tol: ToleranceConfig = DEFAULT_TOLERANCE
) -> float:
    """Regularized lower incomplete gamma P(a, x), the Gamma(a, scale 1) cdf."""
    if not a > 0.0:
        raise DomainError(f"reg_lower_inc_gamma requires a > 0, got a={a}")
    if x < 0.0:
        raise DomainError(f"reg_lower_inc_gamma requires x >= 0, got x={x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x, tol.max_iter)
    return 1.0 - _gamma_cont_frac(a, x, tol.max_iter)


def _beta_cont_frac(a: float, b: float, x: float, max_iter: int) -> float:
    # Modified Lentz evaluation of the incomplete beta continued fraction.
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def reg_inc_beta(
    a: float, b: float, x: float, tol: ToleranceConfig = DEFAULT_TOLERANCE
) -> float:
    """Regularized incomplete beta I_x(a, b), the Beta(a, b) cdf."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"reg_inc_beta requires a, b > 0, got a={a}, b={b}")
    if x < 0.0 or x > 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got x={x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cont_frac(a, b, x, tol.max_iter) / a
    return 1.0 - front * _beta_cont_frac(b, a, 1.0 - x, tol.max_iter) / b


def std_normal_cdf(z: float) -> float:
    """Standard normal cdf via the complementary error function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_pdf(z: float) -> float:
    """Standard normal density."""
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def _invert_monotone(
    f,
    deriv,
    target: float,
    lo: float,
    hi: float,
    x0: float,
    tol: ToleranceConfig,
) -> float:
    """Solve f(x) = target on the bracket [lo, hi] for nondecreasing f.

    Newton steps from ``x0``, falling back to bisection whenever a step
    leaves the current bracket or the derivative is unusable.
    """
    x = min(max(x0, lo), hi)
    if x == lo or x == hi:
        x = 0.5 * (lo + hi)
    for _ in range(tol.max_iter):
        fx = f(x) - target
        if abs(fx) <= tol.abs_tol:
            return x
        if fx < 0.0:
            lo = x
        else:
            hi = x
        g = deriv(x)
        if g > 0.0:
            step = fx / g
            x_new = x - step
        else:
            x_new = 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= tol.rel_tol * abs(x) and abs(fx) <= 1e-9:
            return x_new
        x = x_new
    raise ConvergenceError(
        f"quantile inversion did not converge (target={target}, bracket=[{lo},{hi}])"
    )


def gamma_quantile(
    a: float, q: float, tol: ToleranceConfig = DEFAULT_TOLERANCE
) -> float:
    """Inverse of ``reg_lower_inc_gamma`` in x: the Gamma(a, scale 1) quantile."""
    if not a > 0.0:
        raise DomainError(f"gamma_quantile requires a > 0, got a={a}")
    if not 0.0 < q < 1.0:
        raise DomainError(f"gamma_quantile requires 0 < q < 1, got q={q}")
    hi = a + 10.0 * math.sqrt(a) + 30.0
    for _ in range(8):
        if reg_lower_inc_gamma(a, hi, tol) >= q:
            break
        hi *= 2.0
    else:
        raise ConvergenceError(f"could not bracket gamma quantile for a={a}, q={q}")

    # Wilson-Hilferty start, with a small-x series start when it collapses.
    z = std_normal_quantile(q, tol)
    t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * math.sqrt(a))
    x0 = a * t * t * t if t > 0.0 else 0.0
    if x0 <= 0.0:
        x0 = math.exp((math.log(q) + math.lgamma(a + 1.0)) / a)

    def pdf(x):
        if x <= 0.0:
            return 0.0
        return math.exp((a - 1.0) * math.log(x) - x - math.lgamma(a))

    return _invert_monotone(
        lambda x: reg_lower_inc_gamma(a, x, tol), pdf, q, 0.0, hi, x0, tol
    )


def std_normal_quantile(q: float, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> float:
    """Inverse standard normal cdf, antisymmetric about q = 1/2."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"std_normal_quantile requires 0 < q < 1, got q={q}")
    if q == 0.5:
        return 0.0
    qr = q if q < 0.5 else 1.0 - q
    # Rational lower-tail seed (Abramowitz & Stegun 26.2.23 form).
    t = math.sqrt(-2.0 * math.log(qr))
    x0 = -(t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t))
    z = _invert_monotone(std_normal_cdf, std_normal_pdf, qr, -45.0, 0.0, x0, tol)
    return z if q < 0.5 else -z
