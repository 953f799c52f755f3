"""Independent oracles used to derive expected values.

These deliberately avoid the library's code paths: direct summation for
Poisson heads, Gauss-Legendre quadrature for density masses, and mpmath's
arbitrary-precision functions for reference values of the special
functions.  Frozen literals in the tests were produced by these routines.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def poisson_pmf_direct(n: int, mu: float) -> float:
    return mu**n * math.exp(-mu) / math.factorial(n)


def poisson_cdf_direct(n: int, mu: float) -> float:
    return math.fsum(poisson_pmf_direct(i, mu) for i in range(n + 1))


def poisson_sum_direct(lo: int, hi: int, mu: float) -> float:
    return math.fsum(poisson_pmf_direct(i, mu) for i in range(lo, hi + 1))


def dual_gamma_pdf_direct(mu: float, n_hat: int) -> float:
    return mu**n_hat * math.exp(-mu) / math.factorial(n_hat)


def normal_pdf_direct(x: float, mean: float, sigma: float) -> float:
    return math.exp(-0.5 * ((x - mean) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))


def quad_mass(f, lo: float, hi: float, nodes: int = 80) -> float:
    """Signed integral of f over [lo, hi] by panelled Gauss-Legendre."""
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi = hi, lo
        sign = -1.0
    panels = max(1, int(math.ceil((hi - lo) / 2.0)))
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    width = (hi - lo) / panels
    for k in range(panels):
        a = lo + k * width
        mid = a + 0.5 * width
        half = 0.5 * width
        total += half * float(np.sum(w * np.array([f(mid + half * t) for t in x])))
    return sign * total


def gammainc_reference(a: float, x: float) -> float:
    return float(mp.gammainc(a, 0, x, regularized=True))


def betainc_reference(a: float, b: float, x: float) -> float:
    return float(mp.betainc(a, b, 0, x, regularized=True))


def normal_cdf_reference(z: float) -> float:
    return float(mp.erfc(-mp.mpf(z) / mp.sqrt(2)) / 2)


def normal_quantile_reference(q: float) -> float:
    """Invert the high-precision normal cdf by bisection."""
    lo, hi = mp.mpf(-50), mp.mpf(50)
    target = mp.mpf(q)
    for _ in range(200):
        mid = (lo + hi) / 2
        if mp.erfc(-mid / mp.sqrt(2)) / 2 < target:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def gamma_quantile_reference(a: float, q: float) -> float:
    lo, hi = mp.mpf(0), mp.mpf(a + 20 * math.sqrt(a) + 200)
    target = mp.mpf(q)
    for _ in range(200):
        mid = (lo + hi) / 2
        if mp.gammainc(a, 0, mid, regularized=True) < target:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
