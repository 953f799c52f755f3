import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualstat import (
    ConvergenceError,
    DomainError,
    ToleranceConfig,
    gamma_quantile,
    log_gamma,
    reg_inc_beta,
    reg_lower_inc_gamma,
    std_normal_cdf,
    std_normal_quantile,
)

from oracles import (
    betainc_reference,
    gammainc_reference,
    normal_cdf_reference,
    normal_quantile_reference,
    poisson_cdf_direct,
)


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.abs_tol == 1e-12
        assert tol.rel_tol == 1e-12
        assert tol.max_iter == 200

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"abs_tol": 0.0},
            {"abs_tol": -1e-9},
            {"rel_tol": 0.0},
            {"max_iter": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            ToleranceConfig(**kwargs)


class TestLogGamma:
    @pytest.mark.parametrize(
        ("z", "expected"),
        [
            # Gamma(1) = 1
            (1.0, 0.0),
            # Gamma(5) = 4! = 24
            (5.0, math.log(24.0)),
            # Gamma(1/2) = sqrt(pi)
            (0.5, 0.5 * math.log(math.pi)),
        ],
    )
    def test_known_values(self, z, expected):
        assert log_gamma(z) == pytest.approx(expected, rel=1e-13, abs=1e-15)

    @pytest.mark.parametrize("z", [0.0, -1.0, -0.5])
    def test_domain(self, z):
        with pytest.raises(DomainError):
            log_gamma(z)

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.5, 17.0, 313.0, 9999.5])
    def test_recurrence(self, z):
        # lnGamma(z+1) = lnGamma(z) + ln z
        lhs = log_gamma(z + 1.0)
        rhs = log_gamma(z) + math.log(z)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestRegLowerIncGamma:
    @pytest.mark.parametrize(
        ("a", "x", "expected"),
        [
            # exponential cdf 1 - e^-1
            (1.0, 1.0, 1.0 - math.exp(-1.0)),
            # closed form 1 - e^-3 (1 + 3 + 9/2), frozen from the direct sum
            (3.0, 3.0, 0.5768099188731565),
            # empty integral
            (7.0, 0.0, 0.0),
        ],
    )
    def test_known_values(self, a, x, expected):
        assert reg_lower_inc_gamma(a, x) == pytest.approx(expected, abs=1e-13)

    @pytest.mark.parametrize(("a", "x"), [(0.0, 1.0), (-2.0, 1.0), (1.0, -0.1)])
    def test_domain(self, a, x):
        with pytest.raises(DomainError):
            reg_lower_inc_gamma(a, x)

    @pytest.mark.parametrize("a", [0.5, 1.0, 3.0, 11.0, 101.0])
    def test_monotone_in_x(self, a):
        grid = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 60.0, 140.0]
        values = [reg_lower_inc_gamma(a, x) for x in grid]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(v2 >= v1 for v1, v2 in zip(values, values[1:]))

    def test_poisson_bridge(self):
        # P(n+1, mu) = 1 - sum_{i<=n} pmf(i; mu),直 summed independently
        mus = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0]
        for n in range(0, 101, 5):
            for mu in mus:
                lhs = reg_lower_inc_gamma(n + 1.0, mu)
                rhs = 1.0 - poisson_cdf_direct(n, mu)
                assert lhs == pytest.approx(rhs, abs=1e-11), (n, mu)

    @given(
        a=st.floats(min_value=0.05, max_value=150.0),
        x=st.floats(min_value=0.0, max_value=300.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_reference(self, a, x):
        assert reg_lower_inc_gamma(a, x) == pytest.approx(
            gammainc_reference(a, x), abs=5e-13
        )

    def test_iteration_budget(self):
        with pytest.raises(ConvergenceError):
            reg_lower_inc_gamma(5000.0, 5000.0)
        loose = ToleranceConfig(max_iter=3000)
        assert reg_lower_inc_gamma(5000.0, 5000.0, loose) == pytest.approx(
            gammainc_reference(5000.0, 5000.0), abs=1e-12
        )


class TestRegIncBeta:
    @pytest.mark.parametrize(
        ("a", "b", "x", "expected"),
        [
            # uniform cdf
            (1.0, 1.0, 0.3, 0.3),
            # a = b symmetry about 1/2
            (2.0, 2.0, 0.5, 0.5),
            # I_x(2,1) = x^2
            (2.0, 1.0, 0.5, 0.25),
        ],
    )
    def test_known_values(self, a, b, x, expected):
        assert reg_inc_beta(a, b, x) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize(
        ("a", "b", "x"), [(0.0, 1.0, 0.5), (1.0, -1.0, 0.5), (1.0, 1.0, 1.5), (1.0, 1.0, -0.1)]
    )
    def test_domain(self, a, b, x):
        with pytest.raises(DomainError):
            reg_inc_beta(a, b, x)

    def test_endpoints(self):
        assert reg_inc_beta(3.0, 4.0, 0.0) == 0.0
        assert reg_inc_beta(3.0, 4.0, 1.0) == 1.0

    @given(
        a=st.floats(min_value=0.1, max_value=80.0),
        b=st.floats(min_value=0.1, max_value=80.0),
        x=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_reference(self, a, b, x):
        assert reg_inc_beta(a, b, x) == pytest.approx(
            betainc_reference(a, b, x), abs=5e-13
        )

    @given(
        a=st.floats(min_value=0.2, max_value=40.0),
        b=st.floats(min_value=0.2, max_value=40.0),
        x=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_reflection(self, a, b, x):
        assert reg_inc_beta(a, b, x) == pytest.approx(
            1.0 - reg_inc_beta(b, a, 1.0 - x), abs=2e-14
        )

    def test_monotone_in_x(self):
        grid = [i / 50 for i in range(51)]
        values = [reg_inc_beta(3.0, 7.0, x) for x in grid]
        assert all(v2 >= v1 for v1, v2 in zip(values, values[1:]))


class TestStdNormalCdf:
    def test_center(self):
        assert std_normal_cdf(0.0) == 0.5

    def test_quantile_95(self):
        # z value frozen from the high-precision cdf bisection oracle
        assert std_normal_cdf(1.6448536270) == pytest.approx(0.95, abs=1e-10)

    def test_far_tail_underflow(self):
        assert std_normal_cdf(-1e9) == 0.0
        assert std_normal_cdf(1e9) == 1.0

    @pytest.mark.parametrize("z", [0.1, 0.7, 1.0, 2.5, 5.0, 8.0, 13.0, 21.0])
    def test_symmetry(self, z):
        assert abs(std_normal_cdf(-z) - (1.0 - std_normal_cdf(z))) <= 1e-15

    @given(z=st.floats(min_value=-12.0, max_value=12.0))
    @settings(max_examples=300, deadline=None)
    def test_matches_reference(self, z):
        assert std_normal_cdf(z) == pytest.approx(normal_cdf_reference(z), abs=1e-14)


class TestGammaQuantile:
    @pytest.mark.parametrize(
        ("a", "q", "expected"),
        [
            # closed form -ln(1 - q) for the unit exponential
            (1.0, 0.95, -math.log(0.05)),
            (1.0, 0.5, math.log(2.0)),
        ],
    )
    def test_exponential_closed_forms(self, a, q, expected):
        assert gamma_quantile(a, q) == pytest.approx(expected, abs=1e-11)

    def test_chi_square_table(self):
        # Half the independently tabulated chi-square quantile (0.90, 6 dof).
        assert gamma_quantile(3.0, 0.90) == pytest.approx(10.6446 / 2.0, abs=1e-4)

    @pytest.mark.parametrize(("a", "q"), [(1.0, 0.0), (1.0, 1.0), (1.0, -0.2), (0.0, 0.5)])
    def test_domain(self, a, q):
        with pytest.raises(DomainError):
            gamma_quantile(a, q)

    @pytest.mark.parametrize("a", [0.5, 1.0, 3.0, 11.0, 101.0])
    @pytest.mark.parametrize("q", [0.001, 0.05, 0.5, 0.95, 0.999])
    def test_round_trip(self, a, q):
        x = gamma_quantile(a, q)
        assert reg_lower_inc_gamma(a, x) == pytest.approx(q, abs=1e-10)

    def test_matches_reference(self):
        for a, q in [(2.0, 0.9), (7.5, 0.01), (40.0, 0.75), (0.7, 0.4)]:
            assert gamma_quantile(a, q) == pytest.approx(
                gamma_quantile_reference_cached(a, q), rel=1e-9
            )


def gamma_quantile_reference_cached(a, q):
    from oracles import gamma_quantile_reference

    return gamma_quantile_reference(a, q)


class TestStdNormalQuantile:
    def test_median(self):
        assert std_normal_quantile(0.5) == 0.0

    @pytest.mark.parametrize(
        ("q", "expected"),
        [
            # frozen from the high-precision bisection oracle
            (0.95, 1.6448536269514722),
            (0.975, 1.9599639845400545),
        ],
    )
    def test_known_values(self, q, expected):
        assert std_normal_quantile(q) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.5, 2.0])
    def test_domain(self, q):
        with pytest.raises(DomainError):
            std_normal_quantile(q)

    @pytest.mark.parametrize("q", [0.001, 0.01, 0.1, 0.25, 0.4, 0.49])
    def test_antisymmetry(self, q):
        assert abs(std_normal_quantile(1.0 - q) + std_normal_quantile(q)) <= 1e-12

    @given(q=st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
    @settings(max_examples=300, deadline=None)
    def test_round_trip(self, q):
        assert std_normal_cdf(std_normal_quantile(q)) == pytest.approx(q, abs=1e-12)

    def test_matches_reference(self):
        for q in (0.025, 0.2, 0.6827, 0.9999):
            assert std_normal_quantile(q) == pytest.approx(
                normal_quantile_reference(q), abs=1e-10
            )
