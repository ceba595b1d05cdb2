import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from hypercubic_mahler.errors import BudgetExceeded, Divergent, DomainError
from hypercubic_mahler.specfun import (
    SERIES_ASYMPTOTIC_SWITCH,
    HypSeries,
    ToleranceConfig,
    _asymptotic_scaled,
    _series_sum,
    bessel_i0,
    bessel_i0_minus_one,
    bessel_i0_scaled,
    bessel_i1,
    bessel_i1_scaled,
    catalan_constant,
    elliptic_k,
    euler_gamma,
    log_bessel_i0,
    pfq,
)

from conftest import mp_hyper

GRID = np.geomspace(1e-3, 700.0, 400)


class TestBessel:
    def test_examples(self):
        assert bessel_i0(0.0) == 1.0
        assert bessel_i0_scaled(0.0) == 1.0
        assert bessel_i1(0.0) == 0.0
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520082, rel=1e-15)
        assert bessel_i0_scaled(1.0) == pytest.approx(0.46575960759364043, rel=1e-15)
        assert bessel_i1(1.0) == pytest.approx(0.5651591039924851, rel=1e-15)
        assert bessel_i0(20.0) == pytest.approx(math.exp(20.0) * bessel_i0_scaled(20.0), rel=1e-15)

    def test_large_argument_leading_term(self):
        x = 1e4
        lead = (2 * math.pi * x) ** -0.5
        assert abs(bessel_i0_scaled(x) / lead - 1.0) < 0.01
        # next order: 1 + 1/(8x)
        assert bessel_i0_scaled(x) / lead == pytest.approx(1 + 1 / (8 * x), rel=1e-8)

    @pytest.mark.parametrize("fn,ref", [
        (bessel_i0_scaled, special.i0e),
        (bessel_i1_scaled, special.i1e),
    ])
    def test_against_scipy(self, fn, ref):
        ours = np.array([fn(x) for x in GRID])
        assert np.max(np.abs(ours / ref(GRID) - 1.0)) < 5e-15

    def test_against_mpmath_spot(self):
        for x in (0.3, 7.0, 24.9, 25.1, 80.0, 650.0):
            with mp.workdps(30):
                ref0 = float(mp.besseli(0, x) * mp.exp(-x))
                ref1 = float(mp.besseli(1, x) * mp.exp(-x))
            assert bessel_i0_scaled(x) == pytest.approx(ref0, rel=2e-15)
            assert bessel_i1_scaled(x) == pytest.approx(ref1, rel=2e-15)

    def test_scaling_consistency(self):
        for x in GRID:
            s = bessel_i0_scaled(x)
            assert abs(bessel_i0(x) * math.exp(-x) - s) <= 1e-14 * s

    def test_overflow_reported(self):
        with pytest.raises(OverflowError):
            bessel_i0(800.0)
        assert bessel_i0_scaled(800.0) > 0

    def test_switch_overlap(self):
        # both branches agree around the switch point
        for x in np.linspace(18.0, 32.0, 29):
            series = _series_sum(1.0, x, 0) * math.exp(-x)
            asym = _asymptotic_scaled(x, 0)
            assert abs(series / asym - 1.0) < 1e-14, x
        assert SERIES_ASYMPTOTIC_SWITCH == 25.0

    def test_monotonicity(self):
        s = np.array([bessel_i0_scaled(x) for x in GRID])
        assert np.all(np.diff(s) < 0)
        ratio = np.array([bessel_i1(x) / bessel_i0(x) for x in GRID[GRID < 700]])
        assert np.all(np.diff(ratio) > 0)
        assert np.all((ratio >= 0) & (ratio < 1))

    def test_derivative_sign(self):
        # I0' = +I1, so central differences decide the sign question
        h = 1e-5
        fd = (bessel_i0(2 + h) - bessel_i0(2 - h)) / (2 * h)
        assert abs(fd - bessel_i1(2.0)) < 1e-8
        assert abs(fd + bessel_i1(2.0)) > 1.0

    def test_derivative_second_order(self):
        for x in (0.5, 3.0, 12.0):
            errs = []
            for h in (1e-2, 5e-3):
                fd = (bessel_i0(x + h) - bessel_i0(x - h)) / (2 * h)
                errs.append(abs(fd - bessel_i1(x)))
            assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)

    def test_small_argument_helpers(self):
        for x in (1e-8, 1e-3, 0.5, 1.0, 3.0, 40.0):
            with mp.workdps(30):
                ref = float(mp.besseli(0, x) - 1)
                ref_log = float(mp.log(mp.besseli(0, x)))
            assert bessel_i0_minus_one(x) == pytest.approx(ref, rel=1e-14)
            assert log_bessel_i0(x) == pytest.approx(ref_log, rel=1e-14)

    @pytest.mark.parametrize("bad", [-1.0, math.nan, math.inf])
    def test_domain(self, bad):
        for fn in (bessel_i0, bessel_i0_scaled, bessel_i1, bessel_i1_scaled):
            with pytest.raises(DomainError):
                fn(bad)

    @given(st.floats(min_value=0.0, max_value=1e6, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_scaled_range(self, x):
        s0 = bessel_i0_scaled(x)
        s1 = bessel_i1_scaled(x)
        assert 0.0 < s0 <= 1.0
        assert 0.0 <= s1 < s0 or (x == 0.0 and s1 == 0.0)


class TestEllipticK:
    def test_examples(self):
        assert elliptic_k(0.0) == pytest.approx(math.pi / 2, rel=1e-16)
        assert elliptic_k(0.5) == pytest.approx(1.685750354812596, rel=1e-15)
        assert elliptic_k(0.999999) > 7.0

    def test_against_scipy_parameter_convention(self):
        for k in np.linspace(0.0, 0.9999, 41):
            assert elliptic_k(k) == pytest.approx(special.ellipk(k * k), rel=2e-15)

    def test_defining_quadrature(self):
        from scipy.integrate import quad

        k = 0.5
        ref = quad(lambda t: 1 / math.sqrt(1 - (k * math.sin(t)) ** 2), 0, math.pi / 2, epsabs=1e-14)[0]
        assert elliptic_k(k) == pytest.approx(ref, rel=1e-13)

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5, math.nan])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            elliptic_k(bad)


class TestPfq:
    def test_geometric_with_empty_denominator(self):
        assert pfq(HypSeries([1], [], 0.5)) == pytest.approx(2.0, rel=1e-14)

    def test_argument_zero(self):
        assert pfq(HypSeries([Fraction(1, 3), 2], [Fraction(5, 2)], 0.0)) == 1.0

    def test_four_f_three_at_one(self):
        ref = 16 * (math.pi * math.log(2) - 2 * catalan_constant()) / math.pi
        got = pfq(HypSeries([1, 1, Fraction(3, 2), Fraction(3, 2)], [2, 2, 2], 1.0))
        assert got == pytest.approx(ref, abs=1e-12)
        assert got == pytest.approx(1.7604059599729196, abs=1e-12)

    @pytest.mark.parametrize("a,b,x", [
        ((1, 1, 1.5, 1.5), (2, 2, 2), 0.7),
        ((1, 1, 1.25, 1.5, 1.75), (2, 2, 2, 2), 0.99),
        ((0.25, 0.5, 0.75), (1, 1), -0.8),
        ((0.5, 0.5, 0.5), (1, 1), 1.0),
        ((0.25, 0.5, 0.75), (1, 1), 1.0),
        ((-3, 0.5), (1.5,), 0.7),
    ])
    def test_against_mpmath(self, a, b, x):
        assert pfq(HypSeries(a, b, x)) == pytest.approx(mp_hyper(a, b, x), abs=1e-11, rel=1e-11)

    def test_divergent_at_one(self):
        with pytest.raises(Divergent):
            pfq(HypSeries([1, 1], [1], 1.0))
        with pytest.raises(Divergent):
            pfq(HypSeries([Fraction(5, 4), Fraction(3, 2), Fraction(7, 4)], [2, 2], 1.0))

    def test_divergent_outside_disk(self):
        with pytest.raises(Divergent):
            pfq(HypSeries([1, 1, 1.5, 1.5], [2, 2, 2], 1.2))

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as info:
            pfq(HypSeries([0.5, 0.5, 0.5], [1, 1], 0.999), ToleranceConfig(max_terms=20))
        assert info.value.best is not None

    def test_remainder_stable_in_budget(self):
        s = HypSeries([1, 1, 1.25, 1.5, 1.75], [2, 2, 2, 2], 0.9)
        a = pfq(s, ToleranceConfig(max_terms=10_000))
        b = pfq(s, ToleranceConfig(max_terms=10_010))
        assert a == b

    def test_invalid_series(self):
        with pytest.raises(DomainError):
            HypSeries([1], [0], 0.5)
        with pytest.raises(DomainError):
            HypSeries([1], [-2], 0.5)
        with pytest.raises(DomainError):
            HypSeries([], [1], 0.5)


class TestConstants:
    def test_gamma_via_split_integral(self):
        from scipy.integrate import quad

        head = quad(lambda x: -math.expm1(-x) / x, 0, 1, epsabs=1e-15)[0]
        tail = quad(lambda x: math.exp(-x) / x, 1, math.inf, epsabs=1e-15)[0]
        assert abs(head - tail - euler_gamma()) < 1e-12

    def test_catalan_series(self):
        with mp.workdps(30):
            ref = mp.nsum(lambda n: (-1) ** n / (2 * n + 1) ** 2, [0, mp.inf])
        assert abs(catalan_constant() - float(ref)) < 1e-12

    def test_range(self):
        assert 0 < euler_gamma() < 1 and 0 < catalan_constant() < 1


class TestToleranceConfig:
    def test_invalid(self):
        for kw in ({"abs_tol": 0}, {"rel_tol": -1}, {"max_terms": 0}, {"max_evals": 0},
                   {"abs_tol": math.nan}):
            with pytest.raises(ValueError):
                ToleranceConfig(**kw)

    def test_target_and_scaled(self):
        cfg = ToleranceConfig(1e-10, 1e-8)
        assert cfg.target(1.0) == 1e-8
        assert cfg.target(1e-6) == 1e-10
        assert cfg.scaled(10).abs_tol == pytest.approx(1e-9)
