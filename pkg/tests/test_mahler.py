import math

import pytest
from conftest import mp_j
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercubic_mahler.errors import DomainError
from hypercubic_mahler.mahler import (
    Evaluation,
    MahlerQuery,
    Route,
    bessel_tail,
    evaluate,
    j_bessel,
    j_direct,
    j_log_form,
    mahler_measure,
    step_form_integral,
)
from hypercubic_mahler.specfun import ToleranceConfig, euler_gamma

CFG = ToleranceConfig(1e-12, 1e-12)


def value(n, z, route, cfg=CFG):
    return evaluate(MahlerQuery(n, z, route, cfg)).value


class TestExamples:
    def test_j1_at_2(self):
        assert value(1, 2.0, Route.BESSEL) == pytest.approx(0.623810716364871, abs=1e-12)

    def test_j2_at_2(self):
        assert value(2, 2.0, Route.CLOSED) == pytest.approx(0.47309643556333, abs=1e-13)
        assert value(2, 2.0, Route.BESSEL, ToleranceConfig(1e-10, 1e-10)) == pytest.approx(0.47309643556333, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_against_oracle(self, n):
        for z in (n + 0.5, n + 2.0, 20.0):
            assert value(n, z, Route.BESSEL) == pytest.approx(mp_j(n, z), abs=1e-11)

    def test_j0_is_log(self):
        for z in (0.5, 1.0, 3.0, 100.0):
            assert value(0, z, Route.BESSEL) == pytest.approx(math.log(z), abs=1e-12)


class TestRouteEquivalence:
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("dz", [0.5, 2.0, 7.0])
    def test_all_routes_agree(self, n, dz):
        z = n + dz
        ref = value(n, z, Route.BESSEL)
        assert value(n, z, Route.LOG_FORM) == pytest.approx(ref, abs=1e-10)
        assert value(n, z, Route.CLOSED) == pytest.approx(ref, abs=1e-10)
        assert value(n, z, Route.DIRECT, ToleranceConfig(1e-10, 1e-10)) == pytest.approx(ref, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_edge_z_equals_n(self, n):
        cfg = ToleranceConfig(1e-9, 1e-9)
        ref = mp_j(n, float(n))
        assert value(n, float(n), Route.BESSEL, cfg) == pytest.approx(ref, abs=1e-8)
        assert value(n, float(n), Route.CLOSED, cfg) == pytest.approx(ref, abs=1e-9)

    def test_step_form(self):
        for n, z in ((1, 2.0), (2, 2.0), (3, 5.0)):
            res = step_form_integral(n, z, CFG)
            assert res.value - euler_gamma() == pytest.approx(value(n, z, Route.BESSEL), abs=1e-11)


class TestProperties:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 5), st.floats(0.0, 20.0), st.floats(0.01, 5.0))
    def test_monotone_in_z(self, n, dz, step):
        cfg = ToleranceConfig(1e-10, 1e-10)
        a = value(n, n + dz, Route.BESSEL, cfg)
        b = value(n, n + dz + step, Route.BESSEL, cfg)
        assert b > a

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_large_z_asymptotics(self, n):
        for z in (1e2, 1e3):
            approx = math.log(z) - n / (4 * z * z)
            assert value(n, z, Route.BESSEL) == pytest.approx(approx, abs=2 * n / z**4 + 1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sign_irrelevant(self, n):
        cfg = ToleranceConfig(1e-10, 1e-10)
        z = n + 1.0
        plus = j_direct(MahlerQuery(n, z, Route.DIRECT, cfg), sign=1).value
        minus = j_direct(MahlerQuery(n, z, Route.DIRECT, cfg), sign=-1).value
        assert plus == pytest.approx(minus, abs=1e-9)

    def test_error_estimate_honest(self):
        for n, z in ((1, 1.5), (2, 3.0), (4, 4.5)):
            res = j_bessel(MahlerQuery(n, z, Route.BESSEL, CFG))
            assert abs(res.value - mp_j(n, z)) <= max(10 * res.error_estimate, 1e-12)

    def test_bessel_tail_shape(self):
        assert bessel_tail(2, 5.0).decay_rate == 1.0
        t = bessel_tail(3, 3.0)
        assert t.decay_rate == 0.0 and t.power == 2.5


class TestMahlerMeasure:
    def test_trivial(self):
        assert mahler_measure(1, 2.0) == pytest.approx(0.0, abs=1e-15)

    def test_n1(self):
        for k in (2.0, 4.0, 10.0):
            assert mahler_measure(1, k) == pytest.approx(math.acosh(k / 2), abs=1e-14)

    def test_n2_against_bessel(self):
        assert mahler_measure(2, 6.0) == pytest.approx(math.log(2) + mp_j(2, 3.0), abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            mahler_measure(2, 3.9)


class TestDomain:
    @pytest.mark.parametrize("args", [(2, 1.5), (-1, 3.0), (1.5, 3.0), (True, 3.0), (0, 0.0), (1, math.nan), (1, math.inf)])
    def test_query_rejects(self, args):
        with pytest.raises(DomainError):
            MahlerQuery(*args)

    def test_route_restrictions(self):
        with pytest.raises(DomainError):
            MahlerQuery(4, 5.0, Route.DIRECT)
        with pytest.raises(DomainError):
            MahlerQuery(4, 5.0, Route.CLOSED)
        with pytest.raises(DomainError):
            j_log_form(MahlerQuery(2, 2.0, Route.LOG_FORM))
        with pytest.raises(ValueError):
            MahlerQuery(2, 3.0, "nonsense")

    def test_auto_route(self):
        assert evaluate(MahlerQuery(3, 6.0)).route is Route.CLOSED
        assert evaluate(MahlerQuery(3, 4.0)).route is Route.BESSEL
        ev = evaluate(MahlerQuery(4, 5.0))
        assert isinstance(ev, Evaluation) and ev.route is Route.BESSEL and ev.truncation_point > 0

    def test_determinism(self):
        q = MahlerQuery(3, 3.5, Route.BESSEL)
        assert evaluate(q) == evaluate(q)
