import math

import mpmath as mp
import pytest
from conftest import mp_hyper, mp_j, mp_laplace_i0_cubed

from hypercubic_mahler import closedform as cf
from hypercubic_mahler.errors import ContinuationUnresolved, DomainError, NoCandidateMatches
from hypercubic_mahler.specfun import ToleranceConfig

CFG = ToleranceConfig(1e-12, 1e-12)


class TestJ1J2:
    @pytest.mark.parametrize("z", [1.0, 1.5, 2.0, 10.0, 1e3, 1e8])
    def test_j1(self, z):
        with mp.workdps(30):
            ref = float(mp.log((z + mp.sqrt(mp.mpf(z) ** 2 - 1)) / 2))
        assert cf.j1_closed(z) == pytest.approx(ref, rel=1e-15, abs=1e-15)

    def test_j1_at_2(self):
        assert cf.j1_closed(2.0) == pytest.approx(0.623810716364871, abs=1e-15)

    @pytest.mark.parametrize("z", [2.0, 2.1, 3.0, 10.0, 50.0])
    def test_j2(self, z):
        assert cf.j2_closed(z, CFG) == pytest.approx(mp_j(2, z), abs=1e-12)

    def test_four_f_three_at_one(self):
        assert cf.four_f_three_at_one() == pytest.approx(mp_hyper([1, 1, 1.5, 1.5], [2, 2, 2], 1), abs=1e-14)

    @pytest.mark.parametrize("x", [0.1, 0.5, 0.99, 1.0])
    def test_four_f_three_integral(self, x):
        assert cf.four_f_three_elliptic_integral(x, CFG) == pytest.approx(
            mp_hyper([1, 1, 1.5, 1.5], [2, 2, 2], x), abs=1e-11)

    def test_domain(self):
        for bad in (0.5, math.inf, math.nan):
            with pytest.raises(DomainError):
                cf.j1_closed(bad)
        with pytest.raises(DomainError):
            cf.j2_closed(1.9)


class TestRQuadruple:
    def test_printed_values_at_5(self):
        q = cf.r_quadruple(5.0, "printed")
        assert (q.r, q.R1, q.R2, q.R3) == pytest.approx((4.0, 1.0, -4.0, 2.0), abs=1e-14)
        assert q.arguments() == pytest.approx((0.0625, 1.0), abs=1e-14)

    def test_values_at_3(self):
        q = cf.r_quadruple(3.0, "printed")
        assert q.r == 0.0
        assert (q.R1, q.R2, q.R3) == pytest.approx((9.0, 0.0, 6.0))
        assert q.arguments()[0] == math.inf

    @pytest.mark.parametrize("z", [3.0, 4.0, 5.0, 7.5, 100.0, 1e6])
    def test_r1_product_identity(self, z):
        q = cf.r_quadruple(z)
        assert q.R1 * (2 * z * z - 9 + 2 * z * q.r) == pytest.approx(81.0, rel=1e-14)

    @pytest.mark.parametrize("z", [4.0, 5.0, 7.5])
    def test_r1_minus_r2(self, z):
        # the difference is z^2 - z r, not z^2
        q = cf.r_quadruple(z, "printed")
        assert q.R1 - q.R2 == pytest.approx(z * z - z * q.r, rel=1e-13)
        assert abs(q.R1 - q.R2 - z * z) > 1.0

    def test_corrected_r0_positive(self):
        for z in (3.0, 4.0, 6.0, 20.0):
            assert cf.r_quadruple(z, "corrected").R0 > 0
            assert cf.r_quadruple(z, "printed").R0 < 0

    def test_second_argument_peaks_at_5(self):
        w = [cf.r_quadruple(z, "corrected").arguments()[1] for z in (3.0, 4.0, 5.0, 6.0, 10.0)]
        assert w[2] == pytest.approx(1.0, abs=1e-14)
        assert w[0] < w[1] < w[2] and w[2] > w[3] > w[4]

    def test_bad_reading(self):
        with pytest.raises(ValueError):
            cf.r_quadruple(4.0, "other")
        with pytest.raises(DomainError):
            cf.r_quadruple(2.5)


class TestFiveFFour:
    def test_alpha_invariants(self):
        for zeta in (0.1, 0.5, 0.9, 1.0):
            a = cf.continuation_alpha(zeta)
            assert a.alpha.imag == 0.0 and 0.0 < a.alpha.real < 1.0
            b = cf.continuation_alpha(zeta, sheet=-1)
            assert abs(b.alpha) >= abs(a.alpha)
        assert cf.continuation_alpha(-0.5).alpha.real == 0.0
        assert cf.continuation_alpha(1.0).alpha == pytest.approx(cf.continuation_alpha(1.0, sheet=-1).alpha, rel=1e-15)
        assert cf.continuation_alpha(1.0).alpha.real == pytest.approx(math.sqrt(2) - 1, rel=1e-15)

    @pytest.mark.parametrize("zeta", [-0.9, -0.3, 0.05, 0.5, 0.9, 0.99, 1.0])
    def test_integral_form_matches_series(self, zeta):
        ref = mp_hyper([1, 1, 1.25, 1.5, 1.75], [2, 2, 2, 2], zeta)
        assert cf.hyp5f4_continued(zeta, CFG) == pytest.approx(ref, abs=1e-11)

    def test_dispatch(self):
        assert cf.hyp5f4(0.5, CFG) == pytest.approx(cf.hyp5f4_continued(0.5, CFG), abs=1e-12)

    def test_cut_is_unresolved(self):
        with pytest.raises(ContinuationUnresolved) as info:
            cf.hyp5f4_continued(1.5, CFG)
        assert abs(info.value.value.imag) > 1e-8

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            cf.hyp5f4_continued(0.0)
        with pytest.raises(ValueError):
            cf.continuation_alpha(0.5, sheet=2)


class TestJ3:
    @pytest.mark.parametrize("z", [3.0, 3.05, 3.5, 4.0, 4.99, 5.0, 5.01, 6.0, 10.0, 50.0, 1e3])
    def test_against_bessel_integral(self, z):
        assert cf.j3_closed(z, CFG) == pytest.approx(mp_j(3, z), abs=1e-10)

    def test_printed_reading_is_complex(self):
        v = cf.j3_printed(6.0, CFG)
        assert abs(v.imag) > 0.1

    def test_domain(self):
        with pytest.raises(DomainError):
            cf.j3_closed(2.9)


class TestLaplaceI0Cubed:
    @pytest.mark.parametrize("z", [3.5, 5.0, 6.0, 10.0])
    def test_quadrature(self, z):
        assert cf.laplace_i0_cubed_quadrature(z, CFG) == pytest.approx(mp_laplace_i0_cubed(z), rel=1e-11)

    @pytest.mark.parametrize("z", [3.1, 3.5, 4.0, 5.0, 6.0, 10.0, 50.0])
    def test_derived_form(self, z):
        assert cf.laplace_i0_cubed_derived(z, CFG) == pytest.approx(mp_laplace_i0_cubed(z), rel=1e-12)

    def test_derived_is_derivative_of_j3(self):
        z, h = 7.0, 1e-4
        fd = (cf.j3_closed(z + h, CFG) - cf.j3_closed(z - h, CFG)) / (2 * h)
        assert fd == pytest.approx(cf.laplace_i0_cubed_derived(z, CFG), abs=1e-7)

    def test_second_coefficient_vanishes_at_5(self):
        assert abs(cf.laplace_second_coefficient_numerator(5.0)) < 1e-12
        assert abs(cf.laplace_second_coefficient_numerator(6.0)) > 1e-3

    def test_no_candidate_matches_loudly(self):
        with pytest.raises(NoCandidateMatches) as info:
            cf.laplace_i0_cubed(6.0)
        ev = info.value.evidence
        assert set(ev) == set(cf.LAPLACE_CANDIDATES)
        for rows in ev.values():
            assert [row[0] for row in rows] == list(cf.LAPLACE_ADJUDICATION_GRID)
            assert max(abs(v - o) for _, v, o in rows if v is not None) > 1e-3

    def test_three_f_two_quarter(self):
        for w in (-0.5, 0.3, 0.9, 1.0):
            assert cf.three_f_two_quarter(w) == pytest.approx(
                mp_hyper([0.25, 0.5, 0.75], [1, 1], w), rel=1e-13)
        with pytest.raises(DomainError):
            cf.three_f_two_quarter(1.2)

    def test_quadratic_transform(self):
        arg, pref = cf.hyp3f2_quadratic_transform("1/4", "1/2", 0.6)
        lhs = mp_hyper([0.25, 0.5, 0.75], [1, 1], 0.6)
        rhs = pref * mp_hyper([0.5, 0.5, 0.5], [1, 1], arg)
        assert lhs == pytest.approx(rhs, rel=1e-13)
