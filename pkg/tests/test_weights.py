import math

import numpy as np
import pytest
from scipy.integrate import quad

from bergzyg.errors import IntegrabilityError, NotInClassError, ParameterError
from bergzyg.scale import ScaleFunction
from bergzyg.weights import (RadialWeight, check_dcheck, check_dhat,
                             kernel_integral_check, parse_weight_spec,
                             power_shift, psi_tail_compare, zygmund_transform)

# frozen oracle values (brute 2-D Riemann sums, independent of the
# dyadic Gauss-Legendre implementation path)
MASS_SQ_ALPHA2_A09 = 9.814554824e-06
KERNEL_BAND_ONE_LAM2 = (0.6109, 0.6898)       # omega = 1, lam = 2, zeta in {.5,.9,.99}
KERNEL_BAND_LIN_LAM3 = (0.4478, 0.4855)       # omega = 1-s, lam = 3


class TestTail:
    def test_constant_weight(self):
        assert RadialWeight.power(0.0).tail(0.5) == pytest.approx(0.5, abs=1e-15)

    def test_linear_weight(self):
        assert RadialWeight.power(1.0).tail(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_loginvsq_closed_form(self):
        w = RadialWeight.log_inverse_square()
        assert w.tail(0.0) == pytest.approx(1.0, abs=1e-15)
        for r in (0.0, 0.5, 0.9):
            # substitution v = log(e/(1-s)) turns the tail into
            # int_{v_r}^inf v^-2 dv; quadrature cross-check in that variable
            v_r = 1.0 - math.log(1.0 - r)
            val, _ = quad(lambda v: v ** -2.0, v_r, np.inf)
            assert w.tail(r) == pytest.approx(val, rel=1e-9)
            assert w.tail(r) == pytest.approx(1.0 / v_r, rel=1e-12)

    def test_powerlog_tail_matches_quad(self):
        w = RadialWeight.power_log(-0.5, -2.0)
        for r in (0.0, 0.5, 1 - 2.0 ** -8):
            val, _ = quad(lambda u: u ** -0.5 * (1 - np.log(u)) ** -2.0,
                          0.0, 1.0 - r, points=[0.0], epsabs=1e-14,
                          epsrel=1e-11, limit=200)
            assert w.tail(r) == pytest.approx(val, rel=1e-8)

    def test_monotone_in_radius(self):
        for w in (RadialWeight.power(0.5), RadialWeight.log_inverse_square(),
                  RadialWeight.power_log(1.0, 3.0)):
            tails = [w.tail(1 - 2.0 ** -j) for j in range(20)]
            assert all(a >= b for a, b in zip(tails, tails[1:]))

    def test_tail_positive(self):
        w = RadialWeight.power(2.0)
        assert all(w.tail(1 - 2.0 ** -j) > 0 for j in range(30))

    def test_bad_radius(self):
        with pytest.raises(ParameterError):
            RadialWeight.power(0.0).tail(1.0)


class TestCarlesonMass:
    def test_disc_total(self):
        assert RadialWeight.power(0.0).carleson_mass(0.0) == pytest.approx(1.0, abs=1e-15)

    def test_half_radius(self):
        expect = 3.0 / (16.0 * math.pi)
        assert RadialWeight.power(0.0).carleson_mass(0.5) == pytest.approx(expect, rel=1e-14)

    def test_alpha2_deep_apex_oracle(self):
        got = RadialWeight.power(2.0).carleson_mass(0.9)
        assert got == pytest.approx(MASS_SQ_ALPHA2_A09, rel=1e-6)

    def test_rotation_invariant(self):
        w = RadialWeight.power(1.0)
        a = 0.7 * np.exp(1.3j)
        assert w.carleson_mass(a) == pytest.approx(w.carleson_mass(0.7), rel=1e-14)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    @pytest.mark.parametrize("r", [0.5, 0.75, 0.9, 1 - 2.0 ** -10])
    def test_mass_tail_bracket(self, alpha, r):
        # for |a| >= 1/2 the s-moment is between what/2 and what
        w = RadialWeight.power(alpha)
        ratio = w.carleson_mass(r) * math.pi / ((1 - r) * w.tail(r))
        assert 0.5 <= ratio <= 1.0


class TestDhat:
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_power_constant_exact(self, alpha):
        rep = check_dhat(RadialWeight.power(alpha), 8)
        assert rep.verdict == "member"
        assert rep.constant_C == pytest.approx(2.0 ** (alpha + 1), rel=1e-9)
        assert rep.grid_min_ratio == pytest.approx(rep.grid_max_ratio, rel=1e-9)

    def test_boundary_flat_exponential_diverges(self):
        w = RadialWeight("custom", lambda u: np.exp(-1.0 / np.asarray(u, float)),
                         "exp flat")
        rep = check_dhat(w, 8)
        assert rep.verdict == "non-member"

    def test_loginvsq_member_with_shrinking_ratio(self):
        rep = check_dhat(RadialWeight.log_inverse_square(), 16)
        assert rep.verdict == "member"
        assert rep.constant_C == pytest.approx(1.0 + math.log(2.0), rel=1e-9)
        assert rep.ratios[0] > rep.ratios[8] > rep.ratios[15] > 1.0

    def test_depth_validation(self):
        with pytest.raises(ParameterError):
            check_dhat(RadialWeight.power(0.0), 3)


class TestDcheck:
    def test_power_with_single_K(self):
        rep = check_dcheck(RadialWeight.power(0.0), 16, K_candidates=[2.0])
        assert rep.verdict == "member"
        assert rep.constant_K == 2.0
        assert rep.constant_C == pytest.approx(2.0, rel=1e-9)
        assert rep.exponent_beta == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("alpha", [-0.5, 1.0])
    def test_power_beta_fit(self, alpha):
        rep = check_dcheck(RadialWeight.power(alpha), 16)
        assert rep.verdict == "member"
        assert rep.exponent_beta == pytest.approx(alpha + 1.0, abs=1e-8)

    def test_loginvsq_not_lower_doubling(self):
        rep = check_dcheck(RadialWeight.log_inverse_square(), 16)
        assert rep.verdict == "non-member"

    def test_K_validation(self):
        with pytest.raises(ParameterError):
            check_dcheck(RadialWeight.power(0.0), 8, K_candidates=[1.0])


class TestKernelIntegral:
    def test_center_trivial(self):
        band = kernel_integral_check(RadialWeight.power(0.0), 0.0, [0.0])
        assert band[0] == pytest.approx(1.0, rel=1e-9)
        assert band[1] == pytest.approx(1.0, rel=1e-9)

    def test_unit_weight_lam2_band(self):
        band = kernel_integral_check(RadialWeight.power(0.0), 2.0, [0.5, 0.9, 0.99])
        assert band[0] == pytest.approx(KERNEL_BAND_ONE_LAM2[0], rel=2e-3)
        assert band[1] == pytest.approx(KERNEL_BAND_ONE_LAM2[1], rel=2e-3)
        assert 0.1 <= band[0] <= band[1] <= 10.0

    def test_linear_weight_lam3_band(self):
        band = kernel_integral_check(RadialWeight.power(1.0), 3.0, [0.5, 0.9, 0.99])
        assert band[0] == pytest.approx(KERNEL_BAND_LIN_LAM3[0], rel=2e-3)
        assert band[1] == pytest.approx(KERNEL_BAND_LIN_LAM3[1], rel=2e-3)

    def test_requires_upper_doubling(self):
        w = RadialWeight("custom", lambda u: np.exp(-1.0 / np.asarray(u, float)),
                         "exp flat")
        with pytest.raises(NotInClassError):
            kernel_integral_check(w, 2.0, [0.5])


class TestZygmundTransform:
    def test_constant_scale_is_identity(self):
        w = RadialWeight.power(0.5)
        W = zygmund_transform(w, ScaleFunction.constant(1.0))
        u = np.geomspace(1e-6, 1.0, 64)
        np.testing.assert_allclose(W.density_u(u), w.density_u(u), rtol=1e-14)

    def test_log_scale_tail_band(self):
        # closed form: int_r^1 log(e + 1/(1-s)) ds
        #            = t log(e + 1/t) + log(e t + 1)/e at t = 1 - r
        W = zygmund_transform(RadialWeight.power(0.0), ScaleFunction.log_power(1.0))
        psi = ScaleFunction.log_power(1.0)
        for j in range(17):
            t = 2.0 ** -j
            closed = t * math.log(math.e + 1 / t) + math.log(math.e * t + 1) / math.e
            assert W.tail_u(t) == pytest.approx(closed, rel=1e-9)
            ratio = W.tail_u(t) / (float(psi.eval(1 / t)) * t)
            assert 1.0 <= ratio <= 1.41  # max 1.4071 at t = 1/2

    def test_transform_stays_in_both_classes(self):
        W = zygmund_transform(RadialWeight.power(1.0), ScaleFunction.log_power(-1.0))
        assert check_dhat(W, 12).verdict == "member"
        assert check_dcheck(W, 12).verdict == "member"

    def test_rejects_weight_outside_class(self):
        with pytest.raises(NotInClassError):
            zygmund_transform(RadialWeight.log_inverse_square(),
                              ScaleFunction.log_power(1.0))


class TestPsiTailCompare:
    def test_constant_everything(self):
        bands = psi_tail_compare(RadialWeight.power(0.0), ScaleFunction.constant(1.0),
                                 [1 - 2.0 ** -j for j in range(8)])
        assert bands["L_over_R"][0] == pytest.approx(1.0, rel=1e-9)
        assert bands["L_over_R"][1] == pytest.approx(1.0, rel=1e-9)

    def test_linear_weight_half(self):
        # what(s)/(1-s) = (1-s)/2 = omega/2, so L/R is exactly 1/2
        bands = psi_tail_compare(RadialWeight.power(1.0), ScaleFunction.constant(1.0),
                                 [1 - 2.0 ** -j for j in range(8)])
        assert bands["L_over_R"][0] == pytest.approx(0.5, rel=1e-8)
        assert bands["L_over_R"][1] == pytest.approx(0.5, rel=1e-8)
        assert 0.25 <= bands["L_over_R"][0] <= bands["L_over_R"][1] <= 4.0

    def test_log_scale_bounded_bands(self):
        bands = psi_tail_compare(RadialWeight.power(0.0), ScaleFunction.log_power(1.0),
                                 [1 - 2.0 ** -j for j in range(12)])
        lo, hi = bands["L_over_R"]
        assert 0.25 <= lo <= hi <= 4.0
        lo, hi = bands["R_over_P"]
        assert 1.0 <= lo <= hi <= 1.41  # closed-form max 1.4071 at r = 1/2


class TestPowerShift:
    def test_shift_unit_weight(self):
        w = power_shift(RadialWeight.power(0.0), 1.0)
        assert w.tail(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_shift_down_to_linear(self):
        w = power_shift(RadialWeight.power(2.0), -1.0)
        assert w.tail(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_divergent_shift_raises_lazily(self):
        w = power_shift(RadialWeight.power(0.0), -1.0)  # construction is fine
        with pytest.raises(IntegrabilityError):
            w.tail(0.0)

    def test_round_trip_density(self):
        w = RadialWeight.power_log(0.5, 1.0)
        back = power_shift(power_shift(w, 0.7), -0.7)
        u = np.geomspace(1e-8, 1.0, 128)
        np.testing.assert_allclose(back.density_u(u), w.density_u(u), rtol=1e-12)

    def test_generic_kind_shift(self):
        w = RadialWeight.tabulated([0.0, 0.5, 0.9, 0.99], [1.0, 1.0, 1.0, 1.0])
        shifted = power_shift(w, 1.0)
        assert shifted.tail(0.0) == pytest.approx(0.5, rel=1e-6)


class TestTabulated:
    def test_power_like_table_matches_power(self):
        s = 1.0 - np.geomspace(1.0, 2.0 ** -20, 64)
        w = RadialWeight.tabulated(s, (1 - s) ** 1.5)
        ref = RadialWeight.power(1.5)
        assert w.tail(0.5) == pytest.approx(ref.tail(0.5), rel=1e-6)
        # log-slope extension keeps the power behaviour beyond the table
        assert w.density(1 - 2.0 ** -30) == pytest.approx(
            float(ref.density(1 - 2.0 ** -30)), rel=1e-6)

    def test_validation(self):
        with pytest.raises(ParameterError):
            RadialWeight.tabulated([0.5, 0.5], [1.0, 1.0])
        with pytest.raises(ParameterError):
            RadialWeight.tabulated([0.1, 0.5], [1.0, -1.0])


class TestParse:
    def test_power(self):
        w = parse_weight_spec("power alpha=1.5")
        assert w.alpha == 1.5

    def test_loginvsq(self):
        assert parse_weight_spec("loginvsq").kind == "loginvsq"

    def test_powerlog(self):
        w = parse_weight_spec("powerlog alpha=-0.5 beta=-2")
        assert (w.alpha, w.beta) == (-0.5, -2.0)

    def test_table(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("0.0 1.0\n0.5 0.5\n0.9 0.1\n")
        w = parse_weight_spec(f"table path={path}")
        assert w.kind == "table"

    def test_unknown(self):
        with pytest.raises(ParameterError):
            parse_weight_spec("gaussian sigma=1")
