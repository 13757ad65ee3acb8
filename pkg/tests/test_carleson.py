import cmath
import math

import numpy as np
import pytest

from bergzyg.carleson import (CarlesonContext, characteristic,
                              characteristic_disc, embedding_lower_ratio,
                              embedding_norm_estimate, source_norm_p, sweep,
                              target_norm_q, test_function)
from bergzyg.errors import NotInClassError, ParameterError
from bergzyg.funcspace import AnalyticFunction, quasinorm
from bergzyg.measures import DiscMeasure, mass_on_disc, mass_on_square
from bergzyg.scale import ScaleFunction
from bergzyg.weights import RadialWeight

ONE = ScaleFunction.constant(1.0)


def identity_context(**kw):
    w = RadialWeight.power(0.0)
    kw.setdefault("disc_radius", 0.5)
    return CarlesonContext(w, ONE, ONE, DiscMeasure.area(w), 2.0, 2.0, **kw)


def power_context(alpha, t, p, q, **kw):
    kw.setdefault("disc_radius", 0.5)
    return CarlesonContext(RadialWeight.power(alpha), ONE, ONE,
                           DiscMeasure.area(RadialWeight.power(t)), p, q, **kw)


class TestContext:
    def test_p_greater_than_q_rejected(self):
        w = RadialWeight.power(0.0)
        with pytest.raises(ParameterError):
            CarlesonContext(w, ONE, ONE, DiscMeasure.area(w), 2.0, 1.0)

    def test_weight_outside_class_rejected(self):
        w = RadialWeight.log_inverse_square()
        with pytest.raises(NotInClassError):
            CarlesonContext(w, ONE, ONE, DiscMeasure.area(w), 2.0, 2.0)

    def test_scale_outside_class_rejected(self):
        from conftest import make_exp_scale
        w = RadialWeight.power(0.0)
        with pytest.raises(NotInClassError):
            CarlesonContext(w, make_exp_scale(), ONE, DiscMeasure.area(w), 2.0, 2.0)


class TestCharacteristic:
    def test_identity_is_one_everywhere(self):
        ctx = identity_context()
        for a in (0.0, 0.5, 0.9j, 0.99 * cmath.exp(2.0j)):
            assert characteristic(ctx, a) == pytest.approx(1.0, rel=1e-12)

    def test_atom_measure(self):
        w = RadialWeight.power(0.0)
        ctx = CarlesonContext(w, ONE, ONE, DiscMeasure.atom(0.0, 1.5), 2.0, 2.0)
        assert characteristic(ctx, 0.0) == pytest.approx(1.5)
        assert characteristic(ctx, 0.5) == 0.0

    def test_power_family_boundary_slope(self):
        # log rho against log(1-|a|) has slope t+2 - (q/p)(alpha+2)
        for alpha, t, p, q in ((0.0, 1.0, 2.0, 2.0), (1.0, 0.0, 2.0, 2.0),
                               (0.0, 1.0, 1.0, 2.0)):
            ctx = power_context(alpha, t, p, q)
            js = np.arange(8, 15)
            vals = [characteristic(ctx, 1 - 2.0 ** -j) for j in js]
            slope = np.polyfit(-js * math.log(2), np.log(vals), 1)[0]
            expect = t + 2 - (q / p) * (alpha + 2)
            assert slope == pytest.approx(expect, abs=0.05)

    def test_scaling_in_measure_is_exact(self):
        w = RadialWeight.power(0.0)
        mu = DiscMeasure.area(RadialWeight.power(1.0))
        scaled = DiscMeasure(
            components=[type(mu.components[0])(
                RadialWeight("scaled", lambda u: 3.0 * np.asarray(u, float), "3(1-s)"),
                None)])
        ctx1 = CarlesonContext(w, ONE, ONE, mu, 2.0, 2.0)
        ctx3 = CarlesonContext(w, ONE, ONE, scaled, 2.0, 2.0)
        for a in (0.0, 0.5, 0.9):
            assert characteristic(ctx3, a) == pytest.approx(
                3.0 * characteristic(ctx1, a), rel=1e-12)


class TestCharacteristicDisc:
    def test_identity_center(self):
        assert characteristic_disc(identity_context(), 0.0) == pytest.approx(1.0, rel=1e-9)

    def test_atom_in_pseudo_disc(self):
        w = RadialWeight.power(0.0)
        ctx = CarlesonContext(w, ONE, ONE, DiscMeasure.atom(0.4, 2.0), 2.0, 2.0,
                              disc_radius=0.5)
        got = characteristic_disc(ctx, 0.5)
        w_disc = mass_on_disc(ctx.source_measure, 0.5, 0.5)
        assert got == pytest.approx(2.0 / w_disc, rel=1e-9)

    def test_same_boundary_slope_as_square_variant(self):
        ctx = power_context(1.0, 0.0, 2.0, 2.0)
        js = np.arange(8, 15)
        v_sq = [characteristic(ctx, 1 - 2.0 ** -j) for j in js]
        v_disc = [characteristic_disc(ctx, 1 - 2.0 ** -j) for j in js]
        x = -js * math.log(2)
        s_sq = np.polyfit(x, np.log(v_sq), 1)[0]
        s_disc = np.polyfit(x, np.log(v_disc), 1)[0]
        assert s_disc == pytest.approx(s_sq, abs=0.05)

    @pytest.mark.parametrize("r", [0.5, 0.7, 0.9])
    def test_square_vs_disc_mass_comparability(self, r):
        # the comparability radius is not pinned down a priori; report-style
        # check that each swept r gives a bounded band over deep apexes
        w = RadialWeight.power(0.5)
        src = DiscMeasure.area(w)
        ratios = [w.carleson_mass(1 - 2.0 ** -j)
                  / mass_on_disc(src, 1 - 2.0 ** -j, r)
                  for j in range(2, 14)]
        assert max(ratios) / min(ratios) < 10.0


class TestTestFunction:
    def test_center_anchor_is_constant_one(self):
        ctx = identity_context()
        fa = test_function(ctx, 0.0, gamma=6.0)
        assert complex(fa(0.0)) == pytest.approx(1.0)
        assert quasinorm(fa, ctx.source_measure, ONE, 2.0) == pytest.approx(1.0, rel=1e-9)

    def test_half_anchor_factor(self):
        ctx = identity_context()
        fa = test_function(ctx, 0.5, gamma=6.0)
        expect = math.sqrt(0.5 ** 6 / (3.0 / (16.0 * math.pi)))
        assert complex(fa(0.0)).real == pytest.approx(expect, rel=1e-12)

    def test_gamma_validation(self):
        with pytest.raises(ParameterError):
            test_function(identity_context(), 0.5, gamma=-1.0)

    def test_rotation_invariant_norm(self):
        ctx = identity_context()
        n1 = source_norm_p(ctx, test_function(ctx, 0.9, gamma=5.0))
        n2 = source_norm_p(ctx, test_function(ctx, 0.9 * cmath.exp(1.7j), gamma=5.0))
        assert n2 == pytest.approx(n1, rel=1e-9)


class TestEmbeddingRatios:
    def test_identity_at_center(self):
        ctx = identity_context()
        assert embedding_lower_ratio(ctx, 0.0, gamma=6.0) == pytest.approx(1.0, rel=1e-9)

    def test_identity_band_on_ray(self):
        ctx = identity_context()
        vals = [embedding_lower_ratio(ctx, 1 - 2.0 ** -j) for j in range(13)]
        assert max(vals) / min(vals) < 10.0

    def test_atom_closed_form(self):
        # ratio at 0 reduces to Phi(1/omega(D)) / Phi(|f_0|)
        w = RadialWeight.power(0.0)
        phi = ScaleFunction.log_power(1.0)
        ctx = CarlesonContext(w, ONE, phi, DiscMeasure.atom(0.0, 2.0), 2.0, 2.0)
        fa = test_function(ctx, 0.0, gamma=6.0)
        c = abs(complex(fa(0.0)))
        expect = float(phi.eval(1.0)) / float(phi.eval(c))
        assert embedding_lower_ratio(ctx, 0.0, gamma=6.0) == pytest.approx(expect, rel=1e-12)

    def test_norm_estimate_identity(self):
        ctx = identity_context()
        corpus = [AnalyticFunction.polynomial([1.0]),
                  AnalyticFunction.polynomial([0, 1]),
                  AnalyticFunction.polynomial([0.5, 0.1j, 0.2])]
        assert embedding_norm_estimate(ctx, corpus) == pytest.approx(1.0, rel=1e-9)

    def test_norm_estimate_rejects_zero_member(self):
        ctx = identity_context()
        with pytest.raises(ParameterError):
            embedding_norm_estimate(ctx, [AnalyticFunction.polynomial([0.0])])


class TestSweep:
    def test_identity_verdicts_and_entries(self):
        rep = sweep(identity_context(), 10, angular_cap=32)
        assert rep.verdict_bounded == "bounded"
        assert rep.verdict_vanishing == "non-vanishing"
        assert rep.global_sup_estimate == pytest.approx(1.0, rel=1e-9)
        for e in rep.entries:
            assert e.rho_square == pytest.approx(1.0, rel=1e-9)

    def test_vanishing_power_case(self):
        rep = sweep(power_context(0.0, 1.0, 2.0, 2.0), 12, angular_cap=8)
        assert rep.verdict_bounded == "bounded"
        assert rep.verdict_vanishing == "vanishing"
        assert rep.boundary_exponent == pytest.approx(1.0, abs=0.05)

    def test_unbounded_power_case(self):
        rep = sweep(power_context(1.0, 0.0, 2.0, 2.0), 12, angular_cap=8)
        assert rep.verdict_bounded == "unbounded"
        assert rep.boundary_exponent == pytest.approx(-1.0, abs=0.05)

    def test_scale_invariance_of_verdicts(self):
        base = power_context(0.0, 1.0, 2.0, 2.0)
        mu_scaled = DiscMeasure(components=[type(base.mu.components[0])(
            RadialWeight("s", lambda u: 7.0 * np.asarray(u, float), "7(1-s)"), None)])
        scaled = CarlesonContext(RadialWeight.power(0.0), ONE, ONE, mu_scaled,
                                 2.0, 2.0, disc_radius=0.5)
        r1 = sweep(base, 10, angular_cap=4, include_fa=False)
        r2 = sweep(scaled, 10, angular_cap=4, include_fa=False)
        assert r2.verdict_bounded == r1.verdict_bounded
        assert r2.verdict_vanishing == r1.verdict_vanishing
        assert r2.boundary_exponent == pytest.approx(r1.boundary_exponent, abs=1e-9)
        for e1, e2 in zip(r1.entries, r2.entries):
            assert e2.rho_square == pytest.approx(7.0 * e1.rho_square, rel=1e-12)

    def test_rotation_permutes_sector_entries(self):
        w = RadialWeight.power(0.0)
        shift = math.pi / 4.0
        base = CarlesonContext(w, ONE, ONE, DiscMeasure.area(
            RadialWeight.power(1.0), sector=(0.0, 1.0)), 2.0, 2.0, disc_radius=0.5)
        rot = CarlesonContext(w, ONE, ONE, DiscMeasure.area(
            RadialWeight.power(1.0), sector=(shift, 1.0 + shift)), 2.0, 2.0,
            disc_radius=0.5)
        r1 = sweep(base, 8, angular_cap=64, include_fa=False)
        r2 = sweep(rot, 8, angular_cap=64, include_fa=False)
        # rotation by a multiple of the angular spacing at levels j >= 3
        for (j, m1), (_, m2) in zip(r1.annulus_maxima, r2.annulus_maxima):
            if j >= 3:
                assert m2 == pytest.approx(m1, rel=1e-9)

    def test_small_J_rejected(self):
        with pytest.raises(ParameterError):
            sweep(identity_context(), 4)
