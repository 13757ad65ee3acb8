import cmath
import math

import numpy as np
import pytest

from bergzyg.errors import ParameterError
from bergzyg.measures import (AreaComponent, DiscMeasure, build_measure,
                              mass_on_disc, mass_on_square,
                              parse_measure_component)
from bergzyg.weights import RadialWeight


def area_measure(alpha, sector=None):
    return DiscMeasure.area(RadialWeight.power(alpha), sector)


class TestMassOnSquare:
    def test_unit_density_half(self):
        got = mass_on_square(area_measure(0.0), 0.5)
        assert got == pytest.approx(3.0 / (16.0 * math.pi), rel=1e-12)

    def test_atom_only_in_origin_square(self):
        mu = DiscMeasure.atom(0.0, 1.5)
        assert mass_on_square(mu, 0.0) == pytest.approx(1.5)
        assert mass_on_square(mu, 0.3) == 0.0
        assert mass_on_square(mu, 0.3j) == 0.0

    def test_power_density_deep_apex_closed_form(self):
        # (1-|a|)/pi * int_{|a|}^1 s (1-s)^t ds with t = 1
        t, a = 1.0, 0.9
        u = 1.0 - a
        closed = u / math.pi * (u ** 2 / 2.0 - u ** 3 / 3.0)
        assert mass_on_square(area_measure(t), a) == pytest.approx(closed, rel=1e-12)

    def test_origin_gives_total_mass(self):
        mu = DiscMeasure(
            components=[AreaComponent(RadialWeight.power(1.0), (0.0, 1.0))],
            atoms=[(0.2 + 0.1j, 0.7)])
        assert mass_on_square(mu, 0.0) == mu.total_mass()

    def test_sector_overlap(self):
        mu = area_measure(0.0, sector=(0.0, math.pi))
        full = mass_on_square(area_measure(0.0), 0.5)
        # square at angle 0 is bisected by the sector edge
        assert mass_on_square(mu, 0.5) == pytest.approx(full / 2.0, rel=1e-12)
        # square fully inside / fully outside the sector
        assert mass_on_square(mu, 0.5j) == pytest.approx(full, rel=1e-12)
        assert mass_on_square(mu, -0.5j) == 0.0

    def test_additive_over_disjoint_sectors(self):
        a = 0.6 * cmath.exp(0.3j)
        low = area_measure(0.5, sector=(0.0, 0.3))
        high = area_measure(0.5, sector=(0.3, 0.9))
        both = area_measure(0.5, sector=(0.0, 0.9))
        assert mass_on_square(low, a) + mass_on_square(high, a) == pytest.approx(
            mass_on_square(both, a), rel=1e-12)

    def test_monotone_along_ray(self):
        mu = area_measure(1.0)
        masses = [mass_on_square(mu, r) for r in (0.1, 0.3, 0.5, 0.7, 0.9)]
        assert all(m1 >= m2 for m1, m2 in zip(masses, masses[1:]))


class TestMassOnDisc:
    def test_centered_disc(self):
        got = mass_on_disc(area_measure(0.0), 0.0, 0.5)
        assert got == pytest.approx(0.25, rel=1e-10)

    def test_offset_disc(self):
        # Delta(0.5, 0.5) = D(0.4, 0.4): normalized area R^2
        got = mass_on_disc(area_measure(0.0), 0.5, 0.5)
        assert got == pytest.approx(0.16, rel=1e-9)

    def test_atom_inside_pseudo_disc(self):
        mu = DiscMeasure.atom(0.4, 2.0)
        assert mass_on_disc(mu, 0.5, 0.5) == pytest.approx(2.0)
        assert mass_on_disc(mu, -0.5, 0.5) == 0.0

    def test_radial_density_against_riemann(self):
        mu = area_measure(1.0)
        a, r = 0.6, 0.5
        got = mass_on_disc(mu, a, r)
        # brute midpoint sum over the bounding box of D(A, R)
        from bergzyg.geometry import pseudo_disc
        d = pseudo_disc(a, r)
        n = 1200
        xs = np.linspace(d.euclid_center.real - d.euclid_radius,
                         d.euclid_center.real + d.euclid_radius, n)
        ys = np.linspace(-d.euclid_radius, d.euclid_radius, n)
        X, Y = np.meshgrid(xs, ys)
        inside = (X - d.euclid_center.real) ** 2 + Y ** 2 < d.euclid_radius ** 2
        dens = np.where(inside, 1.0 - np.hypot(X, Y), 0.0)
        cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
        oracle = dens.sum() * cell / math.pi
        assert got == pytest.approx(oracle, rel=2e-3)

    def test_sector_component(self):
        full = mass_on_disc(area_measure(0.0), 0.5, 0.5)
        halfplane = mass_on_disc(area_measure(0.0, sector=(-math.pi / 2, math.pi / 2)),
                                 0.5, 0.5)
        assert halfplane == pytest.approx(full, rel=1e-9)   # disc sits in the sector
        other = mass_on_disc(area_measure(0.0, sector=(math.pi / 2, 3 * math.pi / 2)),
                             0.5, 0.5)
        assert other == pytest.approx(0.0, abs=1e-12)


class TestConstruction:
    def test_total_mass(self):
        mu = DiscMeasure(components=[AreaComponent(RadialWeight.power(0.0))],
                         atoms=[(0.5, 2.0)])
        assert mu.total_mass() == pytest.approx(3.0, rel=1e-12)

    def test_is_radial(self):
        assert area_measure(0.0).is_radial()
        assert DiscMeasure.atom(0.0, 1.0).is_radial()
        assert not DiscMeasure.atom(0.5, 1.0).is_radial()
        assert not area_measure(0.0, sector=(0.0, 1.0)).is_radial()

    def test_atom_validation(self):
        with pytest.raises(ParameterError):
            DiscMeasure.atom(1.0, 1.0)
        with pytest.raises(ParameterError):
            DiscMeasure.atom(0.5, -1.0)


class TestParse:
    def test_area_with_sector(self):
        kind, comp = parse_measure_component(
            "area weight=power alpha=1 sector=0,1.5707963267948966")
        assert kind == "area"
        assert comp.weight.alpha == 1.0
        assert comp.sector[1] == pytest.approx(math.pi / 2)

    def test_atom(self):
        kind, z, m = parse_measure_component("atom re=0.3 im=-0.2 mass=1.5")
        assert kind == "atom"
        assert z == pytest.approx(0.3 - 0.2j)
        assert m == 1.5

    def test_build_measure(self):
        mu = build_measure(["area weight=power alpha=0",
                            "atom re=0 im=0 mass=2"])
        assert mu.total_mass() == pytest.approx(3.0, rel=1e-12)

    def test_bad_component(self):
        with pytest.raises(ParameterError):
            parse_measure_component("line from=0 to=1")
