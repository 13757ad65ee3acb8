"""Finite positive Borel measures on the disc: area densities plus atoms.

Area densities are radial weights, optionally cut to an angular sector, so
every region mass reduces to a one-dimensional radial profile integral
against exact arc-overlap lengths. Atoms follow the strict-inequality
boundary convention of the geometry module.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, ToolConfig
from .errors import ParameterError
from .geometry import pseudo_disc, pseudo_distance, square_contains
from .quadrature import arc_overlap, graded_integral
from .weights import RadialWeight, parse_weight_spec

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AreaComponent:
    weight: RadialWeight
    sector: tuple[float, float] | None = None   # angle interval, width <= 2 pi

    def arc(self) -> tuple[float, float]:
        return self.sector if self.sector is not None else (0.0, TWO_PI)


class DiscMeasure:
    """Area components plus a finite atom list; immutable after construction."""

    def __init__(self, components=(), atoms=()):
        self.components = tuple(components)
        self.atoms = tuple((complex(z), float(m)) for z, m in atoms)
        for comp in self.components:
            if comp.sector is not None:
                lo, hi = comp.sector
                if not 0.0 < hi - lo <= TWO_PI:
                    raise ParameterError("sector must have width in (0, 2 pi]")
        for z, m in self.atoms:
            if abs(z) >= 1.0:
                raise ParameterError(f"atom at {z} not strictly inside the disc")
            if m <= 0.0:
                raise ParameterError("atom masses must be positive")
        self._total: float | None = None

    @classmethod
    def area(cls, weight: RadialWeight, sector=None) -> "DiscMeasure":
        return cls(components=[AreaComponent(weight, sector)])

    @classmethod
    def atom(cls, z: complex, mass: float) -> "DiscMeasure":
        return cls(atoms=[(z, mass)])

    def with_atom(self, z: complex, mass: float) -> "DiscMeasure":
        return DiscMeasure(self.components, self.atoms + ((z, mass),))

    def is_radial(self) -> bool:
        """Rotation invariant: no sectors and atoms only at the origin."""
        return all(c.sector is None for c in self.components) and \
            all(z == 0 for z, _ in self.atoms)

    def total_mass(self, config: ToolConfig = DEFAULT) -> float:
        if self._total is None:
            area = sum(
                c.weight.smoment_u(1.0, config) * (c.arc()[1] - c.arc()[0]) / math.pi
                for c in self.components)
            self._total = float(area) + sum(m for _, m in self.atoms)
        return self._total

    def __repr__(self):
        return f"DiscMeasure({len(self.components)} area, {len(self.atoms)} atoms)"


def mass_on_square(mu: DiscMeasure, a: complex, config: ToolConfig = DEFAULT) -> float:
    """mu(S(a)): radial moments times exact arc overlaps, plus atoms."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise ParameterError("apex must lie inside the disc")
    if a == 0:
        return mu.total_mass(config)
    u = 1.0 - abs(a)
    th = cmath.phase(a)
    total = 0.0
    for comp in mu.components:
        overlap = arc_overlap(th - u / 2.0, th + u / 2.0, *comp.arc())
        if overlap > 0.0:
            total += comp.weight.smoment_u(u, config) * overlap / math.pi
    for z, m in mu.atoms:
        if square_contains(a, z):
            total += m
    return total


def mass_on_disc(mu: DiscMeasure, a: complex, r: float,
                 config: ToolConfig = DEFAULT) -> float:
    """mu of the pseudohyperbolic disc of center a and radius r.

    The Euclidean realisation D(A, R) is sliced by circles about the origin:
    at radius rho the slice is an arc of half-angle
    lambda(rho) = arccos((rho^2 + |A|^2 - R^2)/(2 rho |A|)), so each area
    component needs one radial integral with sqrt-type endpoints, handled by
    endpoint-graded panels.
    """
    disc = pseudo_disc(a, r)
    A, R = disc.euclid_center, disc.euclid_radius
    c = abs(A)
    th = cmath.phase(A) if c > 0.0 else 0.0
    lo, hi = max(0.0, c - R), min(1.0, c + R)

    def half_angle(rho):
        rho = np.asarray(rho, dtype=float)
        if c == 0.0:
            return np.where(rho < R, math.pi, 0.0)
        cosl = (rho * rho + c * c - R * R) / (2.0 * rho * c)
        return np.arccos(np.clip(cosl, -1.0, 1.0))

    total = 0.0
    for comp in mu.components:
        if comp.sector is None:
            def profile(rho, w=comp.weight):
                return 2.0 * half_angle(rho) * w.density(rho) * rho
        else:
            s_lo, s_hi = comp.sector

            def profile(rho, w=comp.weight, s_lo=s_lo, s_hi=s_hi):
                lam = half_angle(rho)
                arcs = np.array([arc_overlap(th - l, th + l, s_lo, s_hi)
                                 for l in np.atleast_1d(lam)])
                return arcs * w.density(rho) * rho

        total += graded_integral(profile, lo, hi,
                                 config.region_grade_depth, config.tail_nodes) / math.pi
    for z, m in mu.atoms:
        if pseudo_distance(a, z) < r:
            total += m
    return total


def parse_measure_component(text: str):
    """Parse one `measure.component` value.

    Grammar: `area weight=<weight-spec> [sector=<t1>,<t2>]`
           | `atom re=<f> im=<f> mass=<f>`.
    The weight spec may itself contain key=value tokens; tokens after
    `weight=` that are not measure-level keys belong to the weight.
    """
    tokens = text.split()
    if not tokens:
        raise ParameterError("empty measure component")
    kind = tokens[0]
    if kind == "atom":
        kv = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
        z = complex(float(kv.get("re", "0")), float(kv.get("im", "0")))
        return ("atom", z, float(kv["mass"]))
    if kind == "area":
        sector = None
        weight_tokens: list[str] = []
        i = 1
        while i < len(tokens):
            tok = tokens[i]
            if tok.startswith("sector="):
                lo, hi = tok.split("=", 1)[1].split(",")
                sector = (float(lo), float(hi))
            elif tok.startswith("weight="):
                weight_tokens.append(tok.split("=", 1)[1])
            else:
                weight_tokens.append(tok)
            i += 1
        if not weight_tokens:
            raise ParameterError("area component needs weight=<weight-spec>")
        weight = parse_weight_spec(" ".join(weight_tokens))
        return ("area", AreaComponent(weight, sector))
    raise ParameterError(f"unknown measure component kind {kind!r}")


def build_measure(component_specs) -> DiscMeasure:
    components, atoms = [], []
    for spec in component_specs:
        parsed = parse_measure_component(spec)
        if parsed[0] == "atom":
            atoms.append((parsed[1], parsed[2]))
        else:
            components.append(parsed[1])
    return DiscMeasure(components, atoms)
