"""Carleson squares and pseudohyperbolic discs on the unit disc.

Boundary ties follow strict inequalities throughout: the affected sets have
measure zero and determinism matters more than the convention.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ParameterError

TWO_PI = 2.0 * math.pi


def square_contains(a: complex, z: complex) -> bool:
    """Whether z lies in the polar rectangle S(a).

    S(a) = {|z| >= |a|, |arg a - arg z| < (1 - |a|)/2}; S(0) is the whole
    disc. The angle gap is reduced modulo 2 pi to (-pi, pi].
    """
    a, z = complex(a), complex(z)
    if abs(a) >= 1.0 or abs(z) >= 1.0:
        raise ParameterError("both points must lie inside the unit disc")
    if a == 0:
        return True
    if abs(z) < abs(a):
        return False
    gap = (cmath.phase(a) - cmath.phase(z)) % TWO_PI
    if gap > math.pi:
        gap -= TWO_PI
    return abs(gap) < 0.5 * (1.0 - abs(a))


@dataclass(frozen=True)
class PseudoDisc:
    """A pseudohyperbolic disc with its Euclidean realisation D(A, R)."""
    center: complex
    radius: float
    euclid_center: complex
    euclid_radius: float


def pseudo_disc(a: complex, r: float) -> PseudoDisc:
    """The set {z : |(a - z)/(1 - conj(a) z)| < r} as a Euclidean disc.

    Center A = (1 - r^2) a / (1 - r^2 |a|^2), radius
    R = (1 - |a|^2) r / (1 - r^2 |a|^2); always |A| + R < 1.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise ParameterError("center must lie inside the unit disc")
    if not 0.0 < r < 1.0:
        raise ParameterError("radius must lie in (0, 1)")
    denom = 1.0 - (r * abs(a)) ** 2
    A = (1.0 - r * r) * a / denom
    R = (1.0 - abs(a) ** 2) * r / denom
    return PseudoDisc(a, r, A, R)


def pseudo_distance(a: complex, z: complex) -> float:
    """|(a - z) / (1 - conj(a) z)|, the pseudohyperbolic distance."""
    a, z = complex(a), complex(z)
    if abs(a) >= 1.0 or abs(z) >= 1.0:
        raise ParameterError("both points must lie inside the unit disc")
    return abs((a - z) / (1.0 - a.conjugate() * z))
