"""Analytic functions on the disc, integral means, and quasinorms.

Three exact-by-formula representations: polynomials (coefficient lists),
kernel powers c (1 - conj(a) z)^-e on the principal branch (well defined
since Re(1 - conj(a) z) > 0), and finite linear combinations of these.

The quasinorm of f against a measure mu and scale function psi is

    ||f|| = (integral of |f|^p psi(|f|) d mu)^(1/p),

computed by dyadic radial panels toward the boundary crossed with angular
quadrature that is graded around kernel peak directions; the integrand is
assembled in the log domain so large kernel exponents cannot overflow.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .config import DEFAULT, ToolConfig
from .errors import ParameterError, QuadratureError
from .measures import DiscMeasure
from .quadrature import gauss_nodes, peak_panels
from .scale import LN2, ScaleFunction
from .weights import RadialWeight

poly_eval = np.polynomial.polynomial.polyval


class AnalyticFunction:
    """Polynomial, kernel power, or a finite linear combination thereof."""

    def __init__(self, variant: str, coeffs=None, base=None, exponent=None,
                 factor=None, terms=None):
        self.variant = variant
        if variant == "poly":
            self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        elif variant == "kernel":
            if exponent is None or exponent <= 0.0:
                raise ParameterError("kernel exponent must be positive")
            if factor < 0.0:
                raise ParameterError("kernel factor must be nonnegative")
            if abs(base) >= 1.0:
                raise ParameterError("kernel base point must lie inside the disc")
            self.base, self.exponent, self.factor = complex(base), float(exponent), float(factor)
        elif variant == "sum":
            self.terms = tuple((complex(c), f) for c, f in terms)
        else:
            raise ParameterError(f"unknown variant {variant!r}")

    # --- constructors -----------------------------------------------------

    @classmethod
    def polynomial(cls, coeffs) -> "AnalyticFunction":
        return cls("poly", coeffs=coeffs)

    @classmethod
    def kernel_power(cls, a: complex, exponent: float, factor: float = 1.0) -> "AnalyticFunction":
        return cls("kernel", base=a, exponent=exponent, factor=factor)

    @classmethod
    def scaled_sum(cls, terms) -> "AnalyticFunction":
        return cls("sum", terms=terms)

    zero = None  # set below

    # --- algebra ----------------------------------------------------------

    def __add__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        if self.variant == "poly" and other.variant == "poly":
            n = max(self.coeffs.size, other.coeffs.size)
            c = np.zeros(n, dtype=complex)
            c[:self.coeffs.size] += self.coeffs
            c[:other.coeffs.size] += other.coeffs
            return AnalyticFunction.polynomial(c)
        return AnalyticFunction.scaled_sum([(1.0, self), (1.0, other)])

    def __rmul__(self, scalar: complex) -> "AnalyticFunction":
        if self.variant == "poly":
            return AnalyticFunction.polynomial(scalar * self.coeffs)
        if self.variant == "kernel" and (isinstance(scalar, float) or scalar.imag == 0) \
                and complex(scalar).real >= 0.0:
            return AnalyticFunction.kernel_power(
                self.base, self.exponent, complex(scalar).real * self.factor)
        return AnalyticFunction.scaled_sum([(scalar, self)])

    @property
    def degree(self) -> int | None:
        """Exact degree for polynomials, None for transcendental variants."""
        if self.variant == "poly":
            nz = np.nonzero(self.coeffs)[0]
            return int(nz[-1]) if nz.size else 0
        if self.variant == "sum":
            degs = [t.degree for _, t in self.terms]
            return None if any(d is None for d in degs) else max(degs, default=0)
        return None

    # --- evaluation -------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.variant == "poly":
            return poly_eval(z, self.coeffs)
        if self.variant == "kernel":
            w = 1.0 - np.conj(self.base) * z
            return self.factor * np.exp(-self.exponent * np.log(w))
        total = np.zeros_like(z)
        for c, f in self.terms:
            total = total + c * f(z)
        return total

    def log_abs(self, z):
        """log |f(z)|, overflow-safe for kernel powers."""
        z = np.asarray(z, dtype=complex)
        if self.variant == "kernel":
            if self.factor == 0.0:
                return np.full(z.shape, -np.inf)
            w = np.abs(1.0 - np.conj(self.base) * z)
            return math.log(self.factor) - self.exponent * np.log(w)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(z)))

    def angular_peaks(self, s: float) -> list[tuple[float, float]]:
        """Peak directions and widths of |f| on the circle of radius s."""
        if self.variant == "kernel":
            if self.base == 0 or self.factor == 0.0:
                return []
            return [(cmath.phase(self.base), 1.0 - abs(self.base) * s)]
        if self.variant == "sum":
            peaks = []
            for _, f in self.terms:
                peaks.extend(f.angular_peaks(s))
            return peaks
        return []

    def derivative(self) -> "AnalyticFunction":
        if self.variant == "poly":
            if self.coeffs.size <= 1:
                return AnalyticFunction.polynomial([0.0])
            return AnalyticFunction.polynomial(
                self.coeffs[1:] * np.arange(1, self.coeffs.size))
        if self.variant == "kernel":
            inner = AnalyticFunction.kernel_power(self.base, self.exponent + 1.0,
                                                  self.factor)
            return AnalyticFunction.scaled_sum(
                [(self.exponent * np.conj(self.base), inner)])
        return AnalyticFunction.scaled_sum(
            [(c, f.derivative()) for c, f in self.terms])

    def taylor(self, n: int) -> "AnalyticFunction":
        """Degree-n polynomial truncation of the Maclaurin series."""
        if self.variant == "poly":
            return AnalyticFunction.polynomial(self.coeffs[:n + 1])
        if self.variant == "kernel":
            # (1 - conj(a) z)^-e = sum_k c_k z^k, c_0 = 1,
            # c_{k+1} = c_k (e + k)/(k + 1) conj(a)
            c = np.empty(n + 1, dtype=complex)
            c[0] = 1.0
            ab = np.conj(self.base)
            for k in range(n):
                c[k + 1] = c[k] * (self.exponent + k) / (k + 1) * ab
            return AnalyticFunction.polynomial(self.factor * c)
        total = AnalyticFunction.polynomial([0.0])
        for coef, f in self.terms:
            total = total + coef * f.taylor(n)
        return total

    def taylor_tail_bound(self, n: int, radius: float) -> float:
        """Upper bound for |f - taylor(n)| on |z| <= radius (kernel/sum only)."""
        if self.variant == "poly":
            return 0.0
        if self.variant == "kernel":
            q = abs(self.base) * radius
            if q >= 1.0:
                return math.inf
            # |c_k| <= factor * binom(e+k-1, k) |a|^k; crude geometric envelope
            head = self.factor * (n + 2) ** max(self.exponent - 1.0, 0.0)
            return head * q ** (n + 1) / (1.0 - q)
        return sum(abs(c) * f.taylor_tail_bound(n, radius) for c, f in self.terms)

    def __repr__(self):
        if self.variant == "poly":
            return f"AnalyticFunction(poly deg={self.degree})"
        if self.variant == "kernel":
            return (f"AnalyticFunction(kernel a={self.base:.4g}, "
                    f"e={self.exponent:g}, c={self.factor:.4g})")
        return f"AnalyticFunction(sum of {len(self.terms)})"


AnalyticFunction.zero = AnalyticFunction.polynomial([0.0])


def evaluate(f: AnalyticFunction, z: complex) -> complex:
    """Point evaluation; |z| < 1 required."""
    if abs(z) >= 1.0:
        raise ParameterError("evaluation point must lie inside the disc")
    return complex(f(z))


def integral_mean(f: AnalyticFunction, r: float, p: float) -> float:
    """M_p(r, f): the p-mean of |f| on the circle of radius r (sup for p = inf).

    Trapezoid node counts double until the relative change drops below 1e-8;
    the sup variant refines locally around the grid argmax.
    """
    if not 0.0 < r < 1.0:
        raise ParameterError("radius must lie in (0, 1)")
    if p != math.inf and p <= 0.0:
        raise ParameterError("p must be positive or inf")
    n = 64
    prev = None
    while n <= 2 ** 20:
        th = np.arange(n) * (2.0 * math.pi / n)
        vals = np.abs(f(r * np.exp(1j * th)))
        if p == math.inf:
            est = float(np.max(vals))
        else:
            est = float(np.mean(vals ** p)) ** (1.0 / p)
        if prev is not None and abs(est - prev) <= 1e-8 * max(abs(est), 1e-300):
            break
        prev = est
        n *= 2
    if p != math.inf:
        return est
    # local refinement at the argmax
    th = np.arange(n // 2) * (2.0 * math.pi / (n // 2))
    k = int(np.argmax(np.abs(f(r * np.exp(1j * th)))))
    lo, hi = th[k] - 2.0 * math.pi / (n // 2), th[k] + 2.0 * math.pi / (n // 2)
    for _ in range(60):
        m1, m2 = lo + (hi - lo) / 3.0, lo + 2.0 * (hi - lo) / 3.0
        if abs(f(r * cmath.exp(1j * m1))) < abs(f(r * cmath.exp(1j * m2))):
            lo = m1
        else:
            hi = m2
    return max(est, abs(f(r * cmath.exp(1j * (lo + hi) / 2.0))))


def _integrand_on_circle(f: AnalyticFunction, psi: ScaleFunction, p: float,
                         s: float, theta: np.ndarray) -> np.ndarray:
    """|f|^p psi(|f|) at s e^{i theta}, built in the log domain."""
    la = f.log_abs(s * np.exp(1j * theta))
    la = np.where(np.isfinite(la), la, -np.inf)
    return np.exp(p * la + psi.log_eval_log2(la / LN2))


def _arc_panels(arc: tuple[float, float], peaks, min_panels: int) -> list[tuple[float, float]]:
    """Quadrature panels covering `arc`, graded around each peak direction."""
    lo, hi = arc
    cuts = set(np.linspace(lo, hi, min_panels + 1))
    for theta0, width in peaks:
        for base in (theta0, theta0 - 2.0 * math.pi, theta0 + 2.0 * math.pi):
            if lo - math.pi <= base <= hi + math.pi:
                for a, b in peak_panels(max(width, 1e-15)):
                    for edge in (base + a, base + b):
                        if lo < edge < hi:
                            cuts.add(edge)
    cuts.update((lo, hi))
    ordered = sorted(cuts)
    return list(zip(ordered[:-1], ordered[1:]))


def _radial_panels(depth: int) -> list[tuple[float, float]]:
    """Dyadic u-panels covering (0, 1]: stub first, then doubling outward."""
    edges = [0.0] + [2.0 ** (-j) for j in range(depth, -1, -1)]
    return list(zip(edges[:-1], edges[1:]))


def quasinorm(f: AnalyticFunction, mu: DiscMeasure, psi: ScaleFunction, p: float,
              config: ToolConfig = DEFAULT) -> float:
    """(integral of |f|^p psi(|f|) d mu)^(1/p)."""
    if p <= 0.0:
        raise ParameterError("p must be positive")
    gx, gw = gauss_nodes(config.tail_nodes)
    pieces = []
    for comp in mu.components:
        arc = comp.arc()
        full_circle = comp.sector is None
        for u_lo, u_hi in _radial_panels(config.radial_depth):
            u_nodes = u_lo + (u_hi - u_lo) * gx
            for u, wu in zip(u_nodes, gw):
                s = 1.0 - u
                peaks = f.angular_peaks(s)
                dens = float(comp.weight.density_u(u)) * s
                if dens == 0.0:
                    continue
                if full_circle and not peaks:
                    n = max(config.angular_base_nodes, 8)
                    th = np.arange(n) * (2.0 * math.pi / n)
                    mean = float(np.mean(_integrand_on_circle(f, psi, p, s, th)))
                    angular = 2.0 * math.pi * mean
                else:
                    min_panels = max(4, (f.degree or 0) // 4) if full_circle \
                        else max(2, (f.degree or 0) // 8)
                    panels = _arc_panels(arc if not full_circle
                                         else (-math.pi, math.pi), peaks, min_panels)
                    # one batched evaluation over all panels' nodes
                    th = np.concatenate([a + (b - a) * gx for a, b in panels])
                    wts = np.concatenate([(b - a) * gw for a, b in panels])
                    vals = _integrand_on_circle(f, psi, p, s, th)
                    angular = float(np.dot(wts, vals))
                pieces.append((u_hi - u_lo) * wu * dens * angular / math.pi)
    total = math.fsum(sorted(pieces, key=abs))
    for z, m in mu.atoms:
        la = float(f.log_abs(np.asarray(z, dtype=complex)))
        if not math.isfinite(la):
            la = -math.inf
        total += m * math.exp(p * la + float(psi.log_eval_log2(la / LN2)))
    if not math.isfinite(total):
        raise QuadratureError("quasinorm integrand overflowed or did not converge",
                              last_estimates=(total,))
    return total ** (1.0 / p)


def quasi_triangle_check(f: AnalyticFunction, g: AnalyticFunction, mu: DiscMeasure,
                         psi: ScaleFunction, p: float,
                         config: ToolConfig = DEFAULT) -> float:
    """||f + g|| / (||f|| + ||g||); bounded by a constant over any corpus."""
    nf = quasinorm(f, mu, psi, p, config)
    ng = quasinorm(g, mu, psi, p, config)
    if nf + ng == 0.0:
        raise ParameterError("both functions vanish; ratio undefined")
    return quasinorm(f + g, mu, psi, p, config) / (nf + ng)


def growth_check(f: AnalyticFunction, omega: RadialWeight, psi: ScaleFunction,
                 p: float, z_grid, config: ToolConfig = DEFAULT) -> float:
    """Grid maximum of |f(z)|^p omega(S(z)) psi(1/omega(S(z))).

    Stays bounded as the grid deepens toward the boundary whenever f has a
    finite quasinorm against omega and psi.
    """
    best = 0.0
    for z in z_grid:
        mass = omega.carleson_mass(z, config)
        la = float(f.log_abs(np.asarray(z, dtype=complex)))
        if not math.isfinite(la):
            la = -math.inf
        val = math.exp(p * la) * mass * math.exp(
            float(psi.log_eval_log2(-math.log(mass) / LN2)))
        best = max(best, val)
    return best


def parse_function_spec(text: str, context=None) -> AnalyticFunction:
    """Parse `poly coeffs=<c0,c1,...>` | `testfn a_re=<f> a_im=<f> gamma=<f>`.

    The test-function form needs an active context (weight, scale, p) to
    apply its normalisation; the harness passes one in.
    """
    tokens = text.split()
    if not tokens:
        raise ParameterError("empty function spec")
    kind, kv = tokens[0], dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
    if kind == "poly":
        coeffs = [complex(c) for c in kv["coeffs"].split(",")]
        return AnalyticFunction.polynomial(coeffs)
    if kind == "testfn":
        if context is None:
            raise ParameterError("testfn spec needs an active scenario context")
        a = complex(float(kv.get("a_re", "0")), float(kv.get("a_im", "0")))
        gamma = float(kv["gamma"]) if "gamma" in kv else None
        from .carleson import test_function
        return test_function(context, a, gamma)
    raise ParameterError(f"unknown function kind {kind!r}")
