"""The integration operator T_g and its symbol characteristic.

T_g(f)(z) = integral from 0 to z of f g'; on polynomial representations this
is exact coefficient arithmetic (Cauchy product, then term-wise
antidifferentiation). The boundedness characteristic of the symbol g between
two weighted Bergman-Zygmund spaces is

    |g'(a)| (1-|a|) (Phi(1/omega(S(a))) nu(S(a)))^(1/q)
    -------------------------------------------------- ,
        (Psi(1/omega(S(a))) omega(S(a)))^(1/p)

with both scale arguments at omega(S(a)) and the nu-mass only upstairs. For
p = q, omega = nu and constant scales this collapses to the Bloch seminorm
term |g'(a)|(1-|a|).
"""
from __future__ import annotations

import math

import numpy as np

from .carleson import ContextBase, source_norm_p, test_function
from .config import DEFAULT, ToolConfig
from .errors import (DegenerateInputError, ParameterError, QuadratureError,
                     TruncationError)
from .funcspace import AnalyticFunction, quasinorm
from .measures import DiscMeasure, mass_on_disc
from .quadrature import gauss_nodes
from .scale import LN2
from .sweeping import SweepEntry, SweepReport, assemble_report, level_grid
from .weights import RadialWeight

DEGREE_CAP = 4096


class SymbolFunction:
    """A named analytic symbol with an exact derivative and Taylor access.

    Sweeps evaluate the derivative in closed form (no truncation error on
    the grid); operator arithmetic requests an explicit polynomial
    truncation.
    """

    def __init__(self, label: str, value_fn, deriv_fn, coeff_fn):
        self.label = label
        self._value = value_fn
        self._deriv = deriv_fn
        self._coeff = coeff_fn

    def __call__(self, z):
        return self._value(np.asarray(z, dtype=complex))

    def derivative_at(self, z):
        return self._deriv(np.asarray(z, dtype=complex))

    def taylor(self, n: int) -> AnalyticFunction:
        return AnalyticFunction.polynomial(self._coeff(n))

    def __repr__(self):
        return f"SymbolFunction({self.label})"


def log_symbol() -> SymbolFunction:
    """g(z) = log(1/(1-z)); g'(z) = 1/(1-z)."""
    return SymbolFunction(
        "logsym",
        lambda z: -np.log(1.0 - z),
        lambda z: 1.0 / (1.0 - z),
        lambda n: np.concatenate([[0.0], 1.0 / np.arange(1, n + 1)]).astype(complex))


def cauchy_symbol() -> SymbolFunction:
    """g(z) = 1/(1-z); g'(z) = 1/(1-z)^2."""
    return SymbolFunction(
        "cauchy",
        lambda z: 1.0 / (1.0 - z),
        lambda z: 1.0 / (1.0 - z) ** 2,
        lambda n: np.ones(n + 1, dtype=complex))


def lacunary_polynomial(K: int) -> AnalyticFunction:
    """g(z) = sum of z^(2^k), k = 0..K; a Bloch, non-little-Bloch prototype."""
    if K < 0:
        raise ParameterError("K must be nonnegative")
    coeffs = np.zeros(2 ** K + 1, dtype=complex)
    for k in range(K + 1):
        coeffs[2 ** k] = 1.0
    return AnalyticFunction.polynomial(coeffs)


def symbol_derivative_at(g, z):
    """g'(z) for either representation; closed form for named symbols."""
    if isinstance(g, SymbolFunction):
        return g.derivative_at(z)
    return g.derivative()(z)


def _as_polynomial(f, degree_cap: int, eval_radius: float | None,
                   tail_tol: float = 1e-9) -> AnalyticFunction:
    """Polynomial form of f, truncating transcendental variants.

    The truncation degree is chosen so the series tail stays below tail_tol
    on |z| <= eval_radius (geometric bound); exceeding the cap raises with
    the best achievable bound attached.
    """
    if isinstance(f, AnalyticFunction) and f.variant == "poly":
        if f.degree is not None and f.degree > degree_cap:
            raise TruncationError(
                f"polynomial degree {f.degree} exceeds cap {degree_cap}")
        return f
    if eval_radius is None:
        raise ParameterError(
            "transcendental input needs eval_radius for a certified truncation")
    if isinstance(f, SymbolFunction):
        # geometric series tail: |coeffs| <= 1, tail <= radius^(n+1)/(1-radius)
        if eval_radius >= 1.0:
            raise ParameterError("eval_radius must be below 1")
        need = math.log(tail_tol * (1.0 - eval_radius)) / math.log(eval_radius)
        n = int(need) + 1
        if n > degree_cap:
            bound = eval_radius ** (degree_cap + 1) / (1.0 - eval_radius)
            raise TruncationError(
                f"symbol {f.label} needs degree {n} > cap {degree_cap} "
                f"on |z| <= {eval_radius}", tail_bound=bound)
        return f.taylor(n)
    n = 64
    while n <= degree_cap:
        if f.taylor_tail_bound(n, eval_radius) < tail_tol:
            return f.taylor(n)
        n *= 2
    raise TruncationError(
        "kernel truncation cannot meet the tail bound within the degree cap",
        tail_bound=f.taylor_tail_bound(degree_cap, eval_radius))


def cauchy_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficient product; compensated summation above degree 512."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    n = a.size + b.size - 1
    if n <= 513:
        return np.convolve(a, b)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        lo = max(0, k - b.size + 1)
        hi = min(k, a.size - 1)
        terms = a[lo:hi + 1] * b[k - hi:k - lo + 1][::-1]
        out[k] = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return out


def apply_tg(g, f, degree_cap: int = DEGREE_CAP,
             eval_radius: float | None = None) -> AnalyticFunction:
    """T_g(f) as exact polynomial coefficients; T_g(f)(0) = 0 always.

    Kernel-power inputs are Taylor-truncated first (certified geometric tail
    on |z| <= eval_radius); the resulting f g' is integrated term by term.
    """
    g_poly = _as_polynomial(g, degree_cap, eval_radius)
    f_poly = _as_polynomial(f, degree_cap, eval_radius)
    gprime = g_poly.derivative()
    h = cauchy_product(f_poly.coeffs, gprime.coeffs)
    if h.size > degree_cap:
        raise TruncationError(
            f"product degree {h.size - 1} exceeds cap {degree_cap}")
    out = np.zeros(h.size + 1, dtype=complex)
    out[1:] = h / np.arange(1, h.size + 1)
    return AnalyticFunction.polynomial(out)


class OperatorContext(ContextBase):
    """Validated bundle (omega, nu, psi, phi, p <= q, symbol g)."""

    def __init__(self, omega: RadialWeight, nu: RadialWeight, psi, phi,
                 p: float, q: float, g, disc_radius: float | None = None,
                 gamma: float | None = None, config: ToolConfig = DEFAULT):
        super().__init__(omega, psi, phi, p, q, disc_radius, gamma, config)
        nu.assert_in_d(config)
        self.nu = nu
        self.g = g
        self.target_measure = DiscMeasure.area(nu)


def tg_characteristic(ctx: OperatorContext, a: complex) -> float:
    """The symbol characteristic at a (see module docstring)."""
    if abs(a) >= 1.0:
        raise ParameterError("point must lie inside the disc")
    gp = abs(complex(symbol_derivative_at(ctx.g, a)))
    if gp == 0.0:
        return 0.0
    w_mass, log_psi, log_phi = ctx.scale_args_at(a)
    nu_mass = ctx.nu.carleson_mass(a, ctx.config)
    u = 1.0 - abs(a)
    return math.exp(
        math.log(gp) + math.log(u)
        + (log_phi + math.log(nu_mass)) / ctx.q
        - (log_psi + math.log(w_mass)) / ctx.p)


def tg_characteristic_disc(ctx: OperatorContext, a: complex) -> float:
    """Disc variant: region masses over Delta(a, r), scale arguments kept at
    1/omega(S(a))."""
    if abs(a) >= 1.0:
        raise ParameterError("point must lie inside the disc")
    gp = abs(complex(symbol_derivative_at(ctx.g, a)))
    if gp == 0.0:
        return 0.0
    _, log_psi, log_phi = ctx.scale_args_at(a)
    r = ctx.disc_radius
    nu_mass = mass_on_disc(ctx.target_measure, a, r, ctx.config)
    w_mass = mass_on_disc(ctx.source_measure, a, r, ctx.config)
    u = 1.0 - abs(a)
    return math.exp(
        math.log(gp) + math.log(u)
        + (log_phi + math.log(nu_mass)) / ctx.q
        - (log_psi + math.log(w_mass)) / ctx.p)


def tg_sweep(ctx: OperatorContext, J: int, angular_cap: int | None = None,
             include_fa: bool = True) -> SweepReport:
    """Sweep of the symbol characteristic on the dyadic boundary grid.

    Identical grid and verdict machinery as the embedding sweep. Level data
    (masses, scale arguments, test-function norms) are radial and computed
    once per level; only g' varies with the angle.
    """
    if J < 8:
        raise ParameterError("J must be at least 8")
    cap = angular_cap if angular_cap is not None else ctx.config.angular_cap
    entries: list[SweepEntry] = []
    warnings = 0
    notes: list[str] = []
    for j, r, thetas in level_grid(J, cap):
        a0 = complex(r, 0.0)
        try:
            w_mass, log_psi, log_phi = ctx.scale_args_at(a0)
            nu_mass = ctx.nu.carleson_mass(a0, ctx.config)
            nu_disc = mass_on_disc(ctx.target_measure, a0, ctx.disc_radius, ctx.config)
            w_disc = mass_on_disc(ctx.source_measure, a0, ctx.disc_radius, ctx.config)
            fa_norm = float("nan")
            if include_fa:
                fa_norm = source_norm_p(ctx, test_function(ctx, a0))
        except QuadratureError as exc:
            warnings += len(thetas)
            notes.append(f"level {j}: {exc}")
            continue
        u = 1.0 - r
        base_sq = math.log(u) + (log_phi + math.log(nu_mass)) / ctx.q \
            - (log_psi + math.log(w_mass)) / ctx.p
        base_disc = math.log(u) + (log_phi + math.log(nu_disc)) / ctx.q \
            - (log_psi + math.log(w_disc)) / ctx.p
        gp = np.abs(symbol_derivative_at(
            ctx.g, r * np.exp(1j * np.asarray(thetas))))
        for th, gval in zip(thetas, gp):
            if gval == 0.0:
                rho_s = rho_d = 0.0
            else:
                rho_s = math.exp(math.log(gval) + base_sq)
                rho_d = math.exp(math.log(gval) + base_disc)
            entries.append(SweepEntry(j, r, float(th), rho_s, rho_d, fa_norm))
    return assemble_report(entries, J, warnings, ctx.config, tuple(notes))


def littlewood_paley_ratio(ctx: OperatorContext, f: AnalyticFunction,
                           symbol_degree: int = 64) -> float:
    """||T_g f||^q in the target space over the derivative-side integral

        integral of |f g'|^q (1-|z|)^q Phi(1/(1-|z|)) nuhat(z)/(1-|z|) dA(z).

    The two sides are comparable with constants independent of f; the ratio
    is reported for band checks. Named symbols are truncated once and the
    same polynomial is used on both sides, so the comparison is
    self-consistent at any truncation degree.
    """
    g_poly = ctx.g if isinstance(ctx.g, AnalyticFunction) \
        else ctx.g.taylor(symbol_degree)
    h = cauchy_product(_as_polynomial(f, DEGREE_CAP, None).coeffs,
                       g_poly.derivative().coeffs)
    if not np.any(h):
        raise DegenerateInputError("f g' vanishes identically")
    tgf = apply_tg(g_poly, f)
    numerator = quasinorm(tgf, ctx.target_measure, ctx.phi, ctx.q, ctx.config) ** ctx.q

    hf = AnalyticFunction.polynomial(h)
    gx, gw = gauss_nodes(ctx.config.tail_nodes)
    n_theta = max(ctx.config.angular_base_nodes, 4 * (hf.degree + 1))
    th = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    edges = [0.0] + [2.0 ** (-j) for j in range(ctx.config.radial_depth, -1, -1)]
    pieces = []
    for u_lo, u_hi in zip(edges[:-1], edges[1:]):
        for x, wq in zip(gx, gw):
            u = u_lo + (u_hi - u_lo) * x
            s = 1.0 - u
            mean_hq = float(np.mean(np.abs(hf(s * np.exp(1j * th))) ** ctx.q))
            radial = (u ** (ctx.q - 1.0)
                      * math.exp(float(ctx.phi.log_eval_log2(-math.log(u) / LN2)))
                      * ctx.nu.tail_u(u, ctx.config) * s)
            pieces.append((u_hi - u_lo) * wq * 2.0 * mean_hq * radial)
    denominator = math.fsum(sorted(pieces, key=abs))
    if denominator == 0.0:
        raise DegenerateInputError("derivative-side integral vanished")
    return numerator / denominator


def parse_symbol_spec(text: str):
    """Parse `poly coeffs=<c0,c1,...>` | `logsym` | `cauchy` | `lacunary K=<int>`."""
    tokens = text.split()
    if not tokens:
        raise ParameterError("empty symbol spec")
    kind, kv = tokens[0], dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
    if kind == "poly":
        return AnalyticFunction.polynomial([complex(c) for c in kv["coeffs"].split(",")])
    if kind == "logsym":
        return log_symbol()
    if kind == "cauchy":
        return cauchy_symbol()
    if kind == "lacunary":
        return lacunary_polynomial(int(kv["K"]))
    raise ParameterError(f"unknown symbol kind {kind!r}")
