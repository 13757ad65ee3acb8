"""Built-in scenario catalog.

Each entry materialises as config text in the harness grammar, so the
shipped fixtures double as parser fixtures and as ready-to-run acceptance
scenarios with their expectations declared inline.
"""
from __future__ import annotations

import math


def _power_family() -> str:
    lines = []
    for alpha in (-0.5, 0.0, 1.0):
        for t in (-0.5, 0.0, 1.0, 2.0):
            for p, q in ((2.0, 2.0), (1.0, 2.0)):
                kappa = t + 2.0 - (q / p) * (alpha + 2.0)
                name = (f"power_a{alpha:g}_t{t:g}_p{p:g}q{q:g}"
                        .replace("-", "m").replace(".", "_"))
                lines += [
                    f"[scenario.{name}]",
                    "kind = embedding",
                    f"weight = power alpha={alpha:g}",
                    "scale.psi = const c=1",
                    "scale.phi = const c=1",
                    f"measure.component = area weight=power alpha={t:g}",
                    f"p = {p:g}",
                    f"q = {q:g}",
                    "J = 14",
                    "r = 0.5",
                    f"expect.bounded = {'true' if kappa >= 0 else 'false'}",
                    f"expect.vanishing = {'true' if kappa > 0 else 'false'}",
                    f"expect.slope = {kappa:g} tol=0.05",
                    "",
                ]
    return "\n".join(lines)


def _zygmund_boundary() -> str:
    # borderline power part (t = alpha for p = q); verdict hinges on the logs
    lines = []
    for beta in (-1.0, 0.0, 1.0):
        for gamma in (-1.0, 0.0, 1.0):
            name = f"zyg_b{beta:g}_g{gamma:g}".replace("-", "m").replace(".", "_")
            lines += [
                f"[scenario.{name}]",
                "kind = embedding",
                "weight = power alpha=0",
                f"scale.psi = logpow beta={beta:g}",
                f"scale.phi = logpow beta={gamma:g}",
                "measure.component = area weight=power alpha=0",
                "p = 2",
                "q = 2",
                "J = 16",
                "r = 0.5",
                f"expect.bounded = {'true' if gamma <= beta else 'false'}",
                "",
            ]
    return "\n".join(lines)


def _weight_class_zoo() -> str:
    zoo = [
        ("power0", "power alpha=0", "member", "member"),
        ("power2", "power alpha=2", "member", "member"),
        ("power_m05", "power alpha=-0.5", "member", "member"),
        ("loginvsq", "loginvsq", "member", "non-member"),
        ("loginvsq_reg", "powerlog alpha=-0.5 beta=-2", "member", "member"),
        ("powerlog_up", "powerlog alpha=1 beta=2", "member", "member"),
    ]
    lines = []
    for name, spec, dhat, dcheck in zoo:
        lines += [
            f"[scenario.zoo_{name}]",
            "kind = weight-class",
            f"weight = {spec}",
            "J = 16",
            f"expect.dhat = {dhat}",
            f"expect.dcheck = {dcheck}",
            "",
        ]
    return "\n".join(lines)


_BUILTINS: dict[str, str] = {}


def _register(name: str, text: str) -> None:
    _BUILTINS[name] = text


_register("identity", """
[scenario.identity]
kind = embedding
weight = power alpha=0
scale.psi = logpow beta=1
scale.phi = logpow beta=1
measure.component = area weight=power alpha=0
p = 2
q = 2
J = 12
r = 0.5
expect.bounded = true
expect.vanishing = false
expect.sup = 1.0 tol=0.001
""")

_register("power-family", _power_family())
_register("zygmund-boundary", _zygmund_boundary())

_register("atom", """
[scenario.atom_origin]
kind = embedding
weight = power alpha=0
scale.psi = const c=1
scale.phi = const c=1
measure.component = atom re=0 im=0 mass=2
p = 2
q = 2
J = 8
r = 0.5
expect.bounded = true
expect.vanishing = true
""")

_register("sector", f"""
[scenario.sector_quarter]
kind = embedding
weight = power alpha=0
scale.psi = const c=1
scale.phi = const c=1
measure.component = area weight=power alpha=1 sector=0,{math.pi / 4:.16g}
p = 2
q = 2
J = 10
angular_cap = 256
r = 0.5
expect.bounded = true
expect.vanishing = true
expect.slope = 1.0 tol=0.1
""")

_register("bloch-tg", """
[scenario.tg_logsym]
kind = operator
weight = power alpha=0.5
weight.nu = power alpha=0.5
scale.psi = const c=1
scale.phi = const c=1
g = logsym
p = 2
q = 2
J = 12
r = 0.5
expect.bounded = true
expect.vanishing = false
expect.sup = 1.0 tol=0.1

[scenario.tg_poly]
kind = operator
weight = power alpha=0.5
weight.nu = power alpha=0.5
scale.psi = const c=1
scale.phi = const c=1
g = poly coeffs=0,1
p = 2
q = 2
J = 12
r = 0.5
expect.bounded = true
expect.vanishing = true

[scenario.tg_cauchy]
kind = operator
weight = power alpha=0.5
weight.nu = power alpha=0.5
scale.psi = const c=1
scale.phi = const c=1
g = cauchy
p = 2
q = 2
J = 12
r = 0.5
expect.bounded = false
expect.slope = -1.0 tol=0.05
""")

_register("lacunary-tg", """
[scenario.tg_lacunary10]
kind = operator
weight = power alpha=0.5
weight.nu = power alpha=0.5
scale.psi = const c=1
scale.phi = const c=1
g = lacunary K=10
p = 2
q = 2
J = 12
r = 0.5
expect.bounded = true
expect.vanishing = false
""")

_register("weight-class-zoo", _weight_class_zoo())


def catalog(filter_text: str | None = None) -> list[str]:
    """Names of shipped scenario configs, optionally substring-filtered."""
    names = sorted(_BUILTINS)
    if filter_text:
        names = [n for n in names if filter_text in n]
    return names


def builtin_config(name: str) -> str:
    """Config text of a shipped scenario set."""
    if name not in _BUILTINS:
        raise KeyError(f"no built-in scenario {name!r}; see catalog()")
    return _BUILTINS[name].strip() + "\n"
