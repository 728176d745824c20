"""Elementary and special functions, each computed two independent ways.

``eval_by_representation`` goes through ``eval_pfq`` using the classical
hypergeometric representation of the function.  ``eval_oracle`` never
touches the hypergeometric engine: exponential/logarithmic formulas for the
trigonometric family, Kummer-transformed series for erf and the lower
incomplete gamma function, the arithmetic-geometric mean for K and E, and
a Bernoulli-number series for the dilogarithm.

Every function is evaluated on the principal branch.  The two
argument-squared rows (``dilog``, ``lower-incomplete-gamma``) take the
squared argument ``t`` directly, so ``Li2(x**2)`` is ``evaluate("dilog", x**2)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import DomainError
from .hypergeom import PFQSpec, eval_pfq
from .numerics import principal_power
from .series import SeriesEvaluation, Status, ToleranceConfig

SQRT_PI = math.sqrt(math.pi)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Representation:
    """f(x) = prefactor(x) * pFq(spec; argument(x)) on |x| < radius."""

    tag: str
    spec: Callable[[dict], PFQSpec]
    prefactor: Callable[[complex, dict], complex]
    argument: Callable[[complex], complex]
    radius: float = math.inf
    defaults: dict = field(default_factory=dict)


def _fixed(num, den):
    spec = PFQSpec(num, den)
    return lambda params: spec


REPRESENTATIONS: dict[str, Representation] = {
    r.tag: r
    for r in [
        Representation("arcsin", _fixed((HALF, HALF), (Fraction(3, 2),)),
                       lambda x, p: x, lambda x: x * x, radius=1.0),
        Representation("arctan", _fixed((1, HALF), (Fraction(3, 2),)),
                       lambda x, p: x, lambda x: -x * x, radius=1.0),
        Representation("sin", _fixed((), (Fraction(3, 2),)),
                       lambda x, p: x, lambda x: -x * x / 4),
        Representation("cos", _fixed((), (HALF,)),
                       lambda x, p: 1.0, lambda x: -x * x / 4),
        Representation("arcsin-squared", _fixed((1, 1, 1), (2, Fraction(3, 2))),
                       lambda x, p: x * x, lambda x: x * x, radius=1.0),
        Representation("conformal-power",
                       lambda p: PFQSpec((p["gamma"], p["gamma"] - 0.5), (2 * p["gamma"],)),
                       lambda x, p: 1.0, lambda x: x * x, radius=1.0, defaults={"gamma": 1.0}),
        Representation("K", _fixed((HALF, HALF), (1,)),
                       lambda x, p: math.pi / 2, lambda x: x * x, radius=1.0),
        Representation("E", _fixed((-HALF, HALF), (1,)),
                       lambda x, p: math.pi / 2, lambda x: x * x, radius=1.0),
        Representation("erf", _fixed((HALF,), (Fraction(3, 2),)),
                       lambda x, p: 2 * x / SQRT_PI, lambda x: -x * x),
        Representation("lower-incomplete-gamma",
                       lambda p: PFQSpec((p["a"],), (1 + p["a"],)),
                       lambda t, p: principal_power(t, p["a"]) / p["a"], lambda t: -t,
                       defaults={"a": 1.0}),
        Representation("dilog", _fixed((1, 1, 1), (2, 2)),
                       lambda t, p: t, lambda t: t, radius=1.0),
    ]
}

FUNCTION_TAGS = tuple(REPRESENTATIONS)


def _params(tag: str, params: dict | None) -> dict:
    rep = REPRESENTATIONS[tag]
    merged = dict(rep.defaults)
    if params:
        unknown = set(params) - set(rep.defaults)
        if unknown:
            raise ValueError(f"{tag} takes no parameter(s) {sorted(unknown)}")
        merged.update(params)
    return merged


def _lookup(tag: str) -> Representation:
    try:
        return REPRESENTATIONS[tag]
    except KeyError:
        raise ValueError(f"unknown function {tag!r}; choose from {', '.join(FUNCTION_TAGS)}") from None


def check_domain(tag: str, x: complex) -> None:
    rep = _lookup(tag)
    if not abs(x) < rep.radius:
        raise DomainError(f"{tag}: |x| = {abs(x)} is outside the disk of radius {rep.radius}")


def representation_series(tag: str, x, tol: ToleranceConfig = ToleranceConfig(),
                          params: dict | None = None) -> SeriesEvaluation:
    """The scaled series evaluation behind ``eval_by_representation``."""
    rep = _lookup(tag)
    p = _params(tag, params)
    x = complex(x)
    check_domain(tag, x)
    return eval_pfq(rep.spec(p), rep.argument(x), tol).scaled(rep.prefactor(x, p))


def eval_by_representation(tag: str, x, tol: ToleranceConfig = ToleranceConfig(),
                           params: dict | None = None) -> complex:
    ev = representation_series(tag, x, tol, params)
    if ev.status is not Status.CONVERGED:
        raise DomainError(f"{tag}: series did not converge ({ev.status})")
    return ev.value


# ---------------------------------------------------------------- oracles

def _sin(z: complex) -> complex:
    return (cmath.exp(1j * z) - cmath.exp(-1j * z)) / 2j


def _cos(z: complex) -> complex:
    return (cmath.exp(1j * z) + cmath.exp(-1j * z)) / 2


def _arctan(z: complex) -> complex:
    return (cmath.log(1 + 1j * z) - cmath.log(1 - 1j * z)) / 2j


def _arcsin(z: complex) -> complex:
    return -1j * cmath.log(1j * z + cmath.sqrt(1 - z * z))


def _conformal_power(z: complex, gamma: float) -> complex:
    base = 2 / (1 + cmath.sqrt(1 - z * z))
    return principal_power(base, 2 * gamma - 1)


def _agm_with_sum(k: complex) -> tuple[complex, complex]:
    """AGM(1, sqrt(1-k^2)) and sum_n 2^(n-1) c_n^2 with c_0 = k."""
    a = 1 + 0j
    b = cmath.sqrt(1 - k * k)
    c2_sum = 0.5 * k * k
    power = 0.5
    for _ in range(64):
        if abs(a - b) <= 4e-16 * abs(a):
            break
        c = (a - b) / 2
        a, b = (a + b) / 2, cmath.sqrt(a * b)
        # pick the root on the same side as the arithmetic mean
        if abs(a - b) > abs(a + b):
            b = -b
        power *= 2
        c2_sum += power * c * c
    return a, c2_sum


def _ellip_k(k: complex) -> complex:
    a, _ = _agm_with_sum(k)
    return math.pi / (2 * a)


def _ellip_e(k: complex) -> complex:
    a, s = _agm_with_sum(k)
    return math.pi / (2 * a) * (1 - s)


def _erf(z: complex) -> complex:
    # alternating Maclaurin series where Re(z^2) < 0, Kummer-transformed series elsewhere
    z2 = z * z
    total = 0j
    if z2.real < 0:
        term = z
        n = 0
        while True:
            contrib = term / (2 * n + 1)
            total += contrib
            if abs(contrib) <= 1e-17 * abs(total) and n > 2:
                break
            n += 1
            term *= -z2 / n
        return 2 / SQRT_PI * total
    term = 1 + 0j
    n = 0
    while True:
        total += term
        if abs(term) <= 1e-17 * abs(total) and n > 2:
            break
        n += 1
        term *= 2 * z2 / (2 * n + 1)
    return 2 * z / SQRT_PI * cmath.exp(-z2) * total


def _lower_gamma(t: complex, a: float) -> complex:
    # gamma(a, t) = t^a e^{-t} sum_n t^n / (a (a+1) ... (a+n))
    if t == 0:
        return 0j
    term = 1 / complex(a)
    total = 0j
    n = 0
    while True:
        total += term
        if abs(term) <= 1e-17 * abs(total) and n > 2:
            break
        n += 1
        if n > 10000:
            raise DomainError("lower incomplete gamma series did not settle")
        term *= t / (a + n)
    return principal_power(t, a) * cmath.exp(-t) * total


@lru_cache(maxsize=1)
def _bernoulli(count: int = 60) -> tuple[float, ...]:
    # B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0
    b = [Fraction(1)]
    for n in range(1, count):
        b.append(-sum(math.comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return tuple(float(v) for v in b)


def _dilog(t: complex) -> complex:
    if not abs(t) < 1:
        raise DomainError("dilog oracle covers |t| < 1 only")
    if abs(t) <= 0.5:
        total = 0j
        power = t
        k = 1
        while True:
            term = power / (k * k)
            total += term
            if abs(term) <= 1e-17 * abs(total) or power == 0:
                break
            k += 1
            power *= t
        return total
    # Li2(t) = sum_n B_n u^{n+1} / (n+1)!,  u = -log(1 - t),  |u| < 2 pi
    u = -cmath.log(1 - t)
    total = 0j
    upow = u
    fact = 1.0
    for n, bn in enumerate(_bernoulli()):
        fact *= n + 1
        if bn != 0:
            term = bn * upow / fact
            total += term
            if abs(term) <= 1e-17 * abs(total) and n > 4:
                break
        upow *= u
    return total


ORACLES: dict[str, Callable[..., complex]] = {
    "arcsin": lambda z, p: _arcsin(z),
    "arctan": lambda z, p: _arctan(z),
    "sin": lambda z, p: _sin(z),
    "cos": lambda z, p: _cos(z),
    "arcsin-squared": lambda z, p: _arcsin(z) ** 2,
    "conformal-power": lambda z, p: _conformal_power(z, p["gamma"]),
    "K": lambda z, p: _ellip_k(z),
    "E": lambda z, p: _ellip_e(z),
    "erf": lambda z, p: _erf(z),
    "lower-incomplete-gamma": lambda t, p: _lower_gamma(t, p["a"]),
    "dilog": lambda t, p: _dilog(t),
}


def eval_oracle(tag: str, x, params: dict | None = None) -> complex:
    p = _params(_lookup(tag).tag, params)
    x = complex(x)
    check_domain(tag, x)
    return complex(ORACLES[tag](x, p))
