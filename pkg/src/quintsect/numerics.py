"""Scalar numerics: complex log-gamma, Pochhammer symbol, fifth roots of unity.

All scalars are Python ``complex``.  Integrality is decided with a fixed
absolute tolerance (``INT_TOL``) so that parameters such as ``-3+0j`` or
``2.0000000000001`` select the exact branches of the Pochhammer symbol.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError, UndefinedQuotientError

INT_TOL = 1e-12
ORDER = 5  # multisection order; fixed for the whole package

LOG_PI = math.log(math.pi)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
TWO_PI = 2.0 * math.pi

# Godfrey's Lanczos coefficients, g = 607/128.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

# rising products up to this length are multiplied out directly
_PRODUCT_LIMIT = 50


def as_complex(v) -> complex:
    if isinstance(v, Fraction):
        return complex(float(v))
    return complex(v)


def nearest_integer(v, tol: float = INT_TOL) -> int | None:
    """Return the integer ``v`` rounds to, or None if ``v`` is not integral."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else None
    z = complex(v)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return None
    if abs(z.imag) > tol:
        return None
    r = round(z.real)
    if abs(z.real - r) > tol:
        return None
    return int(r)


def is_nonpositive_integer(v, tol: float = INT_TOL) -> bool:
    n = nearest_integer(v, tol)
    return n is not None and n <= 0


def close(a: complex, b: complex, tol: float) -> bool:
    """Scale-aware comparison used throughout the test-suite."""
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 0.5
    w = z - 1.0
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (w + 0.5) * cmath.log(t) - t + cmath.log(s)


def _log_sinpi(z: complex) -> complex:
    """Principal log of sin(pi z), without overflow for large |Im z|."""
    y = z.imag
    if abs(y) < 10.0:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})   for y > 0, conjugate form for y < 0
    if y > 0:
        v = -math.log(2.0) + 0.5j * math.pi - 1j * math.pi * z + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
    else:
        v = -math.log(2.0) - 0.5j * math.pi + 1j * math.pi * z + cmath.log(1.0 - cmath.exp(-2j * math.pi * z))
    im = math.remainder(v.imag, TWO_PI)
    if im <= -math.pi:
        im += TWO_PI
    return complex(v.real, im)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z) (the branch continuous off the negative real axis)."""
    z = as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma: pole at z = {z}")
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    shift = complex(0.0, math.copysign(TWO_PI, z.imag) * math.floor(0.5 * z.real + 0.25))
    return LOG_PI + shift - _log_sinpi(z) - _lanczos_log_gamma(1.0 - z)


def gamma(z) -> complex:
    return cmath.exp(log_gamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z); zero at the poles."""
    if is_nonpositive_integer(z):
        return 0j
    return cmath.exp(-log_gamma(z))


def _rising_product(lam: complex, n: int) -> complex:
    p = 1 + 0j
    for j in range(n):
        p *= lam + j
    return p


def _gamma_ratio(num: complex, den: complex) -> complex:
    return cmath.exp(log_gamma(num) - log_gamma(den))


@dataclass(frozen=True)
class PochhammerQuery:
    lam: complex
    nu: complex


def pochhammer(lam, nu) -> complex:
    """The Pochhammer symbol (lam)_nu = Gamma(lam + nu) / Gamma(lam).

    Branches, checked in order: nu = 0; nu = n > 0 with lam not a
    nonpositive integer; lam = -k with 0 <= n <= k; lam = -k with n > k
    (exactly zero); nu = -n; otherwise the gamma quotient.
    """
    n = nearest_integer(nu)
    k = nearest_integer(lam)
    lam = as_complex(lam)
    nu = as_complex(nu)
    if n is not None:
        if n == 0:
            return 1 + 0j
        if n > 0:
            if k is not None and k <= 0:
                k = -k
                if n > k:
                    return 0j
                # (-1)^n k!/(k-n)!
                return complex((-1) ** n * math.perm(k, n))
            if n <= _PRODUCT_LIMIT:
                return _rising_product(lam, n)
            return _gamma_ratio(lam + n, lam)
        m = -n
        if k is not None and 1 <= k <= m:
            # Gamma(lam - m) is a pole while Gamma(lam) is finite
            raise PoleError(f"pochhammer: ({lam})_{{{nu}}} is infinite")
        return (-1) ** m / pochhammer(1.0 - lam, m)
    top_pole = is_nonpositive_integer(lam + nu)
    bottom_pole = k is not None and k <= 0
    if top_pole and bottom_pole:
        raise UndefinedQuotientError(f"pochhammer: both Gamma({lam + nu}) and Gamma({lam}) are poles")
    if bottom_pole:
        return 0j
    if top_pole:
        raise PoleError(f"pochhammer: Gamma({lam + nu}) is a pole")
    return _gamma_ratio(lam + nu, lam)


def fifth_root(power: int) -> complex:
    """exp(2 pi i power / 5), with the exponent reduced mod 5 first."""
    p = power % ORDER
    if p == 0:
        return 1 + 0j
    return cmath.exp(2j * math.pi * p / ORDER)


def alpha_power(s) -> complex:
    """alpha**s for real (possibly non-integer) s, using Log alpha = 2 pi i / 5."""
    n = nearest_integer(s)
    if n is not None:
        return fifth_root(n)
    return cmath.exp(2j * math.pi * float(s) / ORDER)


def principal_power(w: complex, s) -> complex:
    """w**s on the principal branch, Arg w in (-pi, pi]."""
    w = complex(w)
    s = as_complex(s)
    if w == 0:
        if s == 0:
            return 1 + 0j
        if s.real > 0:
            return 0j
        raise PoleError("0 raised to a power with nonpositive real part")
    n = nearest_integer(s)
    if n is not None and abs(n) <= 64:
        return w**n
    return cmath.exp(s * cmath.log(w))


def _root_sum(exponents) -> complex:
    return sum(fifth_root(e) for e in exponents)


def identity_one_sum(r: int) -> float:
    """1 + a^{2r} + a^{4r} + a^{6r} + a^{8r}: 5 when 5 | r, else 0."""
    if r < 0:
        raise ValueError("r must be non-negative")
    by_residue = 5.0 if r % ORDER == 0 else 0.0
    direct = _root_sum(2 * j * r for j in range(ORDER))
    assert abs(direct - by_residue) <= 1e-12, (r, direct)
    return by_residue


def identity_two_sum(r: int) -> float:
    """1 + a^{2r+1} + a^{4r+2} + a^{6r+3} + a^{8r+4}: 5 when r = 2 (mod 5), else 0."""
    if r < 0:
        raise ValueError("r must be non-negative")
    by_residue = 5.0 if r % ORDER == 2 else 0.0
    direct = _root_sum(j * (2 * r + 1) for j in range(ORDER))
    assert abs(direct - by_residue) <= 1e-12, (r, direct)
    return by_residue


@dataclass(frozen=True)
class MultiplicationQuery:
    b: complex
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise ValueError("need m >= 1 and n >= 0")


def gauss_multiplication_residual(b, m: int, n: int) -> float:
    """Relative gap between (b)_{mn} and m^{mn} prod_j ((b+j-1)/m)_n."""
    MultiplicationQuery(b, m, n)
    b = as_complex(b)
    lhs = pochhammer(b, m * n)
    rhs = complex(float(m) ** (m * n))
    for j in range(1, m + 1):
        rhs *= pochhammer((b + (j - 1)) / m, n)
    if lhs == rhs:
        return 0.0
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale
