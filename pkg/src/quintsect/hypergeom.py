"""Generalized hypergeometric pFq and Fox-Wright psi / psi* series.

Parameters may be ints, floats, Fractions or complex numbers; they are kept
as given (so exact values survive into parameter-list transformations) and
converted to ``complex`` only for evaluation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import DomainError, SpecError
from .numerics import (INT_TOL, as_complex, is_nonpositive_integer, log_gamma, nearest_integer,
                       pochhammer)
from .series import SeriesEvaluation, Status, TermPole, ToleranceConfig, sum_terms

_BOUNDARY_TOL = 1e-12
_BOUNDARY_TERM_FACTOR = 10


class Classification(str, Enum):
    ENTIRE = "entire"
    UNIT_DISK = "unit-disk"
    BOUNDARY_ABS = "boundary-abs"
    BOUNDARY_COND = "boundary-cond"
    DIVERGENT = "divergent"
    UNSUPPORTED = "case-II-III-unsupported"

    def __str__(self) -> str:
        return self.value


_SUMMABLE = {Classification.ENTIRE, Classification.UNIT_DISK,
             Classification.BOUNDARY_ABS, Classification.BOUNDARY_COND}


@dataclass(frozen=True)
class ConvergenceDiagnostics:
    classification: Classification
    omega: complex | None = None          # pFq only
    delta_star: float | None = None       # Fox-Wright only from here on
    delta_small_star: float | None = None
    mu_star: complex | None = None
    sigma_star: float | None = None

    @property
    def summable(self) -> bool:
        return self.classification in _SUMMABLE

    @property
    def on_boundary(self) -> bool:
        return self.classification in (Classification.BOUNDARY_ABS, Classification.BOUNDARY_COND)

    def describe(self) -> str:
        if self.omega is not None:
            return f"classification={self.classification} omega={_fmt(self.omega)}"
        return (f"classification={self.classification} Delta*={self.delta_star!r} "
                f"delta*={self.delta_small_star!r} mu*={_fmt(self.mu_star)} sigma*={self.sigma_star!r}")


def _fmt(z) -> str:
    z = complex(z)
    return repr(z.real) if z.imag == 0 else f"{z.real!r},{z.imag!r}"


@dataclass(frozen=True)
class PFQSpec:
    numerator: tuple = ()
    denominator: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        for b in self.denominator:
            if is_nonpositive_integer(b):
                raise SpecError(f"denominator parameter {b} is a nonpositive integer")

    @property
    def p(self) -> int:
        return len(self.numerator)

    @property
    def q(self) -> int:
        return len(self.denominator)

    def terminating_degree(self) -> int | None:
        """m when some numerator parameter equals -m (the series is a polynomial)."""
        degrees = [-n for n in map(nearest_integer, self.numerator) if n is not None and n <= 0]
        return min(degrees) if degrees else None


@dataclass(frozen=True)
class FoxWrightSpec:
    """Pairs (a_i, A_i) on top and (b_j, B_j) below; weights are real and non-zero."""

    numerator: tuple = ()
    denominator: tuple = ()

    def __post_init__(self):
        num = tuple((a, float(A)) for a, A in self.numerator)
        den = tuple((b, float(B)) for b, B in self.denominator)
        for _, w in num + den:
            if w == 0:
                raise SpecError("Fox-Wright weights must be non-zero")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def p(self) -> int:
        return len(self.numerator)

    @property
    def q(self) -> int:
        return len(self.denominator)

    @classmethod
    def from_pfq(cls, spec: PFQSpec) -> "FoxWrightSpec":
        return cls(tuple((a, 1.0) for a in spec.numerator), tuple((b, 1.0) for b in spec.denominator))

    def cancelled(self) -> "FoxWrightSpec":
        """Drop numerator/denominator pairs with equal parameter and weight."""
        num = list(self.numerator)
        den = []
        for b, B in self.denominator:
            for i, (a, A) in enumerate(num):
                if A == B and as_complex(a) == as_complex(b):
                    del num[i]
                    break
            else:
                den.append((b, B))
        return FoxWrightSpec(tuple(num), tuple(den))


def classify_pfq(spec: PFQSpec, z) -> ConvergenceDiagnostics:
    z = as_complex(z)
    omega = sum(map(as_complex, spec.denominator), 0j) - sum(map(as_complex, spec.numerator), 0j)

    def verdict(c):
        return ConvergenceDiagnostics(c, omega=omega)

    if spec.p <= spec.q or spec.terminating_degree() is not None:
        return verdict(Classification.ENTIRE)
    if spec.p > spec.q + 1:
        return verdict(Classification.DIVERGENT)
    r = abs(z)
    if r < 1 - _BOUNDARY_TOL:
        return verdict(Classification.UNIT_DISK)
    if r > 1 + _BOUNDARY_TOL:
        return verdict(Classification.DIVERGENT)
    if omega.real > 0:
        return verdict(Classification.BOUNDARY_ABS)
    if omega.real > -1 and abs(z - 1) > _BOUNDARY_TOL:
        return verdict(Classification.BOUNDARY_COND)
    return verdict(Classification.DIVERGENT)


def _pfq_terms(num: Sequence[complex], den: Sequence[complex], z: complex) -> Iterator[complex]:
    t = 1 + 0j
    n = 0
    while True:
        yield t
        ratio = z / (n + 1)
        for a in num:
            ratio *= a + n
        for b in den:
            ratio /= b + n
        t *= ratio
        n += 1


def eval_pfq(spec: PFQSpec, z, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """sum_n prod (a_i)_n / prod (b_j)_n  z^n / n!  via the term-ratio recurrence."""
    z = as_complex(z)
    num = [as_complex(a) for a in spec.numerator]
    den = [as_complex(b) for b in spec.denominator]
    if z == 0:
        return SeriesEvaluation(1 + 0j, 1, 0.0, Status.CONVERGED)
    degree = spec.terminating_degree()
    if degree is not None:
        terms = _pfq_terms(num, den, z)
        total = sum((next(terms) for _ in range(degree + 1)), 0j)
        return SeriesEvaluation(total, degree + 1, 0.0, Status.CONVERGED)
    diag = classify_pfq(spec, z)
    if not diag.summable:
        raise DomainError(f"{spec.p}F{spec.q} series diverges at z = {z} ({diag.classification})")
    if diag.on_boundary:
        ev = sum_terms(_pfq_terms(num, den, z), tol.scaled(_BOUNDARY_TERM_FACTOR))
        return SeriesEvaluation(ev.value, ev.terms_used, ev.tail_estimate, ev.status, True, ev.detail)
    return sum_terms(_pfq_terms(num, den, z), tol)


def pfq_naive_term(spec: PFQSpec, z, n: int) -> complex:
    """The n-th term computed directly from Pochhammer symbols (no recurrence)."""
    t = as_complex(z) ** n / math.factorial(n)
    for a in spec.numerator:
        t *= pochhammer(a, n)
    for b in spec.denominator:
        t /= pochhammer(b, n)
    return t


def classify_fox_wright(spec: FoxWrightSpec, z) -> ConvergenceDiagnostics:
    z = as_complex(z)
    A = [w for _, w in spec.numerator]
    B = [w for _, w in spec.denominator]
    delta = sum(B) - sum(A)
    small = 1.0
    for w in A:
        small *= abs(w) ** (-w)
    for w in B:
        small *= abs(w) ** w
    mu = (sum((as_complex(b) for b, _ in spec.denominator), 0j)
          - sum((as_complex(a) for a, _ in spec.numerator), 0j)
          + (spec.p - spec.q) / 2)
    sigma = 1.0 - delta

    def verdict(c):
        return ConvergenceDiagnostics(c, delta_star=delta, delta_small_star=small, mu_star=mu, sigma_star=sigma)

    if delta > -1 + INT_TOL:
        return verdict(Classification.ENTIRE)
    if delta < -1 - INT_TOL:
        return verdict(Classification.UNSUPPORTED)
    r = abs(z)
    if r < small * (1 - _BOUNDARY_TOL):
        return verdict(Classification.UNIT_DISK)
    if r > small * (1 + _BOUNDARY_TOL):
        return verdict(Classification.UNSUPPORTED)
    if mu.real > 0.5:
        return verdict(Classification.BOUNDARY_ABS)
    return verdict(Classification.DIVERGENT)


def _fox_wright_terms(spec: FoxWrightSpec, z: complex, normalized: bool) -> Iterator[complex]:
    # log-space assembly: sum log Gamma(a + A n) - sum log Gamma(b + B n) + n log z - log n!
    log_z = cmath.log(z)
    base = 0j
    if normalized:
        base = (sum((log_gamma(a) for a, _ in spec.denominator), 0j)
                - sum((log_gamma(a) for a, _ in spec.numerator), 0j))
    n = 0
    while True:
        acc = base + n * log_z - math.lgamma(n + 1)
        zero = False
        for a, A in spec.numerator:
            arg = as_complex(a) + A * n
            if is_nonpositive_integer(arg):
                raise TermPole(n, f"numerator Gamma({arg}) is a pole at term {n}")
            acc += log_gamma(arg)
        for b, B in spec.denominator:
            arg = as_complex(b) + B * n
            if is_nonpositive_integer(arg):
                zero = True  # 1/Gamma vanishes
                break
            acc -= log_gamma(arg)
        yield 0j if zero else cmath.exp(acc)
        n += 1


def _fox_wright(spec: FoxWrightSpec, z, tol: ToleranceConfig, normalized: bool) -> SeriesEvaluation:
    z = as_complex(z)
    reduced = spec.cancelled()
    if normalized:
        for a, _ in reduced.numerator:
            if is_nonpositive_integer(a):
                raise SpecError(f"psi* needs Gamma({a}) finite")
        for b, _ in reduced.denominator:
            if is_nonpositive_integer(b):
                raise SpecError(f"psi* needs Gamma({b}) finite")
    if z == 0:
        if normalized:
            return SeriesEvaluation(1 + 0j, 1, 0.0, Status.CONVERGED)
        try:
            value = next(_fox_wright_terms(reduced, 1.0, False))
        except TermPole as exc:
            return SeriesEvaluation(0j, 0, math.inf, Status.TERM_POLE, detail=str(exc))
        return SeriesEvaluation(value, 1, 0.0, Status.CONVERGED)
    diag = classify_fox_wright(reduced, z)
    if not diag.summable:
        raise DomainError(f"Fox-Wright series not summable at z = {z} ({diag.classification})")
    terms = _fox_wright_terms(reduced, z, normalized)
    if diag.on_boundary:
        ev = sum_terms(terms, tol.scaled(_BOUNDARY_TERM_FACTOR))
        return SeriesEvaluation(ev.value, ev.terms_used, ev.tail_estimate, ev.status, True, ev.detail)
    return sum_terms(terms, tol)


def eval_fox_wright(spec: FoxWrightSpec, z, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """psi(z) = sum_n prod Gamma(a_i + A_i n) / prod Gamma(b_j + B_j n)  z^n / n!"""
    return _fox_wright(spec, z, tol, normalized=False)


def eval_fox_wright_normalized(spec: FoxWrightSpec, z,
                               tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """psi*(z) = psi(z) / (prod Gamma(a_i) / prod Gamma(b_j)), so psi*(0) = 1."""
    return _fox_wright(spec, z, tol, normalized=True)


def fox_wright_prefactor(spec: FoxWrightSpec) -> complex:
    """prod Gamma(a_i) / prod Gamma(b_j), the factor linking psi to psi*."""
    acc = (sum((log_gamma(a) for a, _ in spec.numerator), 0j)
           - sum((log_gamma(b) for b, _ in spec.denominator), 0j))
    return cmath.exp(acc)


def pochhammer_series_term(spec: FoxWrightSpec, z, n: int) -> complex:
    """n-th psi* term from Pochhammer symbols, independent of the log-space path."""
    t = as_complex(z) ** n / math.factorial(n)
    for a, A in spec.numerator:
        t *= pochhammer(a, A * n)
    for b, B in spec.denominator:
        t /= pochhammer(b, B * n)
    return t
