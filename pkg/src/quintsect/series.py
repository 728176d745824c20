"""Truncated summation of power series and the two fifth-root multisection theorems.

The summation driver is shared by every evaluator in the package: it pulls
terms from an iterator, stops once ``consecutive_small`` successive terms are
negligible, and reports why it stopped instead of raising.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Iterator

from .errors import PoleError
from .numerics import ORDER, as_complex, fifth_root

MAX_TERMS_ENV = "QUINTSECT_MAX_TERMS"

# divergence heuristic
_GROWTH_START = 50
_GROWTH_RUN = 20


class Status(str, Enum):
    CONVERGED = "converged"
    MAX_TERMS = "max-terms-exceeded"
    TERM_POLE = "term-pole"
    DIVERGING = "diverging"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ToleranceConfig:
    rel_tol: float = 1e-14
    consecutive_small: int = 3
    max_terms: int = 10000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be >= 1")
        if self.max_terms < 10:
            raise ValueError("max_terms must be >= 10")

    @classmethod
    def from_env(cls, **overrides) -> "ToleranceConfig":
        env = os.environ.get(MAX_TERMS_ENV)
        if env is not None and "max_terms" not in overrides:
            overrides["max_terms"] = int(env)
        return cls(**overrides)

    def scaled(self, factor: int) -> "ToleranceConfig":
        return replace(self, max_terms=self.max_terms * factor)


@dataclass(frozen=True)
class SeriesEvaluation:
    value: complex
    terms_used: int
    tail_estimate: float
    status: Status
    low_confidence: bool = False
    detail: str = ""

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def scaled(self, factor: complex) -> "SeriesEvaluation":
        return replace(self, value=self.value * factor, tail_estimate=self.tail_estimate * abs(factor))


class TermPole(PoleError):
    """Raised by a term generator when term ``index`` sits on a pole."""

    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"term {index} is a pole")
        self.index = index


def sum_terms(terms: Iterable[complex], tol: ToleranceConfig) -> SeriesEvaluation:
    """Sum ``terms`` until ``tol.consecutive_small`` successive terms are negligible.

    A term counts as negligible when
    ``|t| <= rel_tol * (1 + |partial|) / consecutive_small``; the tail estimate
    is ``|last term| * consecutive_small``, so a converged result always has
    ``tail_estimate <= rel_tol * (1 + |value|)``.
    """
    cs = tol.consecutive_small
    total = 0j
    small_run = 0
    growth_run = 0
    growth_ratio0 = None
    prev_mag = None
    n = 0
    last_mag = 0.0
    it: Iterator[complex] = iter(terms)
    while n < tol.max_terms:
        try:
            t = next(it)
        except StopIteration:
            return SeriesEvaluation(total, n, 0.0, Status.CONVERGED)
        except TermPole as exc:
            return SeriesEvaluation(total, n, math.inf, Status.TERM_POLE, detail=f"pole at term index {exc.index}")
        t = complex(t)
        mag = abs(t)
        if not math.isfinite(mag):
            return SeriesEvaluation(total, n, math.inf, Status.DIVERGING, detail=f"non-finite term at index {n}")
        total += t
        n += 1
        last_mag = mag
        if mag <= tol.rel_tol * (1.0 + abs(total)) / cs:
            small_run += 1
            if small_run >= cs:
                return SeriesEvaluation(total, n, last_mag * cs, Status.CONVERGED)
        else:
            small_run = 0
        # growth that is not slowing down past the warm-up window
        if prev_mag is not None and n > _GROWTH_START and mag > prev_mag > 0:
            ratio = mag / prev_mag
            if growth_run == 0:
                growth_ratio0 = ratio
            growth_run += 1
            if growth_run >= _GROWTH_RUN and ratio >= growth_ratio0 * (1.0 - 1e-3):
                return SeriesEvaluation(total, n, mag, Status.DIVERGING,
                                        detail=f"terms grew for {growth_run} consecutive indices")
        else:
            growth_run = 0
        prev_mag = mag
    return SeriesEvaluation(total, n, last_mag * cs, Status.MAX_TERMS)


def combine(parts: Iterable[tuple[complex, SeriesEvaluation]]) -> SeriesEvaluation:
    """Weighted sum of independent evaluations, in the given order.

    The first non-converged part decides the status of the result.
    """
    value = 0j
    terms = 0
    tail = 0.0
    status = Status.CONVERGED
    low = False
    detail = ""
    for k, (w, ev) in enumerate(parts):
        value += w * ev.value
        terms += ev.terms_used
        tail += abs(w) * ev.tail_estimate
        low = low or ev.low_confidence
        if status is Status.CONVERGED and not ev.converged:
            status = ev.status
            detail = f"constituent {k}: {ev.detail or ev.status}"
    return SeriesEvaluation(value, terms, tail, status, low, detail)


@dataclass
class BoundedSequence:
    """phi: r -> complex with a declared bound |phi(r)| <= bound.

    Every queried index is appended to ``queried`` when ``record`` is set,
    which lets tests confirm which indices a decimated sum touches.
    """

    fn: Callable[[int], complex]
    bound: float = 1.0
    record: bool = False
    queried: list[int] = field(default_factory=list)

    def __call__(self, r: int) -> complex:
        if self.record:
            self.queried.append(r)
        return complex(self.fn(r))

    @classmethod
    def constant(cls, value: complex = 1.0) -> "BoundedSequence":
        return cls(lambda r: value, bound=abs(value))


@dataclass(frozen=True)
class MultisectionArgs:
    c: complex
    x: complex

    def __post_init__(self):
        for v in (self.c, self.x):
            v = as_complex(v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("multisection arguments must be finite")


def _power_terms(phi: Callable[[int], complex], w: complex) -> Iterator[complex]:
    # phi(r) * w^r / r!, weight carried by the ratio recurrence
    weight = 1 + 0j
    r = 0
    while True:
        yield phi(r) * weight
        r += 1
        weight *= w / r
        if weight == 0 and w == 0:
            # only r = 0 survives
            return


def sum_power_series(phi: Callable[[int], complex], args: MultisectionArgs,
                     tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """sum_r phi(r) c^r x^{2r} / r!"""
    c, x = as_complex(args.c), as_complex(args.x)
    return sum_terms(_power_terms(phi, c * x * x), tol)


def _rotated(args: MultisectionArgs, k: int) -> MultisectionArgs:
    return MultisectionArgs(args.c, as_complex(args.x) * fifth_root(k))


def theorem21_lhs(phi, args: MultisectionArgs, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """Plain sum of the series at the five rotated points x * alpha^k."""
    return combine((1.0, sum_power_series(phi, _rotated(args, k), tol)) for k in range(ORDER))


def theorem22_lhs(phi, args: MultisectionArgs, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """Sum of the series at x * alpha^k weighted by alpha^k."""
    return combine((fifth_root(k), sum_power_series(phi, _rotated(args, k), tol)) for k in range(ORDER))


def _decimated_terms(phi, w: complex, offset: int) -> Iterator[complex]:
    # phi(5r + offset) w^{5r + offset} / (5r + offset)!, weight in log space
    if w == 0:
        yield phi(offset) if offset == 0 else 0j
        return
    log_w = cmath.log(w)
    r = 0
    while True:
        m = ORDER * r + offset
        yield phi(m) * cmath.exp(m * log_w - math.lgamma(m + 1))
        r += 1


def theorem21_rhs(phi, args: MultisectionArgs, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """5 sum_r phi(5r) c^{5r} x^{10r} / (5r)!"""
    c, x = as_complex(args.c), as_complex(args.x)
    return sum_terms(_decimated_terms(phi, c * x * x, 0), tol).scaled(ORDER)


def theorem22_rhs(phi, args: MultisectionArgs, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """5 sum_r phi(5r+2) c^{5r+2} x^{10r+4} / (5r+2)!"""
    c, x = as_complex(args.c), as_complex(args.x)
    return sum_terms(_decimated_terms(phi, c * x * x, 2), tol).scaled(ORDER)
