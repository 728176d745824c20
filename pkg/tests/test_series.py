import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintsect.numerics import fifth_root
from quintsect.series import (MAX_TERMS_ENV, BoundedSequence, MultisectionArgs, SeriesEvaluation, Status,
                              TermPole, ToleranceConfig, combine, sum_power_series, sum_terms,
                              theorem21_lhs, theorem21_rhs, theorem22_lhs, theorem22_rhs)

ONE = BoundedSequence.constant(1.0)

# sum_k exp(0.25 alpha^{2k}) = 5 sum_r 0.25^{5r}/(5r)!, mpmath at 30 digits
EVEN_EXP_HALF = 5.0000406901054807
# 5 sum_r 0.25^{5r+2}/(5r+2)!
WEIGHTED_EXP_HALF = 0.15625006055075087


def rel(a, b):
    return abs(a - b) / (1 + max(abs(a), abs(b)))


def test_tolerance_config_validation():
    ToleranceConfig()
    with pytest.raises(ValueError):
        ToleranceConfig(rel_tol=0)
    with pytest.raises(ValueError):
        ToleranceConfig(consecutive_small=0)
    with pytest.raises(ValueError):
        ToleranceConfig(max_terms=9)


def test_tolerance_from_env(monkeypatch):
    monkeypatch.setenv(MAX_TERMS_ENV, "123")
    assert ToleranceConfig.from_env().max_terms == 123
    assert ToleranceConfig.from_env(max_terms=77).max_terms == 77
    monkeypatch.delenv(MAX_TERMS_ENV)
    assert ToleranceConfig.from_env().max_terms == 10000


def test_sum_power_series_examples():
    ev = sum_power_series(ONE, MultisectionArgs(1, 0))
    assert ev.value == 1 and ev.status is Status.CONVERGED
    ev = sum_power_series(ONE, MultisectionArgs(1, 1))
    assert abs(ev.value - math.e) < 1e-15
    ev = sum_power_series(BoundedSequence(lambda r: math.gamma(r + 1) if r < 170 else math.inf, bound=math.inf),
                          MultisectionArgs(1, 2))
    assert ev.status is Status.DIVERGING


def test_converged_tail_invariant():
    rng = random.Random(5)
    for _ in range(50):
        tol = ToleranceConfig(rel_tol=10 ** rng.uniform(-15, -6), consecutive_small=rng.randint(1, 5))
        w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        ev = sum_power_series(ONE, MultisectionArgs(1, cmath.sqrt(w)), tol)
        assert ev.converged
        assert ev.tail_estimate <= tol.rel_tol * (1 + abs(ev.value))


def test_max_terms_status():
    ev = sum_terms((1 / (n + 1) ** 1.01 for n in range(10**9)), ToleranceConfig(max_terms=50))
    assert ev.status is Status.MAX_TERMS and ev.terms_used == 50


def test_term_pole_status():
    def terms():
        yield 1.0
        yield 0.5
        raise TermPole(2)

    ev = sum_terms(terms(), ToleranceConfig())
    assert ev.status is Status.TERM_POLE and "2" in ev.detail


def test_non_finite_term_is_diverging():
    ev = sum_terms(iter([1.0, math.inf]), ToleranceConfig())
    assert ev.status is Status.DIVERGING


def test_slowly_peaking_series_is_not_flagged():
    # terms of exp(60) grow for 60 indices with a shrinking ratio, then decay
    ev = sum_power_series(ONE, MultisectionArgs(1, math.sqrt(60)))
    assert ev.converged
    assert abs(ev.value - math.exp(60)) <= 1e-13 * math.exp(60)


def test_truncation_soundness():
    rng = random.Random(9)
    for _ in range(20):
        args = MultisectionArgs(rng.choice([1, -1, 0.25j]), rng.uniform(0.1, 2.0))
        phi = BoundedSequence(lambda r, s=rng.random(): math.cos(s * r))
        tol = ToleranceConfig()
        a = sum_power_series(phi, args, tol)
        b = sum_power_series(phi, args, ToleranceConfig(max_terms=2 * tol.max_terms))
        assert abs(a.value - b.value) <= tol.rel_tol * (1 + abs(a.value))


def test_combine_first_failure_poisons():
    good = SeriesEvaluation(1.0, 3, 0.0, Status.CONVERGED)
    bad = SeriesEvaluation(2.0, 9, 1.0, Status.MAX_TERMS)
    pole = SeriesEvaluation(0.0, 1, math.inf, Status.TERM_POLE)
    ev = combine([(1, good), (1j, bad), (1, pole)])
    assert ev.status is Status.MAX_TERMS
    assert ev.value == 1 + 2j
    assert "constituent 1" in ev.detail


@pytest.mark.parametrize("lhs, rhs", [(theorem21_lhs, theorem21_rhs), (theorem22_lhs, theorem22_rhs)])
def test_multisection_at_zero(lhs, rhs):
    phi = BoundedSequence(lambda r: 0.5 + r)
    args = MultisectionArgs(1, 0)
    expected = 2.5 if lhs is theorem21_lhs else 0
    assert abs(lhs(phi, args).value - expected) < 1e-15
    assert abs(rhs(phi, args).value - expected) < 1e-15


def test_even_multisection_exponential_anchor():
    args = MultisectionArgs(1, 0.5)
    lhs = theorem21_lhs(ONE, args)
    oracle = sum(cmath.exp(0.25 * fifth_root(2 * k)) for k in range(5))
    assert abs(lhs.value - oracle) < 1e-14
    assert abs(lhs.value - EVEN_EXP_HALF) < 1e-14
    assert abs(theorem21_rhs(ONE, args).value - EVEN_EXP_HALF) < 1e-14


def test_weighted_multisection_exponential_anchor():
    args = MultisectionArgs(1, 0.5)
    rhs = theorem22_rhs(ONE, args)
    assert abs(rhs.value - WEIGHTED_EXP_HALF) < 1e-15
    assert abs(rhs.value - 0.15625) < 1e-7
    assert rel(theorem22_lhs(ONE, args).value, rhs.value) < 1e-12


@pytest.mark.parametrize("phi, c, x, lhs, rhs, tol", [
    (lambda r: 1 / (r + 1), 1, 0.3, theorem21_lhs, theorem21_rhs, 1e-12),
    (lambda r: 1 / (1 + r * r), -1, 0.4, theorem22_lhs, theorem22_rhs, 1e-10),
])
def test_multisection_examples(phi, c, x, lhs, rhs, tol):
    args = MultisectionArgs(c, x)
    seq = BoundedSequence(phi)
    assert rel(lhs(seq, args).value, rhs(seq, args).value) <= tol


def test_decimation_trace():
    args = MultisectionArgs(1, 0.8)
    seq = BoundedSequence(lambda r: 1.0, record=True)
    theorem21_rhs(seq, args)
    assert seq.queried and all(r % 5 == 0 for r in seq.queried)
    seq = BoundedSequence(lambda r: 1.0, record=True)
    theorem22_rhs(seq, args)
    assert seq.queried and all(r % 5 == 2 for r in seq.queried)


def test_bounded_sequence_respects_bound():
    rng = random.Random(1)
    thetas = [rng.uniform(0, 2 * math.pi) for _ in range(201)]
    seq = BoundedSequence(lambda r: cmath.exp(1j * thetas[r]), bound=1.0)
    assert all(abs(seq(r)) <= seq.bound + 1e-15 for r in range(201))


def test_multisection_args_must_be_finite():
    with pytest.raises(ValueError):
        MultisectionArgs(math.inf, 1)
    with pytest.raises(ValueError):
        MultisectionArgs(1, complex(0, math.nan))


def _random_phase_sequence(seed):
    rng = random.Random(seed)
    cache = {}

    def phi(r):
        if r not in cache:
            cache[r] = cmath.exp(1j * random.Random(seed * 100003 + r).uniform(0, 2 * math.pi))
        return cache[r]

    return BoundedSequence(phi, bound=1.0), rng


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, -1, 0.25, -0.25, 1j]),
       st.floats(0.0, 0.9), st.floats(0, 2 * math.pi))
def test_multisection_equivalence_property(seed, c, r, theta):
    seq, _ = _random_phase_sequence(seed)
    args = MultisectionArgs(c, cmath.rect(r, theta))
    for lhs, rhs in ((theorem21_lhs, theorem21_rhs), (theorem22_lhs, theorem22_rhs)):
        a, b = lhs(seq, args), rhs(seq, args)
        assert a.converged and b.converged
        assert abs(a.value - b.value) <= 1e-10 * (1 + abs(a.value))
