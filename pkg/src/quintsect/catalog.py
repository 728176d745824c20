"""Catalog of fifth-root sum identities for elementary and special functions.

Each case is one printed equation: a left side that sums an oracle at the
five rotated arguments with printed alpha-power weights, and a right side
that is a printed prefactor times a printed pFq.  Parameter lists are kept
exactly as printed, typos included; measurement decides each case's status.

Cases can be dumped to / loaded from a JSON-lines file, one record per case
with the fixed field order of ``RECORD_FIELDS``.  Loading only overrides
parameters, sample points and domain radius; the equations themselves live
in code.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction as Fr
from typing import Callable, Iterable

from .errors import QuintsectError
from .hypergeom import PFQSpec, eval_pfq
from .identities import IdentityResidual, Verdict, judge
from .numerics import ORDER, alpha_power, fifth_root, pochhammer, principal_power
from .series import SeriesEvaluation, Status, ToleranceConfig
from .special import SQRT_PI, eval_oracle

RECORD_FIELDS = ("case_id", "label", "function", "params", "domain_radius", "sample_points", "status")
SAMPLE_FRACTIONS = (0.2, 0.45, 0.7)
DEFAULT_IDENTITY_TOL = 1e-9


class CaseStatus(str, Enum):
    VERIFIED = "verified"
    DISCREPANT = "discrepant"
    UNVERIFIED = "unverified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ApplicationCase:
    """One printed identity.

    ``weights(params)`` returns the five alpha exponents of the left side;
    ``squared_argument`` selects f((x alpha^k)^2) instead of f(x alpha^k).
    ``rhs(x, params)`` returns (prefactor, spec, argument).
    """

    case_id: str
    label: str
    function: str
    weights: Callable[[dict], tuple]
    rhs: Callable[[complex, dict], tuple[complex, PFQSpec, complex]]
    domain_radius: float
    entire: bool = False
    squared_argument: bool = False
    params: dict = field(default_factory=dict)
    sample_points: tuple = ()
    status: CaseStatus = CaseStatus.UNVERIFIED
    notes: str = ""

    def points(self) -> tuple:
        if self.sample_points:
            return self.sample_points
        return tuple(round(f * self.domain_radius, 12) for f in SAMPLE_FRACTIONS)

    def in_domain(self, x: complex) -> bool:
        return self.entire or abs(x) < self.domain_radius

    def record(self) -> dict:
        return {
            "case_id": self.case_id,
            "label": self.label,
            "function": self.function,
            "params": dict(self.params),
            "domain_radius": self.domain_radius,
            "sample_points": list(self.points()),
            "status": str(self.status),
        }


def _spec(num, den) -> PFQSpec:
    return PFQSpec(tuple(num), tuple(den))


def _tenths(*nums) -> list:
    return [Fr(n, 10) for n in nums]


def _fifths(*nums) -> list:
    return [Fr(n, 5) for n in nums]


_CONST = lambda *e: (lambda p: e)  # noqa: E731
_UNWEIGHTED = _CONST(0, 0, 0, 0, 0)
_ROOT_WEIGHTED = _CONST(0, 1, 2, 3, 4)
_REVERSED = _CONST(4, 3, 2, 1, 0)
_DOUBLED = _CONST(8, 6, 4, 2, 0)

# arguments of the decimated series
_TRIG_ARG = lambda x: -(x / 10) ** 10  # noqa: E731
_ERF_ARG = lambda x: -((x * x / 5) ** 5)  # noqa: E731
_DISK_ARG = lambda x: x**10  # noqa: E731

_SIN_EVEN = _spec([], _fifths(1, 2, 3, 4) + _tenths(3, 5, 7, 9, 11))
_SIN_WEIGHTED = _spec([], _fifths(3, 4, 6, 7) + _tenths(7, 9, 11, 13, 15))
_COS_EVEN = _spec([], _fifths(1, 2, 3, 4) + _tenths(1, 3, 5, 7, 9))
_COS_WEIGHTED = _spec([], _fifths(3, 4, 6, 7) + _tenths(5, 7, 9, 11, 13))
_ATAN_EVEN = _spec([1, Fr(1, 10)], [Fr(11, 10)])
_ATAN_WEIGHTED = _spec([1, Fr(1, 2)], [Fr(3, 2)])
_E_EVEN = _spec(_tenths(-1, 1, 1, 3, 3, 5, 5, 7, 7, 9), _fifths(1, 1, 2, 2, 3, 3, 4, 4) + [1])
_E_WEIGHTED = _spec(_tenths(3, 5, 15, 7, 7, 9, 9, 11, 11, 13), _fifths(3, 3, 4, 4, 6, 6, 7, 7) + [1])
_ERF_EVEN = _spec([Fr(1, 10)], [Fr(11, 10)] + _fifths(1, 2, 3, 4))
_ERF_WEIGHTED = _spec([Fr(1, 2)], [Fr(3, 2)] + _fifths(3, 4, 6, 7))
_ASIN2_EVEN = _spec(_fifths(1, 1, 2, 3, 4) + [1, 1], [Fr(6, 5)] + _tenths(3, 5, 7, 9, 11))
_ASIN2_WEIGHTED = _spec(_fifths(3, 3, 4, 6, 7) + [1, 1], [Fr(8, 5)] + _tenths(7, 9, 11, 13) + [Fr(3, 2)])
_K_EVEN = _spec(_tenths(1, 1, 3, 3, 5, 5, 7, 7, 9, 9), _fifths(1, 1, 2, 2, 3, 3, 4, 4) + [1])
_K_WEIGHTED = _spec(_tenths(5, 5, 7, 7, 9, 9, 11, 11, 13, 13), _fifths(3, 3, 4, 4, 6, 6, 7, 7) + [1])
_LI2_EVEN = _spec([Fr(1, 5), Fr(1, 5), 1], [Fr(6, 5), Fr(6, 5)])
_LI2_WEIGHTED = _spec([Fr(3, 5), Fr(3, 5), 1], [Fr(8, 5), Fr(8, 5)])


def _incgamma_even(x, p):
    a = p["a"]
    pre = ORDER * principal_power(x, 2 * a) * alpha_power(8 * a) / a
    return pre, _spec([a / 5], [(a + 5) / 5] + _fifths(1, 2, 3, 4)), _ERF_ARG(x)


def _incgamma_weighted(x, p):
    a = p["a"]
    pre = ORDER * principal_power(x, 2 * a + 4) * alpha_power(8 * a) / (2 * (a + 2))
    return pre, _spec([(a + 2) / 5], [(a + 7) / 5] + _fifths(3, 4, 6, 7)), _ERF_ARG(x)


def _conformal_even(x, p):
    g = p["gamma"]
    num = [(g + j) / 5 for j in range(5)] + [(2 * g - 1 + 2 * j) / 10 for j in range(5)]
    den = _fifths(1, 2, 3, 4) + [(2 * g + j) / 5 for j in range(5)]
    return ORDER, _spec(num, den), _DISK_ARG(x)


def _conformal_weighted(x, p):
    g = p["gamma"]
    pre = ORDER * pochhammer(g, 2) * pochhammer(g - 0.5, 2) * x**4 / (2 * pochhammer(2 * g, 2))
    num = [(g + 2 + j) / 5 for j in range(5)] + [(2 * g + 3 + 2 * j) / 10 for j in range(5)]
    den = _fifths(3, 4, 6, 7) + [(2 * g + 2 + j) / 5 for j in range(5)]
    return pre, _spec(num, den), _DISK_ARG(x)


_A4 = fifth_root(4)
_A8 = fifth_root(8)


def _builtin_cases() -> list[ApplicationCase]:
    trig = dict(domain_radius=2.0, entire=True)
    disk = dict(domain_radius=1.0)
    return [
        ApplicationCase("eq4.1a-sin", "(4.1)", "sin", _REVERSED,
                        lambda x, p: (ORDER * x * _A4, _SIN_EVEN, _TRIG_ARG(x)), **trig),
        ApplicationCase("eq4.2-sin", "(4.2)", "sin", _UNWEIGHTED,
                        lambda x, p: (x**5 / 24, _SIN_WEIGHTED, _TRIG_ARG(x)), **trig),
        ApplicationCase("eq4.1b-cos", "(4.1)", "cos", _UNWEIGHTED,
                        lambda x, p: (ORDER, _COS_EVEN, _TRIG_ARG(x)), **trig),
        ApplicationCase("eq4.2b-cos", "(4.2)", "cos", _ROOT_WEIGHTED,
                        lambda x, p: (5 * x**4 / 24, _COS_WEIGHTED, _TRIG_ARG(x)), **trig,
                        notes="last two printed terms read cos(x alpha^3), cos(x alpha^4); the print drops x"),
        ApplicationCase("eq4.5-arctan", "(4.5)", "arctan", _REVERSED,
                        lambda x, p: (ORDER * x * _A4, _ATAN_EVEN, -(x**10)), **disk),
        ApplicationCase("eq4.6-arctan", "(4.6)", "arctan", _UNWEIGHTED,
                        lambda x, p: (x**5, _ATAN_WEIGHTED, -(x**10)), **disk),
        ApplicationCase("eq4.7-E", "(4.7)", "E", _UNWEIGHTED,
                        lambda x, p: (5 * math.pi / 2, _E_EVEN, _DISK_ARG(x)), **disk),
        ApplicationCase("eq4.8-E", "(4.8)", "E", _ROOT_WEIGHTED,
                        lambda x, p: (-15 * x**4 * math.pi / 128, _E_WEIGHTED, _DISK_ARG(x)), **disk,
                        notes="numerator list encoded as printed, including 15/10"),
        ApplicationCase("eq4.9-erf", "(4.9)", "erf", _REVERSED,
                        lambda x, p: (10 * x * _A4 / SQRT_PI, _ERF_EVEN, _ERF_ARG(x)), **trig),
        ApplicationCase("eq4.10-erf", "(4.10)", "erf", _UNWEIGHTED,
                        lambda x, p: (x**5 / SQRT_PI, _ERF_WEIGHTED, _ERF_ARG(x)), **trig),
        ApplicationCase("eq4.11-arcsin2", "(4.11)", "arcsin-squared", _DOUBLED,
                        lambda x, p: (ORDER * x**2 * _A8, _ASIN2_EVEN, _DISK_ARG(x)), **disk),
        ApplicationCase("eq4.12-arcsin2", "(4.12)", "arcsin-squared", _REVERSED,
                        lambda x, p: (8 * x**6 * _A4 / 9, _ASIN2_WEIGHTED, _DISK_ARG(x)), **disk),
        ApplicationCase("eq4.13-K", "(4.13)", "K", _UNWEIGHTED,
                        lambda x, p: (5 * math.pi / 2, _K_EVEN, _DISK_ARG(x)), **disk),
        ApplicationCase("eq4.14-K", "(4.14)", "K", _ROOT_WEIGHTED,
                        lambda x, p: (45 * x**4 * math.pi / 128, _K_WEIGHTED, _DISK_ARG(x)), **disk),
        ApplicationCase("eq4.15-dilog", "(4.15)", "dilog", _DOUBLED,
                        lambda x, p: (ORDER * x**2 * _A8, _LI2_EVEN, _DISK_ARG(x)),
                        squared_argument=True, **disk),
        ApplicationCase("eq4.16-dilog", "(4.16)", "dilog", _REVERSED,
                        lambda x, p: (5 * x**6 * _A4 / 9, _LI2_WEIGHTED, _DISK_ARG(x)),
                        squared_argument=True, **disk),
        ApplicationCase("eq4.17-incgamma", "(4.17)", "lower-incomplete-gamma",
                        lambda p: (8 * p["a"], 6 * p["a"], 4 * p["a"], 2 * p["a"], 0),
                        _incgamma_even, squared_argument=True, params={"a": 0.5}, **trig,
                        notes="holds on the branch (x alpha^k)^(2a) = x^(2a) alpha^(2ak); "
                              "principal powers agree only for integer a"),
        ApplicationCase("eq4.18-incgamma", "(4.18)", "lower-incomplete-gamma",
                        lambda p: (8 * p["a"], 6 * p["a"] + 1, 4 * p["a"] + 2, 2 * p["a"] + 3, 4),
                        _incgamma_weighted, squared_argument=True, params={"a": 0.5}, **trig,
                        notes="weights encoded as printed; same branch caveat as eq4.17-incgamma"),
        ApplicationCase("eq4.19-conformal", "(4.17)", "conformal-power", _UNWEIGHTED,
                        _conformal_even, params={"gamma": 1.0}, **disk),
        ApplicationCase("eq4.20-conformal", "(4.17)", "conformal-power", _ROOT_WEIGHTED,
                        _conformal_weighted, params={"gamma": 1.0}, **disk),
    ]


CASES: dict[str, ApplicationCase] = {c.case_id: c for c in _builtin_cases()}


def get_case(case_id: str) -> ApplicationCase:
    try:
        return CASES[case_id]
    except KeyError:
        raise KeyError(f"unknown case {case_id!r}") from None


def _merge_params(case: ApplicationCase, params: dict | None) -> dict:
    merged = dict(case.params)
    if params:
        unknown = set(params) - set(case.params)
        if unknown:
            raise ValueError(f"{case.case_id} takes no parameter(s) {sorted(unknown)}")
        merged.update(params)
    return merged


def case_lhs(case: ApplicationCase, x: complex, params: dict | None = None) -> complex:
    """sum_k alpha^{w_k} f(x alpha^k) (or f((x alpha^k)^2)) from the independent oracle."""
    p = _merge_params(case, params)
    fn_params = p or None
    total = 0j
    for k, e in enumerate(case.weights(p)):
        arg = x * fifth_root(k)
        if case.squared_argument:
            arg = arg * arg
        total += alpha_power(e) * eval_oracle(case.function, arg, fn_params)
    return total


def case_rhs(case: ApplicationCase, x: complex, tol: ToleranceConfig,
             params: dict | None = None) -> SeriesEvaluation:
    pre, spec, arg = case.rhs(x, _merge_params(case, params))
    return eval_pfq(spec, arg, tol).scaled(pre)


def verify_case(case_id: str, x, tol: ToleranceConfig = ToleranceConfig(),
                identity_tol: float = DEFAULT_IDENTITY_TOL, params: dict | None = None) -> IdentityResidual:
    return check_case(get_case(case_id), x, tol, identity_tol, params)


def check_case(case: ApplicationCase, x, tol: ToleranceConfig = ToleranceConfig(),
               identity_tol: float = DEFAULT_IDENTITY_TOL, params: dict | None = None) -> IdentityResidual:
    """Oracle left side against the printed right side at one point."""
    x = complex(x)
    if not case.in_domain(x):
        return IdentityResidual(math.nan, math.nan, math.inf, "not-evaluated", "not-evaluated",
                                Verdict.NOT_EVALUABLE,
                                f"|x| = {abs(x)} outside the case domain |x| < {case.domain_radius}")
    try:
        lhs = case_lhs(case, x, params)
        rhs = case_rhs(case, x, tol, params)
    except (QuintsectError, ZeroDivisionError, OverflowError) as exc:
        return IdentityResidual(math.nan, math.nan, math.inf, "not-evaluated", "not-evaluated",
                                Verdict.NOT_EVALUABLE, str(exc))
    oracle = SeriesEvaluation(lhs, 0, 0.0, Status.CONVERGED)
    return judge(oracle, rhs, identity_tol)


@dataclass
class CaseReport:
    case: ApplicationCase
    points: tuple
    results: list[IdentityResidual]
    status: CaseStatus

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.results), default=0.0)

    def ratios(self) -> list[complex | None]:
        return [r.ratio for r in self.results]


def _status(results: list[IdentityResidual]) -> CaseStatus:
    verdicts = {r.verdict for r in results}
    if Verdict.NOT_EVALUABLE in verdicts:
        return CaseStatus.UNVERIFIED
    if Verdict.FAIL in verdicts:
        return CaseStatus.DISCREPANT
    return CaseStatus.VERIFIED


def verify_all(points: dict[str, Iterable] | None = None, identity_tol: float = DEFAULT_IDENTITY_TOL,
               tol: ToleranceConfig = ToleranceConfig(),
               cases: Iterable[ApplicationCase] | None = None) -> list[CaseReport]:
    """Run every case at its sample points; rows come back sorted by case_id."""
    points = points or {}
    reports = []
    for case in sorted(cases if cases is not None else CASES.values(), key=lambda c: c.case_id):
        xs = tuple(points.get(case.case_id, case.points()))
        results = [check_case(case, x, tol, identity_tol) for x in xs]
        reports.append(CaseReport(case, xs, results, _status(results)))
    return reports


# ---------------------------------------------------------------- file format

def dump_catalog(path, cases: Iterable[ApplicationCase] | None = None) -> None:
    cases = sorted(cases if cases is not None else CASES.values(), key=lambda c: c.case_id)
    with open(path, "w", encoding="utf-8") as fh:
        for case in cases:
            rec = case.record()
            fh.write(json.dumps({k: rec[k] for k in RECORD_FIELDS}) + "\n")


def load_catalog(path) -> list[ApplicationCase]:
    cases = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            missing = set(RECORD_FIELDS) - set(rec)
            if missing:
                raise ValueError(f"{path}:{lineno}: missing field(s) {sorted(missing)}")
            base = get_case(rec["case_id"])
            if rec["label"] != base.label or rec["function"] != base.function:
                raise ValueError(f"{path}:{lineno}: record does not match built-in case {base.case_id}")
            cases.append(replace(
                base,
                params=_merge_params(base, rec["params"]),
                domain_radius=float(rec["domain_radius"]),
                sample_points=tuple(float(v) for v in rec["sample_points"]),
                status=CaseStatus(rec["status"]),
            ))
    return cases
