"""Both sides of the six fifth-root sum theorems for psi, psi* and pFq.

The left side is the direct five-fold sum of the series at the rotated
arguments c (x alpha^k)^2, with weights 1 ("even") or alpha^k ("weighted").
The right side is a single series with transformed parameter lists at the
argument (c x^2 / 5^s)^5.  The left side is treated as ground truth.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError, QuintsectError, SpecError
from .hypergeom import (FoxWrightSpec, PFQSpec, classify_fox_wright, eval_fox_wright,
                        eval_fox_wright_normalized, eval_pfq)
from .numerics import ORDER, as_complex, fifth_root, log_gamma, pochhammer
from .series import SeriesEvaluation, ToleranceConfig, combine

# multisection shift for the weighted theorems: indices = 2 (mod 5)
WEIGHTED_OFFSET = 2
EVEN_EXTRA_DENOMINATORS = tuple(Fraction(i, ORDER) for i in range(1, ORDER))          # 1/5 .. 4/5
WEIGHTED_EXTRA_DENOMINATORS = (Fraction(3, 5), Fraction(4, 5), Fraction(6, 5), Fraction(7, 5))


class TheoremId(str, Enum):
    PSI_EVEN = "psi-even"
    PSI_WEIGHTED = "psi-weighted"
    PSISTAR_EVEN = "psistar-even"
    PSISTAR_WEIGHTED = "psistar-weighted"
    PFQ_EVEN = "pfq-even"
    PFQ_WEIGHTED = "pfq-weighted"

    def __str__(self) -> str:
        return self.value

    @property
    def weighted(self) -> bool:
        return self.value.endswith("weighted")

    @property
    def family(self) -> str:
        return self.value.split("-")[0]


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_EVALUABLE = "not-evaluable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TheoremInstance:
    theorem_id: TheoremId
    spec: PFQSpec | FoxWrightSpec
    c: complex
    x: complex

    def __post_init__(self):
        object.__setattr__(self, "theorem_id", TheoremId(self.theorem_id))
        want = PFQSpec if self.theorem_id.family == "pfq" else FoxWrightSpec
        if not isinstance(self.spec, want):
            raise SpecError(f"{self.theorem_id} needs a {want.__name__}")

    @property
    def base_argument(self) -> complex:
        return as_complex(self.c) * as_complex(self.x) ** 2

    def transformed_argument(self) -> complex:
        w = self.base_argument
        if self.theorem_id.family == "pfq":
            s = 1 + self.spec.q - self.spec.p
            return (w / ORDER**s) ** ORDER
        return (w / ORDER) ** ORDER


@dataclass(frozen=True)
class IdentityResidual:
    lhs: complex
    rhs: complex
    residual: float
    lhs_status: str
    rhs_status: str
    verdict: Verdict
    detail: str = ""

    @property
    def ratio(self) -> complex | None:
        if self.rhs == 0:
            return None
        return self.lhs / self.rhs


def residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs)))


def exact(v):
    """Fraction for real rational-representable values, else complex."""
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    z = complex(v)
    if z.imag == 0:
        return Fraction(z.real)
    return z


def _param(v):
    # checked Fraction stays exact; converted for evaluation by as_complex
    return v if isinstance(v, Fraction) else complex(v)


def _spread(a, shift: int) -> list:
    """(a + shift + j) / 5 for j = 0..4, exact when a is rational."""
    a = exact(a)
    return [_param((a + shift + j) / ORDER) for j in range(ORDER)]


def _check_denominators(values) -> None:
    for v in values:
        if isinstance(v, Fraction) and v.denominator == 1 and v <= 0:
            raise SpecError(f"constructed denominator parameter {v} is a nonpositive integer")


def transformed_pfq_spec(spec: PFQSpec, weighted: bool) -> PFQSpec:
    """The 5p-over-(5q+4) parameter lists of the decimated pFq series."""
    shift = WEIGHTED_OFFSET if weighted else 0
    num = [v for a in spec.numerator for v in _spread(a, shift)]
    extra = WEIGHTED_EXTRA_DENOMINATORS if weighted else EVEN_EXTRA_DENOMINATORS
    den = list(extra) + [v for b in spec.denominator for v in _spread(b, shift)]
    _check_denominators(den)
    return PFQSpec(tuple(num), tuple(den))


def transformed_fox_wright_spec(spec: FoxWrightSpec, weighted: bool) -> FoxWrightSpec:
    """Weights times 5, parameters shifted by 2 * weight for the weighted variant."""
    shift = WEIGHTED_OFFSET if weighted else 0
    num = [(_param(exact(a) + shift * exact(A)), ORDER * A) for a, A in spec.numerator]
    extra = WEIGHTED_EXTRA_DENOMINATORS if weighted else EVEN_EXTRA_DENOMINATORS
    den = [(e, 1.0) for e in extra]
    den += [(_param(exact(b) + shift * exact(B)), ORDER * B) for b, B in spec.denominator]
    _check_denominators(b for b, _ in den)
    return FoxWrightSpec(tuple(num), tuple(den))


def gamma_product(values) -> complex:
    return cmath.exp(sum(log_gamma(as_complex(v)) for v in values))


def _evaluator(theorem_id: TheoremId):
    return {
        "psi": eval_fox_wright,
        "psistar": eval_fox_wright_normalized,
        "pfq": eval_pfq,
    }[theorem_id.family]


def check_domain(inst: TheoremInstance) -> None:
    """Raise DomainError when either side of the theorem is outside its convergence region."""
    w = inst.base_argument
    spec = inst.spec
    if inst.theorem_id.family == "pfq":
        if spec.p > spec.q + 1:
            raise DomainError(f"theorem needs p <= q + 1, got p={spec.p}, q={spec.q}")
        if spec.p == spec.q + 1 and spec.terminating_degree() is None:
            if not abs(inst.transformed_argument()) < 1:
                raise DomainError("|(c x^2 / 5^(1+q-p))^5| must be < 1 when p = q + 1")
        return
    for k in range(ORDER):
        diag = classify_fox_wright(spec.cancelled(), w * fifth_root(2 * k))
        if not diag.summable:
            raise DomainError(f"left-side series not summable ({diag.classification})")
    rhs_spec = transformed_fox_wright_spec(spec, inst.theorem_id.weighted)
    diag = classify_fox_wright(rhs_spec.cancelled(), inst.transformed_argument())
    if not diag.summable:
        raise DomainError(f"right-side series not summable ({diag.classification})")


def theorem_lhs(inst: TheoremInstance, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """sum_k w_k F(c (x alpha^k)^2) with w_k = 1 or alpha^k."""
    evaluate = _evaluator(inst.theorem_id)
    x = as_complex(inst.x)
    c = as_complex(inst.c)
    parts = []
    for k in range(ORDER):
        xk = x * fifth_root(k)
        w = fifth_root(k) if inst.theorem_id.weighted else 1.0
        parts.append((w, evaluate(inst.spec, c * xk * xk, tol)))
    return combine(parts)


def rhs_prefactor(inst: TheoremInstance) -> complex:
    spec = inst.spec
    tid = inst.theorem_id
    if not tid.weighted:
        if tid is TheoremId.PSI_EVEN:
            return ORDER * gamma_product(EVEN_EXTRA_DENOMINATORS)
        return complex(ORDER)
    base = ORDER * inst.base_argument**2 / 2
    if tid is TheoremId.PFQ_WEIGHTED:
        for a in spec.numerator:
            base *= pochhammer(a, 2)
        for b in spec.denominator:
            base /= pochhammer(b, 2)
        return base
    if tid is TheoremId.PSI_WEIGHTED:
        return base * gamma_product(WEIGHTED_EXTRA_DENOMINATORS)
    for a, A in spec.numerator:
        base *= pochhammer(a, 2 * A)
    for b, B in spec.denominator:
        base /= pochhammer(b, 2 * B)
    return base


def transformed_spec(inst: TheoremInstance):
    if inst.theorem_id.family == "pfq":
        return transformed_pfq_spec(inst.spec, inst.theorem_id.weighted)
    return transformed_fox_wright_spec(inst.spec, inst.theorem_id.weighted)


def theorem_rhs(inst: TheoremInstance, tol: ToleranceConfig = ToleranceConfig()) -> SeriesEvaluation:
    """prefactor * F'(transformed argument) with F' on the transformed parameter lists."""
    spec = transformed_spec(inst)
    ev = _evaluator(inst.theorem_id)(spec, inst.transformed_argument(), tol)
    return ev.scaled(rhs_prefactor(inst))


def check_identity(inst: TheoremInstance, tol: ToleranceConfig = ToleranceConfig(),
                   identity_tol: float = 1e-9) -> IdentityResidual:
    try:
        check_domain(inst)
        lhs = theorem_lhs(inst, tol)
        rhs = theorem_rhs(inst, tol)
    except (QuintsectError, ZeroDivisionError, OverflowError) as exc:
        return IdentityResidual(math.nan, math.nan, math.inf, "not-evaluated", "not-evaluated",
                                Verdict.NOT_EVALUABLE, str(exc))
    return judge(lhs, rhs, identity_tol)


def judge(lhs: SeriesEvaluation, rhs: SeriesEvaluation, identity_tol: float, detail: str = "") -> IdentityResidual:
    res = residual(lhs.value, rhs.value)
    if not (lhs.converged and rhs.converged):
        verdict = Verdict.NOT_EVALUABLE
        side, ev = ("left", lhs) if not lhs.converged else ("right", rhs)
        detail = detail or f"{side} side {ev.status}" + (f": {ev.detail}" if ev.detail else "")
    elif res <= identity_tol:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    return IdentityResidual(lhs.value, rhs.value, res, str(lhs.status), str(rhs.status), verdict, detail)

