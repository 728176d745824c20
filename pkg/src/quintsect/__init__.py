"""Fifth-root-of-unity sums of pFq, Fox-Wright psi and psi* series."""
from .errors import DomainError, PoleError, QuintsectError, SpecError, UndefinedQuotientError
from .hypergeom import (Classification, ConvergenceDiagnostics, FoxWrightSpec, PFQSpec, classify_fox_wright,
                        classify_pfq, eval_fox_wright, eval_fox_wright_normalized, eval_pfq)
from .identities import IdentityResidual, TheoremId, TheoremInstance, Verdict, check_identity
from .numerics import alpha_power, gamma, log_gamma, pochhammer, rgamma
from .series import (BoundedSequence, MultisectionArgs, SeriesEvaluation, Status, ToleranceConfig,
                     theorem21_lhs, theorem21_rhs, theorem22_lhs, theorem22_rhs)
from .special import eval_by_representation, eval_oracle

__version__ = "0.1.0"
