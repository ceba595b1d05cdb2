"""Hyper-cubic Mahler measures and the special functions behind them.

``J_n(z) = pi^-n int_{[0,pi]^n} ln(z + sum_j cos x_j) dx`` is evaluated by a
single Bessel integral, a log-weighted integral, direct cube quadrature and,
for ``n <= 3``, closed forms built on generalized hypergeometric series and
complete elliptic integrals.  :mod:`.verify` checks each catalogued identity
numerically.
"""

from .closedform import (
    hyp5f4,
    hyp5f4_continued,
    j1_closed,
    j2_closed,
    j3_closed,
    laplace_i0_cubed,
    laplace_i0_cubed_derived,
    r_quadruple,
)
from .errors import (
    BudgetExceeded,
    ContinuationUnresolved,
    Divergent,
    DomainError,
    MahlerError,
    NoCandidateMatches,
    NonFinite,
    TailNotIntegrable,
    UnknownIdentity,
)
from .mahler import (
    Evaluation,
    MahlerQuery,
    Route,
    evaluate,
    j_bessel,
    j_direct,
    j_log_form,
    mahler_measure,
)
from .quad import QuadResult, TailSpec, integrate_cube, integrate_finite, integrate_semiinfinite
from .specfun import (
    HypSeries,
    ToleranceConfig,
    bessel_i0,
    bessel_i0_scaled,
    bessel_i1,
    bessel_i1_scaled,
    catalan_constant,
    elliptic_k,
    euler_gamma,
    pfq,
)
from .verify import IdentityId, IdentityReport, Verdict, run_full_suite, verify_identity

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "ContinuationUnresolved", "Divergent", "DomainError", "Evaluation",
    "HypSeries", "IdentityId", "IdentityReport", "MahlerError", "MahlerQuery",
    "NoCandidateMatches", "NonFinite", "QuadResult", "Route", "TailNotIntegrable", "TailSpec",
    "ToleranceConfig", "UnknownIdentity", "Verdict", "bessel_i0", "bessel_i0_scaled",
    "bessel_i1", "bessel_i1_scaled", "catalan_constant", "elliptic_k", "euler_gamma",
    "evaluate", "hyp5f4", "hyp5f4_continued", "integrate_cube", "integrate_finite",
    "integrate_semiinfinite", "j1_closed", "j2_closed", "j3_closed", "j_bessel", "j_direct",
    "j_log_form", "laplace_i0_cubed", "laplace_i0_cubed_derived", "mahler_measure", "pfq",
    "r_quadruple", "run_full_suite", "verify_identity",
]
