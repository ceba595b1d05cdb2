"""Scalar special functions used by every evaluation route.

Modified Bessel functions of the first kind (plain and exponentially
scaled), the complete elliptic integral of the first kind, a generalized
hypergeometric series engine and two stored constants.

Elliptic integrals use the *modulus* convention throughout::

    K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta),   K(0) = pi/2

so ``elliptic_k(0.5)`` is ``K(m=0.25)`` in the parameter convention used by
scipy and mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import BudgetExceeded, Divergent, DomainError

__all__ = [
    "ToleranceConfig",
    "HypSeries",
    "bessel_i0",
    "bessel_i0_scaled",
    "bessel_i0_minus_one",
    "bessel_i1",
    "bessel_i1_scaled",
    "log_bessel_i0",
    "elliptic_k",
    "pfq",
    "catalan_constant",
    "euler_gamma",
]

_EULER_GAMMA = 0.57721566490153286061
_CATALAN = 0.91596559417721901505

# Series below this point, large-argument expansion above it.  Both branches
# agree to ~1e-15 relative on [22, 28]; below ~20 the asymptotic expansion
# cannot reach 1e-14 at any truncation.
SERIES_ASYMPTOTIC_SWITCH = 25.0

_TINY_TERM = 1e-17


@dataclass(frozen=True)
class ToleranceConfig:
    """Accuracy targets and work budgets shared by all evaluation routes.

    Parameters
    ----------
    abs_tol, rel_tol : float
        Absolute and relative accuracy targets; an estimate ``v`` is accepted
        once its error is below ``max(abs_tol, rel_tol * |v|)``.
    max_terms : int
        Cap on terms summed by series engines.
    max_evals : int
        Cap on integrand evaluations for one quadrature.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_terms: int = 1_000_000
    max_evals: int = 5_000_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_terms) < 1 or int(self.max_evals) < 1:
            raise ValueError("budgets must be >= 1")

    def target(self, value: float) -> float:
        """Acceptable error for an estimate of size ``value``."""
        return max(self.abs_tol, self.rel_tol * abs(value))

    def scaled(self, factor: float) -> "ToleranceConfig":
        """Copy with both tolerances multiplied by ``factor``."""
        return replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


def _as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, Rational):
        return Fraction(p)
    if isinstance(p, str):
        return Fraction(p)
    return Fraction(p).limit_denominator(10**9)


def _is_nonpositive_integer(p: Fraction) -> bool:
    return p.denominator == 1 and p <= 0


@dataclass(frozen=True)
class HypSeries:
    """Parameters and argument of a generalized hypergeometric series pFq.

    Parameters are stored as exact fractions; ``"3/2"``, ``Fraction(3, 2)``
    and ``1.5`` are all accepted.  The denominator list may be empty (the
    1F0 geometric series is a legitimate member of the family).
    """

    numerator_params: tuple = field(default_factory=tuple)
    denominator_params: tuple = field(default_factory=tuple)
    argument: float = 0.0

    def __post_init__(self):
        a = tuple(_as_fraction(p) for p in self.numerator_params)
        b = tuple(_as_fraction(p) for p in self.denominator_params)
        if not a:
            raise DomainError("numerator parameter list must be nonempty")
        for p in b:
            if _is_nonpositive_integer(p):
                raise DomainError(f"denominator parameter {p} is zero or a negative integer")
        x = float(self.argument)
        if not math.isfinite(x):
            raise DomainError(f"argument must be finite, got {self.argument!r}")
        object.__setattr__(self, "numerator_params", a)
        object.__setattr__(self, "denominator_params", b)
        object.__setattr__(self, "argument", x)

    @property
    def p(self) -> int:
        return len(self.numerator_params)

    @property
    def q(self) -> int:
        return len(self.denominator_params)

    @property
    def excess(self) -> Fraction:
        """``sum(b) - sum(a)``; the series converges at argument 1 iff this is > 0."""
        return sum(self.denominator_params, Fraction(0)) - sum(self.numerator_params, Fraction(0))

    @property
    def terminates(self) -> bool:
        return any(_is_nonpositive_integer(p) for p in self.numerator_params)

    def with_argument(self, x: float) -> "HypSeries":
        return HypSeries(self.numerator_params, self.denominator_params, x)


# ---------------------------------------------------------------------------
# Modified Bessel functions


def _check_bessel_arg(x) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"Bessel argument must be finite and nonnegative, got {x!r}")
    return x


def _series_sum(first: float, x: float, order: int) -> float:
    """Sum of sum_m first * prod_{j<=m} (x/2)^2 / (j (j + order)) over m >= 0."""
    q = 0.25 * x * x
    total = term = first
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + order))
        total += term
        if term <= _TINY_TERM * total and m > 0.5 * x:
            return total


def _asymptotic_scaled(x: float, nu: int) -> float:
    """e^{-x} I_nu(x) from the large-argument expansion, truncated at its smallest term."""
    mu = 4.0 * nu * nu
    total = term = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(term):
            break
        term = nxt
        total += term
        if abs(term) < _TINY_TERM * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0_scaled(x: float) -> float:
    """Exponentially scaled modified Bessel function ``exp(-x) * I0(x)``.

    Bounded by 1, strictly decreasing, and asymptotic to ``(2 pi x)^{-1/2}``.
    """
    x = _check_bessel_arg(x)
    if x <= SERIES_ASYMPTOTIC_SWITCH:
        return _series_sum(math.exp(-x), x, 0)
    return _asymptotic_scaled(x, 0)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero.

    Raises
    ------
    DomainError
        For negative or non-finite ``x``.  I0 is even, but the negative half
        line is rejected to keep the integrand API uniform.
    OverflowError
        When the result is not representable as a double.
    """
    x = _check_bessel_arg(x)
    if x <= SERIES_ASYMPTOTIC_SWITCH:
        return _series_sum(1.0, x, 0)
    return _rescale(x, _asymptotic_scaled(x, 0), "I0")


def bessel_i0_minus_one(x: float) -> float:
    """``I0(x) - 1`` without cancellation for small ``x``."""
    x = _check_bessel_arg(x)
    if x > 1.0:
        return bessel_i0(x) - 1.0
    if x == 0.0:
        return 0.0
    return _i0m1_series(x)


def _i0m1_series(x: float) -> float:
    q = 0.25 * x * x
    total = term = q
    m = 1
    while term > _TINY_TERM * total:
        m += 1
        term *= q / (m * m)
        total += term
    return total


def log_bessel_i0(x: float) -> float:
    """``ln I0(x)``, accurate near 0 and free of overflow for large ``x``."""
    x = _check_bessel_arg(x)
    if x <= 1.0:
        return math.log1p(_i0m1_series(x)) if x > 0.0 else 0.0
    return x + math.log(bessel_i0_scaled(x))


def bessel_i1_scaled(x: float) -> float:
    """Exponentially scaled modified Bessel function ``exp(-x) * I1(x)``."""
    x = _check_bessel_arg(x)
    if x == 0.0:
        return 0.0
    if x <= SERIES_ASYMPTOTIC_SWITCH:
        return _series_sum(0.5 * x * math.exp(-x), x, 1)
    return _asymptotic_scaled(x, 1)


def bessel_i1(x: float) -> float:
    """Modified Bessel function of the first kind, order one (``I1 = I0'``)."""
    x = _check_bessel_arg(x)
    if x == 0.0:
        return 0.0
    if x <= SERIES_ASYMPTOTIC_SWITCH:
        return _series_sum(0.5 * x, x, 1)
    return _rescale(x, _asymptotic_scaled(x, 1), "I1")


def _rescale(x: float, scaled: float, name: str) -> float:
    try:
        return math.exp(x) * scaled
    except OverflowError:
        log_val = x + math.log(scaled)
        if log_val < 709.782712893384:
            return math.exp(log_val)
        raise OverflowError(f"{name}({x}) overflows double precision") from None


# ---------------------------------------------------------------------------
# Complete elliptic integral


def elliptic_k(k: float, cfg: ToleranceConfig | None = None) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    Computed as ``pi / (2 AGM(1, k'))`` with ``k' = sqrt(1 - k^2)`` formed as
    ``sqrt((1 - k)(1 + k))`` so that moduli close to 1 keep their digits.

    Parameters
    ----------
    k : float
        Modulus, ``0 <= k < 1``.
    cfg : ToleranceConfig, optional
        ``max_terms`` caps the AGM iterations; the iteration itself runs to
        machine precision since it converges quadratically.
    """
    k = float(k)
    if not (0.0 <= k < 1.0):
        raise DomainError(f"elliptic_k needs 0 <= k < 1, got {k!r}")
    cfg = cfg or ToleranceConfig()
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    for _ in range(min(int(cfg.max_terms), 64)):
        if abs(a - b) <= 2.0 * 2.220446049250313e-16 * a:
            return math.pi / (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise BudgetExceeded("AGM iteration did not converge", best=math.pi / (a + b))


# ---------------------------------------------------------------------------
# Generalized hypergeometric series


def _term_ratio_factory(series: HypSeries):
    a = [float(p) for p in series.numerator_params]
    b = [float(p) for p in series.denominator_params]
    x = series.argument

    def ratio(k: int) -> float:
        num = x
        for p in a:
            num *= p + k
        den = float(k + 1)
        for p in b:
            den *= p + k
        return num / den

    return ratio


def _sum_direct(series: HypSeries, cfg: ToleranceConfig) -> float:
    ratio = _term_ratio_factory(series)
    x = abs(series.argument)
    limit_ratio = x if series.p == series.q + 1 else 0.0
    total = 0.0
    comp = 0.0
    term = 1.0
    prev_small = False
    for k in range(int(cfg.max_terms)):
        # Neumaier compensated summation
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        nxt = term * ratio(k)
        if nxt == 0.0:
            return total + comp
        thr = cfg.abs_tol * max(1.0, abs(total + comp))
        small = abs(term) <= thr
        if small and prev_small:
            rho = max(abs(nxt / term), limit_ratio)
            if rho < 1.0 and abs(nxt) / (1.0 - rho) <= thr:
                return total + comp
        prev_small = small
        term = nxt
    raise BudgetExceeded(
        f"pFq series not converged after {cfg.max_terms} terms", best=total + comp
    )


def _sum_at_unit_argument(series: HypSeries, cfg: ToleranceConfig) -> float:
    """Sum at argument 1 by Richardson extrapolation of partial sums.

    With ``s = sum(b) - sum(a) > 0`` the remainder after ``N`` terms expands
    as ``N^{-s} (d0 + d1/N + d2/N^2 + ...)``, so partial sums at ``N, 2N,
    4N, ...`` can be extrapolated with the known exponents ``s, s+1, ...``.
    """
    ratio = _term_ratio_factory(series)
    s = float(series.excess)
    n0 = 32
    total = comp = 0.0
    term = 1.0
    k = 0
    table: list[list[float]] = []
    best = err = math.inf
    level_n = n0
    while level_n <= cfg.max_terms:
        while k < level_n:
            t = total + term
            if abs(total) >= abs(term):
                comp += (total - t) + term
            else:
                comp += (term - t) + total
            total = t
            term *= ratio(k)
            k += 1
        row = [total + comp]
        if table:
            prev = table[-1]
            for i in range(1, len(prev) + 1):
                factor = 2.0 ** (s + i - 1) - 1.0
                row.append(row[i - 1] + (row[i - 1] - prev[i - 1]) / factor)
        table.append(row)
        if len(table) >= 3:
            new_best = row[-1]
            err = abs(new_best - table[-2][-1])
            best = new_best
            if err <= cfg.abs_tol * max(1.0, abs(best)) and len(table) >= 5:
                return best
        level_n *= 2
    raise BudgetExceeded(
        f"pFq at argument 1 not converged within {cfg.max_terms} terms",
        best=best,
        error_estimate=err,
    )


def pfq(series: HypSeries, cfg: ToleranceConfig | None = None) -> float:
    """Evaluate a generalized hypergeometric series.

    Parameters
    ----------
    series : HypSeries
        Parameters ``a``, ``b`` and the argument ``x``.
    cfg : ToleranceConfig, optional
        ``abs_tol`` is the target (scaled by ``max(1, |sum|)``);
        ``max_terms`` bounds the work.

    Returns
    -------
    float

    Raises
    ------
    Divergent
        If ``|x| > 1`` for a ``p = q + 1`` series, ``x = 1`` with
        ``sum(b) - sum(a) <= 0``, or any nonzero ``x`` when ``p > q + 1``.
    BudgetExceeded
        If ``max_terms`` terms do not reach the tolerance.

    Notes
    -----
    Inside the disk the sum stops once two consecutive terms are below the
    target and the geometric bound ``|t_{k+1}| / (1 - rho)`` on the remainder
    is too, with ``rho`` the larger of the current term ratio and its limit
    ``|x|``.  At ``x = 1`` convergence is only algebraic and the partial sums
    are extrapolated instead.
    """
    cfg = cfg or ToleranceConfig()
    x = series.argument
    if x == 0.0:
        return 1.0
    if not series.terminates:
        if series.p > series.q + 1:
            raise Divergent(f"{series.p}F{series.q} diverges for every nonzero argument")
        if series.p == series.q + 1:
            if abs(x) > 1.0:
                raise Divergent(f"|argument| = {abs(x)} > 1 is outside the disk of convergence")
            if x == 1.0:
                if series.excess <= 0:
                    raise Divergent(
                        f"series at argument 1 needs sum(b) - sum(a) > 0, got {series.excess}"
                    )
                return _sum_at_unit_argument(series, cfg)
            if x == -1.0:
                raise DomainError("argument -1 is not supported")
    return _sum_direct(series, cfg)


def _hyp(a: Sequence, b: Sequence, x: float, cfg: ToleranceConfig | None = None) -> float:
    return pfq(HypSeries(tuple(a), tuple(b), x), cfg)


# ---------------------------------------------------------------------------
# Constants


def catalan_constant() -> float:
    """Catalan's constant G = sum_{n>=0} (-1)^n / (2n + 1)^2."""
    return _CATALAN


def euler_gamma() -> float:
    """Euler's constant gamma."""
    return _EULER_GAMMA
