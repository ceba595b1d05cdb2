"""Evaluators for ``J_n(z) = pi^-n int_{[0,pi]^n} ln(z + sum cos x_j) dx``.

Three independent routes are provided, plus the closed forms from
:mod:`.closedform` for ``n <= 3``:

=============  ==========================================================
``bessel``     ``int_0^inf (e^-x - e^-zx I0(x)^n) dx / x``
``log_form``   ``-gamma - int_0^inf ln x e^-zx I0^(n-1) (z I0 - n I1) dx``
``direct``     tensor-product quadrature over the cube (``n <= 3``)
``closed``     hypergeometric / elliptic closed forms (``n = 1, 2, 3``)
=============  ==========================================================

The Mahler measure of ``k + sum (x_j + 1/x_j)`` is ``ln 2 + J_n(k/2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._routes import record
from .closedform import j1_closed, j2_closed, j3_closed
from .errors import DomainError
from .quad import QuadResult, TailSpec, integrate_cube, integrate_finite, integrate_semiinfinite
from .specfun import (
    ToleranceConfig,
    bessel_i0_minus_one,
    bessel_i0_scaled,
    bessel_i1_scaled,
    euler_gamma,
)

__all__ = [
    "Route",
    "MahlerQuery",
    "Evaluation",
    "j_bessel",
    "j_log_form",
    "j_direct",
    "j_closed",
    "evaluate",
    "mahler_measure",
    "bessel_tail",
    "log_form_integral",
    "step_form_integral",
]

# sup over x >= 1 of sqrt(2 pi x) e^-x I0(x); the maximum sits at x = 1 (1.1675...)
_I0_ENVELOPE = 1.17
_LN2 = math.log(2.0)


class Route(str, enum.Enum):
    BESSEL = "bessel"
    LOG_FORM = "log_form"
    DIRECT = "direct"
    CLOSED = "closed"
    AUTO = "auto"


@dataclass(frozen=True)
class MahlerQuery:
    """Dimension ``n``, argument ``z >= n`` and the route to use.

    Invariants are checked on construction: ``z >= n``, ``z > 0``,
    ``direct`` needs ``1 <= n <= 3`` and ``closed`` needs ``n`` in 1..3.
    """

    n: int
    z: float
    route: Route = Route.AUTO
    cfg: ToleranceConfig = field(default_factory=ToleranceConfig)

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        z = float(self.z)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "route", Route(self.route))
        if not math.isfinite(z):
            raise DomainError(f"z must be finite, got {z}")
        if z < self.n:
            raise DomainError(f"need z >= n, got n={self.n}, z={z}")
        if not z > 0.0:
            raise DomainError("z = n = 0 is excluded (ln 0)")
        if self.route is Route.DIRECT and not 1 <= self.n <= 3:
            raise DomainError(f"the direct route supports n = 1..3, got {self.n}")
        if self.route is Route.CLOSED and not 1 <= self.n <= 3:
            raise DomainError(f"closed forms exist for n = 1..3, got {self.n}")


@dataclass(frozen=True)
class Evaluation:
    """A value of ``J_n(z)`` together with the route that produced it."""

    value: float
    error_estimate: float
    evaluations: int
    route: Route
    truncation_point: Optional[float] = None


def _envelope_sup(power: float, gap: float) -> float:
    """``sup_{x >= 1} x^power e^{-gap x}`` for ``power >= 0``, ``0 < gap``."""
    peak = power / gap
    if peak <= 1.0:
        return math.exp(-gap)
    return peak**power * math.exp(-power)


def bessel_tail(n: int, z: float) -> TailSpec:
    """Certified envelope of ``(e^-x - e^-zx I0^n) / x`` on ``x >= 1``.

    With ``c_n = (1.17)^n (2 pi)^(-n/2)`` the second term is bounded by
    ``c_n e^{-(z-n)x} x^{-(n/2+1)}``.  For ``z - n >= 1`` both terms fit under
    ``(1 + c_n) e^-x / x``; otherwise the ``e^-x / x`` term is folded into the
    slower envelope.
    """
    a = z - n
    c_n = _I0_ENVELOPE**n * (2.0 * math.pi) ** (-0.5 * n)
    if a >= 1.0:
        return TailSpec(1.0, 1.0, 1.0 + c_n)
    p = 0.5 * n + 1.0
    return TailSpec(a, p, c_n + _envelope_sup(p - 1.0, 1.0 - a))


def _bessel_integrand(n: int, z: float):
    gap = z - n

    def g(x: float) -> float:
        # u = ln(e^-zx I0^n), v = -x - u; for x > 1 the e^x factor of I0 is
        # cancelled analytically, otherwise ln(i0_scaled) drowns in x
        if x <= 1.0:
            ln_i0 = math.log1p(bessel_i0_minus_one(x))
            u = -z * x + n * ln_i0
            v = (z - 1.0) * x - n * ln_i0
        else:
            ln_s = math.log(bessel_i0_scaled(x))
            u = -gap * x + n * ln_s
            v = (gap - 1.0) * x - n * ln_s
        # e^-x - e^u = e^u (e^v - 1); expm1 keeps the small-x cancellation exact
        if abs(v) < 1.0:
            return math.exp(u) * math.expm1(v) / x
        return (math.exp(-x) - math.exp(u)) / x

    return g


def j_bessel(q: MahlerQuery) -> QuadResult:
    """``J_n(z)`` from the single Bessel integral, valid for ``z >= n >= 0``.

    At ``z = n`` the integrand decays only like ``x^-(n/2+1)`` and the
    truncation point grows like ``tol^(-2/n)``; expect roughly ``1e-8``
    accuracy there at default settings for ``n = 1``.
    """
    record("j_bessel")
    return integrate_semiinfinite(_bessel_integrand(q.n, q.z), bessel_tail(q.n, q.z), q.cfg)


def step_form_integral(n: int, z: float, cfg: ToleranceConfig | None = None) -> QuadResult:
    """``int_0^inf [Theta(1 - x) - e^-zx I0(x)^n] dx / x``, equal to ``J_n(z) + gamma``.

    Split at 1: ``int_0^1 (1 - e^-zx I0^n) / x`` plus ``-int_1^inf e^-zx I0^n / x``,
    the latter shifted to ``(0, inf)`` for the semi-infinite engine.
    """
    cfg = cfg or ToleranceConfig()
    if n < 0 or not (z >= n and z > 0.0):
        raise DomainError(f"need z >= n >= 0 and z > 0, got n={n}, z={z}")
    gap = z - n

    def head(x: float) -> float:
        return -math.expm1(-z * x + n * math.log1p(bessel_i0_minus_one(x))) / x

    def tail(t: float) -> float:
        x = 1.0 + t
        return math.exp(-gap * x) * bessel_i0_scaled(x) ** n / x

    first = integrate_finite(head, 0.0, 1.0, cfg)
    c = _I0_ENVELOPE**n * (2.0 * math.pi) ** (-0.5 * n) * math.exp(-gap)
    second = integrate_semiinfinite(tail, TailSpec(gap, 0.5 * n + 1.0, c), cfg)
    return QuadResult(
        first.value - second.value,
        first.error_estimate + second.error_estimate,
        first.evaluations + second.evaluations,
        second.truncation_point,
    )


def log_form_integral(n: int, z: float, cfg: ToleranceConfig) -> QuadResult:
    """``int_0^inf ln x e^-zx I0^(n-1)(x) (z I0(x) - n I1(x)) dx`` for ``z > n >= 1``.

    The bracket is ``-e^{zx} d/dx (e^{-zx} I0^n)`` with ``I0' = +I1``; writing
    ``+ n I1`` (as if ``I0' = -I1``) gives a different, wrong value.
    """
    a = z - n

    def f(x: float) -> float:
        s0 = bessel_i0_scaled(x)
        s1 = bessel_i1_scaled(x)
        return math.log(x) * math.exp(-a * x) * s0 ** (n - 1) * (z * s0 - n * s1)

    # |ln x| <= (2/e) sqrt(x) and I1 <= I0 on x >= 1
    c = (z + n) * _I0_ENVELOPE**n * (2.0 * math.pi) ** (-0.5 * n) * 2.0 / math.e
    return integrate_semiinfinite(f, TailSpec(a, 0.5 * (n - 1), c), cfg)


def j_log_form(q: MahlerQuery) -> QuadResult:
    """``J_n(z)`` from the logarithmically weighted integral; needs ``z > n >= 1``."""
    record("j_log_form")
    if q.n < 1 or not q.z > q.n:
        raise DomainError(f"log-form route needs z > n >= 1, got n={q.n}, z={q.z}")
    res = log_form_integral(q.n, q.z, q.cfg)
    return QuadResult(-euler_gamma() - res.value, res.error_estimate, res.evaluations,
                      res.truncation_point)


def j_direct(q: MahlerQuery, sign: int = 1) -> QuadResult:
    """``J_n(z)`` by tensor-product quadrature over ``[0, pi]^n`` (``n <= 3``).

    ``sign=-1`` integrates ``ln(z - sum cos x_j)`` instead; the two agree
    by the symmetry ``x -> pi - x``.  The argument is formed as
    ``(z - n) + 2 sum cos^2(x_j/2)`` (or ``sin^2`` for ``sign=-1``) so that
    it stays accurate near the corner where it vanishes at ``z = n``.
    """
    record("j_direct")
    n, z = q.n, q.z
    if not 1 <= n <= 3:
        raise DomainError(f"the direct route supports n = 1..3, got {n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    trig = np.cos if sign == 1 else np.sin
    gap = z - n

    def f(pts: np.ndarray) -> np.ndarray:
        c = trig(0.5 * pts)
        return np.log(gap + 2.0 * np.sum(c * c, axis=0))

    res = integrate_cube(f, n, q.cfg.scaled(math.pi**n))
    vol = math.pi**n
    return QuadResult(res.value / vol, res.error_estimate / vol, res.evaluations)


def j_closed(q: MahlerQuery) -> QuadResult:
    """``J_n(z)`` from the closed forms for ``n = 1, 2, 3``."""
    if q.n == 1:
        value = j1_closed(q.z)
    elif q.n == 2:
        value = j2_closed(q.z, q.cfg)
    elif q.n == 3:
        value = j3_closed(q.z, q.cfg)
    else:
        raise DomainError(f"closed forms exist for n = 1..3, got {q.n}")
    err = max(q.cfg.abs_tol, 4.0 * np.finfo(float).eps * abs(value))
    return QuadResult(value, err, 0)


def _auto_route(n: int, z: float) -> Route:
    if n in (1, 2) or (n == 3 and z > 5.0):
        return Route.CLOSED
    return Route.BESSEL


_DISPATCH = {
    Route.BESSEL: j_bessel,
    Route.LOG_FORM: j_log_form,
    Route.DIRECT: j_direct,
    Route.CLOSED: j_closed,
}


def evaluate(q: MahlerQuery) -> Evaluation:
    """Evaluate ``J_n(z)`` by the requested route (``auto`` resolves first)."""
    route = _auto_route(q.n, q.z) if q.route is Route.AUTO else q.route
    res = _DISPATCH[route](q)
    return Evaluation(res.value, res.error_estimate, res.evaluations, route, res.truncation_point)


def mahler_measure(n: int, k: float, cfg: ToleranceConfig | None = None) -> float:
    """Mahler measure of ``k + sum_{j<=n} (x_j + 1/x_j)`` for ``k >= 2n``.

    Examples
    --------
    >>> round(mahler_measure(1, 4.0), 10)
    1.3169578969
    """
    k = float(k)
    if not k >= 2 * n:
        raise DomainError(f"need k >= 2n, got n={n}, k={k}")
    q = MahlerQuery(n, 0.5 * k, Route.AUTO, cfg or ToleranceConfig())
    return _LN2 + evaluate(q).value
