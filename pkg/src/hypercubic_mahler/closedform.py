"""Closed forms for J_1, J_2, J_3 and the hypergeometric machinery behind them.

Two printed formulas need repair before they reproduce the integrals they
claim to equal; both repairs are checked against quadrature in the test
suite and recorded in the errata report produced by :mod:`.verify`.

* The J_3 formula.  As printed, ``R0 = z^3 - 5z - (z^2-1) sqrt(z^2-3)`` is
  negative for every ``z >= 3`` (so the logarithm is complex), and with
  ``R2 = z^2 - 9 - z r`` the first 5F4 term is wrong at order ``z^-6``.  The
  reading ``R0 = z^3 - 5z - (z^2-1) r`` and ``R2 = z^2 + 9 - z r`` matches
  the Bessel integral to rounding for every ``z >= 3``, provided the second
  5F4 is taken on its continued branch (``sqrt(1 - zeta) -> -sqrt(1 - zeta)``
  in ``alpha``) when ``z < 5``: its argument ``16 R1 / R3^4`` touches 1 at
  ``z = 5`` and turns back.
* The Laplace transform of I0^3.  None of the bracketings of the printed
  two-3F2 expression matches quadrature; :func:`laplace_i0_cubed` reports
  that through :class:`~.errors.NoCandidateMatches`.  Differentiating the
  repaired J_3 formula gives an expression that does match
  (:func:`laplace_i0_cubed_derived`).
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from ._routes import route
from .errors import ContinuationUnresolved, Divergent, DomainError, NoCandidateMatches
from .quad import TailSpec, integrate_finite, integrate_semiinfinite
from .specfun import (
    HypSeries,
    ToleranceConfig,
    bessel_i0_scaled,
    catalan_constant,
    elliptic_k,
    pfq,
)

__all__ = [
    "RQuadruple",
    "ContinuationArg",
    "FOUR_F_THREE",
    "FIVE_F_FOUR",
    "THREE_F_TWO_QUARTER",
    "four_f_three_at_one",
    "j1_closed",
    "j2_closed",
    "four_f_three_elliptic_integral",
    "r_quadruple",
    "j3_closed",
    "j3_printed",
    "hyp5f4",
    "hyp5f4_continued",
    "continuation_alpha",
    "hyp3f2_quadratic_transform",
    "laplace_i0_cubed",
    "laplace_i0_cubed_candidate",
    "laplace_i0_cubed_derived",
    "three_f_two_quarter",
    "laplace_i0_cubed_quadrature",
    "adjudicate_laplace_i0_cubed",
    "LAPLACE_CANDIDATES",
]

_F = Fraction
FOUR_F_THREE = HypSeries((1, 1, _F(3, 2), _F(3, 2)), (2, 2, 2), 0.0)
FIVE_F_FOUR = HypSeries((1, 1, _F(5, 4), _F(3, 2), _F(7, 4)), (2, 2, 2, 2), 0.0)
THREE_F_TWO_QUARTER = HypSeries((_F(1, 4), _F(1, 2), _F(3, 4)), (1, 1), 0.0)

_HALF_PI = 0.5 * math.pi
_I0_ENVELOPE = 1.17  # sup of sqrt(2 pi x) e^{-x} I0(x) over x >= 1, attained at x = 1

# 5F4 arguments above this go through the integral representation.
SERIES_ROUTE_LIMIT = 0.98


def four_f_three_at_one() -> float:
    """``4F3(1,1,3/2,3/2; 2,2,2; 1) = 16 (pi ln 2 - 2G) / pi``."""
    return 16.0 * (math.pi * math.log(2.0) - 2.0 * catalan_constant()) / math.pi


# ---------------------------------------------------------------------------
# J_1 and J_2


@route("j1_closed")
def j1_closed(z: float) -> float:
    """``J_1(z) = ln((z + sqrt(z^2 - 1)) / 2) = arccosh(z) - ln 2`` for ``z >= 1``."""
    z = float(z)
    if not (z >= 1.0) or math.isinf(z):
        raise DomainError(f"J_1 closed form needs finite z >= 1, got {z}")
    return math.acosh(z) - math.log(2.0)


@route("j2_closed")
def j2_closed(z: float, cfg: ToleranceConfig | None = None) -> float:
    """``J_2(z) = ln z - 4F3(1,1,3/2,3/2; 2,2,2; 4/z^2) / (2 z^2)`` for ``z >= 2``.

    At ``z = 2`` the series is replaced by its closed value in terms of
    Catalan's constant.
    """
    z = float(z)
    if not (z >= 2.0) or math.isinf(z):
        raise DomainError(f"J_2 closed form needs finite z >= 2, got {z}")
    if z == 2.0:
        return math.log(2.0) - four_f_three_at_one() / 8.0
    cfg = cfg or ToleranceConfig()
    return math.log(z) - pfq(FOUR_F_THREE.with_argument(4.0 / (z * z)), cfg) / (2.0 * z * z)


def _k_minus_k0(u: float) -> float:
    """``K(u) - pi/2`` for a real modulus ``0 <= u < 1``, exact in relative terms near 0."""
    if u > 0.25:
        return elliptic_k(u) - _HALF_PI
    q = u * u
    c = 1.0
    total = 0.0
    m = 0
    while True:
        m += 1
        c *= ((2 * m - 1) / (2.0 * m)) ** 2 * q
        total += c
        if c < 1e-18 * total:
            return _HALF_PI * total


@route("four_f_three_elliptic_integral")
def four_f_three_elliptic_integral(zarg: float, cfg: ToleranceConfig | None = None) -> float:
    """``(16 / (pi zarg)) int_0^{sqrt zarg} (K(u) - K(0)) du / u`` for ``0 < zarg <= 1``.

    Equals ``4F3(1,1,3/2,3/2; 2,2,2; zarg)``.  The endpoint ``u = 1`` at
    ``zarg = 1`` carries the logarithmic singularity of K, which the adaptive
    rule absorbs without evaluating it.
    """
    zarg = float(zarg)
    if not (0.0 < zarg <= 1.0):
        raise DomainError(f"the elliptic-integral form needs 0 < argument <= 1, got {zarg}")
    cfg = cfg or ToleranceConfig()
    res = integrate_finite(lambda u: _k_minus_k0(u) / u, 0.0, math.sqrt(zarg), cfg)
    return 16.0 * res.value / (math.pi * zarg)


# ---------------------------------------------------------------------------
# R quantities of the J_3 formula


@dataclass(frozen=True)
class RQuadruple:
    """The algebraic quantities ``r, R0..R3`` feeding the J_3 closed form.

    ``reading`` is ``"printed"`` for the definitions exactly as published or
    ``"corrected"`` for the repaired ones (``R0`` with ``r`` in place of
    ``sqrt(z^2 - 3)`` and ``R2 = z^2 + 9 - z r``).
    """

    z: float
    r: float
    R0: float
    R1: float
    R2: float
    R3: float
    reading: str = "printed"

    def arguments(self) -> tuple[float, float]:
        """The two 5F4 arguments ``16 R1^3 / R2^4`` and ``16 R1 / R3^4``."""
        first = math.inf if self.R2 == 0.0 else 16.0 * self.R1**3 / self.R2**4
        return first, 16.0 * self.R1 / self.R3**4


def r_quadruple(z: float, reading: str = "printed") -> RQuadruple:
    """Evaluate ``r, R0, R1, R2, R3`` at ``z >= 3``.

    Differences of nearly equal terms are formed through conjugates:
    ``z^2 - z r = 9 z / (z + r)`` and ``R1 = 81 / (2 z^2 - 9 + 2 z r)``.
    """
    z = float(z)
    if not (z >= 3.0) or math.isinf(z):
        raise DomainError(f"R quantities need finite z >= 3, got {z}")
    if reading not in ("printed", "corrected"):
        raise ValueError(f"unknown reading {reading!r}")
    r = math.sqrt((z - 3.0) * (z + 3.0))
    zz_minus_zr = 9.0 * z / (z + r)
    R1 = 81.0 / (2.0 * z * z - 9.0 + 2.0 * z * r)
    R3 = zz_minus_zr - 3.0
    if reading == "printed":
        s = math.sqrt(z * z - 3.0)
        # (z^3-5z)^2 - (z^2-1)^2 (z^2-3) = -5z^4 + 18z^2 + 3
        R0 = (-5.0 * z**4 + 18.0 * z * z + 3.0) / (z**3 - 5.0 * z + (z * z - 1.0) * s)
        R2 = zz_minus_zr - 9.0
    else:
        # (z^3-5z)^2 - (z^2-1)^2 (z^2-9) = (z^2+3)^2
        R0 = (z * z + 3.0) ** 2 / (z**3 - 5.0 * z + (z * z - 1.0) * r)
        R2 = zz_minus_zr + 9.0
    return RQuadruple(z, r, R0, R1, R2, R3, reading)


# ---------------------------------------------------------------------------
# 5F4(1,1,5/4,3/2,7/4; 2,2,2,2; .) and its continuation


@dataclass(frozen=True)
class ContinuationArg:
    """Argument ``zeta`` of the 5F4 and the upper limit ``alpha(zeta)`` of its integral form."""

    zeta: float
    alpha: complex
    sheet: int = 1


def continuation_alpha(zeta: float, sheet: int = 1) -> ContinuationArg:
    """``alpha(zeta) = sqrt((sqrt2 - sqrt(1 + s)) / (sqrt2 + sqrt(1 + s)))``, ``s = sheet * sqrt(1 - zeta)``.

    Principal square roots throughout.  ``sheet=-1`` selects the branch
    reached by going once around ``zeta = 1``.
    """
    if sheet not in (1, -1):
        raise ValueError("sheet must be +1 or -1")
    zeta = float(zeta)
    if zeta <= 1.0:
        s = sheet * math.sqrt(1.0 - zeta)
        root = math.sqrt(1.0 + s)
        sq2 = math.sqrt(2.0)
        ratio = (sq2 - root) / (sq2 + root)
        if zeta > 0.0 and sheet == 1:
            # sqrt2 - sqrt(1+s) loses digits for small zeta; use
            # 2 - (1+s) = 1 - s = zeta / (1 + s)
            ratio = zeta / ((1.0 + s) * (sq2 + root) ** 2)
        alpha = complex(math.sqrt(ratio)) if ratio >= 0.0 else complex(0.0, math.sqrt(-ratio))
    else:
        s = sheet * cmath.sqrt(1.0 - zeta)
        root = cmath.sqrt(1.0 + s)
        sq2 = math.sqrt(2.0)
        alpha = cmath.sqrt((sq2 - root) / (sq2 + root))
    return ContinuationArg(zeta, alpha, sheet)


def _a6_integrand_real(t: float) -> float:
    if t == 0.0:
        return 0.0
    t2 = t * t
    dk = _k_minus_k0(t)
    k = _HALF_PI + dk
    bracket = (1.0 + t2) * dk * (k + _HALF_PI) + t2 * _HALF_PI**2
    return (1.0 - 6.0 * t2 + t2 * t2) / (1.0 - t2 * t2) * bracket / t


def _a6_integrand_imaginary(tau: float) -> float:
    # t = i tau: dt/t = dtau/tau, t^2 = -tau^2, K(i tau) = pi / (2 AGM(1, sqrt(1 + tau^2)))
    if tau == 0.0:
        return 0.0
    t2 = tau * tau
    a, b = 1.0, math.sqrt(1.0 + t2)
    while abs(a - b) > 4e-16 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    k = math.pi / (a + b)
    bracket = (1.0 - t2) * k * k - _HALF_PI**2
    return (1.0 + 6.0 * t2 + t2 * t2) / (1.0 - t2 * t2) * bracket / tau


def _elliptic_k_complex(k: complex) -> complex:
    kp = cmath.sqrt(1.0 - k * k)
    a, b = complex(1.0), kp
    for _ in range(60):
        if abs(a - b) <= 4e-16 * abs(a):
            break
        a_next = 0.5 * (a + b)
        g = cmath.sqrt(a * b)
        if abs(a_next - g) > abs(a_next + g):
            g = -g
        a, b = a_next, g
    return math.pi / (a + b)


@route("hyp5f4_continued")
def hyp5f4_continued(
    zeta: float, cfg: ToleranceConfig | None = None, sheet: int = 1
) -> float:
    """5F4(1,1,5/4,3/2,7/4; 2,2,2,2; zeta) through its elliptic-integral representation.

    ``(256 / (3 pi^2 zeta)) int_0^alpha (1 - 6t^2 + t^4) / (1 - t^4)
    [(1 + t^2) K(t)^2 - K(0)^2] dt / t``.

    Parameters
    ----------
    zeta : float
        Nonzero argument.  On ``zeta < 1`` the result is real (``alpha`` is
        imaginary for ``zeta < 0``; the integral is then taken along the
        imaginary axis).  For ``zeta > 1`` the value lies on the branch cut
        and is complex.
    sheet : {1, -1}
        ``-1`` evaluates the continuation around the branch point at 1.

    Raises
    ------
    ContinuationUnresolved
        For ``zeta > 1`` when the imaginary part exceeds ``1e-8``; the
        complex value is attached.
    """
    cfg = cfg or ToleranceConfig()
    zeta = float(zeta)
    if zeta == 0.0 or not math.isfinite(zeta):
        raise DomainError("the integral representation needs a finite nonzero argument")
    arg = continuation_alpha(zeta, sheet)
    pref = 256.0 / (3.0 * math.pi**2 * zeta)
    alpha = arg.alpha
    if zeta <= 1.0:
        if alpha.imag == 0.0:
            res = integrate_finite(_a6_integrand_real, 0.0, alpha.real, cfg)
            return pref * res.value
        res = integrate_finite(_a6_integrand_imaginary, 0.0, alpha.imag, cfg)
        return pref * res.value

    def piece(tau: float) -> complex:
        t = alpha * tau
        t2 = t * t
        kk = _elliptic_k_complex(t)
        return (1 - 6 * t2 + t2 * t2) / (1 - t2 * t2) * ((1 + t2) * kk * kk - _HALF_PI**2) / tau

    re = integrate_finite(lambda tau: piece(tau).real, 0.0, 1.0, cfg).value
    im = integrate_finite(lambda tau: piece(tau).imag, 0.0, 1.0, cfg).value
    value = pref * complex(re, im)
    if abs(value.imag) > 1e-8:
        raise ContinuationUnresolved(
            f"5F4 at {zeta} lies on the branch cut (imaginary part {value.imag:.3e})",
            value=value,
        )
    return value.real


def hyp5f4(zeta: float, cfg: ToleranceConfig | None = None, sheet: int = 1) -> float:
    """5F4(1,1,5/4,3/2,7/4; 2,2,2,2; zeta): series when ``|zeta| <= 0.98`` on the principal sheet, integral otherwise."""
    cfg = cfg or ToleranceConfig()
    if sheet == 1 and abs(zeta) <= SERIES_ROUTE_LIMIT:
        return pfq(FIVE_F_FOUR.with_argument(zeta), cfg)
    return hyp5f4_continued(zeta, cfg, sheet)


def hyp3f2_quadratic_transform(a, b, zarg: float) -> tuple[float, float]:
    """Argument and prefactor of the quadratic transformation of 3F2(a, b, a+1/2; 1, 2a+b; zarg).

    With ``q = (2 / zarg)(1 - sqrt(1 - zarg)) = 2 / (1 + sqrt(1 - zarg))``::

        3F2(a, b, a+1/2; 1, 2a+b; zarg) = q^{2a} 3F2(2a, 2a, 1-b; 1, 2a+b; 1 - q)

    Returns ``(1 - q, q**(2a))``.
    """
    zarg = float(zarg)
    if not zarg < 1.0:
        raise DomainError(f"quadratic transformation needs argument < 1, got {zarg}")
    q = 2.0 / (1.0 + math.sqrt(1.0 - zarg))
    return 1.0 - q, q ** (2.0 * float(Fraction(a)))


# ---------------------------------------------------------------------------
# J_3


@route("j3_closed")
def j3_closed(z: float, cfg: ToleranceConfig | None = None) -> float:
    """Closed form of ``J_3(z)`` for ``z >= 3`` (corrected R quantities).

    ``J_3 = -(1/5) { ln(2 R0 / (z^2+3)^3) + (9/8)(R1^3/R2^4) 5F4(16 R1^3/R2^4)
    + (3/8)(R1/R3^4) 5F4(16 R1/R3^4) }``

    For ``z < 5`` the second 5F4 is evaluated on its continued branch.
    """
    z = float(z)
    if not (z >= 3.0) or math.isinf(z):
        raise DomainError(f"J_3 closed form needs finite z >= 3, got {z}")
    cfg = cfg or ToleranceConfig()
    q = r_quadruple(z, "corrected")
    w1, w2 = q.arguments()
    w2 = min(w2, 1.0)  # analytically <= 1, with equality only at z = 5
    # ln(2 R0 / (z^2+3)^3) with R0 = (z^2+3)^2 / D
    log_term = math.log(2.0 / ((z * z + 3.0) * (z**3 - 5.0 * z + (z * z - 1.0) * q.r)))
    first = 9.0 / 8.0 * q.R1**3 / q.R2**4 * hyp5f4(w1, cfg)
    sheet = 1 if z >= 5.0 else -1
    second = 3.0 / 8.0 * q.R1 / q.R3**4 * hyp5f4(w2, cfg, sheet=sheet)
    return -(log_term + first + second) / 5.0


def j3_printed(z: float, cfg: ToleranceConfig | None = None) -> complex:
    """The J_3 formula with the R definitions exactly as printed (complex in general).

    Kept only as evidence for the errata report.
    """
    cfg = cfg or ToleranceConfig()
    q = r_quadruple(z, "printed")
    w1, w2 = q.arguments()
    log_term = cmath.log(2.0 * q.R0 / (z * z + 3.0) ** 3)
    first = 9.0 / 8.0 * q.R1**3 / q.R2**4 * pfq(FIVE_F_FOUR.with_argument(w1), cfg)
    second = 3.0 / 8.0 * q.R1 / q.R3**4 * hyp5f4(min(w2, 1.0), cfg)
    return -(log_term + first + second) / 5.0


# ---------------------------------------------------------------------------
# Laplace transform of I0^3


@route("laplace_i0_cubed_quadrature")
def laplace_i0_cubed_quadrature(z: float, cfg: ToleranceConfig | None = None) -> float:
    """``int_0^inf exp(-z t) I0(t)^3 dt`` by quadrature (``z > 3``)."""
    z = float(z)
    if not z > 3.0:
        raise DomainError(f"Laplace transform of I0^3 needs z > 3, got {z}")
    cfg = cfg or ToleranceConfig()
    rate = z - 3.0

    def f(t):
        s = bessel_i0_scaled(t)
        return math.exp(-rate * t) * s * s * s

    tail = TailSpec(rate, 1.5, _I0_ENVELOPE**3 * (2.0 * math.pi) ** -1.5)
    return integrate_semiinfinite(f, tail, cfg).value


def _lap_first_standard(z, r):
    return -16.0 * (2.0 * z * (r - z) + 9.0) / (z * z - 9.0) ** 2


def _lap_first_alt(z, r):
    return -(32.0 * z * (r - z) + 9.0) / (z * z - 9.0) ** 2


def _lap_second_standard(z, r):
    return -(32.0 * z * (r - z) + 144.0) / (z * (r - z) + 3.0) ** 4


def _lap_second_alt(z, r):
    return -(32.0 * z * (r - z) + 144.0) / (z * z - 9.0) ** 4


LAPLACE_CANDIDATES = {
    "first=-16(2z(r-z)+9)/(z^2-9)^2; second=-(32z(r-z)+144)/(z(r-z)+3)^4":
        (_lap_first_standard, _lap_second_standard),
    "first=-16(2z(r-z)+9)/(z^2-9)^2; second=-(32z(r-z)+144)/(z^2-9)^4":
        (_lap_first_standard, _lap_second_alt),
    "first=-(32z(r-z)+9)/(z^2-9)^2; second=-(32z(r-z)+144)/(z(r-z)+3)^4":
        (_lap_first_alt, _lap_second_standard),
    "first=-(32z(r-z)+9)/(z^2-9)^2; second=-(32z(r-z)+144)/(z^2-9)^4":
        (_lap_first_alt, _lap_second_alt),
}

LAPLACE_ADJUDICATION_GRID = (5.0, 6.0, 10.0)
LAPLACE_MATCH_TOL = 1e-8


def laplace_second_coefficient_numerator(z: float) -> float:
    """``(z^2 + 15) r - 2 z^3 + 18 z``; vanishes at ``z = 5``."""
    r = math.sqrt(z * z - 9.0)
    return (z * z + 15.0) * r - 2.0 * z**3 + 18.0 * z


@route("laplace_i0_cubed_candidate")
def laplace_i0_cubed_candidate(z: float, name: str, cfg: ToleranceConfig | None = None) -> float:
    """Evaluate one bracketing of the printed two-3F2 expression."""
    z = float(z)
    if not z > 3.0:
        raise DomainError(f"needs z > 3, got {z}")
    cfg = cfg or ToleranceConfig()
    first_arg, second_arg = LAPLACE_CANDIDATES[name]
    r = math.sqrt((z - 3.0) * (z + 3.0))
    zz9 = z * z - 9.0
    zz3 = z * z + 3.0
    total = 3.0 * (r + 2.0 * z) / (10.0 * zz9) * pfq(
        THREE_F_TWO_QUARTER.with_argument(first_arg(z, r)), cfg
    )
    coeff = laplace_second_coefficient_numerator(z) / (5.0 * zz9 * zz3)
    if coeff != 0.0:
        total -= coeff * pfq(THREE_F_TWO_QUARTER.with_argument(second_arg(z, r)), cfg)
    total += 18.0 * (r - 2.0 * z) / (5.0 * zz9 * zz3)
    return total


@dataclass(frozen=True)
class LaplaceAdjudication:
    selected: str | None
    # candidate -> tuple of (z, candidate value or None, oracle value)
    evidence: dict

    def summary(self) -> str:
        if self.selected is not None:
            return f"selected bracketing: {self.selected}"
        worst = {
            name: max(
                (abs(v - o) if v is not None else math.inf) for _, v, o in rows
            )
            for name, rows in self.evidence.items()
        }
        parts = "; ".join(f"[{n}] max|diff|={d:.3e}" for n, d in worst.items())
        return f"no bracketing matches quadrature within {LAPLACE_MATCH_TOL:g}: {parts}"


@functools.lru_cache(maxsize=8)
def adjudicate_laplace_i0_cubed(cfg: ToleranceConfig | None = None) -> LaplaceAdjudication:
    """Test every candidate bracketing against quadrature at ``z = 5, 6, 10``."""
    cfg = cfg or ToleranceConfig()
    oracle = {z: laplace_i0_cubed_quadrature(z, cfg) for z in LAPLACE_ADJUDICATION_GRID}
    evidence = {}
    matching = []
    for name in LAPLACE_CANDIDATES:
        rows = []
        ok = True
        for z in LAPLACE_ADJUDICATION_GRID:
            try:
                v = laplace_i0_cubed_candidate(z, name, cfg)
            except Divergent:
                v = None
            rows.append((z, v, oracle[z]))
            if v is None or abs(v - oracle[z]) > LAPLACE_MATCH_TOL:
                ok = False
        evidence[name] = tuple(rows)
        if ok:
            matching.append(name)
    selected = matching[0] if len(matching) == 1 else None
    return LaplaceAdjudication(selected, evidence)


def laplace_i0_cubed(z: float, cfg: ToleranceConfig | None = None) -> float:
    """The printed closed form of ``int_0^inf exp(-z t) I0(t)^3 dt``, as adjudicated.

    Raises
    ------
    NoCandidateMatches
        When no bracketing of the printed expression reproduces quadrature;
        the per-candidate evidence is attached.
    """
    z = float(z)
    if not z > 3.0:
        raise DomainError(f"Laplace transform of I0^3 needs z > 3, got {z}")
    verdict = adjudicate_laplace_i0_cubed(cfg or ToleranceConfig())
    if verdict.selected is None:
        raise NoCandidateMatches(verdict.summary(), evidence=verdict.evidence)
    return laplace_i0_cubed_candidate(z, verdict.selected, cfg)


@route("three_f_two_quarter")
def three_f_two_quarter(w: float, sheet: int = 1) -> float:
    """3F2(1/4,1/2,3/4; 1,1; w) for ``w <= 1`` through the complete elliptic integral.

    Combining the quadratic transformation (a, b) = (1/4, 1/2) with Clausen's
    formula gives ``sqrt(q) (2/pi)^2 K(m)^2`` with ``q = 2 / (1 + s)``,
    ``s = sheet * sqrt(1 - w)`` and parameter ``m = (1 - sqrt q) / 2 <= 0``.
    ``sheet=-1`` gives the continuation around ``w = 1``.
    """
    w = float(w)
    if w > 1.0:
        raise DomainError("argument above 1 lies on the branch cut")
    s = sheet * math.sqrt(1.0 - w)
    q = 2.0 / (1.0 + s)
    m = 0.5 * (1.0 - math.sqrt(q))
    a, b = 1.0, math.sqrt(1.0 - m)
    while abs(a - b) > 4e-16 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    k = math.pi / (a + b)
    return math.sqrt(q) * (2.0 * k / math.pi) ** 2


@route("laplace_i0_cubed_derived")
def laplace_i0_cubed_derived(z: float, cfg: ToleranceConfig | None = None) -> float:
    """``d J_3 / dz`` from the corrected J_3 formula, for ``z > 3``.

    With ``w1 = 16 R1^3/R2^4``, ``w2 = 16 R1/R3^4`` and
    ``F = 3F2(1/4,1/2,3/4; 1,1; .)``::

        L(z) = a1 F(w1) + a2 F(w2),   a1 = -(3/20) w1'/w1,  a2 = -(1/20) w2'/w2

    ``F(w2)`` is continued around ``w2 = 1`` for ``z < 5``.
    """
    z = float(z)
    if not z > 3.0:
        raise DomainError(f"Laplace transform of I0^3 needs z > 3, got {z}")
    cfg = cfg or ToleranceConfig()
    q = r_quadruple(z, "corrected")
    r = q.r
    dr = z / r
    dR1 = 4.0 * z - 2.0 * r - 2.0 * z * dr
    dR23 = 2.0 * z - r - z * dr  # R2 and R3 share this derivative
    a1 = -0.15 * (3.0 * dR1 / q.R1 - 4.0 * dR23 / q.R2)
    a2 = -0.05 * (dR1 / q.R1 - 4.0 * dR23 / q.R3)
    w1, w2 = q.arguments()
    total = a1 * pfq(THREE_F_TWO_QUARTER.with_argument(w1), cfg)
    if z >= 5.0:
        if a2 != 0.0:
            total += a2 * pfq(THREE_F_TWO_QUARTER.with_argument(min(w2, 1.0)), cfg)
    else:
        total += a2 * three_f_two_quarter(min(w2, 1.0), sheet=-1)
    return total
