"""Gegenbauer polynomials, their associated functions, and the Kummer series.

Everything here is evaluated by stable ascending recurrences or terminating
series, never through floating-point Gamma-function ratios.  The associated
functions

    G(x) = (1 - x^2)^(m/2) d^m/dx^m C_l^(alpha)(x)

are the polar building blocks of hyperspherical harmonics; the confluent
series M(a, c, x) terminates for non-positive integer a and supplies the
polynomial part of the bound-state radial functions.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureRule

_MAX_SERIES_TERMS = 500
_SERIES_X_BOUND = 50.0
_NORM_FLOOR = 1e-300


@dataclass(frozen=True)
class GegenbauerParam:
    """Degree l, parameter alpha, and associated order m of a Gegenbauer factor.

    alpha must exceed -1/2 so that the orthogonality weight
    (1 - x^2)^(alpha - 1/2) is integrable; the order satisfies 0 <= m <= l.
    """

    l: int
    alpha: float
    m: int = 0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("degree l must be >= 0")
        if self.alpha <= -0.5:
            raise ValueError("alpha must be > -1/2 for an integrable weight")
        if self.m < 0:
            raise ValueError("order m must be >= 0")
        if self.m > self.l:
            raise ValueError(f"order m={self.m} exceeds degree l={self.l}")


def _rising(a: float, n: int) -> float:
    """Rising factorial a (a+1) ... (a+n-1)."""
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def gegenbauer(l: int, alpha: float, x):
    """Evaluate C_l^(alpha)(x) by the ascending three-term recurrence.

    Parameters
    ----------
    l : int
        Polynomial degree, >= 0.
    alpha : float
        Gegenbauer parameter, > -1/2.
    x : float or ndarray
        Evaluation point(s) in [-1, 1].

    Returns
    -------
    float or ndarray matching the shape of x.
    """
    if l < 0:
        raise ValueError("degree l must be >= 0")
    if alpha <= -0.5:
        raise ValueError("alpha must be > -1/2")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    prev = np.ones_like(x)
    if l == 0:
        return float(prev) if scalar else prev
    cur = 2.0 * alpha * x
    for j in range(2, l + 1):
        cur, prev = (2.0 * (j + alpha - 1.0) * x * cur
                     - (j + 2.0 * alpha - 2.0) * prev) / j, cur
    return float(cur) if scalar else cur


def gegenbauer_derivative(l: int, alpha: float, m: int, x):
    """m-th derivative of C_l^(alpha) via the ladder d/dx C_l^(a) = 2a C_{l-1}^(a+1).

    Returns the exact polynomial 2^m (alpha)_m C_{l-m}^(alpha+m)(x), which is
    identically zero when m > l.
    """
    if m < 0:
        raise ValueError("derivative order m must be >= 0")
    if m > l:
        return 0.0 if np.ndim(x) == 0 else np.zeros(np.shape(x))
    scale = 2.0 ** m * _rising(alpha, m)
    return scale * gegenbauer(l - m, alpha + m, x)


def associated_gegenbauer(p: GegenbauerParam, x):
    """Associated Gegenbauer function (1 - x^2)^(m/2) d^m/dx^m C_l^(alpha)(x).

    The sign convention is fixed by the ladder itself: for alpha > 0 the
    function is positive as x -> 1^-.  Orders m > l are rejected by
    GegenbauerParam construction rather than silently returning zero.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    val = gegenbauer_derivative(p.l, p.alpha, p.m, x)
    if p.m > 0:
        val = val * (1.0 - x * x) ** (0.5 * p.m)
    val = np.asarray(val, dtype=float)
    return float(val) if scalar else val


def normalize_angular_factor(p: GegenbauerParam, rule: QuadratureRule) -> float:
    """Positive constant N with integral (N G)^2 (1-x^2)^(alpha-1/2) dx = 1.

    The rule must carry weight exponent w such that m + alpha - 1/2 - w is a
    nonnegative integer (the whole (1 - x^2) powers are absorbed into the
    integrand) and be exact for the resulting polynomial degree.
    """
    doubled = 2 * p.m + 2.0 * p.alpha - 1.0 - 2.0 * rule.weight_exponent
    absorbed = int(round(doubled / 2.0))
    if abs(doubled - 2 * absorbed) > 1e-12 or absorbed < 0:
        raise ValueError(
            "rule weight exponent %r incompatible with alpha=%r, m=%d"
            % (rule.weight_exponent, p.alpha, p.m))
    degree = 2 * (p.l - p.m) + 2 * absorbed
    if rule.exact_degree < degree:
        raise ValueError(
            f"rule exact through degree {rule.exact_degree}, "
            f"but the norm integrand has degree {degree}")
    h = gegenbauer_derivative(p.l, p.alpha, p.m, rule.nodes)
    integrand = h * h * (1.0 - rule.nodes ** 2) ** absorbed
    norm_sq = float(np.dot(rule.weights, integrand))
    if not norm_sq > _NORM_FLOOR:
        raise ValueError(f"norm integral {norm_sq!r} is non-positive or below floor")
    return 1.0 / math.sqrt(norm_sq)


def kummer_m(a: float, c: float, x: float) -> float:
    """Confluent series M(a, c, x) = sum_t (a)_t x^t / ((c)_t t!).

    Terminates exactly after |a| + 1 terms when a is a non-positive integer
    (the only case the radial module relies on).  Otherwise the series is
    summed to machine-precision term ratio; non-terminating requests with
    |x| > 50 lie outside the validated region and are refused.
    """
    a = float(a)
    c = float(c)
    x = float(x)
    terminating = a <= 0.0 and a.is_integer()
    if c <= 0.0 and c.is_integer():
        if not (terminating and -a <= -c):
            raise ValueError(
                f"c={c} hits a pole of the series; only terminating a with |a| <= |c| allowed")
    if terminating:
        num_terms = int(-a)
        term = 1.0
        total = 1.0
        for t in range(num_terms):
            term *= (a + t) * x / ((c + t) * (t + 1))
            total += term
        return total
    if abs(x) > _SERIES_X_BOUND:
        raise ValueError(f"non-terminating series with |x| > {_SERIES_X_BOUND} refused")
    term = 1.0
    total = 1.0
    small_streak = 0
    for t in range(_MAX_SERIES_TERMS):
        term *= (a + t) * x / ((c + t) * (t + 1))
        total += term
        if abs(term) <= np.finfo(float).eps * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    raise ValueError("series failed to converge within the term budget")


def gegenbauer_ode_residual(p: GegenbauerParam, x) -> float:
    """Residual of the associated ultraspherical equation at x.

    Evaluates, with analytic derivatives throughout,

        (1-x^2) G'' - (2 alpha + 1) x G'
            + [l (l + 2 alpha) - m (m + 2 alpha - 1) / (1-x^2)] G

    for G = associated_gegenbauer(p, .), which vanishes identically.  The
    returned number is floating-point noise whose size measures the
    round-off of the evaluation scheme.  x must be strictly interior; the
    terms are well conditioned for |x| <= 1 - 1e-8 or so.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise ValueError("x must lie strictly inside (-1, 1)")
    l, alpha, m = p.l, p.alpha, p.m
    s2 = 1.0 - x * x
    h0 = gegenbauer_derivative(l, alpha, m, x)
    h1 = gegenbauer_derivative(l, alpha, m + 1, x)
    h2 = gegenbauer_derivative(l, alpha, m + 2, x)
    if m == 0:
        g0, g1, g2 = h0, h1, h2
    else:
        w0 = s2 ** (0.5 * m)
        w1 = -m * x * s2 ** (0.5 * m - 1.0)
        w2 = (-m * s2 ** (0.5 * m - 1.0)
              + m * (m - 2.0) * x * x * s2 ** (0.5 * m - 2.0))
        g0 = w0 * h0
        g1 = w1 * h0 + w0 * h1
        g2 = w2 * h0 + 2.0 * w1 * h1 + w0 * h2
    res = (s2 * g2 - (2.0 * alpha + 1.0) * x * g1
           + (l * (l + 2.0 * alpha) - m * (m + 2.0 * alpha - 1.0) / s2) * g0)
    return float(res) if scalar else res
