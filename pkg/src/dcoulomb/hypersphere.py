"""Hyperspherical coordinates, harmonics, and exact angular integration.

Chart convention for d >= 2 Cartesian coordinates:

    x_1     = r cos(theta_1)
    x_2     = r sin(theta_1) cos(theta_2)
    ...
    x_{d-1} = r sin(theta_1) ... sin(theta_{d-2}) cos(theta_{d-1})
    x_d     = r sin(theta_1) ... sin(theta_{d-2}) sin(theta_{d-1})

with polar angles theta_1 .. theta_{d-2} in [0, pi] and the azimuthal angle
theta_{d-1} in [0, 2 pi).  The flat metric is diagonal in this chart:
diag(1, r^2, r^2 sin^2 theta_1, ..., r^2 sin^2 theta_1 ... sin^2 theta_{d-2}).

Harmonics on S^{d-1} are labeled by a nondecreasing integer ladder
l_1 <= l_2 <= ... <= l_{d-1} plus a sign on the azimuthal index l_1:

    Y = e^{i s l_1 theta_{d-1}} / sqrt(2 pi)
        * prod_{k=2}^{d-1} N_k F_{l_k, l_{k-1}}(cos theta_{d-k})

where F_{l, m} is the associated Gegenbauer function of degree l, order m
and parameter (k - 1)/2, and N_k normalizes each factor under its own
weight (1 - x^2)^{(k-2)/2}.  Acting with the squared angular momentum gives
the eigenvalue l_{d-1} (l_{d-1} + d - 2).

All angular integrals are evaluated with Gauss rules chosen exact for the
integrand degree (Gauss-Legendre when the leftover (1 - x^2) power is an
integer, Gauss-Jacobi with weight sqrt(1 - x^2) when a half power remains,
and the periodic trapezoid rule on the azimuthal circle, which is exact for
trigonometric polynomials).  Orthonormality checks are therefore exact up
to round-off, never quadrature truncation.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import QuadratureRule, rule_for_degree
from .specialfn import GegenbauerParam, gegenbauer_derivative, normalize_angular_factor

_TWO_PI = 2.0 * math.pi


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class HypersphericalPoint:
    """Radius plus the d-1 angles of the chart above."""

    r: float
    angles: tuple

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("radius must be >= 0")
        if len(self.angles) < 1:
            raise ValueError("need at least one angle (d >= 2)")
        object.__setattr__(self, "angles", tuple(float(t) for t in self.angles))
        for t in self.angles[:-1]:
            if not 0.0 <= t <= math.pi:
                raise ValueError(f"polar angle {t} outside [0, pi]")
        if not 0.0 <= self.angles[-1] < _TWO_PI:
            raise ValueError(f"azimuthal angle {self.angles[-1]} outside [0, 2 pi)")

    @property
    def d(self) -> int:
        return len(self.angles) + 1


@dataclass(frozen=True)
class AngularChain:
    """Harmonic label: ladder (l_1, ..., l_{d-1}) ascending, plus azimuthal sign.

    ls[0] is the azimuthal index l_1 (on theta_{d-1}) and ls[-1] is the total
    angular degree l_{d-1}.  sign is +1 or -1 and is part of the label only
    when l_1 > 0; the zero-azimuthal state is canonically labeled +1.
    """

    ls: tuple
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ls", tuple(int(v) for v in self.ls))
        if len(self.ls) < 1:
            raise ValueError("chain needs at least one entry (d >= 2)")
        if any(v < 0 for v in self.ls):
            raise ValueError("ladder entries must be >= 0")
        if any(a > b for a, b in zip(self.ls, self.ls[1:])):
            raise ValueError(f"ladder {self.ls} is not nondecreasing")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.ls[0] == 0 and self.sign != 1:
            raise ValueError("sign is meaningless at l_1 = 0; use the canonical +1")

    @property
    def d(self) -> int:
        return len(self.ls) + 1

    @property
    def top(self) -> int:
        """Total angular degree l_{d-1}."""
        return self.ls[-1]

    def label(self) -> str:
        """Ladder rendered highest-first with the sign, e.g. '2,1,1,+'."""
        body = ",".join(str(v) for v in reversed(self.ls))
        return f"{body},{'+' if self.sign > 0 else '-'}"

    @classmethod
    def parse(cls, text: str) -> "AngularChain":
        """Inverse of label(); a trailing +/- is optional and defaults to +."""
        parts = [p.strip() for p in text.split(",") if p.strip() != ""]
        if not parts:
            raise ValueError("empty chain")
        sign = 1
        if parts[-1] in ("+", "-"):
            sign = 1 if parts.pop() == "+" else -1
        if not parts:
            raise ValueError("chain has a sign but no ladder entries")
        try:
            top_first = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"bad ladder entry in {text!r}") from exc
        return cls(tuple(reversed(top_first)), sign)


# ======================================================================
# Coordinate chart
# ======================================================================

def to_hyperspherical(x) -> HypersphericalPoint:
    """Cartesian vector (length >= 2) to chart coordinates.

    At chart degeneracies (the origin, or a zero tail of coordinates) the
    undetermined trailing angles are set to 0.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need a 1-D vector with at least two components")
    d = x.size
    r = float(np.linalg.norm(x))
    angles = []
    for i in range(d - 2):
        tail = float(np.linalg.norm(x[i + 1:]))
        angles.append(math.atan2(tail, x[i]))
    azim = math.atan2(x[d - 1], x[d - 2]) % _TWO_PI
    if azim >= _TWO_PI:  # guard the half-open interval against rounding
        azim = 0.0
    angles.append(azim)
    return HypersphericalPoint(r, tuple(angles))


def to_cartesian(p: HypersphericalPoint) -> np.ndarray:
    """Chart coordinates back to the Cartesian vector."""
    d = p.d
    out = np.empty(d)
    running = p.r
    for i in range(d - 1):
        out[i] = running * math.cos(p.angles[i])
        running *= math.sin(p.angles[i])
    out[d - 1] = running
    return out


def metric_diagonal(p: HypersphericalPoint) -> np.ndarray:
    """Diagonal metric components (g_rr, g_{theta_1 theta_1}, ...).

    Entry 0 is 1; entry i >= 1 is r^2 sin^2 theta_1 ... sin^2 theta_{i-1}.
    """
    d = p.d
    out = np.empty(d)
    out[0] = 1.0
    running = p.r * p.r
    for i in range(1, d):
        out[i] = running
        running *= math.sin(p.angles[i - 1]) ** 2
    return out


def sphere_surface_measure(d: int) -> float:
    """Total surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2)."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


# ======================================================================
# Harmonics
# ======================================================================

def _factor_alpha(level: int) -> float:
    # Gegenbauer parameter of the ladder-level-k polar factor.
    return (level - 1) / 2.0


def _factor_rule(degree: int, order: int, level: int) -> QuadratureRule:
    # Rule exact for the squared-factor norm integrand at this level.
    # Total (1 - x^2) power is order + (level - 2)/2; a half power is left
    # over exactly when the level is odd.
    half = (level % 2) == 1
    poly_degree = 2 * degree + level - 2 - (1 if half else 0)
    return rule_for_degree(poly_degree, half_weight=half)


@lru_cache(maxsize=None)
def _factor_norm(degree: int, order: int, level: int) -> float:
    p = GegenbauerParam(degree, _factor_alpha(level), order)
    return normalize_angular_factor(p, _factor_rule(degree, order, level))


def _factor_value(degree: int, order: int, level: int, x: float) -> float:
    """Normalized polar factor N F_{degree,order} at x = cos(theta).

    Evaluated in log-magnitude/sign form so that large-order factors, whose
    (1 - x^2)^(m/2) and polynomial parts separately leave double range,
    still combine to a finite value.
    """
    norm = _factor_norm(degree, order, level)
    h = gegenbauer_derivative(degree, _factor_alpha(level), order, x)
    if order == 0:
        return norm * h
    s2 = 1.0 - x * x
    if s2 <= 0.0 or h == 0.0:
        return 0.0
    mag = math.log(norm) + 0.5 * order * math.log(s2) + math.log(abs(h))
    return math.copysign(math.exp(mag), h)


def harmonic_eval(chain: AngularChain, point: HypersphericalPoint) -> complex:
    """Value of the harmonic labeled by chain at the given angles.

    The radius of the point is ignored; harmonics live on the sphere.  The
    result is complex through the azimuthal phase e^{i s l_1 theta_{d-1}}.
    """
    d = chain.d
    if point.d != d:
        raise ValueError(f"chain is for d={d} but point has d={point.d}")
    m_signed = chain.sign * chain.ls[0]
    value = complex(math.cos(m_signed * point.angles[-1]),
                    math.sin(m_signed * point.angles[-1])) / math.sqrt(_TWO_PI)
    for k in range(2, d):
        x = math.cos(point.angles[d - k - 1])
        value *= _factor_value(chain.ls[k - 1], chain.ls[k - 2], k, x)
    return value


# ======================================================================
# Squared angular momentum by nested central differences
# ======================================================================

_MIN_STEP = 1e-5
_MAX_STEP = 1e-2


def angular_laplacian_apply(chain: AngularChain, point: HypersphericalPoint,
                            step: float = 1e-3) -> complex:
    """Apply the squared angular momentum to the chain's harmonic at a point.

    Uses the recursive structure

        L2_(2)   = -d^2/dtheta_{d-1}^2
        L2_(k+1) = -[d^2/dtheta^2 + (k-1) cot(theta) d/dtheta]
                   + L2_(k) / sin^2(theta),   theta = theta_{d-k}

    with second-order central differences at each level, so the result
    approaches l_{d-1}(l_{d-1} + d - 2) * Y with O(step^2) error.  The point
    must be interior: every polar sine at least 10 * step, and the step
    within [1e-5, 1e-2] to keep truncation and cancellation balanced.
    """
    d = chain.d
    if point.d != d:
        raise ValueError(f"chain is for d={d} but point has d={point.d}")
    if not _MIN_STEP <= step <= _MAX_STEP:
        raise ValueError(f"step {step} outside [{_MIN_STEP}, {_MAX_STEP}]")
    for t in point.angles[:-1]:
        if math.sin(t) < 10.0 * step:
            raise ValueError("point too close to a pole for the stencil")

    angles = list(point.angles)

    def eval_shifted(index: int, delta: float) -> complex:
        shifted = angles.copy()
        shifted[index] += delta
        if index == d - 2:  # azimuthal angle is periodic
            shifted[index] %= _TWO_PI
        return harmonic_eval(chain, HypersphericalPoint(point.r, tuple(shifted)))

    center = harmonic_eval(chain, point)
    h2 = step * step

    # Innermost level: plain second derivative in the azimuthal angle.
    plus = eval_shifted(d - 2, step)
    minus = eval_shifted(d - 2, -step)
    total = -(plus - 2.0 * center + minus) / h2

    for level in range(3, d + 1):
        j = level - 1
        idx = d - j - 1  # 0-based index of theta_{d-j}
        theta = angles[idx]
        plus = eval_shifted(idx, step)
        minus = eval_shifted(idx, -step)
        second = (plus - 2.0 * center + minus) / h2
        first = (plus - minus) / (2.0 * step)
        total = (-(second + (j - 1) / math.tan(theta) * first)
                 + total / math.sin(theta) ** 2)
    return total


# ======================================================================
# Inner products by factorized exact quadrature
# ======================================================================

@dataclass(frozen=True, eq=False)
class AngularRuleSet:
    """Per-angle rules able to integrate harmonic pairs up to a given degree."""

    d: int
    l_max: int
    azimuthal_points: int
    polar: dict  # (level, half_weight) -> QuadratureRule

    @classmethod
    def for_degree(cls, d: int, l_max: int) -> "AngularRuleSet":
        if d < 2:
            raise ValueError("d must be >= 2")
        if l_max < 0:
            raise ValueError("l_max must be >= 0")
        polar = {}
        for level in range(2, d):
            polar[(level, False)] = rule_for_degree(2 * l_max + level - 2, False)
            polar[(level, True)] = rule_for_degree(2 * l_max + level - 3, True)
        return cls(d, l_max, 2 * l_max + 2, polar)


def harmonic_inner_product(a: AngularChain, b: AngularChain,
                           rules: AngularRuleSet | None = None) -> complex:
    """Inner product integral conj(Y_a) Y_b over S^{d-1}.

    The integral factorizes into one exactly-integrated 1-D integral per
    angle.  If an explicit rule set cannot cover the integrand degree at
    some level, the computation is refused rather than approximated.
    """
    if a.d != b.d:
        raise ValueError("chains live on spheres of different dimension")
    d = a.d
    if rules is None:
        rules = AngularRuleSet.for_degree(d, max(a.top, b.top))
    if rules.d != d:
        raise ValueError(f"rule set is for d={rules.d}, chains for d={d}")

    # Azimuthal circle: periodic trapezoid, exact for trig degree < points.
    m_a = a.sign * a.ls[0]
    m_b = b.sign * b.ls[0]
    if rules.azimuthal_points <= abs(m_b - m_a):
        raise ValueError("azimuthal rule has too few points for these chains")
    theta = np.arange(rules.azimuthal_points) * (_TWO_PI / rules.azimuthal_points)
    result = complex(np.mean(np.exp(1j * (m_b - m_a) * theta)))

    for k in range(2, d):
        deg_a, ord_a = a.ls[k - 1], a.ls[k - 2]
        deg_b, ord_b = b.ls[k - 1], b.ls[k - 2]
        # Total (1-x^2) power: (ord_a + ord_b)/2 from the factors plus the
        # measure's (k-2)/2; a half power remains iff ord_a + ord_b + k is odd.
        half = (ord_a + ord_b + k) % 2 == 1
        absorbed = (ord_a + ord_b + k - 2 - (1 if half else 0)) // 2
        poly_degree = (deg_a - ord_a) + (deg_b - ord_b) + 2 * absorbed
        rule = rules.polar.get((k, half))
        if rule is None or rule.exact_degree < poly_degree:
            raise ValueError(
                f"quadrature at level {k} not exact for degree {poly_degree}; refusing")
        x = rule.nodes
        alpha = _factor_alpha(k)
        vals = (gegenbauer_derivative(deg_a, alpha, ord_a, x)
                * gegenbauer_derivative(deg_b, alpha, ord_b, x)
                * (1.0 - x * x) ** absorbed)
        integral = float(np.dot(rule.weights, vals))
        result *= (_factor_norm(deg_a, ord_a, k) * _factor_norm(deg_b, ord_b, k)
                   * integral)
    return result
