"""Gauss quadrature rules on [-1, 1] with explicit weight bookkeeping.

After the substitution x = cos(theta), angular integrals over a polar angle
take the form

    integral_{-1}^{1} f(x) (1 - x^2)^w dx

with f a polynomial and w an integer or half-integer.  Whole powers of
(1 - x^2) are absorbed into the integrand and handled exactly by plain
Gauss-Legendre rules; a leftover half power needs a Gauss-Jacobi rule with
weight sqrt(1 - x^2).  Every rule records the largest polynomial degree it
integrates exactly so that callers can refuse an under-resolved integral
instead of silently truncating it.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes/weights approximating integral f(x) (1-x^2)^weight_exponent dx.

    The approximation sum(weights * f(nodes)) is exact whenever f is a
    polynomial of degree <= exact_degree.  weight_exponent is 0.0 for
    Gauss-Legendre and 0.5 for the sqrt(1 - x^2) Gauss-Jacobi rules.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int
    weight_exponent: float = 0.0

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must have matching shapes")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def integrate(self, f) -> float:
        """Integrate a callable f against this rule's weight."""
        return float(np.dot(self.weights, f(self.nodes)))


@lru_cache(maxsize=None)
def gauss_legendre(num_points: int) -> QuadratureRule:
    """Gauss-Legendre rule: weight 1, exact through degree 2*num_points - 1."""
    if num_points < 1:
        raise ValueError("num_points must be >= 1")
    nodes, weights = leggauss(num_points)
    return QuadratureRule(nodes, weights, 2 * num_points - 1, 0.0)


@lru_cache(maxsize=None)
def gauss_jacobi_half(num_points: int) -> QuadratureRule:
    """Gauss-Jacobi rule for weight sqrt(1 - x^2), exact through 2*num_points - 1."""
    if num_points < 1:
        raise ValueError("num_points must be >= 1")
    nodes, weights = roots_jacobi(num_points, 0.5, 0.5)
    return QuadratureRule(nodes, weights, 2 * num_points - 1, 0.5)


def rule_for_degree(degree: int, half_weight: bool = False) -> QuadratureRule:
    """Smallest cached rule exact for polynomials of the given degree."""
    num_points = max(degree, 0) // 2 + 1
    return gauss_jacobi_half(num_points) if half_weight else gauss_legendre(num_points)
