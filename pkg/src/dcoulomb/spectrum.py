"""Closed-form bound-state spectrum and degeneracy combinatorics.

The attractive 1/r problem in d spatial dimensions has bound-state energies

    E_n = - mu k^2 / (2 hbar^2 (n + (d-1)/2)^2),    n = 0, 1, 2, ...

and each level carries the dimension of one irreducible multiplet of the
hidden rotation group in d+1 dimensions.  Everything in this module is
closed form; the combinatorics are exact integers obtained by factorial
cancellation (never floating-point Gamma ratios) and the energy/Casimir
consistency check runs in exact rational arithmetic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .hypersphere import AngularChain

DEFAULT_MAX_STATES = 1_000_000


@dataclass(frozen=True)
class PhysicalParams:
    """Mass mu, coupling k, and hbar of H = -(hbar^2 / 2 mu) Lap - k / r."""

    mu: float = 1.0
    k: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mu > 0 and self.k > 0 and self.hbar > 0):
            raise ValueError("mu, k and hbar must all be positive")


@dataclass(frozen=True)
class LevelIndex:
    """Dimension d >= 2 and principal index n >= 0 of one bound level."""

    d: int
    n: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError("d must be an integer >= 2")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be an integer >= 0")


def energy_level(idx: LevelIndex, params: PhysicalParams = PhysicalParams()) -> float:
    """Bound-state energy E_n = -mu k^2 / (2 hbar^2 (n + (d-1)/2)^2)."""
    s = idx.n + (idx.d - 1) / 2.0
    return -params.mu * params.k ** 2 / (2.0 * params.hbar ** 2 * s * s)


def casimir_eigenvalue(idx: LevelIndex, params: PhysicalParams = PhysicalParams()) -> float:
    """Eigenvalue n (n + d - 1) hbar^2 of the conserved quadratic invariant."""
    return idx.n * (idx.n + idx.d - 1) * params.hbar ** 2


def casimir_energy_consistency(idx: LevelIndex,
                               params: PhysicalParams = PhysicalParams()) -> Fraction:
    """Exact rational residual of the Casimir/energy identity; always 0.

    The invariant eigenvalue and the energy satisfy

        n (n + d - 1) = -((d-1)/2)^2 - mu k^2 / (2 E_n hbar^2),

    equivalently (n + (d-1)/2)^2 = -mu k^2 / (2 E_n hbar^2), which is the
    relation the closed-form energy solves.  Both sides are evaluated as
    exact Fractions (floats convert to their exact binary values, so rational
    parameters stay rational) and the difference is returned.
    """
    mu, k, hbar = Fraction(params.mu), Fraction(params.k), Fraction(params.hbar)
    half = Fraction(idx.d - 1, 2)
    s = idx.n + half
    energy = -mu * k ** 2 / (2 * hbar ** 2 * s ** 2)
    return (Fraction(idx.n * (idx.n + idx.d - 1)) + half ** 2
            + mu * k ** 2 / (2 * energy * hbar ** 2))


def so_d_rep_dim(d: int, l: int) -> int:
    """Dimension of the degree-l harmonic multiplet under rotations in d dims.

    Exact integer (2l + d - 2) (l + d - 3)! / ((d - 2)! l!); for d = 2 the
    multiplets are 1-dimensional at l = 0 and 2-dimensional otherwise.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if l < 0:
        raise ValueError("l must be >= 0")
    if d == 2:
        return 1 if l == 0 else 2
    return ((2 * l + d - 2) * math.factorial(l + d - 3)
            // (math.factorial(d - 2) * math.factorial(l)))


def degeneracy(idx: LevelIndex) -> int:
    """Number of independent states at level n: the d+1-dimensional multiplet.

    Equals (2n + d - 1) (n + d - 2)! / (n! (d - 1)!), i.e. so_d_rep_dim of
    degree n one dimension up, and also the sum of so_d_rep_dim(d, l) over
    l = 0..n (the branching of the level into rotation multiplets).
    """
    return so_d_rep_dim(idx.d + 1, idx.n)


def enumerate_level_states(idx: LevelIndex,
                           max_states: int = DEFAULT_MAX_STATES) -> list:
    """All angular chains of level n: ladders with l_{d-1} <= n, plus signs.

    Chains are ordered lexicographically on the top-first ladder with +
    before -, matching the label() rendering.  Levels whose degeneracy
    exceeds max_states are refused outright so a typo cannot allocate an
    astronomical list.
    """
    count = degeneracy(idx)
    if count > max_states:
        raise ValueError(
            f"level (d={idx.d}, n={idx.n}) holds {count} states, "
            f"exceeding max_states={max_states}")
    num_entries = idx.d - 1
    out = []

    def descend(top_down):
        if len(top_down) == num_entries:
            ls = tuple(reversed(top_down))
            out.append(AngularChain(ls, 1))
            if ls[0] > 0:
                out.append(AngularChain(ls, -1))
            return
        for v in range(top_down[-1] + 1):
            descend(top_down + [v])

    for top in range(idx.n + 1):
        descend([top])
    assert len(out) == count
    return out
