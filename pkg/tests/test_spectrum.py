"""Spectrum, Casimir, and degeneracy tests.

The combinatorial claims are checked against two oracles that share no code
with the package: a brute-force count of harmonic (traceless) polynomials by
Laplacian matrix rank, and a direct enumeration count of signed ladders.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcoulomb import (
    LevelIndex,
    PhysicalParams,
    casimir_eigenvalue,
    casimir_energy_consistency,
    degeneracy,
    energy_level,
    enumerate_level_states,
    so_d_rep_dim,
)

UNIT = PhysicalParams()


# ======================================================================
# Oracles (independent reimplementations, no shared code paths)
# ======================================================================

def _monomials(d, degree):
    # exponent tuples summing to degree
    if d == 1:
        yield (degree,)
        return
    for head in range(degree + 1):
        for tail in _monomials(d - 1, degree - head):
            yield (head,) + tail


def _harmonic_poly_dim(d, l):
    """dim of degree-l harmonic polynomials in d variables, by matrix rank."""
    monos = list(_monomials(d, l))
    if l < 2:
        return len(monos)
    lower = {m: i for i, m in enumerate(_monomials(d, l - 2))}
    mat = np.zeros((len(lower), len(monos)))
    for col, mono in enumerate(monos):
        for axis, e in enumerate(mono):
            if e >= 2:
                image = list(mono)
                image[axis] -= 2
                mat[lower[tuple(image)], col] += e * (e - 1)
    return len(monos) - int(np.linalg.matrix_rank(mat))


def _count_signed_ladders(entries, cap):
    """Number of nondecreasing ladders of given length, top <= cap, signed."""
    if entries == 1:
        return 1 + 2 * cap
    return sum(_count_signed_ladders(entries - 1, t) for t in range(cap + 1))


# Rank oracle output, frozen: _harmonic_poly_dim(d, l) for l = 0..4.
TRACELESS_DIMS = {
    2: [1, 2, 2, 2, 2],
    3: [1, 3, 5, 7, 9],
    4: [1, 4, 9, 16, 25],
    5: [1, 5, 14, 30, 55],
}

# Ladder-count oracle output, frozen.
DEGENERACY_VALUES = {
    (2, 5): 11,
    (3, 5): 36,
    (4, 2): 14,
    (5, 3): 50,
    (6, 4): 182,
    (10, 20): 16921905,
}


# ======================================================================
# energy_level
# ======================================================================

def test_energy_frozen_examples():
    assert energy_level(LevelIndex(3, 0), UNIT) == -0.5
    assert energy_level(LevelIndex(5, 0), UNIT) == -0.125
    assert energy_level(LevelIndex(2, 0), UNIT) == -2.0


def test_energy_matches_exact_rational_form():
    for d in range(2, 11):
        for n in range(21):
            s = n + Fraction(d - 1, 2)
            expected = float(-1 / (2 * s * s))
            assert energy_level(LevelIndex(d, n), UNIT) == pytest.approx(
                expected, rel=1e-15)


def test_energy_approaches_zero_from_below():
    energies = [energy_level(LevelIndex(3, n), UNIT) for n in range(60)]
    assert all(e < 0 for e in energies)
    assert energies[-1] > -1e-3


def test_energy_strictly_increasing_in_n_and_d():
    for d in range(2, 8):
        levels = [energy_level(LevelIndex(d, n), UNIT) for n in range(12)]
        assert all(a < b for a, b in zip(levels, levels[1:]))
    for n in range(5):
        by_d = [energy_level(LevelIndex(d, n), UNIT) for d in range(2, 10)]
        assert all(a < b for a, b in zip(by_d, by_d[1:]))


def test_energy_scaling_law():
    base = energy_level(LevelIndex(4, 1), UNIT)
    assert energy_level(LevelIndex(4, 1), PhysicalParams(mu=2.0)) == 2 * base
    assert energy_level(LevelIndex(4, 1), PhysicalParams(k=3.0)) == \
        pytest.approx(9 * base, rel=1e-15)
    assert energy_level(LevelIndex(4, 1), PhysicalParams(hbar=2.0)) == \
        base / 4


def test_level_index_validation():
    with pytest.raises(ValueError):
        LevelIndex(1, 0)
    with pytest.raises(ValueError):
        LevelIndex(3, -1)
    with pytest.raises(ValueError):
        PhysicalParams(mu=0.0)
    with pytest.raises(ValueError):
        PhysicalParams(hbar=-1.0)


# ======================================================================
# casimir
# ======================================================================

def test_casimir_frozen_examples():
    assert casimir_eigenvalue(LevelIndex(7, 0), UNIT) == 0.0
    assert casimir_eigenvalue(LevelIndex(3, 1), UNIT) == 3.0
    assert casimir_eigenvalue(LevelIndex(4, 2), UNIT) == 10.0
    assert casimir_eigenvalue(LevelIndex(3, 1), PhysicalParams(hbar=2.0)) \
        == 12.0


def test_casimir_consistency_examples_exactly_zero():
    for d, n in [(3, 2), (7, 5), (4, 0)]:
        res = casimir_energy_consistency(LevelIndex(d, n), UNIT)
        assert isinstance(res, Fraction)
        assert res == 0


@given(d=st.integers(2, 10), n=st.integers(0, 20),
       mu=st.floats(0.01, 100.0), k=st.floats(0.01, 100.0),
       hbar=st.floats(0.01, 100.0))
@settings(max_examples=150)
def test_casimir_consistency_any_float_params(d, n, mu, k, hbar):
    # floats convert exactly to rationals, so the identity stays exact
    params = PhysicalParams(mu, k, hbar)
    assert casimir_energy_consistency(LevelIndex(d, n), params) == 0


# ======================================================================
# so_d_rep_dim and degeneracy
# ======================================================================

def test_rep_dim_matches_traceless_tensor_rank_oracle():
    for d, frozen in TRACELESS_DIMS.items():
        live = [_harmonic_poly_dim(d, l) for l in range(5)]
        assert live == frozen
        assert [so_d_rep_dim(d, l) for l in range(5)] == frozen


def test_rep_dim_frozen_examples():
    assert [so_d_rep_dim(3, l) for l in range(11)] == \
        [2 * l + 1 for l in range(11)]
    assert all(so_d_rep_dim(d, 0) == 1 for d in range(2, 12))
    assert so_d_rep_dim(4, 1) == 4


def test_rep_dim_validation():
    with pytest.raises(ValueError):
        so_d_rep_dim(1, 0)
    with pytest.raises(ValueError):
        so_d_rep_dim(3, -1)


def test_degeneracy_frozen_examples():
    assert [degeneracy(LevelIndex(3, n)) for n in range(11)] == \
        [(n + 1) ** 2 for n in range(11)]
    assert degeneracy(LevelIndex(4, 1)) == 5
    assert all(degeneracy(LevelIndex(d, 0)) == 1 for d in range(2, 12))
    for (d, n), g in DEGENERACY_VALUES.items():
        assert _count_signed_ladders(d - 1, n) == g
        assert degeneracy(LevelIndex(d, n)) == g


def test_branching_identity_exact():
    for d in range(2, 11):
        for n in range(21):
            g = degeneracy(LevelIndex(d, n))
            assert g == sum(so_d_rep_dim(d, l) for l in range(n + 1))
            assert g == so_d_rep_dim(d + 1, n)


@given(d=st.integers(2, 8), n=st.integers(0, 12))
@settings(max_examples=100)
def test_degeneracy_equals_ladder_count(d, n):
    assert degeneracy(LevelIndex(d, n)) == _count_signed_ladders(d - 1, n)


# ======================================================================
# enumerate_level_states
# ======================================================================

def test_enumeration_frozen_d3_n1():
    labels = [c.label() for c in enumerate_level_states(LevelIndex(3, 1))]
    assert labels == ["0,0,+", "1,0,+", "1,1,+", "1,1,-"]


def test_enumeration_sizes():
    assert len(enumerate_level_states(LevelIndex(2, 0))) == 1
    assert len(enumerate_level_states(LevelIndex(4, 1))) == 5
    for d, n in itertools.product(range(2, 7), range(4)):
        states = enumerate_level_states(LevelIndex(d, n))
        assert len(states) == degeneracy(LevelIndex(d, n))
        assert len(set(states)) == len(states)


def test_enumeration_chains_are_valid_ladders():
    for chain in enumerate_level_states(LevelIndex(5, 3)):
        assert len(chain.ls) == 4
        assert all(a <= b for a, b in zip(chain.ls, chain.ls[1:]))
        assert chain.top <= 3
        if chain.ls[0] == 0:
            assert chain.sign == 1


def test_enumeration_resource_cap():
    with pytest.raises(ValueError, match="max_states"):
        enumerate_level_states(LevelIndex(10, 20), max_states=1000)


def test_enumeration_cap_boundary():
    g = degeneracy(LevelIndex(4, 2))
    assert len(enumerate_level_states(LevelIndex(4, 2), max_states=g)) == g
    with pytest.raises(ValueError):
        enumerate_level_states(LevelIndex(4, 2), max_states=g - 1)
