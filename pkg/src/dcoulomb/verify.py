"""Self-verification suites tying the closed forms to the independent numerics.

Each check exercises one documented property of the package: exact identities
run in integer/rational arithmetic and must come out identically zero, while
numeric checks (quadrature Gram matrices, finite-difference eigenvalues, ODE
residuals) are measured against fixed thresholds.  Checks are pure and
deterministic; a report is a list of CheckResult records sorted by check name
so the output order never depends on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hypersphere import (AngularChain, AngularRuleSet, HypersphericalPoint,
                          angular_laplacian_apply, harmonic_eval,
                          harmonic_inner_product)
from .radial import (count_radial_nodes, quantization, radial_ode_residual,
                     radial_wavefunction, solve_radial_numeric)
from .spectrum import (LevelIndex, PhysicalParams, casimir_energy_consistency,
                       degeneracy, energy_level, enumerate_level_states,
                       so_d_rep_dim)

# Structural caps: quadrature and eigensolver checks are validated up to
# d = 6 and exact combinatorics up to d = 10; larger requests are refused.
MAX_NUMERIC_D = 6
MAX_EXACT_D = 10
MAX_N = 50
MAX_L = 6

DEFAULT_THRESHOLDS = {
    "accidental-degeneracy": 2e-4,
    "angular-eigenvalue": 1e-4,
    "casimir-residual": 0.0,
    "degeneracy-identities": 0.0,
    "node-counts": 0.0,
    "numeric-spectrum": 1e-4,
    "numeric-spectrum-d2": 5e-4,
    "orthonormality": 1e-10,
    "radial-residual": 1e-8,
    "spectrum-closed-form": 1e-15,
}

CHECK_NAMES = tuple(sorted(DEFAULT_THRESHOLDS))

# Halving the step must shrink the eigenvalue error by at least this factor
# for the finite-difference stencil to count as second order (exact value 4).
_MIN_CONVERGENCE_RATIO = 2.5


@dataclass(frozen=True)
class CheckResult:
    """One verification outcome: measured error against its threshold."""

    name: str
    measured: float
    threshold: float
    passed: bool
    detail: str


def _result(name: str, measured: float, threshold: float, detail: str,
            extra_ok: bool = True) -> CheckResult:
    return CheckResult(name, measured, threshold,
                       bool(measured <= threshold) and extra_ok, detail)


# ======================================================================
# Exact checks (integer / rational arithmetic)
# ======================================================================

def check_spectrum_closed_form(params: PhysicalParams, d_max: int,
                               n_max: int, threshold: float) -> CheckResult:
    """Energies match the exact rational closed form to double precision."""
    worst = 0.0
    worst_at = (2, 0)
    mu, k, hbar = Fraction(params.mu), Fraction(params.k), Fraction(params.hbar)
    for d in range(2, d_max + 1):
        for n in range(n_max + 1):
            s = n + Fraction(d - 1, 2)
            expected = float(-mu * k ** 2 / (2 * hbar ** 2 * s ** 2))
            got = energy_level(LevelIndex(d, n), params)
            rel = abs(got - expected) / abs(expected)
            if rel > worst:
                worst, worst_at = rel, (d, n)
    detail = (f"max relative deviation {worst:.3e} at (d, n) = {worst_at} "
              f"over d <= {d_max}, n <= {n_max}; d = 3 follows the "
              f"-mu k^2/(2 hbar^2 (n+1)^2) sequence")
    return _result("spectrum-closed-form", worst, threshold, detail)


def check_casimir_residual(params: PhysicalParams, d_max: int,
                           n_max: int, threshold: float) -> CheckResult:
    """The rational energy/invariant residual is identically zero."""
    worst = Fraction(0)
    for d in range(2, d_max + 1):
        for n in range(n_max + 1):
            res = abs(casimir_energy_consistency(LevelIndex(d, n), params))
            worst = max(worst, res)
    detail = (f"max |rational residual| {float(worst):.3e} "
              f"over d <= {d_max}, n <= {n_max}")
    return _result("casimir-residual", float(worst), threshold, detail)


def check_degeneracy_identities(d_max: int, n_max: int,
                                threshold: float) -> CheckResult:
    """Branching sum, one-dimension-up multiplet, and binomial routes agree."""
    worst = 0
    for d in range(2, d_max + 1):
        for n in range(n_max + 1):
            g = degeneracy(LevelIndex(d, n))
            branch = sum(so_d_rep_dim(d, l) for l in range(n + 1))
            lifted = so_d_rep_dim(d + 1, n)
            # Harmonic polynomials of degree n in d+1 variables.
            binom = math.comb(n + d, d) - math.comb(n + d - 2, d)
            worst = max(worst, abs(branch - g), abs(lifted - g),
                        abs(binom - g))
            if d == 3:
                worst = max(worst, abs(g - (n + 1) ** 2))
    detail = (f"max |identity gap| {worst} over d <= {d_max}, n <= {n_max} "
              f"(branching sum, lifted multiplet, binomial difference)")
    return _result("degeneracy-identities", float(worst), threshold, detail)


# ======================================================================
# Angular checks (finite differences and exact quadrature)
# ======================================================================

def _sample_points(d: int, count: int = 5) -> list:
    # Generic interior angles: polar sines stay >= 0.6, azimuth varies.
    points = []
    for k in range(count):
        polar = tuple(0.8 + 0.35 * k + 0.06 * j for j in range(d - 2))
        azim = (0.9 + 0.4 * k) % (2.0 * math.pi)
        points.append(HypersphericalPoint(1.0, polar + (azim,)))
    return points


def _best_point(chain: AngularChain, points: list):
    best, best_mag = points[0], -1.0
    for pt in points:
        mag = abs(harmonic_eval(chain, pt))
        if mag > best_mag:
            best, best_mag = pt, mag
    return best, best_mag


def _eigenvalue_error(chain: AngularChain, pt: HypersphericalPoint,
                      step: float) -> float:
    lam = chain.top * (chain.top + chain.d - 2)
    ratio = angular_laplacian_apply(chain, pt, step) / harmonic_eval(chain, pt)
    return abs(ratio - lam) / max(lam, 1.0)


def check_angular_eigenvalue(d_max: int, l_max: int,
                             threshold: float) -> CheckResult:
    """FD Laplacian reproduces l (l + d - 2) with second-order convergence."""
    step = 1e-3
    worst = 0.0
    worst_at = "none"
    min_ratio = math.inf
    total = 0
    for d in range(2, d_max + 1):
        points = _sample_points(d)
        worst_d, worst_chain, worst_pt = -1.0, None, None
        for chain in enumerate_level_states(LevelIndex(d, l_max)):
            pt, mag = _best_point(chain, points)
            if mag < 1e-6:
                return _result("angular-eigenvalue", math.inf, threshold,
                               f"no usable sample point for {chain.label()}")
            err = _eigenvalue_error(chain, pt, step)
            total += 1
            if err > worst:
                worst, worst_at = err, f"d={d} chain={chain.label()}"
            if chain.top >= 2 and err > worst_d:
                worst_d, worst_chain, worst_pt = err, chain, pt
        if worst_chain is not None:
            coarse = _eigenvalue_error(worst_chain, worst_pt, 2.0 * step)
            min_ratio = min(min_ratio, coarse / max(worst_d, 1e-300))
    if math.isinf(min_ratio):
        converged = True
        ratio_note = "convergence n/a (no l >= 2 chains)"
    else:
        converged = min_ratio >= _MIN_CONVERGENCE_RATIO
        ratio_note = (f"min step-halving ratio {min_ratio:.2f} "
                      f"(needs >= {_MIN_CONVERGENCE_RATIO})")
    detail = (f"max relative eigenvalue error {worst:.3e} at {worst_at} "
              f"over {total} chains (l <= {l_max}, d <= {d_max}); {ratio_note}")
    return _result("angular-eigenvalue", worst, threshold, detail,
                   extra_ok=converged)


def check_orthonormality(d_max: int, l_max: int,
                         threshold: float) -> CheckResult:
    """Gram matrix of all chains up to l_max is the identity."""
    worst = 0.0
    worst_at = "none"
    total = 0
    for d in range(2, d_max + 1):
        chains = enumerate_level_states(LevelIndex(d, l_max))
        rules = AngularRuleSet.for_degree(d, l_max)
        total += len(chains)
        for i, ci in enumerate(chains):
            for cj in chains[i:]:
                val = harmonic_inner_product(ci, cj, rules)
                dev = abs(val - (1.0 if ci == cj else 0.0))
                if dev > worst:
                    worst = dev
                    worst_at = f"d={d} <{ci.label()}|{cj.label()}>"
    detail = (f"max |Gram - identity| {worst:.3e} at {worst_at} over "
              f"{total} chains (l <= {l_max}, d <= {d_max})")
    return _result("orthonormality", worst, threshold, detail)


# ======================================================================
# Radial checks (eigensolver, residuals, node counts)
# ======================================================================

def _numeric_spectrum_worst(params: PhysicalParams, dims) -> tuple:
    worst = 0.0
    worst_at = "none"
    for d in dims:
        for l in range(3):
            numeric = solve_radial_numeric(d, l, params, num_states=3)
            for j, e_num in enumerate(numeric):
                exact = quantization(d, l, j, params).energy
                rel = abs(e_num - exact) / abs(exact)
                if rel > worst:
                    worst, worst_at = rel, f"d={d} l={l} j={j}"
    return worst, worst_at


def check_numeric_spectrum(params: PhysicalParams, d_max: int,
                           threshold: float) -> CheckResult:
    """Eigensolver matches the closed form for d >= 3 at default grids."""
    dims = range(3, d_max + 1)
    worst, worst_at = _numeric_spectrum_worst(params, dims)
    detail = (f"max relative eigenvalue error {worst:.3e} at {worst_at} "
              f"(3 <= d <= {d_max}, l <= 2, three states each)")
    return _result("numeric-spectrum", worst, threshold, detail)


def check_numeric_spectrum_d2(params: PhysicalParams,
                              threshold: float) -> CheckResult:
    """d = 2 eigensolver cells, including the critical l = 0 column."""
    worst, worst_at = _numeric_spectrum_worst(params, (2,))
    detail = (f"max relative eigenvalue error {worst:.3e} at {worst_at} "
              f"(d = 2, l <= 2, three states each)")
    return _result("numeric-spectrum-d2", worst, threshold, detail)


def check_accidental_degeneracy(params: PhysicalParams,
                                threshold: float) -> CheckResult:
    """Numeric E(l=0, j=2) and E(l=2, j=0) coincide at d = 4 (same n = 2)."""
    e_a = solve_radial_numeric(4, 0, params, num_states=3)[2]
    e_b = solve_radial_numeric(4, 2, params, num_states=1)[0]
    scale = abs(energy_level(LevelIndex(4, 2), params))
    measured = abs(e_a - e_b) / scale
    detail = (f"relative split {measured:.3e} between numeric "
              f"E(l=0, j=2) = {e_a:.9f} and E(l=2, j=0) = {e_b:.9f} at d = 4")
    return _result("accidental-degeneracy", measured, threshold, detail)


def check_radial_residual(params: PhysicalParams, d_max: int,
                          threshold: float) -> CheckResult:
    """Closed-form states annihilate the radial operator to round-off."""
    worst = 0.0
    worst_at = "none"
    total = 0
    for d in range(2, d_max + 1):
        for l in range(4):
            for j in range(6):
                state = quantization(d, l, j, params)
                radii = np.logspace(-2.0, 1.5, 100) / state.kappa
                scale = state.kappa ** 2 * np.max(
                    np.abs(radial_wavefunction(state, radii)))
                rel = np.max(np.abs(radial_ode_residual(state, radii))) / scale
                total += 1
                if rel > worst:
                    worst, worst_at = rel, f"d={d} l={l} j={j}"
    detail = (f"max |residual| / (kappa^2 max|R|) = {worst:.3e} at {worst_at} "
              f"over {total} states (j <= 5, l <= 3, d <= {d_max})")
    return _result("radial-residual", worst, threshold, detail)


def check_node_counts(params: PhysicalParams, d_max: int,
                      threshold: float) -> CheckResult:
    """Interior sign changes of R equal the radial index j exactly."""
    worst = 0
    worst_at = "none"
    total = 0
    for d in range(2, d_max + 1):
        for l in range(4):
            for j in range(6):
                nodes = count_radial_nodes(quantization(d, l, j, params))
                total += 1
                if abs(nodes - j) > worst:
                    worst, worst_at = abs(nodes - j), f"d={d} l={l} j={j}"
    detail = (f"max |node count - j| = {worst} over {total} states "
              f"(j <= 5, l <= 3, d <= {d_max})")
    return _result("node-counts", float(worst), threshold, detail)


# ======================================================================
# Orchestration
# ======================================================================

def _threshold_for(name: str, overrides) -> float:
    value = DEFAULT_THRESHOLDS[name]
    if overrides:
        if "all" in overrides:
            value = float(overrides["all"])
        if name in overrides:
            value = float(overrides[name])
    return value


def run_all(params: PhysicalParams = PhysicalParams(),
            d_numeric: int = MAX_NUMERIC_D,
            d_exact: int = MAX_EXACT_D,
            n_max: int = 20,
            l_max: int | None = None,
            tol_overrides: dict | None = None) -> list:
    """Run every suite and return CheckResult records sorted by name.

    d_numeric caps the quadrature/eigensolver checks (2..6), d_exact the
    exact combinatorics (2..10), n_max the principal index range (<= 50)
    and l_max the angular degree of the eigenvalue/Gram checks (each check
    otherwise uses its documented default).  tol_overrides maps check names
    (or "all") to replacement thresholds; unknown names are refused.
    """
    if not 2 <= d_numeric <= MAX_NUMERIC_D:
        raise ValueError(
            f"numeric checks are validated for 2 <= d <= {MAX_NUMERIC_D}")
    if not 2 <= d_exact <= MAX_EXACT_D:
        raise ValueError(
            f"exact checks are validated for 2 <= d <= {MAX_EXACT_D}")
    if not 0 <= n_max <= MAX_N:
        raise ValueError(f"n_max must be in [0, {MAX_N}]")
    if l_max is not None and not 0 <= l_max <= MAX_L:
        raise ValueError(f"l_max must be in [0, {MAX_L}]")
    if tol_overrides:
        unknown = set(tol_overrides) - set(CHECK_NAMES) - {"all"}
        if unknown:
            raise ValueError(f"unknown check names: {sorted(unknown)}")
        if any(float(v) < 0 for v in tol_overrides.values()):
            raise ValueError("tolerance overrides must be >= 0")

    def tol(name):
        return _threshold_for(name, tol_overrides)

    results = [
        check_spectrum_closed_form(params, d_exact, n_max,
                                   tol("spectrum-closed-form")),
        check_casimir_residual(params, d_exact, n_max,
                               tol("casimir-residual")),
        check_degeneracy_identities(d_exact, n_max,
                                    tol("degeneracy-identities")),
        check_angular_eigenvalue(d_numeric, 4 if l_max is None else l_max,
                                 tol("angular-eigenvalue")),
        check_orthonormality(min(d_numeric, 5), 3 if l_max is None else l_max,
                             tol("orthonormality")),
        check_numeric_spectrum_d2(params, tol("numeric-spectrum-d2")),
        check_radial_residual(params, d_numeric, tol("radial-residual")),
        check_node_counts(params, d_numeric, tol("node-counts")),
    ]
    if d_numeric >= 3:
        results.append(check_numeric_spectrum(params, d_numeric,
                                              tol("numeric-spectrum")))
    if d_numeric >= 4:
        results.append(check_accidental_degeneracy(
            params, tol("accidental-degeneracy")))
    return sorted(results, key=lambda res: res.name)
