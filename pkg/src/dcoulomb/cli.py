"""Command-line reports over the library: spectrum tables, degeneracy
enumeration, harmonic evaluation, the radial eigensolver, and the
self-verification suites.

Output goes to stdout as JSON (default) or CSV and is byte-deterministic
for a fixed invocation: floats are rounded to the configured precision
before serialization.  Exit codes: 0 on success, 1 when a verification
or containment check fails, 2 on bad arguments (single-line diagnostic
on stderr).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import verify as verify_mod
from .hypersphere import (AngularChain, AngularRuleSet, HypersphericalPoint,
                          harmonic_eval, harmonic_inner_product)
from .radial import RadialGrid, default_radial_grid, quantization, \
    solve_radial_numeric
from .spectrum import (DEFAULT_MAX_STATES, LevelIndex, PhysicalParams,
                       casimir_eigenvalue, degeneracy, energy_level,
                       enumerate_level_states, so_d_rep_dim)


class _Parser(argparse.ArgumentParser):
    # Replace argparse's usage dump with the single-line diagnostic the
    # exit-code contract asks for.
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _int_at_least(lo: int, name: str):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if value < lo:
            raise argparse.ArgumentTypeError(f"{name} must be >= {lo}")
        return value
    return convert


def _int_in(lo: int, hi: int, name: str):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if not lo <= value <= hi:
            raise argparse.ArgumentTypeError(
                f"{name} must be in [{lo}, {hi}]")
        return value
    return convert


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a number")
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default json)")
    parser.add_argument("--precision", type=_int_in(4, 17, "precision"),
                        default=12, metavar="DIGITS",
                        help="mantissa digits for reported floats (4..17)")
    parser.add_argument("--mu", type=_positive_float, default=1.0,
                        help="mass parameter (default 1)")
    parser.add_argument("--k", type=_positive_float, default=1.0,
                        help="attraction strength (default 1)")
    parser.add_argument("--hbar", type=_positive_float, default=1.0,
                        help="Planck constant (default 1)")


def _fnum(x: float, precision: int) -> float:
    # Round through a fixed-width decimal so serialized bytes are stable.
    return float(f"{x:.{precision}e}")


def _csv_num(x: float, precision: int) -> str:
    return f"{x:.{precision}e}"


def _print_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _print_csv(header: list, rows: list) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _params_payload(params: PhysicalParams, precision: int) -> dict:
    return {"mu": _fnum(params.mu, precision),
            "k": _fnum(params.k, precision),
            "hbar": _fnum(params.hbar, precision)}


# ======================================================================
# Subcommands
# ======================================================================

def _cmd_spectrum(args, params: PhysicalParams, parser: _Parser) -> int:
    rows = []
    for n in range(args.n_max + 1):
        idx = LevelIndex(args.d, n)
        rows.append((n, energy_level(idx, params), degeneracy(idx),
                     casimir_eigenvalue(idx, params)))
    p = args.precision
    if args.format == "json":
        _print_json({
            "command": "spectrum",
            "d": args.d,
            "n_max": args.n_max,
            "params": _params_payload(params, p),
            "rows": [{"n": n, "energy": _fnum(e, p), "degeneracy": g,
                      "casimir": _fnum(c, p)} for n, e, g, c in rows],
        })
    else:
        _print_csv(["n", "energy", "degeneracy", "casimir"],
                   [[n, _csv_num(e, p), g, _csv_num(c, p)]
                    for n, e, g, c in rows])
    return 0


def _cmd_degeneracy(args, params: PhysicalParams, parser: _Parser) -> int:
    idx = LevelIndex(args.d, args.n)
    g = degeneracy(idx)
    labels = None
    if args.list_states:
        try:
            labels = [c.label()
                      for c in enumerate_level_states(idx, args.max_states)]
        except ValueError as exc:
            parser.error(str(exc))
    if args.format == "json":
        payload = {
            "command": "degeneracy",
            "d": args.d,
            "n": args.n,
            "degeneracy": g,
            "multiplet_dims": [so_d_rep_dim(args.d, l)
                               for l in range(args.n + 1)],
        }
        if labels is not None:
            payload["states"] = labels
        _print_json(payload)
    elif labels is not None:
        _print_csv(["index", "label"],
                   [[i, label] for i, label in enumerate(labels)])
    else:
        _print_csv(["d", "n", "degeneracy"], [[args.d, args.n, g]])
    return 0


def _cmd_harmonic(args, params: PhysicalParams, parser: _Parser) -> int:
    if (args.theta is None) == (args.l_max is None):
        parser.error("exactly one of --theta or --l-max is required")
    if args.theta is not None:
        return _harmonic_value(args, parser)
    return _harmonic_gram(args, parser)


def _harmonic_value(args, parser: _Parser) -> int:
    if args.chain is None:
        parser.error("--chain is required with --theta")
    try:
        chain = AngularChain.parse(args.chain)
    except ValueError as exc:
        parser.error(f"bad chain: {exc}")
    if chain.d != args.d:
        parser.error(f"chain {args.chain!r} is for d={chain.d}, not {args.d}")
    try:
        angles = tuple(float(part) for part in args.theta.split(","))
    except ValueError:
        parser.error("--theta must be a comma-separated list of numbers")
    if len(angles) != args.d - 1:
        parser.error(f"need {args.d - 1} angles for d={args.d}, "
                     f"got {len(angles)}")
    try:
        point = HypersphericalPoint(1.0, angles)
    except ValueError as exc:
        parser.error(str(exc))
    value = harmonic_eval(chain, point)
    lam = chain.top * (chain.top + args.d - 2)
    p = args.precision
    if args.format == "json":
        _print_json({
            "command": "harmonic",
            "mode": "value",
            "d": args.d,
            "chain": chain.label(),
            "theta": [_fnum(t, p) for t in angles],
            "value_re": _fnum(value.real, p),
            "value_im": _fnum(value.imag, p),
            "abs": _fnum(abs(value), p),
            "eigenvalue": lam,
        })
    else:
        _print_csv(["chain", "value_re", "value_im", "abs", "eigenvalue"],
                   [[chain.label(), _csv_num(value.real, p),
                     _csv_num(value.imag, p), _csv_num(abs(value), p), lam]])
    return 0


def _harmonic_gram(args, parser: _Parser) -> int:
    if args.d > verify_mod.MAX_NUMERIC_D:
        parser.error(f"Gram quadrature is validated for d <= "
                     f"{verify_mod.MAX_NUMERIC_D}")
    if args.chain is not None:
        parser.error("--chain does not combine with --l-max (Gram mode "
                     "covers every chain)")
    chains = enumerate_level_states(LevelIndex(args.d, args.l_max))
    rules = AngularRuleSet.for_degree(args.d, args.l_max)
    size = len(chains)
    gram = [[0j] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            val = harmonic_inner_product(chains[i], chains[j], rules)
            gram[i][j] = val
            gram[j][i] = val.conjugate()
    max_off = max((abs(gram[i][j])
                   for i in range(size) for j in range(size) if i != j),
                  default=0.0)
    max_diag = max(abs(gram[i][i] - 1.0) for i in range(size))
    p = args.precision
    if args.format == "json":
        _print_json({
            "command": "harmonic",
            "mode": "gram",
            "d": args.d,
            "l_max": args.l_max,
            "num_chains": size,
            "chains": [c.label() for c in chains],
            "max_offdiag": _fnum(max_off, p),
            "max_diag_deviation": _fnum(max_diag, p),
            "gram": [[[_fnum(v.real, p), _fnum(v.imag, p)] for v in row]
                     for row in gram],
        })
    else:
        _print_csv(["num_chains", "max_offdiag", "max_diag_deviation"],
                   [[size, _csv_num(max_off, p), _csv_num(max_diag, p)]])
    return 0


def _cmd_radial(args, params: PhysicalParams, parser: _Parser) -> int:
    if (args.r_max is None) != (args.grid_points is None):
        parser.error("--r-max and --grid-points must be given together")
    p = args.precision
    grid = None
    rows = []
    if args.states > 0:
        if args.r_max is not None:
            try:
                grid = RadialGrid(args.r_max, args.grid_points)
            except ValueError as exc:
                parser.error(str(exc))
        else:
            grid = default_radial_grid(args.d, args.l, args.states, params)
        try:
            numeric = solve_radial_numeric(args.d, args.l, params, grid,
                                           args.states)
        except ValueError as exc:
            sys.stderr.write(f"{parser.prog}: refused: {exc}\n")
            return 1
        for j, e_num in enumerate(numeric):
            exact = quantization(args.d, args.l, j, params).energy
            rel = abs(e_num - exact) / abs(exact)
            rows.append((j, float(e_num), exact, rel))
    if args.format == "json":
        _print_json({
            "command": "radial",
            "d": args.d,
            "l": args.l,
            "states": args.states,
            "params": _params_payload(params, p),
            "grid": None if grid is None else {
                "r_max": _fnum(grid.r_max, p),
                "num_points": grid.num_points,
                "spacing": _fnum(grid.spacing, p),
            },
            "rows": [{"index": j, "energy_numeric": _fnum(e_num, p),
                      "energy_analytic": _fnum(exact, p),
                      "relative_error": _fnum(rel, p)}
                     for j, e_num, exact, rel in rows],
        })
    else:
        _print_csv(
            ["index", "energy_numeric", "energy_analytic", "relative_error"],
            [[j, _csv_num(e_num, p), _csv_num(exact, p), _csv_num(rel, p)]
             for j, e_num, exact, rel in rows])
    return 0


def _parse_tol(items, parser: _Parser) -> dict:
    overrides = {}
    for item in items or ():
        name, sep, text = item.partition("=")
        if not sep:
            parser.error(f"--tol needs NAME=VALUE, got {item!r}")
        if name != "all" and name not in verify_mod.CHECK_NAMES:
            parser.error(f"unknown check {name!r}; known: "
                         f"{', '.join(verify_mod.CHECK_NAMES)} or 'all'")
        try:
            value = float(text)
        except ValueError:
            parser.error(f"--tol value for {name!r} must be a number")
        if value < 0:
            parser.error("--tol values must be >= 0")
        overrides[name] = value
    return overrides


def _cmd_verify(args, params: PhysicalParams, parser: _Parser) -> int:
    overrides = _parse_tol(args.tol, parser)
    try:
        results = verify_mod.run_all(params, d_numeric=args.d,
                                     d_exact=args.d_exact, n_max=args.n_max,
                                     l_max=args.l_max,
                                     tol_overrides=overrides or None)
    except ValueError as exc:
        parser.error(str(exc))
    ok = all(res.passed for res in results)
    p = args.precision
    if args.format == "json":
        _print_json({
            "command": "verify",
            "d": args.d,
            "d_exact": args.d_exact,
            "n_max": args.n_max,
            "l_max": args.l_max,
            "params": _params_payload(params, p),
            "checks": [{"name": res.name,
                        "measured": _fnum(res.measured, p),
                        "threshold": _fnum(res.threshold, p),
                        "passed": res.passed,
                        "detail": res.detail} for res in results],
            "all_passed": ok,
        })
    else:
        _print_csv(["name", "measured", "threshold", "passed", "detail"],
                   [[res.name, _csv_num(res.measured, p),
                     _csv_num(res.threshold, p),
                     "true" if res.passed else "false", res.detail]
                    for res in results])
    return 0 if ok else 1


# ======================================================================
# Parser assembly
# ======================================================================

def _build_parser() -> _Parser:
    parser = _Parser(prog="dcoulomb",
                     description="Bound states of the attractive 1/r "
                                 "problem in d spatial dimensions.")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=_Parser)

    sp = subs.add_parser("spectrum",
                         help="energy, degeneracy and invariant per level")
    sp.add_argument("--d", type=_int_at_least(2, "d"), required=True,
                    help="spatial dimension (>= 2)")
    sp.add_argument("--n-max", type=_int_in(0, 50, "n-max"), default=10,
                    help="highest principal index to tabulate (0..50)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_spectrum)

    dg = subs.add_parser("degeneracy",
                         help="level multiplicity and its state labels")
    dg.add_argument("--d", type=_int_at_least(2, "d"), required=True)
    dg.add_argument("--n", type=_int_at_least(0, "n"), required=True,
                    help="principal index of the level")
    dg.add_argument("--list-states", action="store_true",
                    help="also enumerate every chain label of the level")
    dg.add_argument("--max-states", type=_int_at_least(1, "max-states"),
                    default=DEFAULT_MAX_STATES,
                    help="refuse enumerations larger than this")
    _add_common(dg)
    dg.set_defaults(func=_cmd_degeneracy)

    hm = subs.add_parser("harmonic",
                         help="evaluate one harmonic or check a Gram matrix")
    hm.add_argument("--d", type=_int_at_least(2, "d"), required=True)
    hm.add_argument("--chain", metavar="LADDER",
                    help="harmonic label, highest degree first, e.g. "
                         "'2,1,1,+'")
    hm.add_argument("--theta", metavar="ANGLES",
                    help="comma-separated angles (d-2 polar then azimuthal)")
    hm.add_argument("--l-max", type=_int_in(0, verify_mod.MAX_L, "l-max"),
                    help="Gram-matrix mode: include all chains up to l-max")
    _add_common(hm)
    hm.set_defaults(func=_cmd_harmonic)

    ra = subs.add_parser("radial",
                         help="finite-difference spectrum vs the closed form")
    ra.add_argument("--d", type=_int_at_least(2, "d"), required=True)
    ra.add_argument("--l", type=_int_at_least(0, "l"), required=True,
                    help="angular degree of the radial channel")
    ra.add_argument("--states", type=_int_at_least(0, "states"), default=3,
                    help="how many lowest eigenvalues to report")
    ra.add_argument("--r-max", type=_positive_float,
                    help="grid extent (use with --grid-points)")
    ra.add_argument("--grid-points", type=_int_at_least(1, "grid-points"),
                    help="number of grid intervals (use with --r-max)")
    _add_common(ra)
    ra.set_defaults(func=_cmd_radial)

    vf = subs.add_parser("verify",
                         help="run every self-check and report pass/fail")
    vf.add_argument("--d", type=_int_in(2, verify_mod.MAX_NUMERIC_D, "d"),
                    default=verify_mod.MAX_NUMERIC_D,
                    help="dimension cap for quadrature/eigensolver checks")
    vf.add_argument("--d-exact",
                    type=_int_in(2, verify_mod.MAX_EXACT_D, "d-exact"),
                    default=verify_mod.MAX_EXACT_D,
                    help="dimension cap for exact combinatorics")
    vf.add_argument("--n-max", type=_int_in(0, verify_mod.MAX_N, "n-max"),
                    default=20,
                    help="principal index range for exact checks")
    vf.add_argument("--l-max", type=_int_in(0, verify_mod.MAX_L, "l-max"),
                    help="angular degree for eigenvalue/Gram checks")
    vf.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="override one check threshold ('all' rescales "
                         "every check); repeatable")
    _add_common(vf)
    vf.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = PhysicalParams(args.mu, args.k, args.hbar)
    return args.func(args, params, parser)
