"""Command-line front end.

Exit codes: 0 ok, 1 malformed input, 2 state not real, 3 half-integer degree
where an integer is required, 4 grid too small, 5 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fileio
from .harmonics import (
    GridResolutionError,
    NonIntegerDegree,
    SpinState,
    eval_function,
    grid_for_degree,
    make_grid,
    random_real_state,
    random_state,
)
from .majorana import antipodal_matching, constellation
from .multipole import NotRealState, extract_multipoles, reconstruct
from .sphere import EulerRotation
from .verify import run_suite
from .wigner import rotate_state

EXIT_OK, EXIT_MALFORMED, EXIT_NOT_REAL, EXIT_HALF_INTEGER, EXIT_GRID, EXIT_VERIFY = range(6)
MAX_VERIFY_DEGREE = 32


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_state(path: str) -> SpinState:
    obj = fileio.load(path)
    if not isinstance(obj, SpinState):
        raise fileio.MalformedInput(f"{path} is not a state file")
    return obj


def _grid(args, j: int):
    if args.grid is None:
        return grid_for_degree(j)
    nt, nphi = args.grid
    if nt < 1 or nphi < 1:
        raise fileio.MalformedInput("grid sizes must be positive")
    return make_grid(nt, nphi)


def cmd_decompose(args) -> int:
    s = _load_state(args.input)
    if not s.is_integer:
        raise CliError(f"degree 2j={s.two_j} is half-integer; multipoles need integer j", EXIT_HALF_INTEGER)
    try:
        mp = extract_multipoles(s, tol=args.tol)
    except NotRealState as exc:
        raise CliError(f"not a real state ({exc}); worst residual {exc.residual:.3e}", EXIT_NOT_REAL)
    back = reconstruct(mp)
    norm = np.linalg.norm(s.coeffs)
    residual = {
        "reality": s.reality_residual(),
        "pairing": antipodal_matching(constellation(s).roots)[1] if s.two_j else 0.0,
        "roundtrip": float(np.linalg.norm(back.coeffs - s.coeffs) / norm) if norm else 0.0,
    }
    _emit(fileio.dumps(fileio.multipole_to_dict(mp, residual)), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    obj = fileio.load(args.input)
    if isinstance(obj, SpinState):
        raise fileio.MalformedInput(f"{args.input} is not a multipole file")
    grid = _grid(args, obj.degree)
    try:
        s = reconstruct(obj, grid)
    except GridResolutionError as exc:
        raise CliError(str(exc), EXIT_GRID)
    _emit(fileio.dumps(fileio.state_to_dict(s)), args.output)
    return EXIT_OK


def cmd_rotate(args) -> int:
    s = _load_state(args.input)
    rot = EulerRotation(*args.euler)
    out = rotate_state(s, rot)
    meta = {"euler": [float(a) for a in args.euler]}
    _emit(fileio.dumps(fileio.state_to_dict(out, meta)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.degree < 0 or args.degree > MAX_VERIFY_DEGREE:
        raise fileio.MalformedInput(f"--degree must lie in [0, {MAX_VERIFY_DEGREE}]")
    if args.trials < 1:
        raise fileio.MalformedInput("--trials must be positive")
    report = run_suite(args.degree, args.trials, args.seed)
    _emit(fileio.dumps(report), args.output)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_eval(args) -> int:
    obj = fileio.load(args.input)
    if isinstance(obj, SpinState):
        if not obj.is_integer:
            raise CliError("cannot evaluate a half-integer state on the sphere", EXIT_HALF_INTEGER)
        s = obj
    else:
        s = reconstruct(obj)
    grid = _grid(args, s.degree)
    t, p = grid.mesh()
    vals = eval_function(s, t, p)
    if s.is_real_state(1e-10):
        vals = vals.real
    _emit(fileio.grid_csv(grid.theta, grid.phi, vals), args.output)
    return EXIT_OK


def cmd_random(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.complex:
        s = random_state(rng, args.two_j)
    else:
        if args.two_j % 2:
            raise CliError("real states need integer j", EXIT_HALF_INTEGER)
        s = random_real_state(rng, args.two_j // 2)
    meta = {"seed": args.seed, "kind": "complex" if args.complex else "real"}
    _emit(fileio.dumps(fileio.state_to_dict(s, meta)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylvester",
        description="Maxwell multipoles and Majorana constellations of spherical functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inp=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if inp:
            p.add_argument("input", help="input JSON file")
        p.add_argument("-o", "--output", help="write here instead of standard output")
        p.set_defaults(func=func)
        return p

    p = add("decompose", cmd_decompose, "state file -> multipole file")
    p.add_argument("--tol", type=float, default=1e-8, help="reality/pairing tolerance")

    p = add("reconstruct", cmd_reconstruct, "multipole file -> state file")
    p.add_argument("--grid", type=int, nargs=2, metavar=("N_THETA", "N_PHI"))

    p = add("rotate", cmd_rotate, "rotate a state by z-y-z Euler angles")
    p.add_argument("--euler", type=float, nargs=3, metavar=("ALPHA", "BETA", "GAMMA"), required=True)

    p = add("verify", cmd_verify, "run the seeded property suite", inp=False)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("eval", cmd_eval, "sample a state or multipole file on a grid (CSV)")
    p.add_argument("--grid", type=int, nargs=2, metavar=("N_THETA", "N_PHI"))

    p = add("random", cmd_random, "write a seeded random state file", inp=False)
    p.add_argument("--two-j", type=int, required=True, help="doubled degree 2j")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--complex", action="store_true", help="complex state instead of a real one")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; map them onto the malformed-input code
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    try:
        return args.func(args)
    except CliError as exc:
        print(f"sylvester {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except NonIntegerDegree as exc:
        print(f"sylvester {args.command}: {exc}", file=sys.stderr)
        return EXIT_HALF_INTEGER
    except (fileio.MalformedInput, ValueError, json.JSONDecodeError) as exc:
        print(f"sylvester {args.command}: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
