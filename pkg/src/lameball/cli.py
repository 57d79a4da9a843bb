"""Command-line interface: ``lameball <subcommand> ...``.

Subcommands
-----------
decompose  sample file or named field -> coefficient file, with family energies
eval       synthesize a coefficient file on the sphere (points or a sample grid)
solve      evaluate the interior Lamé solution for a coefficient file
kernel     print the elastic Poisson kernel at (x, eta)
hardy      radial L^p profile of the solution and its maximum
verify     run the invariant suite; nonzero exit iff a check fails
"""

import argparse
import sys

import numpy as np

from . import io
from ._backend import BACKEND
from .decomposition import VshExpansion, analyze_field, synthesize
from .elastic import LameParameters, elastic_kernel, harmonic_poisson_kernel, solve_dirichlet
from .errors import LameBallError, UsageError
from .fields import field_degree, named_expansion, sample_field
from .hardy import DEFAULT_RADII, radial_profile
from .quadrature import build_grid, integrate
from .sphharm import solid_harmonics
from .vsh import FAMILIES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fmt(x):
    return format(float(x), ".17g")


def _row(values):
    return ",".join(_fmt(v) for v in values)


def _params(args):
    return LameParameters(args.lam, args.mu)


def _check_exactness(grid, L):
    """External grids must integrate products of Y up to degree L+1 exactly."""
    Y, _ = solid_harmonics(grid.nodes, L + 1)
    gram = integrate(grid, Y[:, :, None] * Y[:, None, :])
    err = np.abs(gram - np.eye(gram.shape[0])).max()
    if err > 1e-10:
        raise UsageError(
            f"sample grid is not exact enough for band limit {L} "
            f"(Gram error {err:.2e} at degree {L + 1})"
        )


def _load_vector(path):
    exp = io.read_coefficients(path)
    if not isinstance(exp, VshExpansion):
        raise io.FormatError(f"{path} holds scalar coefficients; a vector expansion is needed")
    return exp


def _points(args):
    pts = [io.parse_point(p) for p in args.point or []]
    if args.points:
        pts.extend(io.read_points(args.points))
    if not pts:
        raise UsageError("no evaluation points; use --point x,y,z or --points FILE")
    return np.array(pts)


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_decompose(args):
    L = args.band_limit
    if args.input:
        grid, f = io.read_samples(args.input)
        if f is None:
            raise io.FormatError(f"{args.input} has no field columns f1,f2,f3")
        _check_exactness(grid, L)
        grid = type(grid)(grid.nodes, grid.weights, 2 * (L + 1))
    else:
        grid = build_grid(max(L + 1, field_degree(args.field)))
        f = sample_field(args.field, grid.nodes)
    exp = analyze_field(grid, f, L)
    exp = VshExpansion.from_families(
        L, {fam: np.where(np.abs(exp.family(fam)) > args.chop, exp.family(fam), 0.0)
            for fam in FAMILIES}
    )
    _emit(io.dumps_coefficients(exp), args.output)
    energy = exp.energies()
    report = sys.stdout if args.output else sys.stderr
    for fam in FAMILIES:
        print(f"energy {fam.value} {_fmt(energy[fam])}", file=report)
    return EXIT_OK


def cmd_eval(args):
    exp = _load_vector(args.input) if args.input else named_expansion_or_fail(args.field)
    if args.point or args.points:
        pts = _points(args)
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > io.NODE_TOL):
            raise UsageError("eval points must lie on the unit sphere")
        vals = synthesize(exp, pts / norms[:, None])
        lines = ["eta1,eta2,eta3,f1,f2,f3"] + [_row(list(p) + list(v)) for p, v in zip(pts, vals)]
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    L = args.band_limit if args.band_limit is not None else exp.band_limit + 1
    grid = build_grid(L)
    _emit(io.format_samples(grid, synthesize(exp, grid.nodes)), args.output)
    return EXIT_OK


def named_expansion_or_fail(name):
    if name is None:
        raise UsageError("give --input COEFFS or --field NAME")
    exp = named_expansion(name)
    if exp is None:
        L = field_degree(name) + 1
        grid = build_grid(L + 1)
        exp = analyze_field(grid, sample_field(name, grid.nodes), L)
        exp = VshExpansion.from_families(
            L, {fam: np.where(np.abs(exp.family(fam)) > 1e-13, exp.family(fam), 0.0)
                for fam in FAMILIES}
        )
    return exp


def cmd_solve(args):
    prm = _params(args)
    exp = _load_vector(args.input) if args.input else named_expansion_or_fail(args.field)
    pts = _points(args)
    u = solve_dirichlet(exp, prm)(pts)
    lines = ["x1,x2,x3,u1,u2,u3"] + [_row(list(p) + list(v)) for p, v in zip(pts, u)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_kernel(args):
    prm = _params(args)
    x = io.parse_point(args.point[0] if args.point else "0,0,0")
    eta = io.parse_point(args.eta)
    eta = eta / np.linalg.norm(eta)
    K = elastic_kernel(x, eta, prm)
    P = harmonic_poisson_kernel(x, eta)
    lines = [_row(r) for r in K]
    lines.append(f"trace,{_fmt(np.trace(K))}")
    lines.append(f"3P,{_fmt(3 * P)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_hardy(args):
    prm = _params(args)
    exp = _load_vector(args.input) if args.input else named_expansion_or_fail(args.field)
    radii = DEFAULT_RADII if args.radii is None else [float(r) for r in args.radii.split(",")]
    p = np.inf if args.p in ("inf", "infinity") else float(args.p)
    r, norms = radial_profile(solve_dirichlet(exp, prm), p, radii)
    lines = ["r,norm"] + [_row(pair) for pair in zip(r, norms)]
    lines.append(f"max,{_fmt(norms.max())}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args):
    from .verification import run

    checks = run(args.level, coefficients=args.input, seed=args.seed)
    lines = [f"# backend={BACKEND} level={args.level}"] + [c.line() for c in checks]
    failed = [c for c in checks if not c.passed]
    lines.append(f"# {len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="lameball", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, params=False, points=False):
        p.add_argument("--input", help="coefficient file (or sample file for decompose)")
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--field", help="built-in field name (identity, constant-e3, zero, "
                       "vsh:<fam>:<l>:<m>, random:<L>:<seed>)")
        if params:
            p.add_argument("--lambda", dest="lam", type=float, required=True)
            p.add_argument("--mu", type=float, required=True)
        if points:
            p.add_argument("--point", action="append", help="'x,y,z'; repeatable")
            p.add_argument("--points", help="file of x,y,z rows")

    p = sub.add_parser("decompose", help="expand a boundary field in E+/E-/E0")
    common(p)
    p.add_argument("-L", "--band-limit", type=int, required=True)
    p.add_argument("--chop", type=float, default=1e-13,
                   help="drop coefficients below this magnitude (default 1e-13)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eval", help="synthesize the boundary field")
    common(p, points=True)
    p.add_argument("-L", "--band-limit", type=int, help="grid band limit for sample output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="evaluate the interior solution")
    common(p, params=True, points=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernel", help="elastic Poisson kernel at (x, eta)")
    p.add_argument("--output")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--point", action="append", help="interior point 'x,y,z'")
    p.add_argument("--eta", required=True, help="boundary direction 'a,b,c'")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("hardy", help="radial L^p profile")
    common(p, params=True)
    p.add_argument("--p", default="2", help="exponent >= 1 or 'inf'")
    p.add_argument("--radii", help="comma-separated radii in [0, 1)")
    p.set_defaults(func=cmd_hardy)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    p.add_argument("--input", help="coefficient file to include as a fixture")
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "decompose" and not (args.input or args.field):
        parser.error("decompose needs --input SAMPLES or --field NAME")
    try:
        return args.func(args)
    except (LameBallError, OSError) as exc:
        print(f"lameball {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
