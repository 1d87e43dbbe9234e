"""Command-line front end: ``xherm poly``, ``xherm verify``, ``xherm surface``.

Exit codes: 0 success, 1 failed check or quadrature failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import series as S
from . import verify as V
from .errors import ConvergenceError, QuadratureError, XhermError
from .exceptional import hhat, xop_polynomial
from .hermite import AnalyticFn, hermite, hhat_gap_fn
from .weierstrass import CHI_FORMS, WeierstrassParams, generate_mesh

SCHEMA = "xherm/1"
POLY_KINDS = ("classical", "xop", "hhat", "alpha", "beta", "mu", "nu")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _complex(text: str) -> complex:
    """Parse ``RE`` or ``RE,IM``."""
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    try:
        vals = [float(v) for v in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}") from exc
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _indices(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _clean(v):
    """Make a report JSON-safe: exact rationals as strings, non-finite floats as strings."""
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [_clean(float(v.real)), _clean(float(v.imag))]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def _dump(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True)


# poly -----------------------------------------------------------------------
def _poly_object(kind: str, n: int, trunc: int | None):
    if kind == "classical":
        if n < 0:
            raise XhermError("n must be non-negative")
        return hermite(n)
    if kind == "xop":
        return xop_polynomial(n)
    if kind == "hhat":
        return hhat_gap_fn(n) if n in (1, 2) else hhat(n)
    if n < 0:
        raise XhermError("n must be non-negative")
    return S.series_for(kind, n, trunc)


def cmd_poly(args) -> int:
    obj = _poly_object(args.kind, args.n, args.trunc)
    if args.eval is not None:
        z = args.eval
        val = complex(obj(z)) if isinstance(obj, AnalyticFn) else complex(obj(np.complex128(z)))
        print(f"{val.real!r} {val.imag!r}")
        return 0
    if isinstance(obj, AnalyticFn):
        raise XhermError(f"{args.kind}_{args.n} is not a polynomial: it involves erf; use --eval")
    coeffs = obj.to_json_dict()
    print(json.dumps(coeffs))
    return 0


# verify ---------------------------------------------------------------------
def _run_suite(args) -> tuple[V.Report, dict]:
    which = args.suite
    params: dict = {}
    if which == "ode":
        n_max = 20 if args.n_max is None else args.n_max
        params = {"n_max": n_max, "tol": args.tol or 1e-10}
        return V.ode_suite(n_max=n_max, tol=params["tol"]), params
    if which == "wronskian":
        n_max = 12 if args.n_max is None else args.n_max
        params = {"n_max": n_max, "tol": args.tol or 1e-8}
        return V.wronskian_suite(n_max=n_max, tol=params["tol"]), params
    if which == "deltas":
        k_max = 40 if args.k_max is None else args.k_max
        n_max = 20 if args.n_max is None else args.n_max
        params = {"k_max": k_max, "n_max": n_max}
        return V.delta_identity_suite(k_max=k_max, n_max=n_max), params
    if which == "gram":
        idx = args.indices or [0, 3, 4, 5, 6, 7]
        params = {"kind": args.kind, "indices": idx, "tol": args.tol or 1e-8}
        return V.gram_matrix(args.kind, idx, tol=params["tol"]), params
    if which == "frame":
        ns = tuple(range(args.n_max + 1)) if args.n_max is not None else (0, 1, 2, 3, 4, 7)
        params = {"ns": list(ns), "tol": args.tol or 1e-7}
        return V.frame_suite(ns=ns, tol=params["tol"]), params
    if which == "curvature":
        p = WeierstrassParams(n=args.n if args.n is not None else 3, chi_form=args.chi_form)
        mesh = generate_mesh(p, nu=args.grid[0], nv=args.grid[1])
        rep = V.minimality_check(mesh, tol=args.tol or 1e-3)
        params = {"weierstrass": p.to_json_dict(), "grid": list(args.grid)}
        return rep, params
    raise XhermError(f"unknown suite {which!r}")


def _print_table(rep: V.Report):
    status = "PASS" if rep.passed else "FAIL"
    print(f"{rep.name:<20} {status}  checked={rep.checked}  failures={len(rep.failures)}")
    for key in sorted(rep.details):
        val = rep.details[key]
        if isinstance(val, (int, float, str, bool)) or val is None:
            print(f"  {key:<34} {val!r}")
    for f in rep.failures[:10]:
        print(f"  failure: {_dump(f)}")
    if len(rep.failures) > 10:
        print(f"  ... {len(rep.failures) - 10} more")


def cmd_verify(args) -> int:
    rep, params = _run_suite(args)
    if args.json:
        print(_dump({"schema": SCHEMA, "params": params, "report": rep.to_json_dict()}))
    else:
        _print_table(rep)
    return 0 if rep.passed else 1


# surface --------------------------------------------------------------------
def _write_obj(mesh, fh):
    nu, nv = mesh.shape
    pts = mesh.points.reshape(-1, 3)
    for x, y, z in pts:
        fh.write(f"v {float(x)!r} {float(y)!r} {float(z)!r}\n")
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            fh.write(f"f {a} {a + nv} {a + nv + 1} {a + 1}\n")


def _write_csv(mesh, fh):
    fh.write("x,y,F1,F2,F3,err\n")
    nu, nv = mesh.shape
    for i in range(nu):
        for j in range(nv):
            f1, f2, f3 = (float(v) for v in mesh.points[i, j])
            row = (float(mesh.x[i]), float(mesh.y[j]), f1, f2, f3, float(mesh.err[i, j]))
            fh.write(",".join(repr(v) for v in row) + "\n")


def _write_json(mesh, fh):
    body = {
        "schema": SCHEMA,
        "params": mesh.params.to_json_dict(),
        "mesh": {
            "x": mesh.x.tolist(),
            "y": mesh.y.tolist(),
            "shape": list(mesh.shape),
            "points": mesh.points.tolist(),
            "err": mesh.err.tolist(),
        },
    }
    fh.write(_dump(body) + "\n")


WRITERS = {"obj": _write_obj, "csv": _write_csv, "json": _write_json}


def cmd_surface(args) -> int:
    p = WeierstrassParams(
        n=args.n,
        spectral_lambda=args.spectral_lambda,
        c1=args.c1,
        c2=args.c2,
        xi0=args.xi0,
        chi_form=args.chi_form,
    )
    mesh = generate_mesh(p, tuple(args.domain), args.grid[0], args.grid[1])
    if args.out in (None, "-"):
        WRITERS[args.format](mesh, sys.stdout)
    else:
        with open(args.out, "w", newline="\n") as fh:
            WRITERS[args.format](mesh, fh)
    return 0


# parser ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="xherm", description="Exceptional Hermite polynomials and their minimal surfaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pp = sub.add_parser("poly", help="coefficients or values of a polynomial or series solution")
    pp.add_argument("--kind", choices=POLY_KINDS, required=True)
    pp.add_argument("--n", type=int, required=True)
    out = pp.add_mutually_exclusive_group()
    out.add_argument("--coeffs", action="store_true", help="exact coefficients as JSON (default)")
    out.add_argument("--eval", type=_complex, metavar="RE[,IM]", help="evaluate at a complex point")
    pp.add_argument("--trunc", type=int, default=None, metavar="K", help="series truncation degree")
    pp.set_defaults(func=cmd_poly)

    vp = sub.add_parser("verify", help="run an identity suite")
    vp.add_argument("suite", choices=("ode", "wronskian", "deltas", "gram", "frame", "curvature"))
    vp.add_argument("--n-max", type=int, default=None)
    vp.add_argument("--k-max", type=int, default=None)
    vp.add_argument("--tol", type=float, default=None)
    vp.add_argument("--json", action="store_true", help="machine-readable report")
    vp.add_argument("--kind", choices=("hhat", "xop", "nu", "mu"), default="hhat", help="gram family")
    vp.add_argument("--indices", type=_indices, default=None, help="gram indices, e.g. 0,3,4,5")
    vp.add_argument("--n", type=int, default=None, help="curvature: surface index (default 3)")
    vp.add_argument("--grid", type=int, nargs=2, default=(41, 41), metavar=("NU", "NV"))
    vp.add_argument("--chi-form", choices=CHI_FORMS, default="unit")
    vp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("surface", help="export an immersion mesh")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--grid", type=int, nargs=2, default=(41, 41), metavar=("NU", "NV"))
    sp.add_argument("--domain", type=float, nargs=4, default=(-1.0, 1.0, -1.0, 1.0),
                    metavar=("X0", "X1", "Y0", "Y1"))
    sp.add_argument("--xi0", type=_complex, default=1 + 3j, metavar="RE,IM")
    sp.add_argument("--c1", type=_complex, default=1.0)
    sp.add_argument("--c2", type=_complex, default=1.0)
    sp.add_argument("--lambda", dest="spectral_lambda", type=_complex, default=math.sqrt(math.pi))
    sp.add_argument("--chi-form", choices=CHI_FORMS, default="unit")
    sp.add_argument("--format", choices=tuple(WRITERS), default="obj")
    sp.add_argument("--out", default=None, metavar="PATH", help="output file (stdout if omitted)")
    sp.set_defaults(func=cmd_surface)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (QuadratureError, ConvergenceError) as exc:
        print(f"xherm: numerical failure: {exc}", file=sys.stderr)
        return 1
    except XhermError as exc:
        print(f"xherm: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"xherm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
