"""Command-line front end: every pipeline stage emits figure-ready data.

Commands write CSV (17 significant digits) or JSON (single document with a
schema_version field); figure-reproduction commands include a manifest
naming the target.  Exit codes: 0 ok, 2 domain/validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

SCHEMA_VERSION = 1


def _fmt(x):
    return f"{x:.17g}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_json(path, doc):
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_complex(txt):
    if "," in txt:
        re, im = txt.split(",")
        return complex(float(re), float(im))
    return complex(txt.replace("i", "j"))


def cmd_poly(args):
    from .exact import gh_poly, go_poly
    poly = gh_poly(args.m, args.n) if args.family == "gH" \
        else go_poly(args.m, args.n)
    _write_json(args.out, {"family": args.family, "m": args.m, "n": args.n,
                           "degree": poly.degree, "poly": poly.to_json()})
    return 0


def cmd_solution(args):
    from .exact import ParameterPoint, rational_solution
    sol = rational_solution(ParameterPoint(args.family, args.type, args.m,
                                           args.n))
    _write_json(args.out, sol.to_json())
    return 0


def cmd_residual(args):
    from .exact import (ParameterPoint, piv_residual_is_zero,
                        rational_solution)
    sol = rational_solution(ParameterPoint(args.family, args.type, args.m,
                                           args.n))
    ok = piv_residual_is_zero(sol)
    _write_json(args.out, {"family": args.family, "type": args.type,
                           "m": args.m, "n": args.n, "residual_zero": ok})
    return 0 if ok else 3


def cmd_zeros_poles(args):
    from .exact import ParameterPoint, rational_solution, zeros_and_poles
    sol = rational_solution(ParameterPoint(args.family, args.type, args.m,
                                           args.n))
    zp = zeros_and_poles(sol)
    rows = [(z.real, z.imag, f"zero{'+' if s > 0 else '-'}", 0)
            for (z, d, s) in zp.zeros]
    rows += [(z.real, z.imag, f"pole{'+' if s > 0 else '-'}", 0)
             for (z, r, s) in zp.poles]
    _write_csv(args.out, ["re", "im", "kind", "k"], rows)
    return 0


def cmd_discriminant(args):
    from .curves import discriminant_roots, equilateral_check
    roots = discriminant_roots(args.kappa)
    dev = equilateral_check(args.kappa)
    _write_json(args.out, {
        "kappa": args.kappa,
        "roots": [[r.real, r.imag] for r in roots],
        "equilateral_deviation": dev})
    return 0


def cmd_boundary(args):
    from .curves import boundary_curve
    which = args.which or ["dE_gH", "dE_gO"]
    doc = {"kappa": args.kappa, "arcs": {}, "corners": {},
           "manifest": "domain boundary curves in the y0-plane "
                       "(cf. the kappa-indexed boundary figures)"}
    for w in which:
        bc = boundary_curve(args.kappa, w)
        doc["arcs"][w] = [[z.real, z.imag] for z in bc.polyline]
        doc["corners"][w] = [[z.real, z.imag] for z in bc.corners]
    _write_json(args.out, doc)
    return 0


def cmd_trajectories(args):
    from .boutroux import solve_E, solve_E_real
    from .curves import pcoeffs, trace_v_trajectories
    y0 = _parse_complex(args.y0)
    if args.E is not None:
        E = _parse_complex(args.E)
    elif abs(y0.imag) < 1e-12:
        E = solve_E_real(y0.real, args.kappa)
    else:
        E = solve_E(y0, args.kappa).E
    trajs = trace_v_trajectories(pcoeffs(y0, args.kappa, E))
    doc = {"y0": [y0.real, y0.imag], "kappa": args.kappa,
           "E": [complex(E).real, complex(E).imag],
           "manifest": "Stokes graph trajectories of P(z)/(16 z^2) dz^2",
           "trajectories": [{"terminal": t.terminal,
                             "points": [[z.real, z.imag] for z in t.points]}
                            for t in trajs]}
    _write_json(args.out, doc)
    return 0


def cmd_boutroux(args):
    from .boutroux import boutroux_data
    nx, ny = (int(v) for v in args.grid.split("x"))
    re0, re1, im0, im1 = (float(v) for v in args.window.split(","))
    import numpy as np
    rows = []
    for xx in np.linspace(re0, re1, nx):
        for yy in np.linspace(im0, im1, ny):
            y0 = complex(xx, yy)
            try:
                d = boutroux_data(y0, args.kappa)
            except Exception:
                continue
            rows.append(d.to_json())
    _write_json(args.out, {"kappa": args.kappa, "rows": rows})
    return 0


def cmd_compare(args):
    from .asymptotics import compare_exterior, compare_interior
    import numpy as np
    if args.mode == "exterior":
        ys = [complex(v) for v in np.linspace(args.sweep_from, args.sweep_to,
                                              args.samples)]
        rep = compare_exterior(args.family, args.type, args.m, args.n, ys)
    elif args.mode == "interior":
        y0 = _parse_complex(args.y0)
        zetas = [complex(v) for v in np.linspace(-1.0, 1.0, args.samples)]
        rep = compare_interior(args.family, args.type, args.m, args.n, y0,
                               zetas, domain=args.domain)
    else:        # axis-sweep: interior approximants along the real axis
        rep = _axis_sweep(args)
    doc = rep.to_json()
    doc["manifest"] = ("axis comparison data (cf. the solution-vs-"
                       "approximation axis figures)")
    _write_json(args.out, doc)
    return 0


def _axis_sweep(args):
    from .asymptotics import (CompareReport, CompareSample, scaled_params,
                              theta_approximant, _exact_eval)
    from .exact import ParameterPoint, rational_solution
    import numpy as np
    sp = scaled_params(args.family, args.type, args.m, args.n)
    sol = rational_solution(ParameterPoint(args.family, args.type, args.m,
                                           args.n))
    rt = sp.sqrtT_native
    samples = []
    for y in np.linspace(args.sweep_from, args.sweep_to, args.samples):
        try:
            ap = theta_approximant(args.family, args.type, args.m, args.n,
                                   complex(y), domain=args.domain)
            ua = rt * ap.value(0.0)
        except Exception:
            continue
        ue = _exact_eval(sol, rt * y)
        chi = -1 if abs(ua / rt) > 1 else 1
        err = abs((ue / rt) ** chi - (ua / rt) ** chi)
        samples.append(CompareSample(complex(y), ue, ua, chi, err))
    return CompareReport(args.family, args.type, args.m, args.n,
                         "axis-sweep", samples)


def cmd_predict(args):
    from .asymptotics import predict_zeros_poles
    re0, re1, im0, im1 = (float(v) for v in args.window.split(","))
    lat = predict_zeros_poles(args.family, args.type, args.m, args.n,
                              (re0, re1, im0, im1), domain=args.domain,
                              grid=(args.grid, args.grid))
    rows = [(p.y0.real, p.y0.imag, p.kind, p.k) for p in lat.points]
    _write_csv(args.out, ["re", "im", "kind", "k"], rows)
    return 0


def cmd_jacobi_form(args):
    from .asymptotics import jacobi_closed_form
    cf = jacobi_closed_form(args.family, args.type, args.m, args.n)
    _write_json(args.out, {
        "family": args.family, "type": args.type, "m": args.m, "n": args.n,
        "kind": cf.kind,
        "modulus": [cf.modulus.real, cf.modulus.imag],
        "amp": [complex(cf.amp).real, complex(cf.amp).imag],
        "scale": [complex(cf.scale).real, complex(cf.scale).imag],
        "zeta0": [complex(cf.zeta0).real, complex(cf.zeta0).imag]})
    return 0


def _add_common(sp):
    sp.add_argument("--out", default="-")
    sp.add_argument("--format", choices=["json", "csv"], default=None)


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="pivrat",
        description="Rational Painleve-IV solutions and their asymptotics")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poly", help="gH/gO polynomial coefficients")
    sp.add_argument("family", choices=["gH", "gO"])
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    _add_common(sp)
    sp.set_defaults(func=cmd_poly)

    for name, fn in [("solution", cmd_solution), ("residual", cmd_residual),
                     ("zeros-poles", cmd_zeros_poles),
                     ("jacobi-form", cmd_jacobi_form)]:
        sp = sub.add_parser(name)
        sp.add_argument("family", choices=["gH", "gO"])
        sp.add_argument("--type", type=int, default=3, choices=[1, 2, 3])
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        _add_common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("discriminant")
    sp.add_argument("--kappa", type=float, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_discriminant)

    sp = sub.add_parser("boundary")
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--which", nargs="*", default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("trajectories")
    sp.add_argument("--y0", required=True)
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--E", default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_trajectories)

    sp = sub.add_parser("boutroux")
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--grid", default="5x5")
    sp.add_argument("--window", default="-0.6,0.6,-0.6,0.6")
    _add_common(sp)
    sp.set_defaults(func=cmd_boutroux)

    sp = sub.add_parser("compare")
    sp.add_argument("family", choices=["gH", "gO"])
    sp.add_argument("--type", type=int, default=3, choices=[1, 2, 3])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=["exterior", "interior", "axis-sweep"],
                    default="interior")
    sp.add_argument("--y0", default="0.3,0.0")
    sp.add_argument("--domain", default="B_square")
    sp.add_argument("--sweep-from", type=float, default=0.1)
    sp.add_argument("--sweep-to", type=float, default=0.9)
    sp.add_argument("--samples", type=int, default=9)
    _add_common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("predict")
    sp.add_argument("family", choices=["gH", "gO"])
    sp.add_argument("--type", type=int, default=3, choices=[1, 2, 3])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--window", default="0.05,0.55,0.05,0.55")
    sp.add_argument("--domain", default="B_square")
    sp.add_argument("--grid", type=int, default=6)
    _add_common(sp)
    sp.set_defaults(func=cmd_predict)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
