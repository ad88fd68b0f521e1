"""Command-line front end.

Subcommands: ``eigen`` (eigenvalue records), ``eigfun`` (eigenfunction
coefficients and samples), ``poly`` (polynomial tables), ``kernel``
(kernel on a grid), ``expand`` (q-exponential expansion coefficients and
residuals), ``coulomb`` (the q-Coulomb function on a rho grid) and
``verify`` (named invariant suites).

Output is deterministic: floats print with 17 significant digits in
lowercase scientific notation, rows are emitted in a fixed order, and
JSON carries numbers as strings so byte-identical reruns are guaranteed.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import argparse
import json
import sys

import numpy as np

from . import awop, qexp, qpolys, spectral, verify
from .qcore import QContext
from .qpolys import JacobiLevel

USAGE_ERROR = 2


def fmt(x):
    """17-significant-digit lowercase scientific text for a real number."""
    return f"{float(x):.16e}"


def fmt_c(z):
    z = complex(z)
    return fmt(z.real), fmt(z.imag)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def _add_common(p):
    p.add_argument("--q", type=float, default=0.5, help="base q in (0,1)")
    p.add_argument("--alpha", type=complex, default=0.3)
    p.add_argument("--beta", type=str, default="-0.2",
                   help="beta, or 'conj' for the conjugate of alpha")
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--trunc", type=int, default=80,
                   help="series/matrix truncation")
    p.add_argument("--nodes", type=int, default=160, help="quadrature nodes")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path or - for stdout")


def build_parser():
    ap = _Parser(prog="awspec",
                 description="continuous q-Jacobi / Askey-Wilson spectral toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="eigenvalues of the integral operator")
    _add_common(p)
    p.add_argument("--count", type=int, default=5)

    p = sub.add_parser("eigfun", help="eigenfunction coefficients and samples")
    _add_common(p)
    p.add_argument("--index", type=int, default=0,
                   help="eigenvalue index (by descending |lambda|)")
    p.add_argument("--grid", type=int, default=21, help="sample points in x")

    p = sub.add_parser("poly", help="table of P_n values")
    _add_common(p)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--grid", type=int, default=21)

    p = sub.add_parser("kernel", help="kernel K(x, y) on a grid")
    _add_common(p)
    p.add_argument("--grid", type=int, default=11)

    p = sub.add_parser("expand", help="q-exponential expansion data")
    _add_common(p)
    p.add_argument("--r", type=complex, default=0.3)
    p.add_argument("--mmax", type=int, default=25)
    p.add_argument("--grid", type=int, default=9)

    p = sub.add_parser("coulomb", help="q-Coulomb function on a rho grid")
    _add_common(p)
    p.add_argument("--ell", type=float, default=0.5)
    p.add_argument("--eta", type=float, default=0.3)
    p.add_argument("--rho-max", type=float, default=2.5)
    p.add_argument("--grid", type=int, default=50)

    p = sub.add_parser("verify", help="run named verification suites")
    _add_common(p)
    p.add_argument("--suite", default="all",
                   help="suite name or 'all'")
    p.add_argument("--list", action="store_true", help="list suite names")
    return ap


def _config(args):
    beta = complex(args.alpha).conjugate() if args.beta == "conj" \
        else complex(args.beta)
    alpha = complex(args.alpha)
    if alpha.imag == 0:
        alpha = alpha.real
    if beta.imag == 0:
        beta = beta.real
    ctx = QContext(args.q, args.tol)
    level = JacobiLevel(alpha, beta)
    return ctx, level


def _emit(args, header, rows, diagnostics):
    config = {k: str(v) for k, v in sorted(vars(args).items())
              if k not in ("out",)}
    if args.format == "csv":
        lines = [",".join(header)]
        lines += [",".join(r) for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        results = [dict(zip(header, r)) for r in rows]
        text = json.dumps({"config": config, "results": results,
                           "diagnostics": diagnostics},
                          indent=2, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_eigen(args):
    ctx, level = _config(args)
    rule = awop.make_rule(args.nodes)

    def op_resid(lam, coeffs):
        def g(t):
            return awop.eval_coeffvector(coeffs, t, ctx)
        return max(abs(awop.t_quadrature(g, x, level, rule, ctx) - lam * g(x))
                   for x in np.linspace(-0.8, 0.8, 5))

    res = spectral.eigenvalues(level, ctx, count=args.count, nmat=args.trunc,
                               operator_residual=op_resid)
    header = ["index", "lambda_re", "lambda_im", "mu_re", "mu_im",
              "residual_f", "residual_operator", "converged"]
    rows = []
    for i, r in enumerate(res):
        lr, li = fmt_c(r.lam)
        mr, mi = fmt_c(r.mu)
        rows.append([str(i), lr, li, mr, mi, fmt(r.residual_f),
                     fmt(r.residual_operator), str(r.converged).lower()])
    _emit(args, header, rows, {"count": str(len(res))})
    return 0


def _cmd_eigfun(args):
    ctx, level = _config(args)
    res = spectral.eigenvalues(level, ctx, count=args.index + 1,
                               nmat=args.trunc)
    r = res[args.index]
    header = ["kind", "index_or_x", "value_re", "value_im"]
    rows = []
    for n, c in enumerate(r.coeffs.coeffs):
        vr, vi = fmt_c(c)
        rows.append(["coeff", str(n), vr, vi])
    for x in np.linspace(-0.9, 0.9, args.grid):
        v = awop.eval_coeffvector(r.coeffs, x, ctx)
        vr, vi = fmt_c(v)
        rows.append(["sample", fmt(x), vr, vi])
    lr, li = fmt_c(r.lam)
    _emit(args, header, rows,
          {"lambda_re": lr, "lambda_im": li, "residual_f": fmt(r.residual_f)})
    return 0


def _cmd_poly(args):
    ctx, level = _config(args)
    header = ["n", "x", "value_re", "value_im"]
    rows = []
    xs = np.linspace(-0.95, 0.95, args.grid)
    for x in xs:
        vals = qpolys.cqjacobi_seq(args.degree, level, float(x), ctx)
        for n, v in enumerate(vals):
            vr, vi = fmt_c(v)
            rows.append([str(n), fmt(x), vr, vi])
    _emit(args, header, rows, {"degree": str(args.degree)})
    return 0


def _cmd_kernel(args):
    ctx, level = _config(args)
    nterms = awop.kernel_truncation(level, ctx)
    header = ["x", "y", "value_re", "value_im"]
    rows = []
    grid = np.linspace(-0.8, 0.8, args.grid)
    for x in grid:
        for y in grid:
            v = awop.kernel_eval(float(x), float(y), level, ctx, nterms)
            vr, vi = fmt_c(v)
            rows.append([fmt(x), fmt(y), vr, vi])
    _emit(args, header, rows, {"nterms": str(nterms)})
    return 0


def _cmd_expand(args):
    ctx, level = _config(args)
    header = ["kind", "index_or_x", "value_re", "value_im"]
    rows = []
    for m in range(args.mmax + 1):
        a = qexp.am_coeff(m, args.r, level, ctx)
        vr, vi = fmt_c(a)
        rows.append(["coeff", str(m), vr, vi])
    for x in np.linspace(-0.8, 0.8, args.grid):
        resid = qexp.expansion_residual(float(x), args.r, level, ctx,
                                         m_trunc=args.mmax)
        rows.append(["residual", fmt(x), fmt(resid), fmt(0.0)])
    _emit(args, header, rows, {"r": str(args.r), "mmax": str(args.mmax)})
    return 0


def _cmd_coulomb(args):
    ctx, _ = _config(args)
    header = ["rho", "value_re", "value_im"]
    rows = []
    for rho in np.linspace(args.rho_max / args.grid, args.rho_max, args.grid):
        v = spectral.q_coulomb(args.ell, args.eta, float(rho), ctx)
        vr, vi = fmt_c(v)
        rows.append([fmt(rho), vr, vi])
    _emit(args, header, rows, {"L": fmt(args.ell), "eta": fmt(args.eta)})
    return 0


def _cmd_verify(args):
    if args.list:
        for name in verify.suite_names():
            sys.stdout.write(name + "\n")
        return 0
    names = verify.suite_names() if args.suite == "all" else [args.suite]
    for n in names:
        if n not in verify.REGISTRY:
            sys.stderr.write(f"error: unknown suite {n!r}\n")
            return USAGE_ERROR
    beta = complex(args.alpha).conjugate() if args.beta == "conj" \
        else complex(args.beta)
    cfg = verify.VerifyConfig(q=args.q, alpha=complex(args.alpha), beta=beta,
                              tol=args.tol, trunc=args.trunc, nodes=args.nodes)
    results = verify.run_suites(names, cfg)
    header = ["suite", "passed", "max_err", "tol", "detail"]
    rows = [[r.name, str(r.passed).lower(), fmt(r.max_err), fmt(r.tol),
             r.detail.replace(",", ";")] for r in results]
    failed = [r for r in results if not r.passed]
    _emit(args, header, rows,
          {"failed": str(len(failed)), "total": str(len(results))})
    return 1 if failed else 0


_COMMANDS = {
    "eigen": _cmd_eigen,
    "eigfun": _cmd_eigfun,
    "poly": _cmd_poly,
    "kernel": _cmd_kernel,
    "expand": _cmd_expand,
    "coulomb": _cmd_coulomb,
    "verify": _cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
