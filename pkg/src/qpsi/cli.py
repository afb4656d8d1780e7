"""Command-line harness: ``qpsi eval``, ``qpsi verify`` and ``qpsi sweep``.

Exit codes: 0 success, 2 usage error, 3 evaluation error (or failed
verification records), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Callable

from . import classical, jackson1d, multidim, qcore, series
from .errors import QPsiError
from .policy import SeriesValue, SumPolicy
from .verify import IDENTITIES, SUITES, list_text, run_suite, to_csv, to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EVAL = 3
EXIT_IO = 4

ENV_TOL = "QPSI_DEFAULT_TOL"


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------

def _num(text: str) -> complex:
    """Parse ``0.3``, ``1e-2`` or ``0.3+0.2j``."""
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def _need(ns, *names):
    missing = [n for n in names if getattr(ns, n) is None]
    if missing:
        raise UsageError("missing argument(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))
    return [getattr(ns, n) for n in names]


def _one(ns, name):
    (vals,) = _need(ns, name)
    if len(vals) != 1:
        raise UsageError(f"--{name} takes exactly one value here, got {len(vals)}")
    return vals[0]


def _count(ns, name, k):
    (vals,) = _need(ns, name)
    if len(vals) != k:
        raise UsageError(f"--{name} needs {k} values here, got {len(vals)}")
    return tuple(vals)


def _int(ns, name):
    (v,) = _need(ns, name)
    return int(v)


# -- eval targets -------------------------------------------------------------

def _atype(ns):
    n, m, alpha, tau, q = _need(ns, "n", "m", "alpha", "tau", "q")
    a, b, xi = _need(ns, "a", "b", "xi")
    return multidim.ATypeParams(n=n, m=m, alpha=alpha, tau=tau, a=tuple(a), b=tuple(b),
                                xi=tuple(xi), q=q)


def _askey(ns):
    alpha, beta, q = _need(ns, "alpha", "beta", "q")
    return jackson1d.AskeyParams(alpha, beta, _one(ns, "xi"), q)


def _bc1(ns):
    (q,) = _need(ns, "q")
    return jackson1d.BC1Params(_count(ns, "a", 4), _one(ns, "xi"), q)


def _vwp6(ns):
    (q,) = _need(ns, "q")
    return series.VWP6Params(*_count(ns, "a", 5), q)


def _bctype(ns):
    n, tau, q = _need(ns, "n", "tau", "q")
    s = _one(ns, "s")
    if s.imag != 0 or s.real != int(s.real):
        raise UsageError("--s must be an integer for bctype_sum")
    return multidim.BCTypeParams.from_a(n, int(s.real), _count(ns, "a", 4), tau, tuple(_need(ns, "xi")[0]), q)


def _positive_real(v, name):
    if v.imag != 0:
        raise UsageError(f"--{name} must be real here")
    return v.real


def _selberg(ns):
    n, alpha, beta, tau = _need(ns, "n", "alpha", "beta", "tau")
    return classical.SelbergParams(n, _positive_real(alpha, "alpha"), _positive_real(beta, "beta"),
                                   _positive_real(tau, "tau"))


def _da(ns):
    (n,) = _need(ns, "n")
    x, s = _need(ns, "x", "s")
    return classical.DAParams(n, tuple(_positive_real(v, "x") for v in x),
                              tuple(_positive_real(v, "s") for v in s))


TARGETS: dict[str, Callable] = {
    "theta": lambda ns, pol: qcore.theta(_need(ns, "z")[0], _need(ns, "q")[0], pol),
    "qpoch_inf": lambda ns, pol: qcore.qpoch_inf(_need(ns, "u")[0], _need(ns, "q")[0], pol),
    "qpoch_fin": lambda ns, pol: qcore.qpoch_fin(*_need(ns, "u", "q", "nu"), pol),
    "q_beta": lambda ns, pol: jackson1d.q_beta(*_need(ns, "alpha", "beta", "q"), pol),
    "sum_rpsir": lambda ns, pol: series.sum_rpsir(
        series.PsiParams(tuple(_need(ns, "a")[0]), tuple(_need(ns, "b")[0]), _one(ns, "x"),
                         _need(ns, "q")[0]), pol),
    "product_1psi1": lambda ns, pol: series.product_1psi1(
        _one(ns, "a"), _one(ns, "b"), _one(ns, "x"), _need(ns, "q")[0], pol),
    "vwp6_lhs": lambda ns, pol: series.vwp6_lhs(_vwp6(ns), pol),
    "vwp6_rhs": lambda ns, pol: series.vwp6_rhs(_vwp6(ns), pol),
    "askey_I_sum": lambda ns, pol: jackson1d.askey_I_sum(_askey(ns), pol),
    "askey_I_product": lambda ns, pol: jackson1d.askey_I_product(_askey(ns), pol),
    "recurrence_residual_I": lambda ns, pol: jackson1d.recurrence_residual_I(_askey(ns), pol),
    "bc1_J_sum": lambda ns, pol: jackson1d.bc1_J_sum(_bc1(ns), pol),
    "bc1_J_product": lambda ns, pol: jackson1d.bc1_J_product(_bc1(ns), pol),
    "bc1_shift_residual": lambda ns, pol: jackson1d.bc1_shift_residual(_bc1(ns), _int(ns, "i"), pol),
    "j6phi5_product": lambda ns, pol: jackson1d.j6phi5_product(_count(ns, "a", 4), _need(ns, "q")[0], pol),
    "atype_sum": lambda ns, pol: multidim.atype_sum(_atype(ns), pol),
    "aomoto_product": lambda ns, pol: multidim.aomoto_product(_atype(ns), pol),
    "mg_product": lambda ns, pol: multidim.mg_product(_atype(ns), pol),
    "bctype_sum": lambda ns, pol: multidim.bctype_sum(_bctype(ns), pol),
    "beta_integral": lambda ns, pol: classical.beta_integral(
        *(_positive_real(v, k) for v, k in zip(_need(ns, "alpha", "beta"), ("alpha", "beta")))),
    "selberg_product": lambda ns, pol: classical.selberg_product(_selberg(ns)),
    "da_product": lambda ns, pol: classical.da_product(_da(ns)),
}


# -- output -------------------------------------------------------------------

def fmt_number(v) -> str:
    """17 significant digits; real values print without an imaginary part."""
    v = complex(v)
    re, im = v.real + 0.0, v.imag + 0.0
    if im == 0:
        return "%.17g" % re
    return "%.17g%+.17gj" % (re, im)


def _json_num(x: float):
    return float("%.17g" % x) if math.isfinite(x) else None


def _eval_record(target: str, result) -> dict:
    sv = result if isinstance(result, SeriesValue) else None
    v = complex(sv.value if sv else result)
    rec = {"target": target, "value_re": _json_num(v.real + 0.0), "value_im": _json_num(v.imag + 0.0)}
    if sv is not None:
        rec.update(err_estimate=_json_num(sv.err_estimate), terms=sv.terms_used,
                   converged=sv.converged)
    return rec


def _eval_text(result) -> str:
    if isinstance(result, SeriesValue):
        return (f"{fmt_number(result.value)}\nerr_estimate {result.err_estimate:.3g}\n"
                f"terms {result.terms_used}\nconverged {str(result.converged).lower()}\n")
    return fmt_number(result) + "\n"


# -- policy -------------------------------------------------------------------

def make_policy(rel_tol: float | None) -> SumPolicy:
    """``--rel-tol`` wins over the environment, which wins over the default."""
    if rel_tol is None:
        env = os.environ.get(ENV_TOL)
        if env:
            try:
                rel_tol = float(env)
            except ValueError:
                raise UsageError(f"{ENV_TOL}={env!r} is not a number")
    if rel_tol is None:
        return SumPolicy()
    if not rel_tol > 0:
        raise UsageError("rel_tol must be positive")
    return SumPolicy(rel_tol=rel_tol)


# -- commands -----------------------------------------------------------------

def cmd_eval(ns) -> int:
    policy = make_policy(ns.rel_tol)
    try:
        result = TARGETS[ns.target](ns, policy)
    except UsageError:
        raise
    except (QPsiError, ArithmeticError, ValueError) as exc:
        print(f"qpsi eval: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    if ns.format == "json":
        sys.stdout.write(json.dumps(_eval_record(ns.target, result)) + "\n")
    else:
        sys.stdout.write(_eval_text(result))
    return EXIT_OK


def cmd_verify(ns) -> int:
    if ns.list:
        sys.stdout.write(list_text())
        return EXIT_OK
    if ns.suite is None:
        raise UsageError("verify needs --suite NAME or --list")
    if ns.suite not in SUITES and ns.suite not in IDENTITIES:
        raise UsageError(f"unknown suite {ns.suite!r}; see verify --list")
    if ns.trials is not None and ns.trials < 1:
        raise UsageError("--trials must be positive")
    policy = make_policy(ns.rel_tol)
    report = run_suite(ns.suite, ns.seed, policy, trials=ns.trials, tol=ns.tol,
                       timing=not ns.no_timing)
    text = to_csv(report) if ns.format == "csv" else to_json(report)
    if ns.report:
        try:
            with open(ns.report, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"qpsi verify: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    s = report.summary
    print(f"{report.suite}: {s['passed']}/{s['total']} passed, {s['failed']} failed, "
          f"{s['skipped']} skipped", file=sys.stderr)
    return EXIT_OK if s["failed"] == 0 else EXIT_EVAL


def _sweep_selberg(ns, policy) -> list[str]:
    """atype_sum at the Selberg specialisation against the classical product, per q.

    The normalisation linking the two is not fixed, so the ratio column is
    exploratory output only.
    """
    n, alpha, beta, tau = _need(ns, "n", "alpha", "beta", "tau")
    cls = classical.selberg_product(_selberg(ns))
    lines = ["q\tatype_sum\tselberg_product\tratio"]
    for q in ns.qs:
        try:
            p = multidim.ATypeParams(n=n, m=1, alpha=alpha, tau=tau, a=(1,), b=(q ** beta,),
                                     xi=multidim.selberg_spec_xi(n, tau, q), q=q)
            v = multidim.atype_sum(p, policy).value
            lines.append(f"{q:g}\t{fmt_number(v)}\t{fmt_number(cls)}\t{fmt_number(v / cls)}")
        except (QPsiError, ArithmeticError, ValueError) as exc:
            lines.append(f"{q:g}\t{type(exc).__name__}: {exc}")
    return lines


def _sweep_richardson(ns, policy) -> list[str]:
    """aomoto_product at integer tau via the symmetric average of tau +- eps."""
    base = _atype(ns)
    eps = ns.eps
    from dataclasses import replace

    hi = multidim.aomoto_product(replace(base, tau=base.tau + eps), policy)
    lo = multidim.aomoto_product(replace(base, tau=base.tau - eps), policy)
    lines = [f"tau+eps\t{fmt_number(hi)}", f"tau-eps\t{fmt_number(lo)}",
             f"estimate\t{fmt_number((hi + lo) / 2)}"]
    try:
        lines.append(f"atype_sum\t{fmt_number(multidim.atype_sum(base, policy).value)}")
    except (QPsiError, ArithmeticError, ValueError) as exc:
        lines.append(f"atype_sum\t{type(exc).__name__}: {exc}")
    return lines


SWEEPS = {"selberg-q": _sweep_selberg, "aomoto-integer-tau": _sweep_richardson}


def cmd_sweep(ns) -> int:
    policy = make_policy(ns.rel_tol)
    try:
        lines = SWEEPS[ns.kind](ns, policy)
    except UsageError:
        raise
    except (QPsiError, ArithmeticError, ValueError) as exc:
        print(f"qpsi sweep: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _add_param_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("parameters (complex values as 0.3+0.2j)")
    g.add_argument("--q", type=_real)
    g.add_argument("--z", type=_num)
    g.add_argument("--u", type=_num)
    g.add_argument("--nu", type=int)
    g.add_argument("--alpha", type=_num)
    g.add_argument("--beta", type=_num)
    g.add_argument("--tau", type=_num)
    g.add_argument("--a", type=_num, action="append", help="repeatable")
    g.add_argument("--b", type=_num, action="append", help="repeatable")
    g.add_argument("--x", type=_num, action="append", help="repeatable")
    g.add_argument("--xi", type=_num, action="append", help="repeatable")
    g.add_argument("--s", type=_num, action="append", help="repeatable")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--i", type=int, help="shifted parameter index (1-4)")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--rel-tol", type=_real, default=None,
                   help=f"truncation tolerance of every sum (default 1e-12, or ${ENV_TOL})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpsi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one operation")
    pe.add_argument("target", choices=sorted(TARGETS))
    pe.add_argument("--format", choices=("text", "json"), default="text")
    _add_param_flags(pe)
    _add_common(pe)

    pv = sub.add_parser("verify", help="run a seeded verification suite")
    pv.add_argument("--suite", help="suite or identity name")
    pv.add_argument("--list", action="store_true", help="list suites, identities and safe regions")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--trials", type=int, default=None, help="override trials per identity")
    pv.add_argument("--tol", type=_real, default=None, help="override pass tolerance of every identity")
    pv.add_argument("--report", help="write the report here instead of stdout")
    pv.add_argument("--format", choices=("json", "csv"), default="json")
    pv.add_argument("--no-timing", action="store_true", help="write wall_ms as null")
    _add_common(pv)

    ps = sub.add_parser("sweep", help="exploratory reports")
    ps.add_argument("kind", choices=sorted(SWEEPS))
    ps.add_argument("--qs", type=_real, nargs="+", default=[0.3, 0.5, 0.7])
    ps.add_argument("--eps", type=_real, default=1e-6)
    _add_param_flags(ps)
    _add_common(ps)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    handler = {"eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep}[ns.command]
    try:
        return handler(ns)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qpsi {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
