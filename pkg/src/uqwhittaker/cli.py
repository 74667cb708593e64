"""Command-line interface: ``uqw nf | act | vectors | criticality | structure | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .expr import ExprError, Evaluator, parse_expr
from .module import Maximal, WhittakerModule
from .pbw import render_monomial
from .scalars import SYMBOLIC, EvalPoint, NumericField, ScalarZeroDivision
from . import structure as st
from .suites import SUITES, Context, run_all

__all__ = ["main", "build_parser", "UsageError"]


class UsageError(Exception):
    """Bad input reported on stderr with exit status 2."""


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def _field(args):
    q0 = getattr(args, "q", None)
    a0 = getattr(args, "alpha", None)
    if q0 is None and a0 is None:
        return SYMBOLIC
    try:
        point = EvalPoint(_fraction(q0 or "2"), _fraction(a0 or "1"))
    except ValueError as e:
        raise UsageError(str(e))
    return NumericField(point)


def _module(args):
    f = _field(args)
    return WhittakerModule() if f is SYMBOLIC else WhittakerModule(f)


def _eval(text, module):
    try:
        node = parse_expr(text)
        return Evaluator(module).eval(node, text)
    except ExprError as e:
        raise UsageError(f"{text!r}: {e}")
    except (ScalarZeroDivision, ZeroDivisionError) as e:
        raise UsageError(f"{text!r}: division by zero ({e})")


def _scalar(text, module, flag):
    val = _eval(text, module)
    if val.kind != "scalar":
        raise UsageError(f"{flag} expects a scalar, got {val.kind} {text!r}")
    return val.value


def _kappa_c(args, module):
    kappa = _scalar(args.kappa, module, "--kappa")
    c = _scalar(args.c, module, "--c")
    if kappa == 0:
        raise UsageError("--kappa must be nonzero")
    return kappa, c


def _algebra_json(a):
    render = a.alg.field.render
    return [{"monomial": render_monomial(m), "coeff": render(c)} for m, c in a.sorted_terms()]


# --------------------------------------------------------------------------
# commands


def cmd_nf(args, out):
    M = _module(args)
    val = _eval(args.expr, M)
    if val.kind == "module":
        raise UsageError("nf expects an algebra expression (no v)")
    a = Evaluator(M).to_algebra(val)
    if args.json:
        out.write(_dump({"input": args.expr, "normal_form": a.render(), "terms": _algebra_json(a)}) + "\n")
    else:
        out.write(a.render() + "\n")
    return 0


def cmd_act(args, out):
    if args.on != "on":
        raise UsageError("usage: act EXPR on MEXPR")
    M = _module(args)
    op = _eval(args.expr, M)
    if op.kind == "module":
        raise UsageError("the operator expression must not contain v")
    vec = _eval(args.mexpr, M)
    if vec.kind != "module":
        raise UsageError("the module expression must end in v or u(...)")
    res = M.act_algebra(Evaluator(M).to_algebra(op), vec.value)
    reduced = None
    if args.kappa is not None or args.c is not None:
        if args.kappa is None or args.c is None:
            raise UsageError("--kappa and --c go together")
        kappa, c = _kappa_c(args, M)
        reduced = M.reduce_mod(res, Maximal(kappa, c))
    shown = reduced if reduced is not None else res
    if args.json:
        payload = {"operator": args.expr, "vector": args.mexpr, "result": shown.to_json(),
                   "reduced": reduced is not None}
        out.write(_dump(payload) + "\n")
    else:
        out.write(f"{shown}\n")
    return 0


def cmd_criticality(args, out):
    M = _module(args)
    kappa, c = _kappa_c(args, M)
    rep = st.criticality(kappa, c, args.nmax, M.field)
    if args.json:
        out.write(_dump(rep.to_json()) + "\n")
        return 0
    r = M.field.render
    if rep.is_critical:
        out.write(f"critical: roots {rep.roots} (n_minus={rep.n_minus}, n_plus={rep.n_plus})\n")
        for eps in sorted(rep.kappa_eps):
            out.write(f"  kappa_{eps} = {r(rep.kappa_eps[eps])}, c_{eps} = {r(rep.c_eps[eps])}\n")
    else:
        out.write("non-critical\n")
    status = "complete" if rep.complete else f"incomplete (roots possible up to n = {rep.certified_bound})"
    out.write(f"scan bound {rep.scan_bound}: {status}\n")
    return 0


def cmd_vectors(args, out):
    M = _module(args)
    kappa, c = _kappa_c(args, M)
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    if M.field is SYMBOLIC:
        try:
            rep = st.whittaker_vector_report(kappa, c, args.l, args.degree,
                                             point=None if args.exact else "auto", n_max=args.nmax)
        except ValueError as e:
            raise UsageError(str(e))
        basis = rep.solution.basis
        payload = rep.to_json()
    else:
        crit = st.criticality(kappa, c, args.nmax, M.field)
        sol = st.solve_whittaker_vectors(kappa, c, args.l, args.degree, M)
        basis = sol.basis
        payload = {"kappa": M.field.render(kappa), "c": M.field.render(c), "l": args.l,
                   "window": args.degree, "roots": crit.roots, "dimension": sol.dimension,
                   "eval_point": {"q": str(M.field.point.q0), "alpha": str(M.field.point.alpha0)}}
    payload["basis"] = [b.to_json() for b in basis]
    if args.json:
        out.write(_dump(payload) + "\n")
        return 0
    out.write(f"dimension {payload['dimension']} (window j+k <= {args.degree}, l = {args.l})\n")
    if "certified" in payload:
        out.write(f"closed forms: {', '.join(payload['candidates'])}; "
                  f"decomposes: {payload['decomposes']}; certified: {payload['certified']}\n")
    for i, b in enumerate(basis):
        out.write(f"  w{i} = {b}\n")
    return 0


def cmd_structure(args, out):
    M = _module(args)
    kappa, c = _kappa_c(args, M)
    comp = st.composition_report(kappa, c, M, args.nmax)
    center = st.center_elements(M.algebra)
    r = M.field.render
    checks = {"v": st.casimir_eigen_check(kappa, c, M, center=center)}
    for layer in comp.layers:
        checks[f"u{layer.eps}"] = st.casimir_eigen_check(
            kappa, c, M, vector=layer.generator, eig=(layer.kappa_eps, layer.c_eps), center=center)
    ok = all(ch.ok for ch in checks.values())
    if args.json:
        payload = comp.to_json()
        payload["central_characters"] = {k: ch.to_json(r) for k, ch in sorted(checks.items())}
        payload["criticality"] = comp.criticality.to_json()
        out.write(_dump(payload) + "\n")
    else:
        out.write(f"{comp.kind}: {comp.chain()}\n")
        for layer in comp.layers:
            out.write(f"  W{layer.eps} generated by u-bar({layer.n}) ~ V(kappa={r(layer.kappa_eps)}, "
                      f"c={r(layer.c_eps)}), its roots {layer.sub_roots}\n")
        for k, ch in sorted(checks.items()):
            out.write(f"  central character on {k}: {'ok' if ch.ok else 'FAILED'}\n")
    return 0 if ok else 1


def cmd_verify(args, out):
    names = args.suite or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r} (choose from {', '.join(SUITES)})")
    M = _module(args)
    if args.nmax is not None and args.nmax < 0:
        raise UsageError("--nmax must be nonnegative")
    ctx = Context(M, nmax=args.nmax)
    results = run_all(ctx, names)
    ok = all(r.passed for r in results)
    payload = {"field": M.field.name, "passed": ok, "suites": [r.to_json() for r in results]}
    text = _dump(payload) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        out.write(text)
    else:
        for r in results:
            failed = [c for c in r.checks if not c.passed]
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.name} "
                      f"({len(r.checks) - len(failed)}/{len(r.checks)} checks)\n")
            for c in failed:
                out.write(f"    failed: {c.name}" + (f" [{c.detail}]" if c.detail else "") + "\n")
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def _add_field(p):
    p.add_argument("--q", help="specialize q to this rational (not 0, 1, -1)")
    p.add_argument("--alpha", help="specialize alpha to this nonzero rational")


def _add_pair(p, required=True):
    p.add_argument("--kappa", required=required, help="value of K (scalar expression)")
    p.add_argument("--c", required=required, help="value of C1 (scalar expression)")


def build_parser():
    parser = argparse.ArgumentParser(prog="uqw", description="Exact computations in U_q(sl3) Whittaker modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="PBW normal form of an algebra expression")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    _add_field(p)
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("act", help="act with an algebra expression on a module vector")
    p.add_argument("expr")
    p.add_argument("on", metavar="on")
    p.add_argument("mexpr")
    _add_pair(p, required=False)
    p.add_argument("--json", action="store_true")
    _add_field(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("vectors", help="Whittaker vectors of type (alpha q^l, 0) in V(kappa, c)")
    _add_pair(p)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--degree", type=int, required=True, help="window j+k <= degree")
    p.add_argument("--nmax", type=int, default=st.DEFAULT_NMAX)
    p.add_argument("--exact", action="store_true", help="solve over Q(q, alpha) without specializing")
    p.add_argument("--json", action="store_true")
    _add_field(p)
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("criticality", help="roots of the critical polynomials at (kappa, c)")
    _add_pair(p)
    p.add_argument("--nmax", type=int, default=st.DEFAULT_NMAX)
    p.add_argument("--json", action="store_true")
    _add_field(p)
    p.set_defaults(func=cmd_criticality)

    p = sub.add_parser("structure", help="composition series and central characters")
    _add_pair(p)
    p.add_argument("--nmax", type=int, default=st.DEFAULT_NMAX)
    p.add_argument("--json", action="store_true")
    _add_field(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable)")
    p.add_argument("--nmax", type=int, help="cap on n in the u-family, f1-c1 and g-power suites")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", help="also write the JSON report to this file")
    _add_field(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        err.write(f"uqw: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
