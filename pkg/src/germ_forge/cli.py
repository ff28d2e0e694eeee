"""Command line front end: ``germ-forge <subcommand> ...``.

Every run prints one JSON document on stdout. Exit codes: 0 computed,
1 definite negative verdict, 2 unknown or truncation too coarse, 64 usage
error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import serialize as ser
from .arcs import TruncatedArc, compare_arc_spaces, member_trunc
from .cascade import build_cascade, build_deformation
from .discriminants import first_nonvanishing, gen_discriminants
from .equisingularity import check_system, FAILS, UNKNOWN
from .errors import GermForgeError, JetBeyondTruncation, MalformedFamily, RegularDirectionExhausted, TruncationTooCoarse
from .parser import ParseError, parse_list, parse_poly
from .poly import Poly
from .scalars import FIELDS, REAL
from .series import PseudoPoly
from .tangency import apply_to_arc, make_phi, verify_tangency

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vars(text: str) -> tuple:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    if not names:
        raise UsageError("--vars needs at least one variable")
    if len(set(names)) != len(names):
        raise UsageError("--vars has repeated names")
    return names


def _poly(text: str, vars, field, allow_t=False) -> Poly:
    p = parse_poly(text, vars, field, allow_t=allow_t)
    if p.vars != tuple(vars):
        raise UsageError("the parameter 't' is not allowed here")
    return p


def _arc(text: str, n: int, m: int, field) -> TruncatedArc:
    comps = parse_list(text, ("t",), field)
    if len(comps) != n:
        raise UsageError(f"arc {text!r} has {len(comps)} components, expected {n}")
    try:
        return TruncatedArc(tuple(c.truncate(m) for c in comps), m, field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cascade_inputs(args, vars):
    return [_poly(p, vars, args.field) for p in args.poly]


def cmd_cascade(args):
    vars = _vars(args.vars)
    ns = build_cascade(_cascade_inputs(args, vars), args.order, args.seed)
    return ser.normal_system_to_json(ns), EXIT_OK


def cmd_deform(args):
    vars = _vars(args.vars)
    ns = build_cascade(_cascade_inputs(args, vars), args.order, args.seed)
    fam = build_deformation(ns, args.m)
    return ser.deformation_to_json(fam), EXIT_OK


def _exit_for_verdict(v) -> int:
    if v.verdict == FAILS:
        return EXIT_NEGATIVE
    if v.verdict == UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_check_equising(args):
    vars = _vars(args.vars)
    if args.member:
        params = ("t",)
        if "t" in vars:
            raise UsageError("'t' is reserved for the family parameter")
        full = vars + params
        n = len(vars)
        if len(args.member) != n + 1:
            raise UsageError(f"need {n + 1} --member polynomials F_{n}..F_0, got {len(args.member)}")
        family = []
        for k, text in enumerate(args.member):
            i = n - k
            p = parse_poly(text, full, args.field, allow_t=False)
            if p == Poly.constant(full, 1, args.field):
                family.append(PseudoPoly.one(max(i - 1, 0), full, args.field, params))
                continue
            main = max(i - 1, 0)
            try:
                family.append(PseudoPoly.from_series(p, main, params))
            except ValueError as exc:
                raise MalformedFamily(f"member F_{i}: {exc}") from exc
        verdict = check_system(family, args.order, params, args.samples)
        return ser.verdict_to_json(verdict, full, args.field), _exit_for_verdict(verdict)
    if not args.poly:
        raise UsageError("give either --member (a family) or --poly (deform a cascade)")
    ns = build_cascade(_cascade_inputs(args, vars), args.order, args.seed)
    fam = build_deformation(ns, args.m) if args.m is not None else None
    members = list(fam.members) if fam else None
    if members is None:
        from .cascade import constant_family

        members = constant_family(ns)
    verdict = check_system(members, args.order, ("t",), args.samples)
    return ser.verdict_to_json(verdict, members[0].vars, args.field), _exit_for_verdict(verdict)


def cmd_discriminants(args):
    vars = _vars(args.vars)
    p = _poly(args.poly, vars, args.field)
    main = vars.index(args.main) if args.main else len(vars) - 1
    try:
        F = PseudoPoly.from_series(p, main)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    vec = gen_discriminants(F, args.route)
    first = first_nonvanishing(F, args.route) if F.degree else None
    distinct = None if first is None else F.degree - first[0] + 1
    return ser.discriminants_to_json(F, vec, first, distinct), EXIT_OK


def _exit_for_cert(cert) -> int:
    if cert.positive:
        return EXIT_OK
    if cert.negative:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_arc_member(args):
    vars = _vars(args.vars)
    f = _poly(args.poly, vars, args.field)
    arc = _arc(args.arc, len(vars), args.m, args.field)
    cert = member_trunc(f, arc, args.K, args.field)
    return ser.certificate_to_json(f, cert), _exit_for_cert(cert)


def cmd_arc_compare(args):
    vars = _vars(args.vars)
    f = _poly(args.poly, vars, args.field)
    g = _poly(args.other, vars, args.field)
    arcs = [_arc(a, len(vars), args.m, args.field) for a in args.arc]
    report = compare_arc_spaces(f, g, args.m, args.K, arcs, args.field)
    code = EXIT_UNKNOWN if report.count("unknown") else EXIT_OK
    return ser.comparison_to_json(f, g, report), code


def cmd_tangency(args):
    vars = _vars(args.vars)
    tau = _poly(args.tau, vars, args.field)
    try:
        delta = Fraction(args.delta)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --delta {args.delta!r}") from exc
    phi = make_phi(tau, delta, args.m)
    order, holds = verify_tangency(phi)
    arc = None
    if args.arc is not None:
        if args.K is None:
            raise UsageError("--arc needs --K")
        comps = parse_list(args.arc, ("t",), args.field)
        order_in = max([c.total_degree() for c in comps] + [1])
        arc = apply_to_arc(phi, _arc(args.arc, len(vars), order_in, args.field), args.K)
    return ser.tangency_to_json(phi, order, holds, arc), EXIT_OK if holds else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="germ-forge", description="Exact kernels for algebraic approximation of analytic germs.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, order=True):
        p.add_argument("--vars", required=True, help="comma-separated variable names, e.g. x,y,z")
        p.add_argument("--field", choices=FIELDS, default=REAL)
        if order:
            p.add_argument("--order", type=int, default=12, help="truncation order N")

    p = sub.add_parser("cascade", help="build the normal system of one or more pseudopolynomials")
    common(p)
    p.add_argument("--poly", action="append", required=True, help="input polynomial (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_cascade)

    p = sub.add_parser("deform", help="Taylor-split deformation family of a cascade")
    common(p)
    p.add_argument("--poly", action="append", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, required=True, help="jet order kept at t = 0")
    p.set_defaults(run=cmd_deform)

    p = sub.add_parser("check-equising", help="check Zariski equisingularity conditions of a family")
    common(p)
    p.add_argument("--member", action="append", help="F_n, ..., F_0 in order, parameter t (repeatable)")
    p.add_argument("--poly", action="append", help="deform the cascade of this input instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=None, help="split order for the deformation (omit for the constant family)")
    p.add_argument("--samples", type=int, default=32, help="parameter values tried when hunting counterexamples")
    p.set_defaults(run=cmd_check_equising)

    p = sub.add_parser("discriminants", help="generalized discriminants of a monic polynomial")
    common(p, order=False)
    p.add_argument("--poly", required=True)
    p.add_argument("--main", default=None, help="main variable (default: the last one)")
    p.add_argument("--route", choices=("auto", "oracle", "subresultant"), default="auto")
    p.set_defaults(run=cmd_discriminants)

    p = sub.add_parser("arc-member", help="certify or refute membership of a truncated arc")
    common(p, order=False)
    p.add_argument("--poly", required=True)
    p.add_argument("--arc", required=True, help='comma-separated components in t, e.g. "t,0,0"')
    p.add_argument("--m", type=int, required=True, help="truncation order of the arc")
    p.add_argument("--K", type=int, required=True, help="lift order")
    p.set_defaults(run=cmd_arc_member)

    p = sub.add_parser("arc-compare", help="compare arc truncation spaces of two hypersurfaces")
    common(p, order=False)
    p.add_argument("--poly", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--arc", action="append", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.set_defaults(run=cmd_arc_compare)

    p = sub.add_parser("tangency", help="the map phi_m and its order of contact with the identity")
    common(p, order=False)
    p.add_argument("--tau", required=True)
    p.add_argument("--delta", default="1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--arc", default=None, help="optional arc to push through the map")
    p.add_argument("--K", type=int, default=None)
    p.set_defaults(run=cmd_tangency)
    return ap


def _error_doc(message: str, code: int) -> dict:
    return {"schema": ser.SCHEMA, "kind": "error", "message": message, "exit_code": code}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not getattr(args, "run", None):
            raise UsageError("missing subcommand")
        doc, code = args.run(args)
    except UsageError as exc:
        err.write(f"germ-forge: usage error: {exc}\n")
        out.write(ser.dumps(_error_doc(str(exc), EXIT_USAGE)))
        return EXIT_USAGE
    except (ParseError, MalformedFamily) as exc:
        err.write(f"germ-forge: {exc}\n")
        out.write(ser.dumps(_error_doc(str(exc), EXIT_USAGE)))
        return EXIT_USAGE
    except (TruncationTooCoarse, RegularDirectionExhausted, JetBeyondTruncation) as exc:
        err.write(f"germ-forge: {exc}\n")
        out.write(ser.dumps(_error_doc(str(exc), EXIT_UNKNOWN)))
        return EXIT_UNKNOWN
    except (ValueError, GermForgeError) as exc:
        err.write(f"germ-forge: invalid input: {exc}\n")
        out.write(ser.dumps(_error_doc(str(exc), EXIT_USAGE)))
        return EXIT_USAGE
    out.write(ser.dumps(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
