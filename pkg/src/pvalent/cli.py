"""Batch front-end.

    pvalent certify --thm 23 --params cls.json --coeffs f.json [--K N] [--assume-finite]
    pvalent sample  --params cls.json --coeffs f.json [--grid 64x64] [--rmax 0.99]
    pvalent conic   --params cls.json --vmin -2 --vmax 2 --step 0.5
    pvalent operator --op-params op.json --class-params cls.json [--K 40]
    pvalent example --p 3 --alpha 2 --beta -1 --theta 0 --K 10000
    pvalent invert  --coeffs f.json --mu 1

Reports are JSON (CSV for ``conic``) written to ``--out`` or stdout. Exit
status is 0 on success, 1 for malformed input or parameter invariants, 2 for
inputs outside an operation's domain; errors go to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import _json
from .classify import (
    ClassParams,
    Grid,
    certify_T22,
    certify_T23,
    check_T21_necessary,
    conic_boundary,
    conic_shape,
    paper_example,
    paper_example_tail,
    sample_membership,
)
from .errors import InvariantError, PreconditionError
from .operator import DEFAULT_K, OperatorParams, certify_operator, operator_coefficients
from .series import NO_TAIL, MuForm, PowerSeries, TailModel, a_coefficients, to_mu_form


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(obj, out):
    _emit(_json.dumps(obj) + "\n", out)


def _coeff_list(values):
    return np.array([_json.parse_complex(v) for v in values], dtype=complex)


def _parse_grid(text):
    try:
        n, m = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise InvariantError("--grid must look like NxM, got %r" % text) from None
    return n, m


def _series_input(doc, K=None):
    f = PowerSeries.from_dict(doc)
    if K is not None:
        f = f.truncate(K)
    return f


def _cmd_certify(args):
    cls = ClassParams.from_dict(_load(args.params))
    report = {"command": "certify", "theorem": args.thm, "class_params": cls.to_dict()}
    if args.thm == "31":
        if not args.op_params:
            raise InvariantError("--thm 31 needs --op-params")
        op = OperatorParams.from_dict(_load(args.op_params))
        K = DEFAULT_K if args.K is None else args.K
        report["operator_params"] = op.to_dict()
        report["K"] = K
        report["certificate"] = certify_operator(op, cls, K).to_dict()
        return report
    if not args.coeffs:
        raise InvariantError("--thm %s needs --coeffs" % args.thm)
    doc = _load(args.coeffs)
    tail = TailModel.from_dict(doc.get("tail"))
    report["tail_model"] = tail.to_dict()
    report["assume_finite"] = bool(args.assume_finite)
    if args.thm == "23":
        if "a" in doc:
            a = _coeff_list(doc["a"])
            if args.K is not None:
                a = a[: max(args.K - cls.p, 0)]
        else:
            f = _series_input(doc, args.K)
            if f.lead != cls.p:
                raise PreconditionError("series starts at z^%d but p = %d" % (f.lead, cls.p))
            a = a_coefficients(f)
        report["K"] = cls.p + len(a)
        cert = certify_T23(a, cls, tail, args.assume_finite)
    else:
        mu = cls.require_mu()
        if "b" in doc:
            b = _coeff_list(doc["b"])
            if args.K is not None:
                b = b[: args.K]
            form = MuForm(b, True, cls.p, mu)
        else:
            f = _series_input(doc, args.K)
            if f.lead != cls.p:
                raise PreconditionError("series starts at z^%d but p = %d" % (f.lead, cls.p))
            form = to_mu_form(f, mu)
            # the tail model describes f, not b; only a bare b list keeps it
            tail = NO_TAIL
            report["tail_model"] = tail.to_dict()
        report["K"] = len(form.b)
        if args.thm == "22":
            cert = certify_T22(form, cls, tail, args.assume_finite)
        else:
            cert = check_T21_necessary(form, cls, tail)
    report["certificate"] = cert.to_dict()
    return report


def _cmd_sample(args):
    cls = ClassParams.from_dict(_load(args.params))
    doc = _load(args.coeffs)
    f = _series_input(doc, args.K)
    tail = TailModel.from_dict(doc.get("tail"))
    n, m = _parse_grid(args.grid)
    grid = Grid(n, m, args.rmax)
    rep = sample_membership(f, cls, grid, tail)
    return {
        "command": "sample", "class_params": cls.to_dict(), "tail_model": tail.to_dict(),
        "K": f.order, "report": rep.to_dict(),
    }


def _cmd_conic(args):
    cls = ClassParams.from_dict(_load(args.params))
    if not args.step > 0 or args.vmax < args.vmin:
        raise InvariantError("need step > 0 and vmax >= vmin")
    count = int(round((args.vmax - args.vmin) / args.step)) + 1
    v = args.vmin + args.step * np.arange(count)
    pts = conic_boundary(cls, v)
    shape = conic_shape(cls)
    lines = ["u,v"] + ["%s,%s" % (format(u, ".17g"), format(vv, ".17g")) for u, vv in pts]
    _emit("\n".join(lines) + "\n", args.out)
    sys.stderr.write(_json.dumps({"command": "conic", "class_params": cls.to_dict(),
                                  "shape": shape.tag, "eccentricity": shape.eccentricity,
                                  "points": len(pts)}) + "\n")
    return None


def _cmd_operator(args):
    op = OperatorParams.from_dict(_load(args.op_params))
    cls = ClassParams.from_dict(_load(args.class_params))
    K = DEFAULT_K if args.K is None else args.K
    return {
        "command": "operator", "operator_params": op.to_dict(), "class_params": cls.to_dict(), "K": K,
        "series": operator_coefficients(op, K).to_dict(),
        "certificate": certify_operator(op, cls, K).to_dict(),
    }


def _cmd_example(args):
    f = paper_example(args.p, args.alpha, args.beta, args.theta, args.K)
    doc = f.to_dict()
    doc["tail"] = paper_example_tail(args.p, args.alpha, args.beta).to_dict()
    doc["params"] = {"p": args.p, "alpha": args.alpha, "beta": args.beta, "theta": args.theta, "K": args.K}
    return doc


def _cmd_invert(args):
    f = _series_input(_load(args.coeffs), args.K)
    form = to_mu_form(f, args.mu)
    return {
        "command": "invert", "p": form.p, "mu": form.mu, "K": f.order,
        "starts_at_p": form.starts_at_p, "b": [_json.complex_pair(x) for x in form.b],
    }


def build_parser():
    ap = argparse.ArgumentParser(prog="pvalent", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(func=fn)
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = add("certify", _cmd_certify, "run a coefficient-inequality certificate")
    p.add_argument("--thm", choices=["21", "22", "23", "31"], required=True)
    p.add_argument("--params", required=True, help="class parameters JSON")
    p.add_argument("--coeffs", help="series, {'a': ...} or {'b': ...} JSON")
    p.add_argument("--op-params", help="operator parameters JSON (--thm 31)")
    p.add_argument("--K", type=int)
    p.add_argument("--assume-finite", action="store_true",
                   help="treat stored coefficients as the whole series")

    p = add("sample", _cmd_sample, "falsify membership on a polar grid")
    p.add_argument("--params", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--grid", default="64x64")
    p.add_argument("--rmax", type=float, default=0.99)
    p.add_argument("--K", type=int)

    p = add("conic", _cmd_conic, "CSV of the conic boundary u - p alpha = beta |w - p|")
    p.add_argument("--params", required=True)
    p.add_argument("--vmin", type=float, default=-2.0)
    p.add_argument("--vmax", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.5)

    p = add("operator", _cmd_operator, "build the Hadamard operator and certify it")
    p.add_argument("--op-params", required=True)
    p.add_argument("--class-params", required=True)
    p.add_argument("--K", type=int)

    p = add("example", _cmd_example, "emit the worked example function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--K", type=int, default=256)

    p = add("invert", _cmd_invert, "b_k of (z^p/f)^mu = 1 - sum b_k z^k")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--K", type=int)
    return ap


def _fail(code, exc):
    sys.stderr.write(_json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "K", None) is not None and args.K < 1:
        return _fail(1, InvariantError("--K must be >= 1"))
    try:
        report = args.func(args)
    except PreconditionError as exc:
        return _fail(2, exc)
    except (InvariantError, ValueError, KeyError, TypeError, OSError) as exc:
        return _fail(1, exc)
    try:
        if report is not None:
            _report(report, args.out)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); keep interpreter shutdown quiet
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
