"""Command-line interface: JSON in, JSON out.

Exit status is 0 on success, 1 when the input is well formed but the request
is refused or yields no certificate, and 2 for malformed input.  Results go
to stdout as sorted-key JSON; error documents go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from . import __version__
from . import algebra as al
from . import kernels
from .algebra import AlgebraElement
from .engine import AR_RETRY_CAP, PAIR_RETRY_CAP, CommutatorCertificate, decompose, verify_certificate
from .errors import DescriptorMismatch, DimensionError, TwoCommError
from .euler import (
    BundleSpec,
    certify_not_subequivalent,
    euler_closed_form,
    tensor_projection_eval,
    villadsen_plan,
)
from .fields import GF
from .hyperplane import hyperplane_factorize
from .linalg import Matrix, rank
from .ncpoly import NCPolynomial, commutator_ideal_decompose, expand_check
from .oracle import cross_check, enumerate_products, independent_check

COMMANDS = ("info", "decompose", "verify", "ncpoly", "euler", "villadsen", "oracle", "bott", "hyperplane")

_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"}, {"type": "integer"}]}

ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": list(al.KINDS)},
        "m": {"type": "integer", "minimum": 1},
        "a": {"type": "integer"},
        "b": {"type": "integer"},
        "field": {"type": "string"},
    },
}

ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["algebra", "coords"],
    "properties": {"algebra": ALGEBRA_SCHEMA, "coords": {"type": "array", "items": _RATIONAL}},
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": list("abcde"),
    "properties": {k: ELEMENT_SCHEMA for k in "abcde"},
}

NCPOLY_SCHEMA = {
    "type": "object",
    "required": ["vars", "terms"],
    "properties": {
        "vars": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["word"],
                "properties": {
                    "word": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "coeff": _RATIONAL,
                },
            },
        },
    },
}

BOTT_SCHEMA = {
    "type": "object",
    "required": ["points"],
    "properties": {
        "points": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": _RATIONAL},
        }
    },
}


class Malformed(Exception):
    def __init__(self, message, path="$"):
        super().__init__(message)
        self.path = path


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _load(source, schema):
    try:
        if source is None or source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise Malformed(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise Malformed(f"invalid JSON: {exc}") from exc
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema).iter_errors(doc))
    if err is not None:
        raise Malformed(err.message, _json_path(err.absolute_path))
    return doc


def _parse(builder, doc, path="$"):
    try:
        return builder(doc)
    except (ValueError, KeyError, TypeError, ZeroDivisionError, DimensionError, DescriptorMismatch) as exc:
        raise Malformed(str(exc), path) from exc


def _emit(doc):
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _stage(text):
    try:
        n, l = text.split(":")
        return int(n), int(l)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n_i:l_i, got {text!r}")


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_info(args):
    _emit(
        {
            "version": __version__,
            "commands": list(COMMANDS),
            "algebra_kinds": list(al.KINDS),
            "kernel_backend": kernels.BACKEND,
            "retry_caps": {"trace_zero_pair": PAIR_RETRY_CAP, "ar_commutator": AR_RETRY_CAP},
        }
    )
    return 0


def cmd_decompose(args):
    doc = _load(args.input, ELEMENT_SCHEMA)
    a = _parse(AlgebraElement.from_json, doc)
    cert = decompose(a, seed=args.seed, max_retries=args.max_retries)
    _emit(cert.to_json())
    return 0


def cmd_verify(args):
    doc = _load(args.input, CERTIFICATE_SCHEMA)
    cert = _parse(CommutatorCertificate.from_json, doc)
    ok = verify_certificate(cert)
    indep = independent_check(cert)
    _emit({"verified": ok, "independent_check": indep, "path": cert.path})
    return 0 if ok and indep else 1


def cmd_ncpoly(args):
    doc = _load(args.input, NCPOLY_SCHEMA)
    f = _parse(NCPolynomial.from_json, doc)
    dec = commutator_ideal_decompose(f)
    out = dec.to_json()
    out["expand_check"] = expand_check(dec, f)
    _emit(out)
    return 0


def cmd_euler(args):
    if not args.stage:
        raise Malformed("at least one --stage n_i:l_i is required", "--stage")
    spec = _parse(lambda s: BundleSpec(tuple(s)), args.stage, "--stage")
    if args.power < 0:
        raise Malformed("power must be nonnegative", "--power")
    cert = certify_not_subequivalent(spec, args.power)
    out = cert.to_json()
    out["class_is_zero"] = euler_closed_form(spec, args.power) is None
    _emit(out)
    return 0 if cert.certified else 1


def cmd_villadsen(args):
    plan = villadsen_plan(args.m, args.stages, coverage=not args.no_coverage)
    _emit(plan.to_json(include_points=not args.no_points))
    return 0 if plan.all_certified else 1


def cmd_oracle(args):
    if args.trials is not None:
        rep = cross_check(seed=args.seed, trials=args.trials)
        _emit(rep)
        return 0 if rep["all_verified"] and rep["tamper_flagged"] is not False else 1
    _parse(GF, args.p, "--p")
    if args.m < 1:
        raise Malformed("m must be positive", "--m")
    rep = enumerate_products(args.p, args.m)
    _emit(rep.to_json())
    return 0 if rep.covers_all else 1


def _matrix_json(M: Matrix):
    return [[M.field.to_json(x) for x in row] for row in M.rows]


def cmd_bott(args):
    doc = _load(args.input, BOTT_SCHEMA)
    pts = _parse(lambda d: [tuple(Fraction(c) for c in p) for p in d["points"]], doc, "$.points")
    q = tensor_projection_eval(pts)
    _emit(
        {
            "matrix": _matrix_json(q),
            "size": q.nrows,
            "idempotent": q @ q == q,
            "self_adjoint": q.conj_transpose() == q,
            "trace": q.field.to_json(q.trace()),
            "rank": rank(q),
        }
    )
    return 0


def cmd_hyperplane(args):
    doc = _load(args.input, ELEMENT_SCHEMA)
    a = _parse(AlgebraElement.from_json, doc)
    t = None
    if args.t_lambda is not None:
        m = a.algebra.m
        if m < 2:
            raise Malformed("--t-lambda needs m >= 2", "--t-lambda")
        rows = [[1 if r == s else 0 for s in range(m)] for r in range(m)]
        rows[0][1] = _parse(Fraction, args.t_lambda, "--t-lambda")
        t = Matrix(a.algebra.field, rows)
    fac = hyperplane_factorize(a, t=t)
    _emit(fac.to_json())
    return 0 if fac.verified else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twocomm", description="Exact two-commutator decompositions and Euler-class certificates.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    sub.add_parser("info", help="library capabilities")

    d = sub.add_parser("decompose", help="certificate a = [b,c][d,e] for an element")
    d.add_argument("input", nargs="?", help="element JSON file (default stdin)")
    d.add_argument("--seed", type=_seed, default=0)
    d.add_argument("--max-retries", type=int, default=None)

    v = sub.add_parser("verify", help="re-verify a certificate")
    v.add_argument("input", nargs="?")

    n = sub.add_parser("ncpoly", help="rewrite f into the commutator ideal")
    n.add_argument("input", nargs="?")

    e = sub.add_parser("euler", help="Euler-class certificate for a Whitney-sum power")
    e.add_argument("--stage", type=_stage, action="append", default=[], metavar="N:L")
    e.add_argument("--power", type=int, required=True)

    vp = sub.add_parser("villadsen", help="stage plan for an inductive limit failing C_m")
    vp.add_argument("--m", type=_positive, required=True)
    vp.add_argument("--stages", type=_positive, required=True)
    vp.add_argument("--no-points", action="store_true", help="omit evaluation points")
    vp.add_argument("--no-coverage", action="store_true", help="skip the grid-coverage diagnostic")

    o = sub.add_parser("oracle", help="exhaustive check on M_m(F_p), or --trials for a batch cross-check")
    o.add_argument("--p", type=int, default=2)
    o.add_argument("--m", type=int, default=2)
    o.add_argument("--trials", type=_positive, default=None)
    o.add_argument("--seed", type=_seed, default=0)

    b = sub.add_parser("bott", help="tensor product of Bott projections at rational sphere points")
    b.add_argument("input", nargs="?")

    h = sub.add_parser("hyperplane", help="factor a = h1 h2 with reduced trace of both factors zero")
    h.add_argument("input", nargs="?")
    h.add_argument("--t-lambda", type=str, default=None, help="use t = I + lambda e_12")
    return p


_HANDLERS = {
    "info": cmd_info,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "ncpoly": cmd_ncpoly,
    "euler": cmd_euler,
    "villadsen": cmd_villadsen,
    "oracle": cmd_oracle,
    "bott": cmd_bott,
    "hyperplane": cmd_hyperplane,
}


def _error(code, message, path=None):
    doc = {"error": code, "message": message}
    if path is not None:
        doc["path"] = path
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _HANDLERS[args.command](args)
    except Malformed as exc:
        _error("MalformedInput", str(exc), exc.path)
        return 2
    except TwoCommError as exc:
        _error(exc.code, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
