"""Command-line front end.

Every command writes one JSON document (to ``--out`` or stdout) that carries
a ``human`` plain-text summary.  Exit codes: 0 success, 1 mathematical
failure (non-solution, invalid pair, failed check), 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import (
    FormatError,
    InvalidPair,
    NotACharacter,
    NotAnAutomorphism,
    QTwistError,
    ScalarParseError,
)
from .frt import FRT_CONVENTION, frt_relations, manin_end, oq_matrix_relations, q_determinant
from .matrices import format_matrix, parse_matrix
from .quadratic import (
    DEFAULT_DEGREE_CAP,
    GradedAut,
    algebra_from_doc,
    algebra_to_doc,
    bullet,
    hilbert_function,
    koszul_dual,
    zhang_twist_relations,
)
from .scalars import parse_scalar
from .suite import run_suite
from .tensor import qybe_residual, tensor_from_doc, tensor_to_doc
from .twist import classical_rq, twist_r

MATH_FAILURES = (InvalidPair, NotAnAutomorphism, NotACharacter)


class CommandFailed(Exception):
    """A check ran and gave a negative answer; carries the report to print."""

    def __init__(self, report):
        super().__init__(report.get("human", ""))
        self.report = report


def _parse_q(text):
    if text is None or text.strip() == "q":
        return None
    try:
        return parse_scalar(text)
    except ScalarParseError as exc:
        raise FormatError(str(exc), "--q") from None


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", path) from None


def _load(path, loader):
    doc = _read_json(path)
    try:
        return loader(doc)
    except FormatError as exc:
        raise FormatError(str(exc), path) from None


def _matrix_from_doc(doc, keys=("alpha", "matrix")):
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be a JSON object")
    for key in keys:
        if key in doc:
            rows = doc[key]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise FormatError("must be a list of rows", key)
            try:
                return parse_matrix(rows)
            except ScalarParseError as exc:
                raise FormatError(str(exc), key) from None
            except QTwistError as exc:
                raise FormatError(str(exc), key) from None
    raise FormatError(f"missing field {' or '.join(keys)}")


def _algebra_summary(A):
    return f"{len(A.gens)} generators, {len(A.relations)} relations"


# commands ---------------------------------------------------------------------


def cmd_rq(args):
    r = classical_rq(args.n, _parse_q(args.q))
    doc = tensor_to_doc(r)
    q = "q" if args.q is None else args.q
    doc["human"] = f"R_q for n={args.n}, q={q}: {len(r)} nonzero entries"
    return doc


def cmd_qybe_check(args):
    r = _load(args.file, tensor_from_doc)
    res = qybe_residual(r)
    report = {
        "solution": res.is_zero(),
        "residual_nonzero_count": len(res),
        "human": "solution" if res.is_zero() else f"not a solution: {len(res)} nonzero residual entries",
    }
    if not res.is_zero():
        raise CommandFailed(report)
    return report


def cmd_twist(args):
    r = _load(args.r_file, tensor_from_doc)
    alpha = _load(args.alpha_file, _matrix_from_doc)
    twisted = twist_r(r, alpha)
    solution = qybe_residual(twisted).is_zero()
    doc = {
        "r_matrix": tensor_to_doc(twisted),
        "alpha": format_matrix(alpha),
        "valid_pair": True,
        "solution": solution,
        "human": f"twisted operator with {len(twisted)} nonzero entries; solution: {solution}",
    }
    if not solution:
        raise CommandFailed(doc)
    return doc


def cmd_frt(args):
    r = _load(args.file, tensor_from_doc)
    A = frt_relations(r)
    return {
        "r_matrix": tensor_to_doc(r),
        "convention": FRT_CONVENTION.tag,
        "algebra": algebra_to_doc(A),
        "human": f"A(R) for n={r.n}: {_algebra_summary(A)}",
    }


def _algebra_arg(args):
    if args.file:
        return _load(args.file, algebra_from_doc)
    if args.n is None:
        raise FormatError("give an algebra file or --n for O_q(M_n)")
    return oq_matrix_relations(args.n, _parse_q(args.q))


def cmd_hilbert(args):
    A = _algebra_arg(args)
    dims = hilbert_function(A, args.degree, cap=DEFAULT_DEGREE_CAP)
    return {
        "degree": args.degree,
        "dimensions": dims,
        "human": "dimensions in degrees 0.." + str(args.degree) + ": " + ", ".join(map(str, dims)),
    }


def cmd_qdet(args):
    g = q_determinant(args.n, _parse_q(args.q))
    text = str(g)
    return {"n": args.n, "qdet": text, "human": text}


def cmd_koszul_dual(args):
    D = koszul_dual(_load(args.file, algebra_from_doc))
    doc = algebra_to_doc(D)
    doc["human"] = f"Koszul dual: {_algebra_summary(D)}"
    return doc


def cmd_bullet(args):
    A = _load(args.a_file, algebra_from_doc)
    B = _load(args.b_file, algebra_from_doc)
    C = bullet(A, B)
    doc = algebra_to_doc(C)
    doc["human"] = f"bullet product: {_algebra_summary(C)}"
    return doc


def cmd_zhang_twist(args):
    A = _load(args.file, algebra_from_doc)
    mat = _load(args.aut_file, _matrix_from_doc)
    phi = GradedAut(A, mat)
    T = zhang_twist_relations(A, phi)
    doc = algebra_to_doc(T)
    doc["human"] = f"Zhang twist: {_algebra_summary(T)}"
    return doc


def cmd_manin_end(args):
    A = _load(args.file, algebra_from_doc)
    E = manin_end(A)
    from .ncpoly import NCPoly

    coproduct = {g: str(E.comultiply(NCPoly.gen(g))) for g in E.algebra.gens}
    return {
        "algebra": algebra_to_doc(E.algebra),
        "comultiplication": coproduct,
        "human": f"end construction: {_algebra_summary(E.algebra)}",
    }


def cmd_verify_suite(args):
    results = run_suite(args.seed)
    passed = all(r["passed"] for r in results)
    lines = [f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}" for r in results]
    report = {"seed": args.seed, "passed": passed, "checks": results, "human": "\n".join(lines)}
    if not passed:
        raise CommandFailed(report)
    return report


# plumbing ---------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="qtwist", description="Twisting pairs, FRT bialgebras and QYBE solutions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--out", help="write the JSON document here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("rq", cmd_rq, "classical Yang-Baxter operator R_q")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", help="rational value of q (default: symbolic)")

    sp = add("qybe-check", cmd_qybe_check, "test whether an R-matrix solves the QYBE")
    sp.add_argument("file")

    sp = add("twist", cmd_twist, "twist an R-matrix by the pair of an alpha matrix")
    sp.add_argument("r_file")
    sp.add_argument("alpha_file")

    sp = add("frt", cmd_frt, "relations of the FRT bialgebra A(R)")
    sp.add_argument("file")

    sp = add("hilbert", cmd_hilbert, "graded dimensions of a quadratic algebra")
    sp.add_argument("file", nargs="?", help="algebra document (default: O_q(M_n) from --n/--q)")
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--n", type=int)
    sp.add_argument("--q")

    sp = add("qdet", cmd_qdet, "q-determinant of O_q(M_n)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q")

    sp = add("koszul-dual", cmd_koszul_dual, "Koszul dual of a quadratic algebra")
    sp.add_argument("file")

    sp = add("bullet", cmd_bullet, "bullet product of two quadratic algebras")
    sp.add_argument("a_file")
    sp.add_argument("b_file")

    sp = add("zhang-twist", cmd_zhang_twist, "Zhang twist of a quadratic algebra by a graded automorphism")
    sp.add_argument("file")
    sp.add_argument("aut_file")

    sp = add("manin-end", cmd_manin_end, "end construction A!•A with its matrix coalgebra")
    sp.add_argument("file")

    sp = add("verify-suite", cmd_verify_suite, "run every named invariant check")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(doc.get("human", ""))
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except CommandFailed as exc:
        _emit(exc.report, args.out)
        return 1
    except MATH_FAILURES as exc:
        report = {"error": type(exc).__name__, "message": str(exc), "human": f"error: {exc}"}
        if isinstance(exc, InvalidPair):
            report["relation_index"] = exc.relation_index
        _emit(report, None)
        return 1
    except QTwistError as exc:
        print(f"qtwist {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
