"""Command-line front end.

Every verb prints one JSON document on stdout. Exit codes: 0 success,
1 bad input, 2 a verify/member check came out false, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

from . import eigenstructure as eig
from . import factor as fac
from . import generic as gen
from . import minbasis as mb
from .errors import InvariantViolation, ParseError, RankFactError
from .polycore import parse_rational
from .polymat import distance_display, pm_distance_sq
from .serialize import emit, matrix_from_json, parse_matrix_file, read_document, to_jsonable
from .smith import smith_decompose

EXIT_OK, EXIT_INPUT, EXIT_FALSE, EXIT_BUG = 0, 1, 2, 3

_KINDS = {"smith": fac.SMITH, "lcer": fac.LCER, "lcr": fac.LCR, "lrr": fac.LRR}
_FAMILIES = {"s": "S", "a": "A", "a_a": "A_a", "a_rho": "A_rho", "b": "B", "c": "C",
             "m": "M", "mh": "MH", "orbk": "OrbK"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _witness(path: str) -> gen.FactorizationWitness:
    doc = read_document(path)
    if not isinstance(doc, dict) or "L" not in doc or "R" not in doc:
        raise ParseError(f"{path}: expected an object with fields L and R")
    return gen.FactorizationWitness(matrix_from_json(doc["L"], f"{path}: $.L"),
                                    matrix_from_json(doc["R"], f"{path}: $.R"))


# -- verbs ---------------------------------------------------------------------

def cmd_smith(args):
    P = parse_matrix_file(args.matrix)
    sd = smith_decompose(P)
    return {"rank": sd.rank, "invariants": sd.invariants, "U": sd.U, "S": sd.S, "V": sd.V}, EXIT_OK


_SPACES = {"left-null": mb.left_nullspace_minimal_basis, "right-null": mb.right_nullspace_minimal_basis,
           "row": mb.row_space_minimal_basis, "col": mb.col_space_minimal_basis}


def cmd_minbasis(args):
    P = parse_matrix_file(args.matrix)
    b = _SPACES[args.space](P)
    return {"space": args.space, "orientation": b.orientation, "basis": b.matrix,
            "degrees": b.degrees}, EXIT_OK


def cmd_factor(args):
    P = parse_matrix_file(args.matrix)
    kind = _KINDS[args.kind]
    f = fac.smith_rank_factorization(P) if kind == fac.SMITH else fac.minimal_rank_factorization(P, kind)
    return {"kind": f.kind, "L": f.L, "E": f.E, "R": f.R,
            "report": fac.verify_factorization(P, f)}, EXIT_OK


def cmd_eig(args):
    return eig.complete_eigenstructure(parse_matrix_file(args.matrix)), EXIT_OK


def cmd_classify(args):
    a = eig.classify_orbit(parse_matrix_file(args.matrix), args.rank)
    return {"rank": args.rank, "a": "none" if a is None else a}, EXIT_OK


def cmd_member(args):
    family = _FAMILIES[args.family]
    rho = tuple(args.rho) if args.rho is not None else None
    rank = args.rank if args.rank is not None else (len(rho) if rho is not None else None)
    if rank is None:
        raise ParseError("--rank is required (or --rho for family a_rho)")
    P = parse_matrix_file(args.matrix)
    desc = gen.SetDescriptor(family, P.m, P.n, P.grade, rank, args.a, rho)
    w = _witness(args.witness) if args.witness else None
    res = gen.check_membership(P, desc, w)
    doc = {"family": family, "params": {"m": desc.m, "n": desc.n, "d": desc.d, "r": desc.r,
                                        "a": desc.a, "rho": desc.rho},
           "verdict": res.verdict, "evidence": res.evidence, "witness": res.witness}
    return doc, EXIT_FALSE if res.verdict == gen.NOT else EXIT_OK


def _one_sample(job):
    family, (m, n, d, r, a), seed, bound, attempts = job
    if family == "b":
        w, used = gen.sample_B_member(m, n, d, r, a, seed, bound), 1
    else:
        res = gen.sample_MH_member_verbose(m, n, d, r, a, seed, bound, attempts)
        w, used = res.witness, res.attempts
    return {"seed": seed, "attempts": used, "L": w.L, "R": w.R, "P": w.product().regrade(d)}


def cmd_sample(args):
    if len(args.params) != 5:
        raise ParseError("--params needs m,n,d,r,a")
    gen.SetDescriptor("B", *args.params)
    jobs = [(args.family, tuple(args.params), args.seed + i, args.bound, args.max_attempts)
            for i in range(args.count)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            samples = list(ex.map(_one_sample, jobs))
    else:
        samples = [_one_sample(j) for j in jobs]
    m, n, d, r, a = args.params
    return {"family": args.family, "params": {"m": m, "n": n, "d": d, "r": r, "a": a},
            "bound": args.bound, "samples": samples}, EXIT_OK


def cmd_perturb(args):
    w = _witness(args.witness)
    if args.op == "pad":
        if args.grade is None:
            raise ParseError("--grade is required for --op pad")
        res = gen.pad_to_equality(w, args.grade, args.epsilon)
    elif args.op == "redistribute":
        if args.j is None or args.k is None:
            raise ParseError("--j and --k are required for --op redistribute")
        res = gen.redistribute_degrees(w, args.j, args.k, args.epsilon, args.grade)
    else:
        res = gen.homogenize_degrees(w, args.epsilon, args.grade)
    return {"op": args.op, "L": res.witness.L, "R": res.witness.R, "original": res.original,
            "product": res.product, "dist_sq": res.dist_sq, "dist": distance_display(res.dist_sq),
            "bound": res.bound, "steps": res.steps, "epsilon": res.epsilon, "notes": res.notes}, EXIT_OK


def _factors(path: str):
    doc = read_document(path)
    if not isinstance(doc, dict) or "L" not in doc or "R" not in doc:
        raise ParseError(f"{path}: expected an object with fields L, R and optional E")
    E = doc.get("E")
    return (matrix_from_json(doc["L"], f"{path}: $.L"),
            None if E is None else matrix_from_json(E, f"{path}: $.E"),
            matrix_from_json(doc["R"], f"{path}: $.R"))


def _verify_one(job):
    P, factors = job
    return fac.verify_factorization(P, factors)


def cmd_verify(args):
    P = parse_matrix_file(args.matrix)
    jobs = [(P, _factors(p)) for p in args.factors]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    ok = all(r.ok for r in reports)
    doc = {"ok": ok, "reports": [dict(_report_doc(r), factors=p) for r, p in zip(reports, args.factors)]}
    return doc, EXIT_OK if ok else EXIT_FALSE


def _report_doc(report):
    d = to_jsonable(report)
    d["ok"] = report.ok
    return d


def cmd_dist(args):
    P, Q = parse_matrix_file(args.first), parse_matrix_file(args.second)
    ds = pm_distance_sq(P, Q)
    return {"dist_sq": ds, "dist": distance_display(ds)}, EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankfact", description="Exact rank factorizations of polynomial matrices.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("smith", help="Smith form with unimodular factors")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_smith)

    s = sub.add_parser("minbasis", help="minimal basis of one of the four subspaces")
    s.add_argument("matrix")
    s.add_argument("--space", required=True, choices=sorted(_SPACES))
    s.set_defaults(func=cmd_minbasis)

    s = sub.add_parser("factor", help="Smith or minimal rank factorization")
    s.add_argument("matrix")
    s.add_argument("--kind", required=True, choices=sorted(_KINDS))
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("eig", help="complete eigenstructure")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_eig)

    s = sub.add_parser("classify", help="generic orbit index a, or none")
    s.add_argument("matrix")
    s.add_argument("--rank", type=int, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("member", help="membership in a factorized family")
    s.add_argument("matrix")
    s.add_argument("--family", required=True, choices=sorted(_FAMILIES))
    s.add_argument("--rank", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--rho", type=_int_list)
    s.add_argument("--witness")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("sample", help="seeded random factorized members")
    s.add_argument("--family", required=True, choices=["b", "mh"])
    s.add_argument("--params", required=True, type=_int_list, help="m,n,d,r,a")
    s.add_argument("--seed", required=True, type=int)
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--max-attempts", type=int, default=50)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("perturb", help="padding, redistribution or homogenization of a witness")
    s.add_argument("witness")
    s.add_argument("--op", required=True, choices=["pad", "redistribute", "homogenize"])
    s.add_argument("--epsilon", required=True, type=_rational)
    s.add_argument("--grade", type=int)
    s.add_argument("--j", type=int)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("verify", help="check factorizations of a matrix")
    s.add_argument("matrix")
    s.add_argument("factors", nargs="+")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dist", help="coefficient distance between two matrices")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_dist)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except InvariantViolation as exc:
        err.write(f"internal error: {exc}\n")
        out.write(emit({"error": "internal", "message": str(exc)}))
        return EXIT_BUG
    except (RankFactError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        out.write(emit({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_INPUT
    out.write(emit(doc))
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
