"""File-driven command line front end.

Everything is JSON in, JSON out, fully deterministic for fixed inputs and
seeds.  Exit codes: 0 ok, 2 parse error, 3 unsupported field, 4 depth limit
hit under --strict, 5 a bound check reported a VIOLATION.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import load_algebra, t_n
from .bimodules import bimodule_from_json
from .complexes import resolve_module_stalk
from .errors import (
    DepthLimitExceeded, FieldUnsupported, ParseError, QuiverhomError,
)
from .igusa_todorov import phi_dim, phi_dim_auto, phi_with_trace
from .invariants import (
    finitistic_dimension, global_dimension, gorenstein_profile, is_selfinjective,
)
from .modules import DEFAULT_DEPTH_LIMIT, load_module
from .recollement import (
    BoundReport, check_corollary_3, full_report, triangular_recollement,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FIELD = 3
EXIT_DEPTH = 4
EXIT_VIOLATION = 5


def _emit(obj, out_path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def cmd_invariants(args) -> int:
    A = load_algebra(args.algebra)
    limit = args.depth_limit
    gl = global_dimension(A, limit)
    gp = gorenstein_profile(A, limit)
    if A.is_nakayama():
        fd = finitistic_dimension(A, "rep-finite", limit)
    else:
        fd = finitistic_dimension(A, "corpus", limit)
    ph = phi_dim_auto(A, limit)
    out = {
        "dim": A.dim,
        "gldim": gl.to_json(),
        "fin_dim": fd.to_json(),
        "id_right": gp.id_right.to_json(),
        "id_left": gp.id_left.to_json(),
        "selfinjective": is_selfinjective(A),
        "gorenstein": gp.to_json(),
        "phi_dim": ph.to_json(),
    }
    _emit(out, args.out)
    if args.strict:
        unresolved = [gl.is_exact, gp.id_right.is_exact, gp.id_left.is_exact]
        if not all(unresolved):
            return EXIT_DEPTH
    return EXIT_OK


def cmd_phi(args) -> int:
    A = load_algebra(args.algebra)
    M = load_module(A, args.module)
    res = phi_with_trace(M)
    _emit({"phi": res.value, "rank_trace": res.ranks,
           "universe": res.universe}, args.out)
    return EXIT_OK


def cmd_phidim(args) -> int:
    A = load_algebra(args.algebra)
    if args.mode == "auto":
        res = phi_dim_auto(A, args.depth_limit)
    else:
        res = phi_dim(A, args.mode, args.depth_limit)
    _emit(res.to_json(), args.out)
    return EXIT_OK


def cmd_resolve(args) -> int:
    A = load_algebra(args.algebra)
    M = load_module(A, args.module)
    pc = resolve_module_stalk(M, 0, args.degrees)
    degrees = sorted(pc.terms)
    out = {
        "complete": pc.complete,
        "degrees": [degrees[0], degrees[-1]] if degrees else [0, 0],
        "terms": {str(i): {
            "summands": [A.quiver.vertices[v] for v in pc.terms[i].summands],
            "dims": list(pc.terms[i].module().dims)}
            for i in degrees},
    }
    _emit(out, args.out)
    return EXIT_OK


def _report_exit(reports: list[BoundReport], out_path) -> int:
    payload = [r.to_json() for r in reports]
    _emit(payload if len(payload) != 1 else payload[0], out_path)
    if any(r.violations() for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_check_recollement(args) -> int:
    b_alg = load_algebra(args.b)
    c_alg = load_algebra(args.c)
    m = bimodule_from_json(c_alg, b_alg, _load_json(args.bimodule))
    datum = triangular_recollement(b_alg, c_alg, m, label="files")
    return _report_exit([full_report(datum, args.limit)], args.out)


def cmd_check_tn(args) -> int:
    A = load_algebra(args.algebra)
    checks = check_corollary_3(A, args.n, args.m, args.depth_limit)
    out = {"n": args.n, "checks": [c.to_json() for c in checks]}
    _emit(out, args.out)
    if any(c.verdict == "VIOLATION" for c in checks):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_fuzz(args) -> int:
    from .corpus import fuzz_reports
    reports = fuzz_reports(args.seed, args.count, args.limit)
    return _report_exit(reports, args.out)


def cmd_report(args) -> int:
    verdicts: dict[str, int] = {}
    by_check: dict[str, dict[str, int]] = {}
    tight = 0
    verified = 0
    for path in args.files:
        payload = _load_json(path)
        if isinstance(payload, dict):
            payload = [payload]
        for rep in payload:
            for chk in rep.get("checks", []):
                v = chk["verdict"]
                verdicts[v] = verdicts.get(v, 0) + 1
                per = by_check.setdefault(chk["name"], {})
                per[v] = per.get(v, 0) + 1
                if v == "verified":
                    verified += 1
                    if chk.get("lhs") == chk.get("rhs"):
                        tight += 1
    total = sum(verdicts.values())
    out = {
        "checks_total": total,
        "verdicts": verdicts,
        "by_check": by_check,
        "tight_among_verified": tight,
        "inconclusive_rate": (verdicts.get("inconclusive", 0) / total)
        if total else 0.0,
    }
    _emit(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quiverhom",
        description="Exact homological invariants of monomial bound quiver "
                    "algebras and recollement bound checks")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--out", default=None, help="write JSON here instead of stdout")
        sp.add_argument("--depth-limit", type=int, default=DEFAULT_DEPTH_LIMIT)

    sp = sub.add_parser("invariants", help="algebra-level invariants")
    sp.add_argument("algebra")
    sp.add_argument("--strict", action="store_true",
                    help="exit 4 when a depth limit leaves a value unresolved")
    add_common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("phi", help="Igusa-Todorov phi of a module")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--module", required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("phidim", help="phi-dimension of an algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--mode", default="auto",
                    choices=["auto", "rep-finite", "gldim-finite", "corpus"])
    add_common(sp)
    sp.set_defaults(func=cmd_phidim)

    sp = sub.add_parser("resolve", help="minimal projective resolution")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--module", required=True)
    sp.add_argument("--degrees", type=int, default=DEFAULT_DEPTH_LIMIT,
                    help="resolution depth to materialize")
    add_common(sp)
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("check-recollement",
                        help="check all bounds on a triangular datum")
    sp.add_argument("--b", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--bimodule", required=True)
    sp.add_argument("--limit", type=int, default=DEFAULT_DEPTH_LIMIT)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_check_recollement)

    sp = sub.add_parser("check-tn", help="Corollary on T_n(A) Gorenstein levels")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, nargs="*", default=[0, 1, 2, 3])
    add_common(sp)
    sp.set_defaults(func=cmd_check_tn)

    sp = sub.add_parser("fuzz", help="seeded random triangular recollements")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--limit", type=int, default=DEFAULT_DEPTH_LIMIT)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("report", help="aggregate bound reports")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FieldUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except DepthLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except QuiverhomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
