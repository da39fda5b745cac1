"""Command-line interface: QDF ingestion, law suites, reports.

Exit codes: 0 all checks pass, 1 a law is violated, 2 parse or
resolution error, 3 resource cap exceeded.  Output is deterministic:
identical (document, command, options, seed) produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (CapExceeded, ConstructionError, DEFAULT_CAP, build_dq,
                      is_divisible, validate_quantaloid)
from .category import validate_category
from .closure import specialization, validate_closure_space
from .contdist import equivalence_check_pair
from .presheaf import presheaf_category
from .qdf import (QdfError, build_closure_space, parse_qdf,
                  presheaf_from_literal, presheaf_to_literal,
                  _parse_presheaf_literal)
from .reports import LawReport
from .suites import SUITES, run_suite


class _Out:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def report(self, rep):
        if self.fmt == "json":
            print(json.dumps(rep.json_obj(), sort_keys=True),
                  file=self.stream)
        else:
            print(rep.text(), file=self.stream)

    def line(self, text, **obj):
        if self.fmt == "json":
            print(json.dumps(obj or {"message": text}, sort_keys=True),
                  file=self.stream)
        else:
            print(text, file=self.stream)


def _load_document(args):
    if not args.file:
        return None
    with open(args.file, encoding="utf-8") as fh:
        return parse_qdf(fh.read())


def _need_document(doc):
    if doc is None:
        raise QdfError("this command needs a QDF file (--file)")
    return doc


def _cmd_validate(args, doc, out):
    doc = _need_document(doc)
    reports = []
    for name, K in doc.quantales.items():
        rep = validate_quantaloid(K)
        reports.append(LawReport("validate", f"quantale {name}", rep.ok,
                                 rep.violations[0] if rep.violations else None))
    for name, Q in doc.quantaloids.items():
        rep = validate_quantaloid(Q)
        reports.append(LawReport("validate", f"quantaloid {name}", rep.ok,
                                 rep.violations[0] if rep.violations else None))
    for name, X in doc.categories.items():
        rep = validate_category(X)
        reports.append(LawReport("validate", f"category {name}", rep.ok,
                                 rep.violations[0] if rep.violations else None))
    for name in doc.closures:
        try:
            S = build_closure_space(doc, name, cap=args.cap)
            rep = validate_closure_space(S)
            reports.append(LawReport(
                "validate", f"closure {name}", rep.ok,
                rep.violations[0] if rep.violations else None))
        except ConstructionError as e:
            reports.append(LawReport("validate", f"closure {name}", False,
                                     str(e)))
    for rep in reports:
        out.report(rep)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_presheaves(args, doc, out):
    doc = _need_document(doc)
    if args.category not in doc.categories:
        raise QdfError(f"unknown category {args.category!r}")
    X = doc.categories[args.category]
    PX = presheaf_category(X, args.cap)
    for mu in PX.elements:
        out.line(presheaf_to_literal(X, mu),
                 presheaf=presheaf_to_literal(X, mu))
    out.line(f"total {len(PX.elements)}", total=len(PX.elements))
    return 0


def _cmd_closure(args, doc, out):
    doc = _need_document(doc)
    if args.action != "apply":
        raise QdfError(f"unknown closure action {args.action!r}")
    if args.space not in doc.closures:
        raise QdfError(f"unknown closure {args.space!r}")
    S = build_closure_space(doc, args.space, cap=args.cap)
    X = S.base
    lit = _parse_presheaf_literal(args.presheaf, None)
    mu = presheaf_from_literal(X, lit)
    if mu not in S.PX.carrier:
        raise QdfError(f"{args.presheaf!r} is not a presheaf on the base")
    cmu = S.c(mu)
    out.line(presheaf_to_literal(X, cmu),
             input=presheaf_to_literal(X, mu),
             closure=presheaf_to_literal(X, cmu),
             closed=S.is_closed(mu))
    return 0


def _cmd_specialize(args, doc, out):
    doc = _need_document(doc)
    if args.space not in doc.closures:
        raise QdfError(f"unknown closure {args.space!r}")
    S = build_closure_space(doc, args.space, cap=args.cap)
    spec = specialization(S, args.cap)
    for x in spec.elements:
        for y in spec.elements:
            out.line(f"{x} {y} = {spec.h(x, y)}",
                     x=str(x), y=str(y), hom=spec.h(x, y))
    return 0


def _cmd_dq(args, doc, out):
    K = None
    if doc is not None and args.quantale in doc.quantales:
        K = doc.quantales[args.quantale]
    else:
        from .algebra import builtin_quantale
        try:
            K = builtin_quantale(args.quantale)
        except KeyError:
            raise QdfError(f"unknown quantale {args.quantale!r}") from None
    res = is_divisible(K)
    if not res.divisible:
        out.report(LawReport("dq", f"{args.quantale} divisibility", False,
                             res.witness))
        return 1
    DQ = build_dq(K)
    rep = validate_quantaloid(DQ)
    out.report(LawReport("dq", f"dq({args.quantale}) quantaloid laws", rep.ok,
                         rep.violations[0] if rep.violations else None))
    out.line(f"objects {' '.join(DQ.objects)}", objects=list(DQ.objects))
    for p in DQ.objects:
        for q in DQ.objects:
            elems = DQ.homset(p, q).elements
            out.line(f"hom {p} {q}: {' '.join(elems)}",
                     p=p, q=q, hom=list(elems))
    return 0 if rep.ok else 1


def _cmd_laws(args, doc, out):
    if args.suite not in SUITES:
        raise QdfError(f"unknown suite {args.suite!r}; available: "
                       f"{', '.join(sorted(SUITES))}")
    reports = run_suite(args.suite, max_size=args.max_size, seed=args.seed)
    for rep in reports:
        out.report(rep)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_roundtrip(args, doc, out):
    doc = _need_document(doc)
    for name in (args.a, args.b):
        if name not in doc.closures:
            raise QdfError(f"unknown closure {name!r}")
    S = build_closure_space(doc, args.a, cap=args.cap)
    T = build_closure_space(doc, args.b, cap=args.cap)
    res = equivalence_check_pair(S, T, (args.a, args.b), cap=args.cap)
    out.line(f"closed continuous distributors {args.a} -/-> {args.b}: "
             f"{res.n_dists}", n_dists=res.n_dists)
    out.line(f"sup-preserving maps C({args.b}) -> C({args.a}): {res.n_maps}",
             n_maps=res.n_maps)
    out.report(LawReport("roundtrip", res.instance, res.ok, res.witness))
    return 0 if res.ok else 1


def _cmd_suite(args, doc, out):
    if args.which != "all":
        raise QdfError(f"unknown suite group {args.which!r}")
    code = 0
    for name in SUITES:
        reports = run_suite(name, seed=args.seed)
        for rep in reports:
            out.report(rep)
        if not all(r.ok for r in reports):
            code = 1
    return code


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qcls",
        description="Law checking for finite quantaloid-enriched categories "
                    "and closure spaces.")
    parser.add_argument("--file", "-f", help="QDF definition file")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="enumeration cap (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", help="validate every block of the document")

    p = sub.add_parser("presheaves", help="list the presheaves of a category")
    p.add_argument("category")

    p = sub.add_parser("closure", help="apply a closure operator")
    p.add_argument("action", choices=("apply",))
    p.add_argument("space")
    p.add_argument("presheaf", help="presheaf literal, e.g. '[q| x=e]'")

    p = sub.add_parser("specialize", help="print a specialization category")
    p.add_argument("space")

    p = sub.add_parser("dq", help="build and validate a back-diagonal "
                                  "quantaloid")
    p.add_argument("quantale")

    p = sub.add_parser("laws", help="run one law suite")
    p.add_argument("suite")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("roundtrip", help="check the distributor / sup-map "
                                         "bijection between two spaces")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("suite", help="run suite groups")
    p.add_argument("which")
    p.add_argument("--seed", type=int, default=0)
    return parser


_COMMANDS = {
    "validate": _cmd_validate,
    "presheaves": _cmd_presheaves,
    "closure": _cmd_closure,
    "specialize": _cmd_specialize,
    "dq": _cmd_dq,
    "laws": _cmd_laws,
    "roundtrip": _cmd_roundtrip,
    "suite": _cmd_suite,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.format, sys.stdout)
    try:
        doc = _load_document(args)
        return _COMMANDS[args.command](args, doc, out)
    except QdfError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ConstructionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
