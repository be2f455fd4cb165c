"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .pipeline import (FORMATS, ConfigError, VerificationConfig, dump_structure_constants,
                       ermolaev_fragment, grade_fragment, grade_table_text, verify_ermolaev_standalone,
                       verify_theorem, _split_signed)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str, count: Optional[int] = None) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} integers, got {len(vals)}")
    return vals


def _pair(text: str) -> list[int]:
    return _int_list(text, 2)


def _terms(text: str) -> tuple:
    return tuple(_split_signed(text.replace(" ", "")))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="modlie", description="Lie algebras over prime fields: the maximal "
                 "Ermolaev subalgebra of F4 in characteristic 3, verified from scratch.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ver = sub.add_parser("verify", help="run a certificate report")
    vsub = ver.add_subparsers(dest="target", required=True, parser_class=_Parser)
    th = vsub.add_parser("theorem", help="verify the maximal embedding of Er(1,1)' in F4")
    th.add_argument("--p", type=int, default=3)
    th.add_argument("--format", choices=FORMATS, default="text")
    th.add_argument("--seed", type=int, default=0)
    th.add_argument("--f", type=_terms, default=None, metavar="EXPR",
                    help="replace f, e.g. f_2342 (negative control)")
    er = vsub.add_parser("ermolaev", help="verify facts about Er(n1,n2)")
    er.add_argument("--n", type=_pair, required=True, metavar="N1,N2")
    er.add_argument("--p", type=int, required=True)
    er.add_argument("--alpha", type=int, default=1)
    er.add_argument("--format", choices=FORMATS, default="text")
    er.add_argument("--seed", type=int, default=0)

    em = sub.add_parser("ermolaev", help="summarise Er(n1,n2) over GF(p)")
    em.add_argument("--n", type=_pair, required=True, metavar="N1,N2")
    em.add_argument("--p", type=int, required=True)
    em.add_argument("--alpha", type=int, default=1)
    em.add_argument("--seed", type=int, default=0)
    em.add_argument("--format", choices=FORMATS, default="json")

    gr = sub.add_parser("grade", help="degree table of a cocharacter grading")
    gr.add_argument("--cocharacter", type=_int_list, required=True, metavar="T1,T2,...")
    gr.add_argument("--subalgebra", default=None, metavar="SPEC",
                    help="L, W, or comma-separated generators such as e_1000+e_0100,f_1232")
    gr.add_argument("--type", default="F4")
    gr.add_argument("--p", type=int, default=3)
    gr.add_argument("--format", choices=FORMATS, default="text")

    du = sub.add_parser("dump-structure-constants", help="print the Chevalley table mod p")
    du.add_argument("--type", default="F4")
    du.add_argument("--p", type=int, default=3)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"modlie: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    out = sys.stdout
    if args.command == "verify" and args.target == "theorem":
        kw = {} if args.f is None else {"f_terms": args.f}
        cfg = VerificationConfig(p=args.p, random_seed=args.seed, output_format=args.format,
                                 **kw)
        report = verify_theorem(cfg)
        out.write(report.render(args.format))
        return report.exit_code
    if args.command == "verify" and args.target == "ermolaev":
        report = verify_ermolaev_standalone(*args.n, args.p, args.alpha, args.seed)
        out.write(report.render(args.format))
        return report.exit_code
    if args.command == "ermolaev":
        frag = ermolaev_fragment(*args.n, args.p, args.alpha, args.seed)
        if args.format == "json":
            out.write(json.dumps(frag, indent=2) + "\n")
        else:
            for k, v in frag.items():
                out.write(f"{k:>20}: {json.dumps(v)}\n")
        return EXIT_OK
    if args.command == "grade":
        frag = grade_fragment(args.cocharacter, args.subalgebra, args.type, args.p)
        if args.format == "json":
            out.write(json.dumps(frag, indent=2) + "\n")
        else:
            out.write(grade_table_text(frag))
        return EXIT_OK if frag["homogeneous"] else EXIT_FAIL
    if args.command == "dump-structure-constants":
        out.write(dump_structure_constants(args.type, args.p))
        return EXIT_OK
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
