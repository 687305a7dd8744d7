"""Command-line front end.

::

    motivic eval -e "bl(P(2); pt; 2)"          # 1 + 2*L + L^2
    motivic dual -e "P(2)"                     # L^-2 + L^-1 + 1
    motivic chi -f completion.snc
    motivic check -f scenario.txt --identity projection_formula
    motivic repl

Exit status: 0 on success, 1 on domain errors (and failed checks), 2 on
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import TextIO

from .core import Registry
from .duality import dual_k, verify_prespaar
from .errors import MotivicError, ParseError
from .laurent import LaurentPoly
from .parser import parse_class_expr
from .scenarios import IDENTITIES, check_all, check_identity, load_scenario
from .snc import load_snc
from .varieties import Symbolic, VarietyExpr, class_of

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("plain", "latex", "machine"), default="plain")

    p = _Parser(prog="motivic", description="Motivic class calculator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", parents=[fmt], help="print the class of an expression")
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("-e", dest="expr", help="inline expression")
    src.add_argument("-f", dest="file", help="file with one expression per line")

    du = sub.add_parser("dual", parents=[fmt], help="print the dual of a class")
    du.add_argument("-e", dest="expr", required=True, help="inline expression")

    ch = sub.add_parser("chi", parents=[fmt], help="Euler characteristic from SNC data")
    ch.add_argument("-f", dest="file", required=True, help="SNC data file")

    ck = sub.add_parser("check", parents=[fmt], help="run six-operation identities on a scenario")
    ck.add_argument("-f", dest="file", required=True, help="scenario file")
    which = ck.add_mutually_exclusive_group()
    which.add_argument("--identity", choices=sorted(IDENTITIES))
    which.add_argument("--all", action="store_true")

    sub.add_parser("repl", parents=[fmt], help="interactive evaluation")
    return p


def _file_exprs(path: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            out.append((lineno, text))
    return out


def _cmd_eval(args, out: TextIO) -> int:
    reg = Registry()
    sources = [(1, args.expr)] if args.expr is not None else _file_exprs(args.file)
    for lineno, text in sources:
        c = class_of(parse_class_expr(text, line=lineno), reg)
        print(c.render(args.format), file=out)
    return EXIT_OK


def _cmd_dual(args, out: TextIO) -> int:
    reg = Registry()
    c = dual_k(class_of(parse_class_expr(args.expr), reg))
    print(c.render(args.format), file=out)
    return EXIT_OK


def _cmd_chi(args, out: TextIO) -> int:
    status = EXIT_OK
    reg = Registry()
    records = []
    for d in load_snc(args.file):
        res = verify_prespaar(d, reg)
        if not res.ok:
            status = EXIT_DOMAIN
        if args.format == "machine":
            records.append({"name": d.name, "chi": res.chi.to_json(),
                            "dual_side": res.dual_side.to_json(), "ok": res.ok})
            continue
        dim = d.interior.meta().dim
        if d.name:
            print(d.name, file=out)
        if args.format == "latex":
            print(f"  \\chi = {res.chi.render('latex')}", file=out)
            print(f"  \\mathbb{{L}}^{{{dim}}}\\mathcal{{D}}([X]) = {res.dual_side.render('latex')}", file=out)
        else:
            print(f"  chi = {res.chi}", file=out)
            print(f"  {LaurentPoly.monomial(dim)} * D([X]) = {res.dual_side}", file=out)
        print(f"  verdict: {'pass' if res.ok else 'FAIL'}", file=out)
    if args.format == "machine":
        print(json.dumps(records), file=out)
    return status


def _cmd_check(args, out: TextIO) -> int:
    sc = load_scenario(args.file)
    reports = [check_identity(sc, args.identity)] if args.identity else check_all(sc)
    if args.format == "machine":
        print(json.dumps([{"identity": r.name, "checked": r.checked, "failures": r.failures}
                          for r in reports]), file=out)
    else:
        for r in reports:
            print(r.line(), file=out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_DOMAIN


def _collect_symbols(e: VarietyExpr, into: dict[str, Symbolic]) -> None:
    if isinstance(e, Symbolic):
        into[e.name] = e
        return
    for child in getattr(e, "__dataclass_fields__", {}):
        value = getattr(e, child)
        if isinstance(value, VarietyExpr):
            _collect_symbols(value, into)


def repl(inp: TextIO, out: TextIO, err: TextIO, fmt: str = "plain") -> int:
    """Read-eval-print loop.

    A line is an expression, ``dual <expr>``, ``:history`` or ``:quit``.
    Symbols declared with ``sym(...)`` stay in scope by bare name.
    """
    reg = Registry()
    symbols: dict[str, Symbolic] = {}
    history: list[str] = []
    interactive = inp.isatty()
    while True:
        if interactive:
            out.write("> ")
            out.flush()
        line = inp.readline()
        if not line:
            return EXIT_OK
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if text in (":quit", ":q"):
            return EXIT_OK
        if text == ":history":
            for i, h in enumerate(history, start=1):
                print(f"{i:3d}  {h}", file=out)
            continue
        history.append(text)
        want_dual = text.startswith("dual ")
        body = text[5:] if want_dual else text
        try:
            e = parse_class_expr(body, symbols)
            c = class_of(e, reg)
            if want_dual:
                c = dual_k(c)
            _collect_symbols(e, symbols)
            print(c.render(fmt), file=out)
        except MotivicError as exc:
            print(f"error: {exc}", file=err)


def main(argv: list[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command == "dual":
            return _cmd_dual(args, out)
        if args.command == "chi":
            return _cmd_chi(args, out)
        if args.command == "check":
            return _cmd_check(args, out)
        return repl(sys.stdin, out, err, args.format)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except MotivicError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
