"""Command line front end.

Input is a single term in named syntax, read from a positional file
argument or stdin:

    term  := ('\\' | 'λ') ident '.' term | ident
    ident := [A-Za-z][A-Za-z0-9_]*

with arbitrary whitespace between tokens. There are no applications and no
parentheses. Exit codes: 0 success, 1 bad input, 2 a check suite failed,
3 the binder-nesting guard tripped.
"""

from __future__ import annotations

import argparse
import sys

from .algebras import print_term, size, to_debruijn
from .debruijn import (
    Abs,
    NamedTerm,
    OpenTermError,
    ParseError,
    Ref,
    UnboundVariable,
    db_to_hoas,
    db_to_named,
    enumerate_terms,
    format_db,
    gen_term,
    named_to_db,
    parse_db,
)
from .encoding import DepthLimitError
from .laws import render_reports, run_all_laws

__all__ = ["main", "parse_named", "render_named"]

_LAMBDA_CHARS = ("\\", "λ")


def _ident_end(text: str, start: int) -> int:
    end = start + 1
    n = len(text)
    while end < n and (text[end].isascii() and (text[end].isalnum() or text[end] == "_")):
        end += 1
    return end


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and ch.isalpha()


def _tokenize_named(text: str):
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        col = pos - line_start + 1
        if ch in _LAMBDA_CHARS:
            tokens.append(("lambda", ch, line, col))
            pos += 1
        elif ch == ".":
            tokens.append(("dot", ch, line, col))
            pos += 1
        elif _is_ident_start(ch):
            end = _ident_end(text, pos)
            tokens.append(("ident", text[pos:end], line, col))
            pos = end
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, n - line_start + 1))
    return tokens


def parse_named(text: str) -> NamedTerm:
    """Parse named syntax into a named term, or raise ParseError."""
    tokens = _tokenize_named(text)
    at = 0

    def fail(message):
        _, _, line, col = tokens[at]
        raise ParseError(message, line, col)

    binders = []
    while tokens[at][0] == "lambda":
        at += 1
        if tokens[at][0] != "ident":
            fail("expected an identifier after the binder")
        binders.append(tokens[at][1])
        at += 1
        if tokens[at][0] != "dot":
            fail("expected '.' after the bound name")
        at += 1
    if tokens[at][0] != "ident":
        fail("expected a variable or a binder")
    term: NamedTerm = Ref(tokens[at][1])
    at += 1
    if tokens[at][0] != "eof":
        fail("trailing input after term")
    for name in reversed(binders):
        term = Abs(name, term)
    return term


def render_named(t: NamedTerm) -> str:
    """Named term back to source syntax, one space after each backslash."""
    parts = []
    while isinstance(t, Abs):
        parts.append(f"\\ {t.name}. ")
        t = t.body
    parts.append(t.name)
    return "".join(parts)


def _read_input(path: str | None) -> str:
    if path is None:
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _hoas_from_text(text: str):
    return db_to_hoas(named_to_db(parse_named(text)))


def _cmd_parse(args) -> int:
    term = parse_named(_read_input(args.file))
    print(render_named(term))
    return 0


def _cmd_size(args) -> int:
    print(size(_hoas_from_text(_read_input(args.file))))
    return 0


def _cmd_print(args) -> int:
    print(print_term(_hoas_from_text(_read_input(args.file))))
    return 0


def _cmd_to_db(args) -> int:
    print(format_db(to_debruijn(_hoas_from_text(_read_input(args.file)))))
    return 0


def _cmd_from_db(args) -> int:
    print(render_named(db_to_named(parse_db(_read_input(args.file)))))
    return 0


def _cmd_roundtrip(args) -> int:
    checked = 0
    mismatches = 0
    for d in enumerate_terms(args.max_depth):
        checked += 1
        if to_debruijn(db_to_hoas(d)) != d:
            mismatches += 1
    print(f"roundtrip: {checked} terms to depth {args.max_depth}, {mismatches} mismatches")
    return 0 if mismatches == 0 else 2


def _cmd_gen(args) -> int:
    for i in range(args.count):
        print(render_named(db_to_named(gen_term(args.seed + i, args.max_depth))))
    return 0


def _cmd_check_laws(args) -> int:
    reports = run_all_laws(args.max_depth, args.samples, args.seed)
    print(render_reports(reports))
    return 0 if all(r.ok for r in reports) else 2


def _add_input_arg(sub):
    sub.add_argument("file", nargs="?", default=None, help="input file (default stdin)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kripkelam",
        description="Binder-only lambda terms in a higher-order encoding: "
        "convert, measure and check them.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("parse", help="parse named syntax and echo it back")
    _add_input_arg(p)
    p.set_defaults(handler=_cmd_parse)

    p = commands.add_parser("size", help="binder plus occurrence count")
    _add_input_arg(p)
    p.set_defaults(handler=_cmd_size)

    p = commands.add_parser("print", help="canonical form with names x1, x2, ...")
    _add_input_arg(p)
    p.set_defaults(handler=_cmd_print)

    p = commands.add_parser("to-db", help="convert to de Bruijn text form")
    _add_input_arg(p)
    p.set_defaults(handler=_cmd_to_db)

    p = commands.add_parser("from-db", help="convert de Bruijn text form to named syntax")
    _add_input_arg(p)
    p.set_defaults(handler=_cmd_from_db)

    p = commands.add_parser("roundtrip", help="exhaustive de Bruijn round-trip self-check")
    p.add_argument("--max-depth", type=int, default=32, metavar="K")
    p.set_defaults(handler=_cmd_roundtrip)

    p = commands.add_parser("gen", help="emit seeded pseudo-random terms")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--max-depth", type=int, default=8, metavar="K")
    p.add_argument("--count", type=int, default=1, metavar="N")
    p.set_defaults(handler=_cmd_gen)

    p = commands.add_parser("check-laws", help="run the homomorphism law suites")
    p.add_argument("--max-depth", type=int, default=8, metavar="K")
    p.add_argument("--samples", type=int, default=1000, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.set_defaults(handler=_cmd_check_laws)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as err:
        print(f"error: syntax: {err}", file=sys.stderr)
        return 1
    except UnboundVariable as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OpenTermError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except DepthLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
