"""Command line workbench.

    bmgroups validate FILE
    bmgroups analyze FILE [--json] [--h3-bound N]
    bmgroups enumerate -m M -n N [--mode side-preserving|with-swap] [--out DIR] [--table]
    bmgroups mozes -p P -l L [--out FILE] [--analyze]
    bmgroups nf FILE WORD

Exit status: 0 success, 1 a datum fails the BM conditions, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .enumeration import (
    DEFAULT_MODE,
    MODES,
    SIDE_PRESERVING,
    EquivalenceMode,
    classify,
    emit_table,
    enumerate_relation_sets,
)
from .invariants import abelianization
from .mozes import conjectured_h1, mozes_datum
from .report import analyze, group_json
from .vhdatum import DatumParseError, normal_form, parse_datum, serialize_datum, validate

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep our message format
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_datum(text)
    except DatumParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_valid(path: str, out) -> object:
    datum = _load(path)
    rep = validate(datum)
    if not rep.ok:
        print(f"{path}: not a BM datum; failed {', '.join(rep.failed_conditions())}", file=out)
        for line in rep.lines():
            print(line, file=out)
        return None
    return datum


def cmd_validate(args, out) -> int:
    datum = _load(args.file)
    rep = validate(datum)
    for line in rep.lines():
        print(line, file=out)
    if rep.ok:
        print(f"{args.file}: BM datum with m={datum.m}, n={datum.n}", file=out)
        return EXIT_OK
    print(f"{args.file}: not a BM datum; failed {', '.join(rep.failed_conditions())}", file=out)
    return EXIT_INVALID


def cmd_analyze(args, out) -> int:
    datum = _load_valid(args.file, out)
    if datum is None:
        return EXIT_INVALID
    report = analyze(datum, args.h3_bound)
    out.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    m, n = args.m, args.n
    if m < 4 or n < 4 or m % 2 or n % 2:
        raise UsageError("m and n must be even and at least 4")
    mode_name = args.mode or (DEFAULT_MODE if m == n else SIDE_PRESERVING)
    if mode_name != SIDE_PRESERVING and m != n:
        raise UsageError("mode with-swap needs m == n")
    data = enumerate_relation_sets(m, n)
    for d in data:
        if not validate(d).ok:
            raise RuntimeError("enumerated relation set fails validation")
    classes = classify(data, EquivalenceMode.named(mode_name))
    print(f"{len(data)} cliques, {len(classes)} classes (mode {mode_name})", file=out)
    rows = emit_table(classes) if (args.table or args.out) else []
    if args.table:
        for row in rows:
            print(row.render(), file=out)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for row, cls in zip(rows, classes):
            comment = f"{row.name}: class of {cls.size} relation sets; H1 {row.H1.to_table()}, C {row.C.to_table()}"
            (outdir / f"{row.name}.txt").write_text(serialize_datum(cls.representative, comment))
        (outdir / "table.txt").write_text("".join(r.render() + "\n" for r in rows))
        summary = {
            "m": m,
            "n": n,
            "mode": mode_name,
            "cliques": len(data),
            "classes": [
                {
                    "name": r.name,
                    "orbit_size": r.orbit_size,
                    "relators": [list(x) for x in r.relators],
                    "H1": group_json(r.H1),
                    "C": group_json(r.C),
                }
                for r in rows
            ],
        }
        (outdir / "table.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def cmd_mozes(args, out) -> int:
    try:
        datum = mozes_datum(args.p, args.l)
        expected = conjectured_h1(args.p, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_datum(datum, f"Mozes lattice for p={args.p}, l={args.l}")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    elif not args.analyze:
        out.write(text)
    if not validate(datum).ok:
        print("constructed datum fails validation", file=out)
        return EXIT_INVALID
    if args.analyze:
        report = analyze(datum, args.h3_bound)
        out.write(report.to_text())
        H1 = report.H1
    else:
        H1 = abelianization(datum)
    verdict = "AGREE" if H1 == expected else "DISAGREE"
    print(f"H1 {H1} vs conjectured {expected}: {verdict}", file=out)
    return EXIT_OK


def cmd_nf(args, out) -> int:
    datum = _load_valid(args.file, out)
    if datum is None:
        return EXIT_INVALID
    try:
        word = [int(x) for x in args.word.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad word {args.word!r}: expected comma-separated signed integers") from None
    try:
        nf = normal_form(datum, word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(nf.render(), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bmgroups", description="BM groups: validation, K-theory, enumeration.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check the BM conditions for a datum file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="full invariant report for a datum file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--h3-bound", type=int, default=3, help="check (H3) for periods with |p_i| <= N")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="all BM relation sets of given degrees, up to relabeling")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mozes", help="quaternion lattice datum for primes p, l = 1 mod 4")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--analyze", action="store_true")
    p.add_argument("--h3-bound", type=int, default=3)
    p.set_defaults(func=cmd_mozes)

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("file")
    p.add_argument("word", help="comma-separated signed generators, e.g. 3,1")
    p.set_defaults(func=cmd_nf)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
