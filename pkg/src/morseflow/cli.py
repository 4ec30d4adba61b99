"""Command-line front end: ``morseflow SUBCOMMAND ...``.

Exit status 0 on success (or "equivalent", "valid"), 1 for a negative
answer, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bifurcation as bif
from . import enumeration as en
from .code_text import CodeSyntaxError, FlowCode, parse_code
from .codec import (Mode, SemanticInvalid, canonical_code, cycles_of_code, decode, diagram,
                    validate_semantics)
from .equivalence import codim1_equivalent, is_self_inverse, morse_equivalent
from .render import to_dot, to_svg


class UsageError(Exception):
    pass


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _parse(text: str) -> FlowCode:
    return parse_code(_read(text).strip())


def _range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None


# -- subcommands --------------------------------------------------------------

def _validate(a, out):
    code = _parse(a.code)
    if code.prefix is not None:
        errs = bif.validate_bifurcation(code)
        if errs:
            for e in errs:
                print(e, file=out)
            return 1
        print(f"{code.prefix} code valid", file=out)
        return 0
    report = validate_semantics(code)
    if report:
        for d in report:
            print(f"{d.rule}: {d.detail}", file=out)
        return 1
    g = decode(code)
    E = sum(1 for e in g.edges if e[0] == "Separatrix")
    print(f"P1–P4 satisfied, V={len(g.cycles)} E={E} F={len(g.trace_faces())}", file=out)
    return 0


def _canon(a, out):
    code = _parse(a.code)
    mode = Mode.UP_TO_REFLECTION if a.reflect else Mode.ORIENTED_ONLY
    if code.prefix is not None:
        raise UsageError("canon takes a Morse flow code; bifurcation codes are compared with equiv")
    print(canonical_code(code, mode), file=out)
    return 0


def _equiv(a, out):
    c1, c2 = _parse(a.code1), _parse(a.code2)
    if (c1.prefix is None) != (c2.prefix is None):
        raise UsageError("cannot compare a Morse code with a bifurcation code")
    if c1.prefix is not None:
        try:
            ok = bool(codim1_equivalent(c1, c2))
        except bif.KindMismatch as e:
            print(f"different kinds: {e}", file=sys.stderr)
            ok = False
    else:
        ok = bool(morse_equivalent(c1, c2))
        if not ok and a.allow_reversal:
            ok = bool(morse_equivalent(diagram(c1).reverse(), c2))
    print("equivalent" if ok else "not equivalent", file=out)
    return 0 if ok else 1


def _convert(a, out):
    code = _parse(a.code)
    print(bif.b_to_a(code) if a.b_to_a else bif.a_to_b(code), file=out)
    return 0


def _faces(a, out):
    code = _parse(a.code)
    if code.prefix is not None:
        raise UsageError("faces takes a Morse flow code")
    g = decode(code)
    lists = code.compact()
    for i, cyc in enumerate(cycles_of_code(code)):
        items = [f"{lists[l][1][p]}@{l + 1}.{p}" for l, p in cyc.halves] or ["-"]
        zeros = "".join(f" 0@{l + 1}.{p}" for l, p in cyc.zeros)
        print(f"face {i + 1}: {' '.join(items)}{zeros}", file=out)
    E = sum(1 for e in g.edges if e[0] == "Separatrix")
    print(f"V={len(g.cycles)} E={E} F={len(g.trace_faces())}", file=out)
    return 0


def _enumerate(a, out):
    if a.kind:
        if a.quotient != "equiv":
            raise UsageError("--quotient equiv+rev applies to Morse flows only")
        fam = en.enumerate_bifurcations(a.surface, a.points, a.kind)
        codes = [str(c) for c in fam.codes]
        rows = [{"code": c} for c in codes]
    else:
        q = (en.Quotient.UP_TO_EQUIVALENCE_AND_REVERSAL if a.quotient == "equiv+rev"
             else en.Quotient.UP_TO_EQUIVALENCE)
        ds = en.enumerate_morse(a.surface, a.points, q)
        codes = [str(canonical_code(d.to_compact())) for d in ds]
        rows = [{"code": c, "self_inverse": is_self_inverse(d)} for c, d in zip(codes, ds)]
    if a.emit == "count":
        print(len(codes), file=out)
    elif a.emit == "json":
        print(json.dumps({"surface": a.surface, "points": a.points, "kind": a.kind,
                          "quotient": a.quotient, "count": len(rows), "items": rows},
                         sort_keys=True, indent=1), file=out)
    else:
        for c in codes:
            print(c, file=out)
    return 0


def _table(a, out):
    surfaces = None
    if a.surface:
        surfaces = [s for part in a.surface for s in part.split(",") if s]
    rng = _range(a.range) if a.range else None
    if surfaces and rng is None:
        rng = (2, 6)
    rows = en.summary_table(surfaces, rng)
    out.write(en.table_csv(rows) if a.csv else en.table_text(rows))
    return 0


def _render(a, out):
    code = _parse(a.code)
    if code.prefix is not None and code.prefix.base in bif.CONNECTION_BASES:
        g = bif.connection_diagram(code)
    elif code.prefix is not None:
        d, mark = bif.marked_diagram(code)
        g = d.with_marks({mark}) if mark is not None else d
    else:
        g = decode(code)
    text = to_dot(g) if a.format == "dot" else to_svg(g)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morseflow", description="Flow codes of Morse flows on punctured spheres.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check a code")
    s.add_argument("code")
    s.set_defaults(func=_validate)

    s = sub.add_parser("canon", help="canonical code")
    s.add_argument("code")
    s.add_argument("--reflect", action="store_true", help="also allow the opposite orientation")
    s.set_defaults(func=_canon)

    s = sub.add_parser("equiv", help="exit 0 when two codes describe equivalent flows")
    s.add_argument("code1")
    s.add_argument("code2")
    s.add_argument("--allow-reversal", action="store_true")
    s.set_defaults(func=_equiv)

    s = sub.add_parser("convert", help="A-code <-> B-code")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--b-to-a", action="store_true")
    g.add_argument("--a-to-b", action="store_true")
    s.add_argument("code")
    s.set_defaults(func=_convert)

    s = sub.add_parser("faces", help="cycles of a code and (V, E, F)")
    s.add_argument("code")
    s.set_defaults(func=_faces)

    s = sub.add_parser("enumerate", help="all flows of a size")
    s.add_argument("--surface", required=True, choices=["disk", "cylinder", "pants"])
    s.add_argument("--points", required=True, type=int)
    s.add_argument("--kind")
    s.add_argument("--quotient", choices=["equiv", "equiv+rev"], default="equiv")
    s.add_argument("--emit", choices=["codes", "json", "count"], default="codes")
    s.set_defaults(func=_enumerate)

    s = sub.add_parser("table", help="bifurcation counts with the published deltas")
    s.add_argument("--surface", action="append")
    s.add_argument("--range")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=_table)

    s = sub.add_parser("render", help="DOT or SVG picture")
    s.add_argument("code")
    s.add_argument("--format", choices=["dot", "svg"], default="dot")
    s.add_argument("--out")
    s.set_defaults(func=_render)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return a.func(a, out)
    except (UsageError, CodeSyntaxError, SemanticInvalid, bif.NotConvertibleKind, bif.IllegalMark,
            bif.NoConnection, bif.MultipleConnections, en.UnsupportedSize, ValueError) as e:
        print(f"morseflow {a.cmd}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
