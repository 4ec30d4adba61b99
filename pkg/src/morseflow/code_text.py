"""Textual grammar of flow codes: tokens, lists, prefixes, parse and serialize.

Tokens are plain ints so that codes hash cheaply and can be handed to the
compiled kernel unchanged:

    n > 0   saddle number
    0       boundary sink
    -1 / -2 opening / closing square bracket inside a boundary list
    -3 / -4 opening / closing round bracket (B-code highlight)
    -5      blank highlight, written ``( )``
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

ZERO = 0
OPEN = -1
CLOSE = -2
LPAREN = -3
RPAREN = -4
BLANK = -5

_SYMBOL = {ZERO: "0", OPEN: "[", CLOSE: "]", LPAREN: "(", RPAREN: ")", BLANK: " "}


class ListKind(str, Enum):
    BOUNDARY = "B"
    SOURCE = "S"


class CodeList(NamedTuple):
    kind: ListKind
    items: tuple

    @property
    def is_boundary(self) -> bool:
        return self.kind == ListKind.BOUNDARY


# --------------------------------------------------------------------------
# prefixes

BASES = ("SN", "BSN", "HS", "HN", "BDS", "SC", "HSC", "BSC")
_SIGNED = {"SN", "BSN", "HS", "HN", "HSC"}
_FORMED = {"SN", "BSN", "HS", "HN", "BDS"}


@dataclass(frozen=True)
class BifurcationKind:
    """Tag of a codimension-one code.

    ``sign`` is '+' or '-' for SN, BSN, HS, HN and HSC.  Unsigned ``HSC`` is
    kept as written (the worked example of a semi-boundary connection uses
    it); it is read as HSC+ wherever a sign matters.  ``form`` is 'A' or 'B'
    for the local kinds and None otherwise.
    """

    base: str
    sign: str | None = None
    form: str | None = None

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"unknown bifurcation kind {self.base!r}")
        if self.sign not in (None, "+", "-"):
            raise ValueError(f"bad sign {self.sign!r}")
        if self.form not in (None, "A", "B"):
            raise ValueError(f"bad form {self.form!r}")
        if self.sign is not None and self.base not in _SIGNED:
            raise ValueError(f"{self.base} takes no sign")
        if self.sign is None and self.base in _SIGNED - {"HSC"}:
            raise ValueError(f"{self.base} needs a sign")
        if self.base in _FORMED and self.form is None:
            raise ValueError(f"{self.base} needs an A/B form")
        if self.base not in _FORMED and self.form is not None:
            raise ValueError(f"{self.base} takes no A/B form")

    @property
    def effective_sign(self) -> str | None:
        if self.base == "HSC" and self.sign is None:
            return "+"
        return self.sign

    def with_sign(self, sign):
        return BifurcationKind(self.base, sign, self.form)

    def with_form(self, form):
        return BifurcationKind(self.base, self.sign, form)

    def __str__(self) -> str:
        s = self.base + (self.sign or "")
        if self.form:
            s += "^" + self.form
        return s

    @classmethod
    def parse(cls, text: str) -> "BifurcationKind":
        m = _PREFIX_RE.fullmatch(text)
        if not m:
            raise BadPrefix(f"bad prefix {text!r}", 0)
        return _kind_from_match(m, 0)


_PREFIX_RE = re.compile(
    r"(BSN|BDS|BSC|HSC|SN|SC|HS|HN)"
    r"(?:_?\{?([+\-−])\}?)?"
    r"(?:\^\{?([AB])\}?)?"
)


def _kind_from_match(m, offset):
    base, sign, form = m.group(1), m.group(2), m.group(3)
    if sign == "−":
        sign = "-"
    try:
        return BifurcationKind(base, sign, form)
    except ValueError as e:
        raise BadPrefix(f"{m.group(0)!r}: {e}", offset) from None


# --------------------------------------------------------------------------
# errors and diagnostics


class CodeSyntaxError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset


class UnbalancedBracket(CodeSyntaxError):
    pass


class IllegalTokenInContext(CodeSyntaxError):
    pass


class BadPrefix(CodeSyntaxError):
    pass


class EmptyCode(CodeSyntaxError):
    pass


class CommaRuleViolation(CodeSyntaxError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    detail: str
    offset: int | None = None
    severity: str = "error"

    def as_dict(self):
        d = {"rule": self.rule, "detail": self.detail}
        if self.offset is not None:
            d["offset"] = self.offset
        return d


# --------------------------------------------------------------------------
# the code value


@dataclass(frozen=True)
class FlowCode:
    lists: tuple
    prefix: BifurcationKind | None = None
    # byte offset of every token, parallel to lists; informational only
    offsets: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def comma_mode(self) -> bool:
        return any(x >= 10 for lst in self.lists for x in lst.items)

    @property
    def numbers(self):
        return sorted({x for lst in self.lists for x in lst.items if x > 0})

    def plain(self) -> "FlowCode":
        """Same code with prefix and highlight marks dropped."""
        lists = tuple(
            CodeList(l.kind, tuple(x for x in l.items if x >= 0 or x in (OPEN, CLOSE)))
            for l in self.lists
        )
        return FlowCode(lists)

    def compact(self) -> tuple:
        """(kind, items) pairs with highlights removed; the codec's working form."""
        return tuple(
            (l.kind.value, tuple(x for x in l.items if x >= 0 or x in (OPEN, CLOSE)))
            for l in self.lists
        )

    def paren_group(self):
        """Positions (list index, item index) of the numbers inside the highlight."""
        out = []
        for li, l in enumerate(self.lists):
            inside = False
            for p, x in enumerate(l.items):
                if x == LPAREN:
                    inside = True
                elif x == RPAREN:
                    inside = False
                elif inside and x > 0:
                    out.append((li, p))
        return out

    def has_parens(self) -> bool:
        return any(x == LPAREN for l in self.lists for x in l.items)

    def __str__(self) -> str:
        return serialize_code(self)

    @classmethod
    def from_compact(cls, compact, prefix=None) -> "FlowCode":
        return cls(tuple(CodeList(ListKind(k), tuple(t)) for k, t in compact), prefix)


# --------------------------------------------------------------------------
# serialize


def serialize_code(code: FlowCode) -> str:
    comma = code.comma_mode
    out = [str(code.prefix)] if code.prefix else []
    for lst in code.lists:
        b = lst.kind == ListKind.BOUNDARY
        out.append("{" if b else "[")
        prev_num = False
        for x in lst.items:
            if x >= 0:
                if prev_num and comma:
                    out.append(",")
                out.append(str(x))
                prev_num = True
            else:
                out.append(_SYMBOL[x])
                prev_num = False
        out.append("}" if b else "]")
    text = "".join(out)
    if comma and "," not in text:
        # without a comma every digit reads as its own number
        raise ValueError(f"{text!r}: numbers above 9 need a comma somewhere in the code")
    return text


# --------------------------------------------------------------------------
# parse

_HN_TYPO = re.compile(r"\}(\s*0\s*\[\s*\})")


def parse_code(text, warnings: list | None = None) -> FlowCode:
    """Parse a flow code.  Raises a CodeSyntaxError subclass on bad input.

    Non-fatal findings (currently only the stray-brace normalization) are
    appended to ``warnings`` when a list is supplied.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise IllegalTokenInContext("input is not UTF-8", e.start) from None
    if not isinstance(text, str):
        raise TypeError("code text must be str or bytes")

    # `{23}0[}`: a boundary list closed too early, followed by `0[}`.  Only
    # the bracket-balanced reading `{23]0[}` makes sense.
    m = _HN_TYPO.search(text)
    if m and _balance_ok_after_fix(text, m.start()):
        text = text[: m.start()] + "]" + text[m.start() + 1:]
        if warnings is not None:
            warnings.append(Diagnostic(
                "TYPO", "stray '}' inside a boundary list read as ']'", m.start(), "warning"))

    i, n = 0, len(text)
    while i < n and text[i].isspace():
        i += 1
    if i == n:
        raise EmptyCode("empty code", 0)

    prefix = None
    if text[i] not in "{[":
        m = _PREFIX_RE.match(text, i)
        if not m or m.end() == i:
            raise BadPrefix(f"unexpected {text[i]!r} where a prefix or list must start", i)
        prefix = _kind_from_match(m, i)
        i = m.end()

    comma = "," in text
    lists, offsets = [], []
    paren_seen = 0
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        c = text[i]
        if c not in "{[":
            if c in "}]":
                raise UnbalancedBracket(f"unexpected closer {c!r}", i)
            raise IllegalTokenInContext(f"unexpected {c!r} between lists", i)
        boundary = c == "{"
        closer = "}" if boundary else "]"
        start = i
        i += 1
        items, offs = [], []
        in_paren = False
        prev_num = False
        pending_comma = None
        while True:
            if i == n:
                raise UnbalancedBracket(f"list opened with {c!r} is never closed", start)
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch == closer:
                break
            if ch in "{}" :
                raise UnbalancedBracket(f"unexpected {ch!r} inside a list", i)
            if ch == "," :
                if not comma or not prev_num:
                    raise CommaRuleViolation("comma not between two numbers", i)
                pending_comma = i
                i += 1
                continue
            if ch.isdigit():
                if comma:
                    j = i
                    while j < n and text[j].isdigit():
                        j += 1
                    value = int(text[i:j])
                    if prev_num and pending_comma is None:
                        raise CommaRuleViolation("numbers must be comma separated", i)
                    tok = value
                    step = j - i
                else:
                    tok = int(ch)
                    step = 1
                if tok == ZERO:
                    if not boundary:
                        raise IllegalTokenInContext("0 inside a source list", i)
                    if in_paren:
                        raise IllegalTokenInContext("0 inside a highlight", i)
                items.append(tok)
                offs.append(i)
                prev_num = tok > 0 or comma
                pending_comma = None
                i += step
                continue
            if pending_comma is not None:
                raise CommaRuleViolation("comma not followed by a number", pending_comma)
            if ch == "[" or ch == "]":
                if not boundary:
                    raise IllegalTokenInContext(f"{ch!r} inside a source list", i)
                if in_paren:
                    raise IllegalTokenInContext(f"{ch!r} inside a highlight", i)
                items.append(OPEN if ch == "[" else CLOSE)
            elif ch == "(":
                if in_paren:
                    raise IllegalTokenInContext("nested highlight", i)
                if paren_seen:
                    raise IllegalTokenInContext("more than one highlight", i)
                paren_seen += 1
                in_paren = True
                items.append(LPAREN)
                offs.append(i)
                i += 1
                j = i
                while j < n and text[j].isspace():
                    j += 1
                if j < n and text[j] == ")":
                    items.append(BLANK)
                    offs.append(i)
                    i = j
                    continue
                prev_num = False
                continue
            elif ch == ")":
                if not in_paren:
                    raise UnbalancedBracket("')' without '('", i)
                if items[-1] == LPAREN:
                    items.append(BLANK)
                    offs.append(i)
                in_paren = False
                items.append(RPAREN)
            else:
                raise IllegalTokenInContext(f"unexpected character {ch!r}", i)
            offs.append(i)
            prev_num = False
            i += 1
        if pending_comma is not None:
            raise CommaRuleViolation("trailing comma", pending_comma)
        if in_paren:
            raise UnbalancedBracket("highlight not closed", start)
        i += 1
        if boundary:
            _check_square_alternation(items, offs, start)
        lists.append(CodeList(ListKind.BOUNDARY if boundary else ListKind.SOURCE, tuple(items)))
        offsets.append(tuple(offs))

    if not lists:
        raise EmptyCode("code has a prefix but no lists", i)
    code = FlowCode(tuple(lists), prefix, tuple(offsets))
    if comma and not code.comma_mode:
        raise CommaRuleViolation("commas used although every number is below 10", text.index(","))
    return code


def _balance_ok_after_fix(text, pos):
    fixed = text[:pos] + "]" + text[pos + 1:]
    depth = 0
    for ch in fixed:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


def _check_square_alternation(items, offs, start):
    marks = [(x, o) for x, o in zip(items, offs) if x in (OPEN, CLOSE)]
    if not marks:
        return
    opens = sum(1 for x, _ in marks if x == OPEN)
    if 2 * opens != len(marks):
        raise UnbalancedBracket("'[' and ']' counts differ in a boundary list", start)
    for (a, oa), (b, _) in zip(marks, marks[1:] + marks[:1]):
        if a == b:
            raise UnbalancedBracket("'[' and ']' do not alternate", oa)


def try_parse(text):
    """(code, None) or (None, Diagnostic); never raises on str/bytes input."""
    try:
        return parse_code(text), None
    except CodeSyntaxError as e:
        return None, Diagnostic(type(e).__name__, str(e), e.offset)


# --------------------------------------------------------------------------
# prefix admissibility


def _region_mask(items):
    """True at positions lying inside a ``[ ... ]`` region (cyclically)."""
    n = len(items)
    mask = [False] * n
    if OPEN not in items:
        return mask
    start = items.index(OPEN)
    inside = False
    for k in range(n):
        i = (start + k) % n
        x = items[i]
        if x == OPEN:
            inside = True
        elif x == CLOSE:
            inside = False
        elif inside:
            mask[i] = True
    return mask


_START_RULE = {
    ("SN", "A"): "[1",
    # the marked boundary source may send out no separatrix at all: `{[]`
    ("BSN", "A"): ("{[1", "{[]"),
    ("HS", "A"): "{1",
    ("HS", "B"): "{1",
    ("HN", "A"): "{1",
    ("HN", "B"): ("{[1", "{[]"),
    ("BDS", "A"): "{1",
    ("BDS", "B"): "{1",
}

_PAREN_KINDS = {("SN", "B"), ("BSN", "B"), ("BDS", "B")}


def _lead(code: FlowCode) -> str:
    first = code.lists[0]
    s = "{" if first.is_boundary else "["
    for x in first.items:
        if x in (LPAREN, RPAREN, BLANK):
            continue
        s += _SYMBOL.get(x, str(x))
        if x > 0:
            break
        if len(s) > 3:
            break
    return s


def validate_syntax(code: FlowCode) -> list:
    """Prefix-dependent start-fragment and placement rules; [] means admissible."""
    rep = []
    k = code.prefix
    has_paren = code.has_parens()
    if k is None:
        if has_paren:
            rep.append(Diagnostic("PAREN", "highlight without a bifurcation prefix"))
        return rep
    key = (k.base, k.form)
    first = code.lists[0]
    rule = _START_RULE.get(key)
    if rule is not None and not _lead(code).startswith(rule):
        want = " or ".join(map(repr, rule)) if isinstance(rule, tuple) else repr(rule)
        rep.append(Diagnostic("START", f"{k} code must start with {want}"))
    if key == ("BSN", "B"):
        # published examples spell this `{[(1)...` as well as `{1...`
        nums = [x for x in first.items if x > 0]
        if not first.is_boundary or not nums or nums[0] != 1:
            rep.append(Diagnostic("START", "BSN B-code must start with '{' and its first number must be 1"))
    if key in _PAREN_KINDS:
        if not has_paren:
            rep.append(Diagnostic("PAREN", f"{k} needs a highlighted group"))
    elif has_paren:
        rep.append(Diagnostic("PAREN", f"{k} takes no highlight"))
    if key == ("BSN", "B") and has_paren:
        ok = False
        for l in code.lists:
            if not l.is_boundary:
                continue
            mask = _region_mask(l.items)
            for p, x in enumerate(l.items):
                if x == LPAREN:
                    ok = mask[p]
        if not ok:
            rep.append(Diagnostic("PAREN", "BSN B-code highlight must sit inside square brackets"))
    if key == ("BDS", "B") and has_paren:
        inner = [code.lists[li].items[p] for li, p in code.paren_group()]
        if len(inner) != 1:
            rep.append(Diagnostic("PAREN", "BDS B-code highlights exactly one number"))
    if k.base == "HS" and first.is_boundary:
        items = first.items
        mask = _region_mask(items)
        ones = [p for p, x in enumerate(items) if x == 1]
        if ones:
            inside = mask[ones[0]]
            if k.form == "A" and not inside:
                rep.append(Diagnostic("BRACKET", "HS A-code: first 1 must lie inside square brackets"))
            if k.form == "B" and inside:
                rep.append(Diagnostic("BRACKET", "HS B-code: first 1 must not lie inside square brackets"))
    if key == ("HN", "A"):
        occ = [(li, p) for li, l in enumerate(code.lists) for p, x in enumerate(l.items) if x == 1]
        if len(occ) < 2 or code.lists[occ[1][0]].is_boundary:
            rep.append(Diagnostic("BRACKET", "HN A-code: second 1 must lie in a top-level source list"))
    return rep


def parse_many(lines: Iterable[str]):
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield parse_code(line)
