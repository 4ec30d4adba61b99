"""Graph <-> code conversion, semantic validation and canonical codes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import _compact as C
from ._select import canonical_search, kernel
from .code_text import CodeList, Diagnostic, FlowCode, ListKind, parse_code
from .diagram import DistinguishingGraph, SeparatrixDiagram, diagram_from_compact


class NumberCountViolation(ValueError):
    pass


class BasepointNotOnCycle(ValueError):
    pass


class SemanticInvalid(ValueError):
    def __init__(self, report):
        self.report = list(report)
        super().__init__("; ".join(f"{d.rule}: {d.detail}" for d in self.report))


class Orientation(str, Enum):
    AS_STORED = "AsStored"
    REVERSED = "Reversed"


class Mode(str, Enum):
    ORIENTED_ONLY = "OrientedOnly"
    UP_TO_REFLECTION = "UpToReflection"


def as_compact(code) -> tuple:
    """Accept text, FlowCode or compact tuple; return the compact tuple."""
    if isinstance(code, (str, bytes)):
        code = parse_code(code)
    if isinstance(code, FlowCode):
        return code.compact()
    return tuple((k.value if isinstance(k, ListKind) else k, tuple(t)) for k, t in code)


def _flow(code, compact) -> FlowCode:
    prefix = code.prefix if isinstance(code, FlowCode) else None
    return FlowCode.from_compact(compact, prefix)


# ---------------------------------------------------------------------------
# the cycle algorithm


@dataclass(frozen=True)
class CodeCycle:
    """One cycle: the number occurrences visited (list, item) and the zeros met."""

    halves: tuple
    zeros: tuple


def _number_counts(c):
    occ = C.occurrences(c)
    return {x: len(v) for x, v in occ.items()}


def cycles_of_code(code) -> list:
    """Cycles of a code by the jump rule.

    From an occurrence take the cyclically next number in the same list,
    jump to that number's other occurrence and repeat.  Zeros passed on the
    way belong to the cycle.  A code with no numbers has one cycle per list.
    """
    c = as_compact(code)
    bad = {x: n for x, n in _number_counts(c).items() if n != 2}
    if bad:
        x = min(bad)
        raise NumberCountViolation(f"number {x} occurs {bad[x]} time(s)")
    return [CodeCycle(tuple(f["halves"]), tuple(f["zeros"])) for f in C.face_walks(c)]


# ---------------------------------------------------------------------------
# validation


def validate_semantics(code, holes: int | None = None) -> list:
    """Realizability findings; an empty list means the code describes a
    Morse flow on a sphere with holes (as many holes as boundary lists)."""
    c = as_compact(code)
    report = []
    if not c:
        return [Diagnostic("P3", "empty code")]
    for l, (k, t) in enumerate(c):
        if k == "S" and any(x <= 0 for x in t):
            report.append(Diagnostic("SYN", f"source list {l + 1} holds something other than numbers"))
    if report:
        return report
    counts = _number_counts(c)
    for x in sorted(counts):
        if counts[x] != 2:
            report.append(Diagnostic("P1", f"number {x} occurs {counts[x]} time(s), expected 2"))
    mk = C.masks(c)
    occ = C.occurrences(c)
    for x in sorted(occ):
        if not any(mk[l][p] for l, p in occ[x]):
            report.append(Diagnostic("SRC", f"number {x} lies in no source list"))
    for l, (k, t) in enumerate(c):
        if k == "B" and C.source_like_count(t, mk[l]) == 0:
            report.append(Diagnostic("BND", f"boundary list {l + 1} has no boundary source or a-saddle"))
    if not C.connected(c):
        report.append(Diagnostic("P3", "the lists do not form a connected chain"))
    if holes is not None:
        nb = sum(1 for k, _ in c if k == "B")
        if nb != holes:
            report.append(Diagnostic("SURF", f"{nb} boundary lists for a surface with {holes} holes"))
    if any(d.rule in ("P1",) for d in report):
        return report
    cycles = C.face_walks(c)
    for i, f in enumerate(cycles):
        if len(f["zeros"]) > 1:
            report.append(Diagnostic("P2", f"cycle {i + 1} contains {len(f['zeros'])} zeros"))
    V, E, F = len(c), len(occ), len(cycles)
    if V - E + F != 2:
        report.append(Diagnostic("P4", f"V - E + F = {V} - {E} + {F} = {V - E + F}, expected 2"))
    if not report:
        # the rules above are the whole story; this gate only guards the
        # diagram builder against inputs the rules were not meant to see
        try:
            errs = diagram_from_compact(c).check()
        except (ValueError, KeyError, IndexError) as e:
            errs = [f"{type(e).__name__}: {e}"]
        for e in errs:
            report.append(Diagnostic("REAL", e))
    return report


def is_valid(code, holes: int | None = None) -> bool:
    return not validate_semantics(code, holes)


# ---------------------------------------------------------------------------
# conversions


def decode(code) -> DistinguishingGraph:
    c = as_compact(code)
    report = validate_semantics(c)
    if report:
        raise SemanticInvalid(report)
    return DistinguishingGraph.from_compact(c)


def diagram(code) -> SeparatrixDiagram:
    """Full separatrix diagram of a valid code."""
    c = as_compact(code)
    report = validate_semantics(c)
    if report:
        raise SemanticInvalid(report)
    return diagram_from_compact(c)


def encode(g: DistinguishingGraph, basepoint: int, orientation=Orientation.AS_STORED) -> FlowCode:
    """Code of ``g`` read from vertex ``basepoint``.

    Saddles are numbered in order of first visit; the next list is the
    unlisted one reached through the smallest number, entered at that
    number's occurrence.
    """
    c, where = g.to_compact()
    if basepoint not in where:
        raise BasepointNotOnCycle(f"vertex {basepoint} lies on no cycle")
    l, p = where[basepoint]
    out, _ = kernel.encode(c, l, p, Orientation(orientation) is Orientation.REVERSED)
    return FlowCode.from_compact(out)


def canonical_key(code, reflect: bool = True) -> tuple:
    """Hashable invariant; equal keys iff equal canonical codes."""
    return canonical_search(as_compact(code), reflect)[0]


def canonical_compact(code, reflect: bool = True) -> tuple:
    c = as_compact(code)
    _, (l, p, r) = canonical_search(c, reflect)
    return kernel.encode(c, l, p, r)[0]


def canonical_code(x, mode=Mode.UP_TO_REFLECTION) -> FlowCode:
    """Lexicographically least code over all basepoints (and both
    orientations for UpToReflection) in the order
    ``{ < [ < ( < 0 < 1 < 2 < ... < ) < ] < }``."""
    reflect = Mode(mode) is Mode.UP_TO_REFLECTION
    if isinstance(x, DistinguishingGraph):
        c = x.to_compact()[0]
        return FlowCode.from_compact(canonical_compact(c, reflect))
    return _flow(x, canonical_compact(as_compact(x), reflect))


def symmetric_compact(code) -> tuple:
    m = C.mirror(as_compact(code))
    _, (l, p, r) = canonical_search(m, False)
    return kernel.encode(m, l, p, False)[0]


def symmetric_code(code) -> FlowCode:
    """Code of the same graph read with the opposite surface orientation."""
    return _flow(code, symmetric_compact(code))


def code_of_diagram(d: SeparatrixDiagram, mode=Mode.ORIENTED_ONLY) -> FlowCode:
    return FlowCode.from_compact(canonical_compact(d.to_compact(), Mode(mode) is Mode.UP_TO_REFLECTION))


def render_compact(c) -> str:
    return str(FlowCode.from_compact(c))


__all__ = [
    "BasepointNotOnCycle", "CodeCycle", "Mode", "NumberCountViolation", "Orientation",
    "SemanticInvalid", "as_compact", "canonical_code", "canonical_compact", "canonical_key",
    "code_of_diagram", "cycles_of_code", "decode", "diagram", "encode", "is_valid",
    "render_compact", "symmetric_code", "symmetric_compact", "validate_semantics",
    "CodeList",
]
