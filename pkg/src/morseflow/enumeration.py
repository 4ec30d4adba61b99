"""Counting constraints, exhaustive generation of Morse flows and of
codimension-one bifurcations, and the summary table."""
from __future__ import annotations

import csv
import io
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from . import _compact as C
from ._select import canonical_search, kernel
from .bifurcation import (as_kind, connection_diagrams, legal_marks, make_a_code,
                          make_b_code, minus_code_via_reversal, saddle_connection_code)
from .code_text import FlowCode
from .diagram import CombinationVector, SeparatrixDiagram, SurfaceId, diagram_from_compact

MAX_POINTS = 7
TABLE_KINDS = ("SN+", "BSN+", "HS+", "HN+", "BDS", "SC", "HSC+", "BSC")
PAIRED = {"SN+", "BSN+", "HS+", "HN+", "HSC+"}
CSV_HEADER = ["surface", "n", *TABLE_KINDS, "sum", "published_sum", "delta"]

# Published summary table: counts per kind in TABLE_KINDS order, then the sum column.
PUBLISHED_TABLE = {
    ("disk", 3): ((1, 1, 1, 1, 0, 0, 0, 0), 8),
    ("disk", 4): ((3, 1, 2, 3, 0, 0, 0, 0), 18),
    ("disk", 5): ((12, 10, 3, 4, 5, 0, 2, 0), 69),
    ("disk", 6): ((25, 11, 11, 22, 22, 7, 3, 1), 173),
    ("cylinder", 4): ((0, 0, 2, 2, 0, 0, 0, 1), 9),
    ("cylinder", 5): ((2, 7, 4, 4, 2, 0, 1, 2), 40),
    ("cylinder", 6): ((16, 17, 16, 19, 11, 2, 10, 9), 168),
    ("pants", 6): ((0, 0, 4, 3, 0, 0, 0, 4), 18),
}

# Combination tables as printed: (N, (A, B, S, T+, T-, Y, Z)) in print order.
PUBLISHED_COMBINATIONS = {
    "disk": (
        (2, (0, 1, 0, 0, 0, 0, 1)), (3, (1, 0, 0, 1, 0, 0, 1)), (4, (1, 0, 0, 1, 1, 1, 0)),
        (4, (1, 1, 1, 0, 0, 0, 1)), (4, (0, 2, 0, 0, 1, 0, 1)), (5, (2, 0, 1, 1, 0, 0, 1)),
        (5, (1, 1, 1, 0, 1, 1, 0)), (5, (1, 0, 0, 2, 0, 0, 2)), (5, (1, 1, 0, 1, 1, 0, 1)),
        (5, (0, 2, 1, 0, 0, 0, 2)), (6, (2, 0, 2, 1, 1, 1, 0)), (6, (2, 1, 2, 0, 0, 0, 1)),
        (6, (1, 1, 2, 0, 0, 1, 1)), (6, (2, 0, 0, 2, 1, 0, 1)), (6, (1, 1, 0, 1, 2, 1, 0)),
        (6, (1, 1, 1, 1, 0, 0, 2)), (6, (1, 2, 1, 0, 1, 0, 1)), (6, (0, 2, 0, 1, 1, 0, 2)),
        (6, (0, 1, 0, 2, 0, 0, 3)),
    ),
    "cylinder": (
        (4, (0, 1, 0, 1, 1, 0, 1)), (5, (1, 0, 0, 2, 1, 0, 1)), (5, (0, 2, 1, 0, 1, 0, 1)),
        (6, (1, 1, 1, 1, 1, 0, 1)), (6, (0, 2, 2, 0, 0, 0, 2)), (6, (0, 2, 0, 1, 2, 0, 1)),
    ),
}


class UnsupportedSize(ValueError):
    pass


class Quotient(str, Enum):
    UP_TO_EQUIVALENCE = "UpToEquivalence"
    UP_TO_EQUIVALENCE_AND_REVERSAL = "UpToEquivalenceAndReversal"


def _surface(s) -> SurfaceId:
    if isinstance(s, SurfaceId):
        return s
    if isinstance(s, int):
        return SurfaceId(s)
    return SurfaceId.named(str(s))


def _check_size(n):
    if n > MAX_POINTS:
        raise UnsupportedSize(f"{n} singular points; at most {MAX_POINTS} are supported")


# ---------------------------------------------------------------------------
# combinations


def solve(chi_double: int, holes: int, N: int, per_component: bool = True):
    """Non-negative solutions of the counting constraints with N points.

    ``per_component`` asks for B+T+Z >= 2*holes (every boundary circle
    carries a source-like and a sink-like point); without it only the
    printed global bound B+T+Z > 1 is applied.
    """
    out = []
    for A, B, S, Tp, Tm, Y in itertools.product(range(N + 1), repeat=6):
        Z = N - (A + B + S + Tp + Tm + Y)
        if Z < 0:
            continue
        T = Tp + Tm
        if A + B == 0 or Y + Z == 0:
            continue
        if (B + T + Z) % 2 or B + T + Z < (2 * holes if per_component else 2):
            continue
        if 2 * A - 2 * S + 2 * Y + B - T + Z != chi_double or B + Tp != Z + Tm:
            continue
        out.append(CombinationVector(A, B, S, Tp, Tm, Y, Z))
    return out


def reversed_vector(v) -> CombinationVector:
    """Counts of the time-reversed flow: sources and sinks trade places."""
    A, B, S, Tp, Tm, Y, Z = v
    return CombinationVector(Y, Z, S, Tm, Tp, A, B)


def combinations(surface, n_range, per_component: bool = True, up_to_reversal: bool = True):
    """Combination vectors of the surface for every N in ``n_range``
    (an int, a range or a (lo, hi) pair, inclusive).

    With ``up_to_reversal`` (the form of the printed tables) a vector and
    the vector of the reversed flow are listed once, as the larger of the
    two."""
    s = _surface(surface)
    if s.holes < 1:
        raise ValueError("at least one boundary component is required")
    if isinstance(n_range, int):
        ns = [n_range]
    elif isinstance(n_range, tuple):
        ns = range(n_range[0], n_range[1] + 1)
    else:
        ns = n_range
    out = []
    for N in ns:
        vs = solve(s.chi_double, s.holes, N, per_component)
        if up_to_reversal:
            vs = {max(v, reversed_vector(v)) for v in vs}
        out.extend(sorted(vs))
    return out


# ---------------------------------------------------------------------------
# Morse flows


def distinct_permutations(items):
    """Distinct orderings of a multiset in lexicographic order."""
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def compositions(n, k):
    """Ordered k-tuples of non-negative integers summing to n."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for c in itertools.combinations(range(n + k - 1), k - 1):
        prev, parts = -1, []
        for x in c + (n + k - 1,):
            parts.append(x - prev - 1)
            prev = x
        yield tuple(parts)


def _quick_ok(code, vec):
    if not C.connected(code):
        return False
    faces = C.face_walks(code)
    if any(len(f["zeros"]) > 1 for f in faces):
        return False
    nums = len(C.occurrences(code))
    if len(code) - nums + len(faces) != 2:
        return False
    return C.combination(code) == tuple(vec)


def codes_for(holes: int, vec) -> list:
    """Canonical compact codes (up to reflection) of all Morse flows with
    combination ``vec`` on the sphere with ``holes`` holes.

    Every placement of boundary points, every order of separatrix ends and
    every split of those ends among the sources is generated; survivors of
    the structural checks are deduplicated by canonical form.
    """
    from .codec import validate_semantics
    A, B, S, Tp, Tm, Y, Z = vec
    nsrc = B + Tp
    if nsrc != Z + Tm or nsrc < holes or (holes == 0) != (nsrc == 0):
        return []
    src_items = [("B", i) for i in range(B)] + [("T", S + 1 + j) for j in range(Tp)]
    ends = [i for i in range(1, S + 1) for _ in range(2)] + [S + 1 + j for j in range(Tp)]
    seen = {}
    sizes_all = [tuple(x + 1 for x in c) for c in compositions(nsrc - holes, holes)] if holes else [()]
    for sizes in sizes_all:
        for perm in itertools.permutations(src_items):
            for sinks in distinct_permutations("Z" * Z + "M" * Tm):
                for seq in distinct_permutations(ends):
                    for parts in compositions(len(ends), A + B):
                        cuts, at = [], 0
                        for pl in parts:
                            cuts.append(tuple(seq[at:at + pl]))
                            at += pl
                        code, idx = [], 0
                        for sz in sizes:
                            toks = []
                            for _ in range(sz):
                                kind, x = perm[idx]
                                snk = sinks[idx]
                                idx += 1
                                if kind == "B":
                                    toks += [C.OPEN, *cuts[A + x], C.CLOSE]
                                else:
                                    toks.append(x)
                                if snk == "Z":
                                    toks.append(0)
                            code.append(("B", tuple(toks)))
                        for a in range(A):
                            code.append(("S", cuts[a]))
                        code = tuple(code)
                        if not _quick_ok(code, vec):
                            continue
                        key, (l, p, r) = canonical_search(code, True)
                        if key in seen:
                            continue
                        canon = kernel.encode(code, l, p, r)[0]
                        seen[key] = canon if not validate_semantics(canon) else None
    return [seen[k] for k in sorted(seen) if seen[k] is not None]


def _codes_task(args):
    holes, vec = args
    return codes_for(holes, vec)


def _workers():
    try:
        return max(1, int(os.environ.get("MORSEFLOW_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def morse_codes(holes: int, n: int) -> tuple:
    """Canonical codes of all Morse flows with n points, deterministic order:
    by combination vector, then by canonical key."""
    _check_size(n)
    if holes < 1:
        raise ValueError("at least one boundary component is required")
    vecs = sorted(solve(4 - 2 * holes, holes, n))
    jobs = [(holes, v) for v in vecs]
    w = _workers()
    if w > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=w) as ex:
            parts = list(ex.map(_codes_task, jobs))
    else:
        parts = [_codes_task(j) for j in jobs]
    return tuple(c for part in parts for c in part)


@lru_cache(maxsize=None)
def morse_flows(holes: int, n: int) -> tuple:
    return tuple(diagram_from_compact(c, holes) for c in morse_codes(holes, n))


def reversed_code(code) -> tuple:
    """Canonical code of the time-reversed flow."""
    d = diagram_from_compact(code)
    r = d.reverse().to_compact()
    _, (l, p, rv) = canonical_search(r, True)
    return kernel.encode(r, l, p, rv)[0]


def is_self_inverse_code(code) -> bool:
    return canonical_search(reversed_code(code), True)[0] == canonical_search(code, True)[0]


def enumerate_morse(surface, n, quotient=Quotient.UP_TO_EQUIVALENCE) -> list:
    """Separatrix diagrams of all Morse flows with ``n`` singular points
    (an int, or a (lo, hi) pair meaning every count in between).

    Under the reversal quotient each class is represented by its first
    member in output order."""
    s = _surface(surface)
    ns = range(n[0], n[1] + 1) if isinstance(n, tuple) else [n]
    out = []
    for k in ns:
        _check_size(k)
        codes = morse_codes(s.holes, k)
        if Quotient(quotient) is Quotient.UP_TO_EQUIVALENCE_AND_REVERSAL:
            taken = set()
            keep = []
            for c in codes:
                key = canonical_search(c, True)[0]
                if key in taken:
                    continue
                taken.add(key)
                taken.add(canonical_search(reversed_code(c), True)[0])
                keep.append(c)
            codes = keep
        out.extend(diagram_from_compact(c, s.holes) for c in codes)
    return out


# ---------------------------------------------------------------------------
# bifurcations


@dataclass
class BifurcationFamily:
    surface: SurfaceId
    n: int
    kind: str
    count: int
    codes: list = field(default_factory=list)
    diagrams: list = field(default_factory=list)


def _local_marks(holes, n, kind):
    """Orbits of (flow, mark) for a local kind, keyed by the canonical form
    of the marked diagram (reflections allowed)."""
    k = as_kind(kind)
    if k.base in ("SN", "BSN", "BDS"):
        pool, form = morse_flows(holes, n + 1), "A"
    else:
        pool, form = morse_flows(holes, n), "B"
    kk = k.with_form(form) if k.effective_sign != "-" else k.with_sign("+").with_form(form)
    found = {}
    for d in pool:
        for m in legal_marks(d, kk):
            key = d.with_marks({m}).canonical_form(True)
            found.setdefault(key, (d, m))
    return [found[x] for x in sorted(found)], form


def enumerate_bifurcations(surface, n, kind) -> BifurcationFamily:
    """Bifurcations of one kind whose moment diagram has ``n`` points.

    SN, BSN and BDS collapse a trajectory of an (n+1)-point flow; HS and HN
    mark an a-saddle or a boundary source of an n-point flow; connections
    come from rewriting a cell of an n-point flow.  Minus kinds are the
    reversals of the plus ones.  Representatives are given as codes.
    """
    s = _surface(surface)
    _check_size(n + 1 if str(kind).lstrip().startswith(("SN", "BSN", "BDS")) else n)
    name = str(kind)
    base = name.rstrip("+-")
    sign = "-" if name.endswith("-") else "+" if base in ("SN", "BSN", "HS", "HN", "HSC") else None
    fam = BifurcationFamily(s, n, name, 0)
    if base in ("SC", "HSC", "BSC"):
        want = {"SC": "SC", "BSC": "BSC", "HSC": "HSC+"}[base]
        ds = [d for k, d in connection_diagrams(s.holes, n).values() if k == want]
        ds.sort(key=lambda d: d.canonical_form(True))
        from .code_text import BifurcationKind
        ck = BifurcationKind(base, sign)
        for d in ds:
            if sign == "-":
                d = d.reverse()
            fam.diagrams.append(d)
            fam.codes.append(saddle_connection_code(d, ck))
        fam.count = len(ds)
        return fam
    reps, form = _local_marks(s.holes, n, f"{base}{sign or ''}^A")
    from .code_text import BifurcationKind
    bk = BifurcationKind(base, sign, form)
    for d, m in reps:
        if sign == "-":
            d = d.reverse()
        fam.diagrams.append(d.with_marks({m}))
        fam.codes.append(make_a_code(d, m, bk) if form == "A" else make_b_code(d, m, bk))
    fam.count = len(reps)
    return fam


# ---------------------------------------------------------------------------
# summary table


@dataclass
class TableRow:
    surface: str
    n: int
    counts: tuple
    published_counts: tuple | None
    published_sum: int | None

    @property
    def total(self) -> int:
        """Sign-paired kinds count twice (plus and minus), the others once."""
        return sum(c * (2 if k in PAIRED else 1) for k, c in zip(TABLE_KINDS, self.counts))

    @property
    def delta(self):
        return None if self.published_sum is None else self.total - self.published_sum


def table_row(surface, n) -> TableRow:
    s = _surface(surface)
    counts = tuple(enumerate_bifurcations(s, n, k).count for k in TABLE_KINDS)
    pub = PUBLISHED_TABLE.get((s.name, n))
    return TableRow(s.name, n, counts, pub[0] if pub else None, pub[1] if pub else None)


def summary_table(surfaces=None, n_range=None) -> list:
    """Rows for every (surface, n); defaults to the rows of the published table."""
    if surfaces is None and n_range is None:
        keys = list(PUBLISHED_TABLE)
    else:
        surfaces = surfaces or ["disk", "cylinder", "pants"]
        ns = range(n_range[0], n_range[1] + 1) if isinstance(n_range, tuple) else n_range
        keys = [(_surface(s).name, n) for s in surfaces for n in ns]
    return [table_row(s, n) for s, n in keys]


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.surface, r.n, *r.counts, r.total,
                    "" if r.published_sum is None else r.published_sum,
                    "" if r.delta is None else r.delta])
    return buf.getvalue()


def table_text(rows) -> str:
    head = CSV_HEADER
    body = []
    for r in rows:
        cells = [r.surface, str(r.n)]
        for c, p in zip(r.counts, r.published_counts or [None] * len(r.counts)):
            cells.append(str(c) if p is None or p == c else f"{c}({p})")
        cells += [str(r.total), "" if r.published_sum is None else str(r.published_sum),
                  "" if r.delta is None else f"{r.delta:+d}"]
        body.append(cells)
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in [head, *body]]
    return "\n".join(lines) + "\n"


__all__ = [
    "BifurcationFamily", "CSV_HEADER", "MAX_POINTS", "PUBLISHED_COMBINATIONS", "PUBLISHED_TABLE",
    "Quotient", "TABLE_KINDS", "TableRow", "UnsupportedSize", "codes_for", "combinations",
    "compositions", "distinct_permutations", "reversed_vector", "enumerate_bifurcations", "enumerate_morse",
    "is_self_inverse_code", "morse_codes", "morse_flows", "reversed_code", "solve",
    "summary_table", "table_csv", "table_row", "table_text",
]
