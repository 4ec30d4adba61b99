"""Acceptance checks, one test per criterion.

Every test prints a single ``CRITERION n: PASS|FAIL ...`` line (also
repeated in the terminal summary) and then asserts the exact claim.
Cells marked report-only are printed and never asserted.
"""
import itertools

import pytest

from conftest import all_codes, nx_iso
from morseflow import bifurcation as B
from morseflow import enumeration as en
from morseflow.code_text import parse_code, serialize_code
from morseflow.codec import (as_compact, canonical_key, cycles_of_code, decode,
                             render_compact, validate_semantics)
from morseflow.diagram import CombinationVector, diagram_from_compact
from morseflow.equivalence import is_self_inverse, morse_equivalent

RESULTS = {}


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        RESULTS[n] = line
        with capsys.disabled():
            print("\n" + line)
    return emit


# 1 -------------------------------------------------------------------------

def _classes(pairs):
    return {frozenset((v, tuple(CombinationVector(*v).reversed()))) for _, v in pairs}


def test_criterion_1_combination_tables(report):
    from test_enumeration import box
    notes, ok = [], True
    for surface, rng in (("disk", (2, 6)), ("cylinder", (4, 6))):
        ours = [(sum(v), tuple(v)) for v in en.combinations(surface, rng)]
        full = {tuple(v) for v in en.combinations(surface, rng, up_to_reversal=False)}
        boxed = set().union(*(box(surface, N) for N in range(rng[0], rng[1] + 1)))
        ok &= full == boxed
        pub = en.PUBLISHED_COMBINATIONS[surface]
        mine, theirs = _classes(ours), _classes(pub)
        same = len(ours) == len(pub) and mine == theirs
        ok &= same
        missing = sorted(min(c) for c in theirs - mine)
        extra = sorted(min(c) for c in mine - theirs)
        notes.append(f"{surface}: {len(ours)} rows vs {len(pub)} printed, box={'ok' if full == boxed else 'MISMATCH'}"
                     + (f", printed-only {missing}" if missing else "")
                     + (f", unprinted {extra}" if extra else ""))
    report(1, ok, "; ".join(notes))
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_morse_counts(report):
    Q = en.Quotient.UP_TO_EQUIVALENCE_AND_REVERSAL
    disk = [d for n in range(2, 7) for d in en.enumerate_morse("disk", n, Q)]
    si = sum(1 for d in disk if is_self_inverse(d))
    cyl = tuple(len(en.enumerate_morse("cylinder", n)) for n in (4, 5, 6))
    pants = len(en.enumerate_morse("pants", 6))
    want = (22, 5, (2, 4, 14), 2)
    got = (len(disk), si, cyl, pants)
    detail = (f"disk<=6 up to reversal {len(disk)} (want 22), self-inverse {si} (want 5); "
              f"cylinder 4/5/6 {cyl} (want (2, 4, 14)); pants 6 {pants} (want 2)")
    report(2, got == want, detail)
    assert got == want


# 3 -------------------------------------------------------------------------

ASSERTED = [("disk", n) for n in (3, 4, 5, 6)] + [("cylinder", n) for n in (4, 5, 6)]


def test_criterion_3_bifurcation_counts(report):
    bad = []
    for surface, n in ASSERTED:
        row = en.table_row(surface, n)
        for k, c, p in zip(en.TABLE_KINDS, row.counts, row.published_counts):
            if c != p:
                codes = [str(x) for x in en.enumerate_bifurcations(surface, n, k).codes]
                bad.append(f"{surface} {n} {k}: {c} vs {p} e.g. {', '.join(codes[:3])}")
    p5 = en.table_row("pants", 5).counts
    p6 = en.table_row("pants", 6)
    pants_ok = all(c == 0 for k, c in zip(en.TABLE_KINDS, p5) if k in ("SN+", "BSN+", "BDS")) \
        and p6.counts[en.TABLE_KINDS.index("BSC")] == 4
    if not pants_ok:
        bad.append(f"pants: N=5 {p5}, N=6 BSC {p6.counts[-1]}")
    # report-only cells
    hs, hn = (p6.counts[en.TABLE_KINDS.index(k)] for k in ("HS+", "HN+"))
    sums = ", ".join(f"{r.surface}{r.n} {r.total}/{r.published_sum}" for r in en.summary_table())
    extra = f"[report-only: pants 6 HS+ {hs}/4, HN+ {hn}/3; sums {sums}]"
    detail = (f"{len(bad)} mismatching cells" + (": " + "; ".join(bad) if bad else "")) + " " + extra
    report(3, not bad, detail)
    assert not bad


# 4 -------------------------------------------------------------------------

def test_criterion_4_connection_families(report):
    """Report-only: the figure family sizes disagree with the table cells."""
    fam = {}
    for surface in ("disk", "cylinder"):
        for n in range(2, 7):
            for k in ("SC", "HSC+", "BSC"):
                c = en.enumerate_bifurcations(surface, n, k).count
                if c:
                    fam[(surface, n, k)] = c
    disk = sum(c for (s, _, _), c in fam.items() if s == "disk")
    cyl = sum(c for (s, _, _), c in fam.items() if s == "cylinder")
    parts = ", ".join(f"{s} {n} {k}={c}" for (s, n, k), c in sorted(fam.items()))
    report(4, disk == 10 and cyl == 15,
           f"[report-only] disk family {disk} (figure 10), cylinder family {cyl} (figure 15); {parts}")


# 5 -------------------------------------------------------------------------

GOLDEN = {
    # printed code -> the canonical spelling it must regenerate
    "SN+^A[123]{12]0[}{3}": None, "SN+^B{(12)1]0[}{2}": None,
    "SN-^A[123]{1]0[3}{2}": None, "SN-^B{(12)]0[2}{1}": None,
    "BSN+^A{[1]0[]}[1]": None, "BSN+^B{[(1)]0}[1]": None,
    "BSN+^B{10}{12]0[(3)}": None, "BSN+^B{10}{12]0[3( )}": None,
    "HS+^A{12]0[}[123]{3}": None, "HS+^B{1}[123]{23]0[}": None,
    "HN+^A{1}[123]{23}0[}": "HN+^A{1}[123]{23]0[}", "HN+^B{[12]0}[123]{3}": None,
    "BDS^A{120}[1][2]": None, "BDS^A{12}{1]0[3}[23]": None, "BDS^B{1}[12(3)]{23]0[}": None,
    "SC{12]0[}[2]": None, "HSC{10[2]0}[2]": None, "BSC{12}{1}{2]0[}": None,
}
PAIRS = [("SN+^B{(12)1]0[}{2}", "SN+^A[123]{12]0[}{3}"),
         ("BDS^B{1}[12(3)]{23]0[}", "BDS^A{12}{1]0[3}[23]"),
         ("BSN+^B{[(1)]0}[1]", "BSN+^A{[1]0[]}[1]")]


def _regenerate(code):
    k = code.prefix
    if k.base in B.CONNECTION_BASES:
        return B.saddle_connection_code(B.connection_diagram(code), k, "AsStored")
    d, m = B.marked_diagram(code)
    d = d.with_marks(set())
    if k.effective_sign == "-":
        return B.minus_code_via_reversal(d.reverse(), m, k, "AsStored")
    return (B.make_a_code if k.form == "A" else B.make_b_code)(d, m, k, "AsStored")


def test_criterion_5_worked_examples(report):
    bad = []
    fig = parse_code("{12]0[}[123]{3}")
    if validate_semantics(fig) or serialize_code(fig) != "{12]0[}[123]{3}":
        bad.append("{12]0[}[123]{3}: not valid")
    for text, want in GOLDEN.items():
        want = want or text
        try:
            c = parse_code(text, warnings=[])
            errs = B.validate_bifurcation(c)
            if errs:
                bad.append(f"{text}: {errs[0]}")
                continue
            got = str(_regenerate(c))
            if got != want:
                bad.append(f"{text}: regenerates {got}")
        except Exception as e:  # report every example, never stop at the first
            bad.append(f"{text}: {type(e).__name__}: {e}")
    for b, a in PAIRS:
        got = str(B.b_to_a(parse_code(b)))
        if got != a:
            bad.append(f"{b} -> {got}, want {a}")
    n = len(GOLDEN) + 1
    report(5, not bad, f"{n - len(bad)}/{n} codes and {len(PAIRS)} conversions checked"
           + ("; failing: " + "; ".join(bad) if bad else ""))
    assert not bad


# 6 -------------------------------------------------------------------------

def _relabel(code, perm):
    return tuple((k, tuple(perm.get(x, x) for x in t)) for k, t in code)


def _last_reading(code, kernel):
    """The code read backwards from the last number occurrence."""
    starts = [(l, p) for l, (_, t) in enumerate(code) for p, x in enumerate(t) if x > 0]
    if not starts:
        return code
    l, p = starts[-1]
    return kernel.encode(code, l, p, True)[0]


def test_criterion_6_properties(report):
    from morseflow._select import kernel
    problems = []
    codes = all_codes(6)
    for holes, n, c in codes:
        text = render_compact(c)
        fc = parse_code(text)
        if serialize_code(fc) != text or as_compact(fc) != c:
            problems.append(f"round trip {text}")
        d = diagram_from_compact(c, holes)
        if validate_semantics(c) or d.check():
            problems.append(f"invariants {text}")
        g = decode(c)
        V, E, F = len(g.cycles), sum(1 for e in g.edges if e[0] == "Separatrix"), len(g.trace_faces())
        if V - E + F != 2 or len(cycles_of_code(c)) != F:
            problems.append(f"faces {text}")
        if d.reverse().reverse().canonical_form(True) != d.canonical_form(True):
            problems.append(f"reverse {text}")
        key = canonical_key(c)
        nums = sorted({x for _, t in c for x in t if x > 0})
        for perm in itertools.islice(itertools.permutations(nums), 24):
            if canonical_key(_relabel(c, dict(zip(nums, perm)))) != key:
                problems.append(f"relabel {text}")
                break
        for l, (_, t) in enumerate(c):
            for p, x in enumerate(t):
                if x <= 0:
                    continue
                for r in (False, True):
                    if canonical_key(kernel.encode(c, l, p, r)[0]) != key:
                        problems.append(f"basepoint {text}")
    # equivalence axioms on the disk family and agreement with colored isomorphism
    disk = [c for h, n, c in codes if h == 1 and n <= 5]
    for a, b in itertools.product(disk, repeat=2):
        if bool(morse_equivalent(a, b)) != nx_iso(a, b, reflect=True):
            problems.append(f"nx {render_compact(a)} {render_compact(b)}")
        if bool(morse_equivalent(a, b)) != bool(morse_equivalent(b, a)):
            problems.append("symmetry")
    for a in disk:
        other = _last_reading(a, kernel)
        if not morse_equivalent(a, other) or not nx_iso(a, other, reflect=True):
            problems.append(f"reflexive {render_compact(a)}")
    report(6, not problems, f"{len(codes)} enumerated codes exhaustively, {len(disk) ** 2} disk pairs"
           + (f"; {len(problems)} problems, first {problems[:3]}" if problems else "")
           + "; hypothesis suites run in test_code_text/test_codec/test_equivalence")
    assert not problems
