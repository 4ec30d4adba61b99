import pytest

import morseflow.bifurcation as B
from morseflow.code_text import parse_code, validate_syntax
from morseflow.codec import validate_semantics
from morseflow.enumeration import enumerate_bifurcations
from morseflow.equivalence import codim1_equivalent

LOCAL_GOLDEN = [
    "SN+^A[123]{12]0[}{3}", "SN+^B{(12)1]0[}{2}", "SN-^A[123]{1]0[3}{2}", "SN-^B{(12)]0[2}{1}",
    "BSN+^A{[1]0[]}[1]", "BSN+^B{[(1)]0}[1]",
    "BDS^A{120}[1][2]", "BDS^A{12}{1]0[3}[23]", "BDS^B{1}[12(3)]{23]0[}",
    "HS+^A{12]0[}[123]{3}", "HS+^B{1}[123]{23]0[}",
    "HN+^A{1}[123]{23]0[}", "HN+^B{[12]0}[123]{3}",
]
CONNECTION_GOLDEN = ["SC{12]0[}[2]", "HSC{10[2]0}[2]", "BSC{12}{1}{2]0[}"]


def _regenerate(text):
    c = parse_code(text)
    k = c.prefix
    if k.base in B.CONNECTION_BASES:
        return B.saddle_connection_code(B.connection_diagram(c), k, "AsStored")
    d, m = B.marked_diagram(c)
    d = d.with_marks(set())
    if k.effective_sign == "-":
        return B.minus_code_via_reversal(d.reverse(), m, k, "AsStored")
    make = B.make_a_code if k.form == "A" else B.make_b_code
    return make(d, m, k, "AsStored")


@pytest.mark.parametrize("text", LOCAL_GOLDEN + CONNECTION_GOLDEN)
def test_golden_regenerates(text):
    assert B.validate_bifurcation(parse_code(text)) == []
    assert str(_regenerate(text)) == text


@pytest.mark.parametrize("b,a", [
    ("SN+^B{(12)1]0[}{2}", "SN+^A[123]{12]0[}{3}"),
    ("BDS^B{1}[12(3)]{23]0[}", "BDS^A{12}{1]0[3}[23]"),
    ("BSN+^B{[(1)]0}[1]", "BSN+^A{[1]0[]}[1]"),
])
def test_conversions(b, a):
    assert str(B.b_to_a(b)) == a
    assert str(B.a_to_b(a, "AsStored")) == b
    assert codim1_equivalent(b, a)


def test_stray_brace_spelling():
    warnings = []
    c = parse_code("HN+^A{1}[123]{23}0[}", warnings)
    assert warnings and str(c) == "HN+^A{1}[123]{23]0[}"


@pytest.mark.parametrize("text", ["BSN+^B{10}{12]0[(3)}", "BSN+^B{10}{12]0[3( )}"])
def test_printed_examples_that_are_not_flows(text):
    c = parse_code(text)
    assert {d.rule for d in validate_semantics(c)} == {"P1"}
    assert B.validate_bifurcation(c)


def test_hs_hn_forms_do_not_convert():
    with pytest.raises(B.NotConvertibleKind):
        B.b_to_a("HS+^B{1}[123]{23]0[}")
    with pytest.raises(B.NotConvertibleKind):
        B.a_to_b("HN+^A{1}[123]{23]0[}")


def test_illegal_mark():
    fam = enumerate_bifurcations("disk", 3, "SN+")
    d = fam.diagrams[0]
    (m,) = d.marks
    d = d.with_marks(set())
    assert m in B.legal_marks(d, "SN+^A")
    boundary = [("e", e) for e, (_, _, k) in enumerate(d.edges) if k == "boundary"]
    with pytest.raises(B.IllegalMark):
        B.check_mark(d, boundary[0], "SN+^A")


def test_connection_kind_and_errors():
    d = B.connection_diagram("BSC{12}{1}{2]0[}")
    assert B.connection_kind(d) == "BSC"
    with pytest.raises(B.NoConnection):
        B.connection_kind(d.reverse().reverse().__class__(d.holes, d.kinds,
                          [e for e in d.edges if e[2] != "connection"], [[]] * len(d.kinds), d.hole_left))


FAMILIES = [(s, n, k) for s, ns in (("disk", (3, 4, 5, 6)), ("cylinder", (4, 5, 6)), ("pants", (5, 6)))
            for n in ns for k in ("SN+", "BSN+", "HS+", "HN+", "BDS", "SC", "HSC+", "BSC")]


@pytest.mark.parametrize("surface,n,kind", FAMILIES)
def test_family_codes(surface, n, kind):
    fam = enumerate_bifurcations(surface, n, kind)
    assert fam.count == len(fam.codes)
    for c, d in zip(fam.codes, fam.diagrams):
        assert validate_syntax(c) == []
        assert B.validate_bifurcation(c) == []
        if kind in ("SN+", "BSN+", "BDS"):
            (m,) = d.marks
            b = B.make_b_code(d.with_marks(set()), m, c.prefix.with_form("B"))
            assert codim1_equivalent(B.b_to_a(b), c)
        if kind in ("SC", "HSC+"):
            items = [x for l in c.lists for x in l.items]
            assert items.count(1) == 1 and items.count(2) == 2


@pytest.mark.parametrize("surface,n", [("disk", 5), ("cylinder", 5)])
def test_minus_kinds_mirror_plus(surface, n):
    for base in ("SN", "BSN", "HS", "HN", "HSC"):
        plus = enumerate_bifurcations(surface, n, base + "+")
        minus = enumerate_bifurcations(surface, n, base + "-")
        assert plus.count == minus.count
        for c in minus.codes:
            assert c.prefix.effective_sign == "-"
            assert B.validate_bifurcation(c) == []


@pytest.mark.parametrize("surface,n,kind", FAMILIES)
def test_codes_separate_family_members(surface, n, kind):
    """Distinct bifurcations should get distinct codes."""
    fam = enumerate_bifurcations(surface, n, kind)
    keys = {}
    for c, d in zip(fam.codes, fam.diagrams):
        keys.setdefault(B.codim1_key(c), []).append(str(c))
    clashes = {k: v for k, v in keys.items() if len(v) > 1}
    assert not clashes, sorted(v[0] for v in clashes.values())
