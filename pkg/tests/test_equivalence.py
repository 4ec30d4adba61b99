import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import BIG, all_codes, nx_iso
from morseflow import _kernel_py
from morseflow._marked import mirror_items
from morseflow.bifurcation import KindMismatch, make_a_code, marked_diagram
from morseflow.code_text import CodeList, FlowCode, parse_code
from morseflow.codec import decode, diagram
from morseflow.diagram import diagram_from_compact
from morseflow.enumeration import enumerate_bifurcations, reversed_code
from morseflow.equivalence import (codim1_equivalent, find_isomorphism, is_self_inverse,
                                   morse_equivalent)

CODES = all_codes(6)


def _reading(code, a, b, rev):
    l = a % len(code)
    n = len(code[l][1])
    return _kernel_py.encode(code, l, b % n if n else 0, rev)[0]


def _family(holes):
    """Codes with two extra readings each, so equal classes occur."""
    out = []
    for h, _, c in CODES:
        if h == holes:
            out += [c, _reading(c, 1, 2, False), _reading(c, 0, 1, True)]
    return out


@BIG
@given(st.sampled_from(CODES), st.sampled_from(CODES), st.integers(0, 99), st.integers(0, 99), st.booleans())
def test_agrees_with_graph_isomorphism(x, y, a, b, rev):
    (h1, _, c1), (h2, _, c2) = x, y
    c2 = _reading(c2 if h1 == h2 else c1, a, b, rev)
    assert bool(morse_equivalent(c1, c2)) == nx_iso(c1, c2, reflect=True)


def test_disk_family_pairwise_oracle():
    fam = _family(1)
    for a, b in itertools.combinations_with_replacement(fam, 2):
        expect = nx_iso(a, b, reflect=True)
        assert bool(morse_equivalent(a, b)) == expect
        d1, d2 = diagram_from_compact(a, 1), diagram_from_compact(b, 1)
        assert (find_isomorphism(d1, d2) is not None) == expect


@pytest.mark.parametrize("holes", [1, 2, 3])
def test_axioms(holes):
    fam = _family(holes)
    rel = {(i, j): bool(morse_equivalent(a, b)) for (i, a), (j, b) in itertools.product(enumerate(fam), repeat=2)}
    n = len(fam)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            if rel[i, j]:
                for k in range(n):
                    if rel[j, k]:
                        assert rel[i, k]


def test_accepts_graphs_and_diagrams():
    c = "{12]0[}[123]{3}"
    assert morse_equivalent(decode(c), diagram("{3}[312]{12]0[}"))
    assert not morse_equivalent(c, "{[]0}")


def test_self_inverse_against_reversed_code():
    for h, _, c in CODES:
        d = diagram_from_compact(c, h)
        assert is_self_inverse(d) == nx_iso(c, reversed_code(c), reflect=True)
        assert is_self_inverse(d) == (find_isomorphism(d, d.reverse()) is not None)


# -- codimension one -----------------------------------------------------------

def test_sn_symmetric_pair():
    c = parse_code("SN+^A[123]{12]0[}{3}")
    d, m = marked_diagram(c)
    other = make_a_code(d, m, c.prefix, "Reversed")
    assert str(other) != str(c)
    assert codim1_equivalent(c, other)


def test_a_and_b_forms_compare():
    assert codim1_equivalent("SN+^B{(12)1]0[}{2}", "SN+^A[123]{12]0[}{3}")
    assert codim1_equivalent("BDS^B{1}[12(3)]{23]0[}", "BDS^A{12}{1]0[3}[23]")


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        codim1_equivalent("SN+^A[123]{12]0[}{3}", "BSN+^A{[1]0[]}[1]")


def _string_mirror(code):
    return FlowCode(tuple(CodeList(l.kind, mirror_items(l.items)) for l in code.lists), code.prefix)


@pytest.mark.parametrize("kind", ["BSN+"])
def test_oriented_kinds_are_finer(kind):
    witnesses = []
    for c in enumerate_bifurcations("disk", 5, kind).codes:
        s = _string_mirror(c)
        if str(s) == str(c):
            continue
        try:
            same = bool(codim1_equivalent(c, s))
        except Exception:
            continue
        if not same:
            witnesses.append((str(c), str(s)))
    assert ("BSN+^A{[1]0[]}[1]", "BSN+^A{[]0[1]}[1]") in witnesses


def test_codim1_axioms_on_families():
    for kind in ("SN+", "BSN+", "HS+", "HN+", "BDS"):
        codes = enumerate_bifurcations("disk", 5, kind).codes
        for a, b in itertools.product(codes, repeat=2):
            assert bool(codim1_equivalent(a, b)) == (a is b)
