import pytest
from hypothesis import given, strategies as st

from conftest import BIG, all_codes, nx_iso
from morseflow import _kernel_py
from morseflow.code_text import parse_code
from morseflow.codec import (BasepointNotOnCycle, Mode, NumberCountViolation, Orientation,
                             SemanticInvalid, canonical_code, canonical_compact, cycles_of_code,
                             decode, encode, is_valid, symmetric_code, validate_semantics)
from morseflow.diagram import DistinguishingGraph

FIG = "{12]0[}[123]{3}"
CODES = all_codes(6)


def _vef(g):
    return len(g.cycles), sum(1 for e in g.edges if e[0] == "Separatrix"), len(g.trace_faces())


def test_decode_fig():
    g = decode(FIG)
    assert _vef(g) == (3, 3, 2)
    assert sorted(g.vertex_color).count("SinkWhite") == 1
    assert nx_iso(parse_code(FIG).compact(), parse_code("{3}[312]{12]0[}").compact())


def test_decode_minimal():
    g = decode("{[]0}")
    assert _vef(g) == (1, 0, 1)
    assert len(g.vertex_color) == 3


def test_decode_cylinder():
    g = decode("{[1]0}{1}")
    assert _vef(g) == (2, 1, 1)
    assert g.euler() == 2


def test_cycles_of_code():
    assert len(cycles_of_code(FIG)) == 2
    cyc = cycles_of_code("{[]0}")
    assert len(cyc) == 1 and cyc[0].halves == () and len(cyc[0].zeros) == 1


def test_number_count():
    with pytest.raises(NumberCountViolation):
        cycles_of_code("[12]{1}")


def test_validate():
    assert validate_semantics(FIG) == []
    rules = {d.rule for d in validate_semantics("{[]0}{[]0}")}
    assert "P3" in rules
    assert "P1" in {d.rule for d in validate_semantics("{12]0[}[123]{4}")}
    assert not is_valid("{[]0}{[]0}")
    with pytest.raises(SemanticInvalid):
        decode("{[]0}{[]0}")


def test_encode_basepoint():
    g = decode(FIG)
    assert str(encode(g, 0)) == FIG
    with pytest.raises(BasepointNotOnCycle):
        encode(g, 99)


def test_symmetric_code_involution():
    for _, _, c in CODES:
        s = symmetric_code(symmetric_code(c).compact())
        assert canonical_code(s, Mode.ORIENTED_ONLY) == canonical_code(c, Mode.ORIENTED_ONLY)


def test_json_round_trip():
    g = decode(FIG)
    h = DistinguishingGraph.from_json(g.to_json())
    assert h.to_compact()[0] == g.to_compact()[0]


# -- properties over the enumerated family -------------------------------------

readings = st.tuples(st.sampled_from(CODES), st.integers(0, 10**6), st.integers(0, 10**6), st.booleans())


def _reading(code, a, b, rev):
    l = a % len(code)
    n = len(code[l][1])
    return _kernel_py.encode(code, l, b % n if n else 0, rev)[0]


@BIG
@given(readings)
def test_canonical_invariant_under_rereading(r):
    (_, _, code), a, b, rev = r
    other = _reading(code, a, b, rev)
    assert canonical_compact(other, True) == canonical_compact(code, True)
    if not rev:
        assert canonical_compact(other, False) == canonical_compact(code, False)


@BIG
@given(readings, st.integers(0, 10**6), st.integers(0, 10**6))
def test_encode_equal_iff_based_isomorphism(r, x, y):
    (_, _, code), a, b, rev = r
    other = _reading(code, a, b, rev)
    g1 = DistinguishingGraph.from_compact(code)
    g2 = DistinguishingGraph.from_compact(other)
    v1, v2 = x % len(g1.vertex_color), y % len(g2.vertex_color)
    same = encode(g1, v1) == encode(g2, v2)
    assert same == nx_iso(code, other, v1, v2)


@pytest.mark.parametrize("holes,n,code", CODES)
def test_graph_invariants(holes, n, code):
    g = decode(code)
    V, E, F = _vef(g)
    assert V - E + F == 2
    assert len(cycles_of_code(code)) == F
    assert all(len(f["sinks"]) <= 1 for f in g.trace_faces())
    assert len(g.boundary_cycles()) == V
    assert sum(1 for k, _, _ in g.cycles if k == "B") == holes


@pytest.mark.parametrize("holes,n,code", CODES)
def test_canonical_is_least_reading(holes, n, code):
    from morseflow._marked import key
    c = canonical_compact(code, True)
    reads = []
    for l, (_, t) in enumerate(code):
        for p, x in enumerate(t):
            if x != 0:          # separatrix ends and transition marks
                reads += [_kernel_py.encode(code, l, p, r)[0] for r in (False, True)]
    if not reads:
        reads = [code]
    assert c in reads
    assert key(c) == min(key(r) for r in reads)


def test_chiral_flows_exist():
    # some flows differ from their mirror image; both modes agree on the class
    chiral = 0
    for _, _, c in all_codes(7):
        s = symmetric_code(c)
        assert canonical_code(s, Mode.UP_TO_REFLECTION) == canonical_code(c, Mode.UP_TO_REFLECTION)
        chiral += canonical_code(s, Mode.ORIENTED_ONLY) != canonical_code(c, Mode.ORIENTED_ONLY)
    assert chiral > 0
