import json

import pytest

from conftest import all_codes
from morseflow.diagram import (CombinationVector, DistinguishingGraph, NotACycle, SeparatrixDiagram,
                               SurfaceId, diagram_from_compact, distinguishing_graph_of, reverse_flow)

FLOWS = [(h, n, c, diagram_from_compact(c, h)) for h, n, c in all_codes(7)]
IDS = [str(i) for i in range(len(FLOWS))]


def test_surfaces():
    assert SurfaceId.named("disk").holes == 1
    assert SurfaceId.named("cylinder").chi_double == 0
    assert SurfaceId.named("pants").chi_double == -2


@pytest.mark.parametrize("holes,n,code,d", FLOWS, ids=IDS)
def test_well_formed(holes, n, code, d):
    assert d.check() == []
    assert d.n_points == n
    assert d.euler() == 2
    assert not d.has_directed_cycle()
    assert sum(1 for k in d.kinds if k in ("B", "Z", "T+", "T-")) >= 2 * holes


@pytest.mark.parametrize("holes,n,code,d", FLOWS, ids=IDS)
def test_reverse(holes, n, code, d):
    r = reverse_flow(d)
    assert reverse_flow(r) == d
    assert r.check() == []
    assert r.combination() == d.combination().reversed()
    assert distinguishing_graph_of(r).euler() == distinguishing_graph_of(d).euler() == 2


@pytest.mark.parametrize("holes,n,code,d", FLOWS, ids=IDS)
def test_code_round_trip(holes, n, code, d):
    back = diagram_from_compact(d.to_compact(), holes)
    assert back.canonical_form(False) == d.canonical_form(False)
    assert d.mirror().canonical_form(True) == d.canonical_form(True)
    assert distinguishing_graph_of(d).to_compact()[0] == d.to_compact()


def test_forms_distinguish_flows():
    forms = [d.canonical_form(True) for _, _, _, d in FLOWS]
    assert len(set(forms)) == len(forms)


def test_boundary_cycles_and_faces():
    g = DistinguishingGraph.from_compact((("B", (-1, -2, 0)),))
    assert len(g.boundary_cycles()) == 1
    assert len(g.trace_faces()) == 1
    g = DistinguishingGraph.from_compact((("B", (-1, 1, -2, 0)), ("B", (1,))))
    assert len(g.trace_faces()) == 1 and g.euler() == 2


def test_not_a_cycle():
    g = DistinguishingGraph(1, ["SinkWhite"] * 3, [0, 0, 0], [("BoundaryArc", 0, 1), ("BoundaryArc", 1, 2)],
                            [("B", "ccw", (0, 1, 2))], [[0], [1, 2], [3]])
    with pytest.raises(NotACycle):
        g.boundary_cycles()


def test_collapse_admissibility():
    # a saddle-node: the stable separatrix from the source into the saddle
    d = diagram_from_compact((("B", (-1, 1, -2, 0)), ("S", (1,))), 1)
    k = d.kinds
    stable_from_a = [e for e, (t, h, kind) in enumerate(d.edges) if kind == "stable" and k[t] == "A"]
    assert stable_from_a
    # A -> S collapse in a 4-point disk flow
    assert any(d.collapse_is_admissible(e) for e in stable_from_a)


def test_json_export():
    d = FLOWS[5][3]
    data = json.loads(d.to_json())
    assert len(data["points"]) == d.n_points
    assert len(data["trajectories"]) == len(d.edges)
    g = distinguishing_graph_of(d)
    assert DistinguishingGraph.from_json(g.to_json()).to_compact() == g.to_compact()


def test_combination_vector():
    v = CombinationVector(1, 0, 0, 1, 0, 0, 1)
    assert v.N == 3
    assert v.reversed() == CombinationVector(0, 1, 0, 0, 1, 1, 0)
