"""Topological equivalence of Morse flows and of codimension-one flows."""
from __future__ import annotations

from dataclasses import dataclass

from ._select import canonical_search
from .bifurcation import KindMismatch, as_kind, codim1_key
from .code_text import FlowCode, parse_code
from .codec import as_compact
from .diagram import DistinguishingGraph, SeparatrixDiagram


@dataclass(frozen=True)
class Decision:
    equivalent: bool
    # (list, item, reversed) reading of each side that gives the common
    # canonical code; None when not equivalent
    witness: tuple | None = None

    def __bool__(self):
        return self.equivalent


def _compact_of(x):
    if isinstance(x, DistinguishingGraph):
        return x.to_compact()[0]
    if isinstance(x, SeparatrixDiagram):
        return x.to_compact()
    return as_compact(x)


def morse_equivalent(g1, g2) -> Decision:
    """Equivalence of two Morse flows given as graphs, diagrams or codes.

    The map may reverse the surface orientation, in which case every
    boundary cycle is reversed at once.
    """
    c1, c2 = _compact_of(g1), _compact_of(g2)
    h1 = sum(1 for k, _ in c1 if k == "B")
    h2 = sum(1 for k, _ in c2 if k == "B")
    if h1 != h2:
        return Decision(False)
    k1, w1 = canonical_search(c1, True)
    k2, w2 = canonical_search(c2, True)
    if k1 != k2:
        return Decision(False)
    return Decision(True, (w1, w2))


def _kind_of(code: FlowCode):
    if code.prefix is None:
        raise KindMismatch("a codimension-one code needs a kind prefix")
    return code.prefix


def codim1_equivalent(c1, c2) -> Decision:
    """Equivalence of two codimension-one flows given by codes.

    BSN and BDS flows match only with the boundary orientation kept; the
    other kinds also match their mirror images (a code and its symmetric
    code describe the same flow).  A- and B-codes of SN, BSN and BDS are
    compared through the A-code.
    """
    a = parse_code(c1) if isinstance(c1, str) else c1
    b = parse_code(c2) if isinstance(c2, str) else c2
    ka, kb = _kind_of(a), _kind_of(b)
    if ka.base != kb.base or ka.effective_sign != kb.effective_sign:
        raise KindMismatch(f"{ka} vs {kb}")
    if ka.base in ("HS", "HN") and ka.form != kb.form:
        raise KindMismatch(f"{ka} vs {kb}: HS and HN codes of different forms describe different flows")
    k1, k2 = codim1_key(a), codim1_key(b)
    return Decision(k1 == k2, (str(ka), str(kb)) if k1 == k2 else None)


def is_self_inverse(d) -> bool:
    """True when the flow is equivalent to its time reversal."""
    if not isinstance(d, SeparatrixDiagram):
        from .codec import diagram
        d = diagram(d)
    r = d.reverse()
    return canonical_search(d.to_compact(), True)[0] == canonical_search(r.to_compact(), True)[0]


# ---------------------------------------------------------------------------
# explicit search


def find_isomorphism(d1: SeparatrixDiagram, d2: SeparatrixDiagram, reflect: bool = True):
    """A dart bijection d1 -> d2 carrying rotations, point kinds, trajectory
    kinds, marks and boundary sides, or None.  Tries every image of one
    dart, with and without orientation reversal."""
    if (d1.holes, sorted(d1.kinds), len(d1.edges)) != (d2.holes, sorted(d2.kinds), len(d2.edges)):
        return None
    if not d1.edges:
        return {} if sorted(d1.kinds) == sorted(d2.kinds) else None
    nxt1 = _next_maps(d1)
    nxt2 = _next_maps(d2)
    prv2 = {b: a for a, b in nxt2.items()}
    em1 = {i for t, i in d1.marks if t == "e"}
    em2 = {i for t, i in d2.marks if t == "e"}
    vm1 = {i for t, i in d1.marks if t == "v"}
    vm2 = {i for t, i in d2.marks if t == "v"}
    for mir in ((False, True) if reflect else (False,)):
        step2 = prv2 if mir else nxt2
        for b0 in range(2 * len(d2.edges)):
            phi = {0: b0}
            stack = [0]
            ok = True
            while stack and ok:
                a = stack.pop()
                b = phi[a]
                ea, eb = a >> 1, b >> 1
                if (a & 1) != (b & 1) or d1.edges[ea][2] != d2.edges[eb][2]:
                    ok = False
                    break
                va, vb = d1.vertex_of(a), d2.vertex_of(b)
                if d1.kinds[va] != d2.kinds[vb] or (va in vm1) != (vb in vm2) or (ea in em1) != (eb in em2):
                    ok = False
                    break
                if d1.edges[ea][2] == "boundary" and (d1.dart_hole_left(a) != d2.dart_hole_left(b)) != mir:
                    ok = False
                    break
                for x, y in ((a ^ 1, b ^ 1), (nxt1[a], step2[b])):
                    if x in phi:
                        if phi[x] != y:
                            ok = False
                            break
                    else:
                        phi[x] = y
                        stack.append(x)
            if ok and len(phi) == 2 * len(d1.edges) and len(set(phi.values())) == len(phi):
                return phi
    return None


def _next_maps(d):
    nxt = {}
    for r in d.rotation:
        for i, x in enumerate(r):
            nxt[x] = r[(i + 1) % len(r)]
    return nxt


__all__ = ["Decision", "KindMismatch", "codim1_equivalent", "find_isomorphism",
           "is_self_inverse", "morse_equivalent"]
