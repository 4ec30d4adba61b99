"""Embedded-graph model: separatrix diagrams and distinguishing graphs.

Orientation conventions.  Every list of a code is read in the boundary
orientation that keeps the surface on the left.  For a boundary component
that means the outer circle of a planar domain runs counterclockwise and the
inner ones clockwise; for a source circle the walk goes clockwise around the
source.  Rotations are stored counterclockwise.  Faces are traced with the
face on the left: the dart after ``d`` is the counterclockwise predecessor of
the reverse of ``d``.

A dart is ``2*e`` (the end of edge ``e`` at its tail) or ``2*e + 1`` (the end
at its head); the reverse of ``d`` is ``d ^ 1``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from . import _compact as C

SOURCES = {"A", "B"}
SINKS = {"Y", "Z"}
SADDLES = {"S", "T+", "T-"}
BOUNDARY_KINDS = {"B", "Z", "T+", "T-"}
SOURCE_LIKE = {"B", "T+"}
SINK_LIKE = {"Z", "T-"}
_REVERSED_KIND = {"A": "Y", "Y": "A", "B": "Z", "Z": "B", "S": "S", "T+": "T-", "T-": "T+"}
_REVERSED_EDGE = {"stable": "unstable", "unstable": "stable",
                  "boundary": "boundary", "connection": "connection"}


class DiagramError(ValueError):
    pass


class NotACycle(DiagramError):
    pass


class InconsistentRotation(DiagramError):
    pass


@dataclass(frozen=True)
class SurfaceId:
    """Sphere with ``holes`` holes (disk 1, cylinder 2, pants 3)."""

    holes: int

    @property
    def chi_double(self) -> int:
        return 4 - 2 * self.holes

    @property
    def name(self) -> str:
        return {1: "disk", 2: "cylinder", 3: "pants"}.get(self.holes, f"sphere-{self.holes}-holes")

    @classmethod
    def named(cls, name: str) -> "SurfaceId":
        table = {"disk": 1, "d2": 1, "cylinder": 2, "annulus": 2, "pants": 3}
        try:
            return cls(table[name.lower()])
        except KeyError:
            raise ValueError(f"unknown surface {name!r}") from None


DISK, CYLINDER, PANTS = SurfaceId(1), SurfaceId(2), SurfaceId(3)


class CombinationVector(NamedTuple):
    A: int
    B: int
    S: int
    Tp: int
    Tm: int
    Y: int
    Z: int

    @property
    def N(self) -> int:
        return sum(self)

    def reversed(self) -> "CombinationVector":
        return CombinationVector(self.Y, self.Z, self.S, self.Tm, self.Tp, self.A, self.B)


# ---------------------------------------------------------------------------
# separatrix diagram


class SeparatrixDiagram:
    """Full record of a flow: all singular points and trajectories, embedded.

    ``kinds[v]`` is one of A, Y, S, B, Z, T+, T-.  ``edges[e]`` is
    (tail, head, kind) with kind stable, unstable, boundary or connection;
    trajectories run from tail to head.  ``rotation[v]`` lists the darts at
    ``v`` counterclockwise.  ``hole_left[e]`` tells, for a boundary edge,
    whether the hole lies to the left when going from tail to head.
    ``marks`` is a frozenset of ('v', i) / ('e', i) highlights.
    """

    __slots__ = ("holes", "kinds", "edges", "rotation", "hole_left", "marks", "_canon")

    def __init__(self, holes, kinds, edges, rotation, hole_left, marks=frozenset()):
        self.holes = holes
        self.kinds = tuple(kinds)
        self.edges = tuple(tuple(e) for e in edges)
        self.rotation = tuple(tuple(r) for r in rotation)
        self.hole_left = tuple(hole_left)
        self.marks = frozenset(marks)
        self._canon = {}

    # -- basic queries -----------------------------------------------------

    @property
    def surface(self) -> SurfaceId:
        return SurfaceId(self.holes)

    def vertex_of(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def dart_is_out(self, d: int) -> bool:
        return d & 1 == 0

    def combination(self) -> CombinationVector:
        c = {k: 0 for k in ("A", "B", "S", "T+", "T-", "Y", "Z")}
        for k in self.kinds:
            c[k] += 1
        return CombinationVector(c["A"], c["B"], c["S"], c["T+"], c["T-"], c["Y"], c["Z"])

    @property
    def n_points(self) -> int:
        return len(self.kinds)

    def dart_hole_left(self, d: int) -> bool:
        h = self.hole_left[d >> 1]
        return h if d & 1 == 0 else not h

    def with_marks(self, marks) -> "SeparatrixDiagram":
        return SeparatrixDiagram(self.holes, self.kinds, self.edges, self.rotation,
                                 self.hole_left, marks)

    def __repr__(self):
        return f"SeparatrixDiagram(holes={self.holes}, kinds={self.kinds}, edges={self.edges})"

    def __eq__(self, other):
        return (isinstance(other, SeparatrixDiagram) and self.holes == other.holes
                and self.kinds == other.kinds and self.edges == other.edges
                and self.rotation == other.rotation and self.hole_left == other.hole_left
                and self.marks == other.marks)

    def __hash__(self):
        return hash((self.holes, self.kinds, self.edges, self.rotation))

    # -- faces -------------------------------------------------------------

    def faces(self):
        """All faces of the embedded graph (holes included), as dart cycles."""
        pos = {}
        for v, r in enumerate(self.rotation):
            for i, d in enumerate(r):
                pos[d] = (v, i)
        ndarts = 2 * len(self.edges)
        if len(pos) != ndarts:
            raise InconsistentRotation("rotation does not list every dart exactly once")
        seen = [False] * ndarts
        out = []
        for d0 in range(ndarts):
            if seen[d0]:
                continue
            cyc = []
            d = d0
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                v, i = pos[d ^ 1]
                r = self.rotation[v]
                d = r[(i - 1) % len(r)]
            if d != d0:
                raise InconsistentRotation("face traversal does not close")
            out.append(cyc)
        return out

    def is_hole_face(self, face) -> bool:
        return all(self.edges[d >> 1][2] == "boundary" and self.dart_hole_left(d) for d in face)

    def cells(self):
        """Faces that are not holes."""
        return [f for f in self.faces() if not self.is_hole_face(f)]

    def euler(self) -> int:
        isolated = sum(1 for r in self.rotation if not r)
        return len(self.kinds) - len(self.edges) + len(self.faces()) + isolated

    # -- invariants --------------------------------------------------------

    def check(self) -> list:
        """Structural problems as strings; [] for a well-formed Morse diagram
        (a single connection edge is allowed)."""
        errs = []
        indeg = [[0, 0, 0, 0] for _ in self.kinds]    # stable, unstable, boundary, connection
        outdeg = [[0, 0, 0, 0] for _ in self.kinds]
        col = {"stable": 0, "unstable": 1, "boundary": 2, "connection": 3}
        for t, h, k in self.edges:
            outdeg[t][col[k]] += 1
            indeg[h][col[k]] += 1
        want_in = {"A": (0, 0, 0), "Y": (0, None, 0), "S": (2, 0, 0), "B": (0, 0, 0),
                   "Z": (0, None, 2), "T+": (1, 0, 0), "T-": (0, 0, 2)}
        want_out = {"A": (None, 0, 0), "Y": (0, 0, 0), "S": (0, 2, 0), "B": (None, 0, 2),
                    "Z": (0, 0, 0), "T+": (0, 0, 2), "T-": (0, 1, 0)}
        nconn = sum(1 for e in self.edges if e[2] == "connection")
        for v, k in enumerate(self.kinds):
            i, o = indeg[v], outdeg[v]
            if nconn:
                # a connection replaces one stable end and one unstable end
                i = [i[0] + i[3], i[1], i[2], 0]
                o = [o[0], o[1] + o[3], o[2], 0]
            for got, want, what in ((i, want_in[k], "in"), (o, want_out[k], "out")):
                for c in range(3):
                    if want[c] is not None and got[c] != want[c]:
                        errs.append(f"point {v} ({k}) has {got[c]} {what}going "
                                    f"{('stable', 'unstable', 'boundary')[c]} ends, expected {want[c]}")
        if nconn > 1:
            errs.append("more than one saddle connection")
        if self.has_directed_cycle():
            errs.append("directed cycle of trajectories")
        for v, r in enumerate(self.rotation):
            if set(self.vertex_of(d) for d in r) - {v}:
                errs.append(f"rotation at {v} lists foreign darts")
        try:
            F = self.faces()
        except InconsistentRotation as e:
            return errs + [str(e)]
        if len(self.kinds) - len(self.edges) + len(F) != 2:
            errs.append("Euler characteristic of the capped surface is not 2")
        holes = [f for f in F if self.is_hole_face(f)]
        if len(holes) != self.holes:
            errs.append(f"{len(holes)} hole faces, expected {self.holes}")
        if not nconn:
            for f in F:
                if f in holes:
                    continue
                ks = [self.kinds[self.vertex_of(d)] for d in f]
                if sum(1 for k in ks if k in SINKS) != 1 or sum(1 for k in ks if k in SOURCES) != 1:
                    errs.append("cell without exactly one source and one sink")
        return errs

    def has_directed_cycle(self, edges=None) -> bool:
        edges = self.edges if edges is None else edges
        return has_directed_cycle(len(self.kinds), [(t, h) for t, h, _ in edges])

    # -- transformations ---------------------------------------------------

    def reverse(self) -> "SeparatrixDiagram":
        """Time reversal: same embedding, every trajectory flipped."""
        kinds = [_REVERSED_KIND[k] for k in self.kinds]
        edges = [(h, t, _REVERSED_EDGE[k]) for t, h, k in self.edges]
        rotation = [[d ^ 1 for d in r] for r in self.rotation]
        hole_left = [(not x) if x is not None else None for x in self.hole_left]
        return SeparatrixDiagram(self.holes, kinds, edges, rotation, hole_left, self.marks)

    def mirror(self) -> "SeparatrixDiagram":
        """Orientation reversal of the surface."""
        rotation = [list(reversed(r)) for r in self.rotation]
        hole_left = [(not x) if x is not None else None for x in self.hole_left]
        return SeparatrixDiagram(self.holes, self.kinds, self.edges, rotation, hole_left, self.marks)

    def contract(self, e: int):
        """Directed edge list with edge ``e`` collapsed to a point.

        Returns (n_vertices, edges) with the merged vertex renamed to the
        tail of ``e``; used for the no-loop / no-contour admissibility test.
        """
        t0, h0, _ = self.edges[e]
        out = []
        for i, (t, h, k) in enumerate(self.edges):
            if i == e:
                continue
            t = t0 if t == h0 else t
            h = t0 if h == h0 else h
            out.append((t, h, k))
        return out

    def collapse_is_admissible(self, e: int) -> bool:
        """After collapsing ``e`` no trajectory may become a loop and no
        oriented closed contour may appear."""
        edges = self.contract(e)
        if any(t == h for t, h, _ in edges):
            return False
        return not has_directed_cycle(len(self.kinds), [(t, h) for t, h, _ in edges])

    # -- boundary ----------------------------------------------------------

    def forward_dart(self, v: int):
        """Boundary dart at ``v`` pointing along the list orientation."""
        for d in self.rotation[v]:
            if self.edges[d >> 1][2] == "boundary" and not self.dart_hole_left(d):
                return d
        return None

    def backward_dart(self, v: int):
        for d in self.rotation[v]:
            if self.edges[d >> 1][2] == "boundary" and self.dart_hole_left(d):
                return d
        return None

    def boundary_components(self):
        """Cyclic point sequences of every boundary component, list-oriented."""
        seen = set()
        comps = []
        for v, k in enumerate(self.kinds):
            if k not in BOUNDARY_KINDS or v in seen:
                continue
            comp = []
            w = v
            while w not in seen:
                seen.add(w)
                comp.append(w)
                d = self.forward_dart(w)
                if d is None:
                    raise NotACycle(f"boundary point {w} has no forward edge")
                w = self.vertex_of(d ^ 1)
            if w != v:
                raise NotACycle("boundary walk does not close")
            comps.append(comp)
        return comps

    # -- codes -------------------------------------------------------------

    def to_compact(self, starts=None, positions=False, numbers=None):
        """A compact code of the diagram (not canonical).

        ``starts`` optionally fixes the first point of each boundary
        component.  Saddles (S and T+) are numbered in point order unless
        ``numbers`` maps a vertex to its number; a T- vertex listed in
        ``numbers`` is written explicitly at its place on the boundary.
        With ``positions`` also returns a map from diagram elements to code
        positions: ('e', edge) for stable edges at their source end,
        ('v', vertex) for boundary points ((list, '[' pos, ']' pos) for B),
        and ('gap', T- vertex) -> (list, item index the T- follows).
        Saddle connections never appear at a source, so the lower end of a
        connection is listed once.
        """
        number = dict(numbers or {})
        nxt = max(number.values(), default=0) + 1
        for v, k in enumerate(self.kinds):
            if k in ("S", "T+") and v not in number:
                number[v] = nxt
                nxt += 1
        comps = self.boundary_components()
        if starts:
            fixed = []
            for comp in comps:
                s = next((x for x in starts if x in comp), None)
                if s is not None:
                    i = comp.index(s)
                    comp = comp[i:] + comp[:i]
                fixed.append(comp)
            comps = fixed
        pos = {}
        lists = []
        for comp in comps:
            l = len(lists)
            items = []
            for v in comp:
                k = self.kinds[v]
                if k == "B":
                    p0 = len(items)
                    items.append(C.OPEN)
                    for d in self._region(v):
                        pos[("e", d >> 1)] = (l, len(items))
                        items.append(number[self.vertex_of(d ^ 1)])
                    pos[("v", v)] = (l, p0, len(items))
                    items.append(C.CLOSE)
                elif k == "T+":
                    pos[("v", v)] = (l, len(items))
                    items.append(number[v])
                elif k == "Z":
                    pos[("v", v)] = (l, len(items))
                    items.append(0)
                elif k == "T-":
                    if v in number:
                        pos[("v", v)] = (l, len(items))
                        items.append(number[v])
                    else:
                        pos[("gap", v)] = (l, len(items) - 1)
            if items:
                for key, val in list(pos.items()):
                    if key[0] == "gap" and val[0] == l and val[1] < 0:
                        pos[key] = (l, len(items) - 1)
            lists.append(("B", tuple(items)))
        for v, k in enumerate(self.kinds):
            if k == "A":
                l = len(lists)
                items = []
                for d in reversed(self.rotation[v]):
                    pos[("e", d >> 1)] = (l, len(items))
                    items.append(number[self.vertex_of(d ^ 1)])
                pos[("v", v)] = (l,)
                lists.append(("S", tuple(items)))
        code = tuple(lists)
        return (code, pos) if positions else code

    def _region(self, v):
        """Stable darts of boundary source ``v`` in list order."""
        r = self.rotation[v]
        f = self.forward_dart(v)
        i = r.index(f)
        k = len(r)
        ccw = [r[(i + j) % k] for j in range(1, k)]
        return [d for d in reversed(ccw) if self.edges[d >> 1][2] == "stable"]

    # -- canonical form ----------------------------------------------------

    def canonical_form(self, reflect: bool = True):
        """Complete invariant of the marked embedded diagram.

        Minimum over start darts and (with ``reflect``) both orientations of
        a breadth-first traversal string.  Two diagrams have equal forms iff
        there is a kind- and mark-preserving homeomorphism between them
        (orientation-preserving unless ``reflect``).
        """
        if reflect in self._canon:
            return self._canon[reflect]
        best = None
        ndarts = 2 * len(self.edges)
        for d0 in range(ndarts):
            for mir in ((False, True) if reflect else (False,)):
                s = self._traverse(d0, mir, best)
                if s is not None and (best is None or s < best):
                    best = s
        if best is None:      # no edges at all
            best = tuple(sorted(_VCODE[k] for k in self.kinds))
        best = (self.holes,) + tuple(best)
        self._canon[reflect] = best
        return best

    def _traverse(self, d0, mir, bound):
        label = {}
        v0 = self.vertex_of(d0)
        label[v0] = 0
        queue = deque([(v0, d0)])
        out = []
        tight = bound is not None
        emarks = {i for t, i in self.marks if t == "e"}
        vmarks = {i for t, i in self.marks if t == "v"}
        pos = self._dart_pos()
        while queue:
            v, entry = queue.popleft()
            r = self.rotation[v]
            k = len(r)
            i = pos[entry]
            seq = [_VCODE[self.kinds[v]] + (100 if v in vmarks else 0), k]
            for j in range(k):
                d = r[(i - j) % k] if mir else r[(i + j) % k]
                e = d >> 1
                t, h, kind = self.edges[e]
                w = h if d & 1 == 0 else t
                if w not in label:
                    label[w] = len(label)
                    queue.append((w, d ^ 1))
                hl = 0
                if kind == "boundary":
                    hl = 1 + (self.dart_hole_left(d) != mir)
                seq.append(_ECODE[kind] * 8 + (d & 1) * 4 + hl + (64 if e in emarks else 0))
                seq.append(label[w])
            for x in seq:
                if tight:
                    n = len(out)
                    if n >= len(bound) or x > bound[n]:
                        return None
                    if x < bound[n]:
                        tight = False
                out.append(x)
        if len(label) != len(self.kinds):
            # disconnected diagrams never occur for valid flows; keep the
            # form complete anyway by appending the untouched part
            out.append(-1)
            out.extend(sorted(_VCODE[self.kinds[v]] for v in range(len(self.kinds)) if v not in label))
        return out

    def _dart_pos(self):
        pos = {}
        for r in self.rotation:
            for i, d in enumerate(r):
                pos[d] = i
        return pos

    def automorphism_orbits(self, elements, reflect=True):
        """Group ``elements`` (('v', i) or ('e', i)) into orbits of the
        diagram's symmetry group."""
        groups = {}
        for el in elements:
            key = self.with_marks(self.marks | {el}).canonical_form(reflect)
            groups.setdefault(key, []).append(el)
        return list(groups.values())

    # -- export ------------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "surface": {"holes": self.holes},
            "points": [{"id": v, "kind": k} for v, k in enumerate(self.kinds)],
            "trajectories": [{"id": e, "kind": k, "from": t, "to": h,
                              **({"holeLeft": self.hole_left[e]} if k == "boundary" else {})}
                             for e, (t, h, k) in enumerate(self.edges)],
            "rotation": {str(v): list(r) for v, r in enumerate(self.rotation)},
            "marks": sorted([list(m) for m in self.marks]),
        }, sort_keys=False)


_VCODE = {"A": 1, "B": 2, "S": 3, "T+": 4, "T-": 5, "Y": 6, "Z": 7}
_ECODE = {"stable": 1, "unstable": 2, "boundary": 3, "connection": 4}


def has_directed_cycle(n, arcs) -> bool:
    adj = [[] for _ in range(n)]
    indeg = [0] * n
    for t, h in arcs:
        adj[t].append(h)
        indeg[h] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen != n


def diagram_from_compact(code, holes: int | None = None, positions: bool = False):
    """Full separatrix diagram of a semantically valid compact code.

    With ``positions`` also returns a map from code items (l, p) to diagram
    elements: ('e', stable edge) for a number in a source region, ('v', v)
    for '[' / ']' (the boundary source), T+ and 0 items, and
    ('gap', l, j) -> ('v', T-) for the b-saddle after item j.
    """
    if holes is None:
        holes = sum(1 for k, _ in code if k == "B")
    mk = C.masks(code)
    occ = C.occurrences(code)
    kinds = []
    edges = []
    hole_left = []

    def add_point(k):
        kinds.append(k)
        return len(kinds) - 1

    def add_edge(t, h, k, hl=None):
        edges.append((t, h, k))
        hole_left.append(hl)
        return len(edges) - 1

    bpoints = {}           # list index -> [(kind, pos, vertex)]
    b_at = {}              # (l, pos) of '[' -> vertex
    tplus_at = {}          # (l, pos) -> vertex
    zero_at = {}
    tminus_at = {}         # (l, j) -> vertex
    for l, (k, t) in enumerate(code):
        if k != "B":
            continue
        pts = []
        for kind, j in C.boundary_points(t, mk[l]):
            v = add_point(kind)
            pts.append((kind, j, v))
            {"B": b_at, "T+": tplus_at, "Z": zero_at, "T-": tminus_at}[kind][(l, j)] = v
        bpoints[l] = pts
    a_of = {}
    for l, (k, t) in enumerate(code):
        if k == "S":
            a_of[l] = add_point("A")
    s_of = {}
    for x in sorted(occ):
        v = occ[x]
        if len(v) != 2:
            raise DiagramError(f"number {x} occurs {len(v)} times")
        if all(mk[l][p] for l, p in v):
            s_of[x] = add_point("S")

    # boundary edges, list-oriented: surface on the left, hole on the right
    fwd, bwd = {}, {}
    for l, pts in bpoints.items():
        m = len(pts)
        for i in range(m):
            (k1, _, v1), (k2, _, v2) = pts[i], pts[(i + 1) % m]
            if k1 in SOURCE_LIKE and k2 in SINK_LIKE:
                e = add_edge(v1, v2, "boundary", False)
                fwd[v1], bwd[v2] = 2 * e, 2 * e + 1
            elif k1 in SINK_LIKE and k2 in SOURCE_LIKE:
                e = add_edge(v2, v1, "boundary", True)
                fwd[v1], bwd[v2] = 2 * e + 1, 2 * e
            else:
                raise DiagramError(f"boundary points {k1} and {k2} are adjacent")

    # stable separatrices, one per number occurrence in a source region
    def owner(l, p):
        if code[l][0] == "S":
            return a_of[l]
        t = code[l][1]
        n = len(t)
        j = p
        while t[j] != C.OPEN:
            j = (j - 1) % n
        return b_at[(l, j)]

    stable_dart = {}        # (l, p) -> (dart at source, dart at saddle)
    for x, v in occ.items():
        for l, p in v:
            if not mk[l][p]:
                continue
            if x in s_of:
                sad = s_of[x]
            else:
                other = v[1] if v[0] == (l, p) else v[0]
                sad = tplus_at.get(other)
                if sad is None:
                    raise DiagramError(f"number {x} joins two boundary positions")
            e = add_edge(owner(l, p), sad, "stable")
            stable_dart[(l, p)] = (2 * e, 2 * e + 1)
    for x, v in occ.items():
        if not any(mk[l][p] for l, p in v):
            raise DiagramError(f"number {x} lies in no source list")

    # sinks and unstable separatrices from the face walks
    unstable_side = {}      # (x, occurrence jumped from) -> tail dart at S
    tminus_dart = {}
    sink_rot = {}
    for f in C.face_walks(code, with_events=True):
        zs = [ev for ev in f["events"] if ev[0] == "Z"]
        if len(zs) > 1:
            raise DiagramError("a cell holds more than one boundary sink")
        ev = f["events"]
        if zs:
            w = zero_at[zs[0][1]]
            i = ev.index(zs[0])
            ordered = ev[i + 1:] + ev[:i]
        else:
            w = add_point("Y")
            ordered = ev
        heads = []
        for e_ in ordered:
            if e_[0] == "S":
                e = add_edge(s_of[e_[1]], w, "unstable")
                unstable_side[(e_[1], e_[2])] = 2 * e
            else:
                e = add_edge(tminus_at[e_[1]], w, "unstable")
                tminus_dart[tminus_at[e_[1]]] = 2 * e
            heads.append(2 * e + 1)
        sink_rot[w] = heads

    rotation = [[] for _ in kinds]
    for l, pts in bpoints.items():
        t = code[l][1]
        for kind, j, v in pts:
            mid = []
            if kind == "B":
                n = len(t)
                region = []
                q = (j + 1) % n
                while t[q] != C.CLOSE:
                    if t[q] > 0:
                        region.append(stable_dart[(l, q)][0])
                    q = (q + 1) % n
                mid = list(reversed(region))
            elif kind == "T+":
                x = t[j]
                other = [o for o in occ[x] if o != (l, j)][0]
                mid = [stable_dart[other][1]]
            elif kind == "T-":
                mid = [tminus_dart[v]]
            elif kind == "Z":
                mid = sink_rot[v]
            rotation[v] = [fwd[v]] + mid + [bwd[v]]
    for l, a in a_of.items():
        rotation[a] = [stable_dart[(l, p)][0] for p in reversed(range(len(code[l][1])))]
    for x, s in s_of.items():
        o1, o2 = occ[x]
        rotation[s] = [stable_dart[o2][1], unstable_side[(x, o1)],
                       stable_dart[o1][1], unstable_side[(x, o2)]]
    for w, heads in sink_rot.items():
        if kinds[w] == "Y":
            rotation[w] = heads
    d = SeparatrixDiagram(holes, kinds, edges, rotation, hole_left)
    if not positions:
        return d
    where = {}
    for (l, p), (dt, _) in stable_dart.items():
        where[(l, p)] = ("e", dt >> 1)
    for (l, j), v in b_at.items():
        where[(l, j)] = ("v", v)
        t = code[l][1]
        q = j
        while t[q] != C.CLOSE:
            q = (q + 1) % len(t)
        where[(l, q)] = ("v", v)
    for table in (tplus_at, zero_at):
        for lp, v in table.items():
            where[lp] = ("v", v)
    for (l, j), v in tminus_at.items():
        where[("gap", l, j)] = ("v", v)
    return d, where


def reverse_flow(d: SeparatrixDiagram) -> SeparatrixDiagram:
    return d.reverse()


# ---------------------------------------------------------------------------
# distinguishing graph

VERTEX_COLORS = ("SinkWhite", "SaddleEnd", "TransitionMark")
EDGE_COLORS = ("Separatrix", "NeighborhoodArc", "BoundaryArc")


class DistinguishingGraph:
    """Cycles for lists, saddle-end / sink / transition-mark vertices,
    separatrix edges joining equal numbers, and a rotation system.

    ``vertex_token[v]`` keeps the code item a vertex came from so that the
    graph can be read back into a code (numbers are relabelled on encode).
    Edge ends are numbered ``2*e`` (first end) and ``2*e + 1``.
    """

    def __init__(self, holes, vertex_color, vertex_token, edges, cycles, rotation, marks=None):
        self.holes = holes
        self.vertex_color = tuple(vertex_color)
        self.vertex_token = tuple(vertex_token)
        self.edges = tuple(tuple(e) for e in edges)          # (color, u, v)
        self.cycles = tuple(cycles)                          # (kind, orientation, vertex seq)
        self.rotation = tuple(tuple(r) for r in rotation)
        self.marks = dict(marks or {})

    @classmethod
    def from_compact(cls, code, holes=None, marks=None):
        if holes is None:
            holes = sum(1 for k, _ in code if k == "B")
        mk = C.masks(code)
        vcol, vtok, edges, cycles = [], [], [], []
        where = {}
        for l, (k, t) in enumerate(code):
            seq = []
            for p, x in enumerate(t):
                v = len(vcol)
                vcol.append("SinkWhite" if x == 0 else "TransitionMark" if x < 0 else "SaddleEnd")
                vtok.append(x)
                where[(l, p)] = v
                seq.append(v)
            orient = "ccw" if (k == "B" and l == 0) else "cw"
            cycles.append((k, orient, tuple(seq)))
        rot = [[None, None, None] for _ in vcol]
        # arcs: between item p and p+1 of each list
        for l, (k, t) in enumerate(code):
            n = len(t)
            if n == 0:
                continue
            inside = [False] * n
            if k == "S":
                inside = [True] * n
            else:
                # the arc after item p is a neighbourhood arc iff it runs inside [ ... ]
                state = False
                if C.OPEN in t:
                    s0 = t.index(C.OPEN)
                    for j in range(n):
                        q = (s0 + j) % n
                        if t[q] == C.OPEN:
                            state = True
                        elif t[q] == C.CLOSE:
                            state = False
                        inside[q] = state
            for p in range(n):
                u, w = where[(l, p)], where[(l, (p + 1) % n)]
                e = len(edges)
                edges.append(("NeighborhoodArc" if inside[p] else "BoundaryArc", u, w))
                rot[u][0] = 2 * e            # out-arc
                rot[w][2] = 2 * e + 1        # in-arc
        occ = C.occurrences(code)
        for x in sorted(occ):
            v = occ[x]
            if len(v) != 2:
                continue
            e = len(edges)
            edges.append(("Separatrix", where[v[0]], where[v[1]]))
            rot[where[v[0]]][1] = 2 * e
            rot[where[v[1]]][1] = 2 * e + 1
        rotation = [[d for d in r if d is not None] for r in rot]
        return cls(holes, vcol, vtok, edges, cycles, rotation, marks)

    # -- structure ---------------------------------------------------------

    def end_vertex(self, d):
        _, u, v = self.edges[d >> 1]
        return u if d & 1 == 0 else v

    def boundary_cycles(self):
        """Components left after deleting separatrix edges, as vertex cycles."""
        adj = {v: [] for v in range(len(self.vertex_color))}
        for e, (col, u, v) in enumerate(self.edges):
            if col != "Separatrix":
                adj[u].append((e, v))
                adj[v].append((e, u))
        seen = set()
        comps = []
        for v0 in range(len(self.vertex_color)):
            if v0 in seen:
                continue
            if len(adj[v0]) != 2:
                raise NotACycle(f"vertex {v0} has {len(adj[v0])} cycle edges")
            comp = [v0]
            seen.add(v0)
            prev_e, cur = adj[v0][0]
            while cur != v0:
                if len(adj[cur]) != 2:
                    raise NotACycle(f"vertex {cur} has {len(adj[cur])} cycle edges")
                comp.append(cur)
                seen.add(cur)
                (e1, w1), (e2, w2) = adj[cur]
                prev_e, cur = (e2, w2) if e1 == prev_e else (e1, w1)
            comps.append(comp)
        return comps

    def trace_faces(self):
        """Faces of the embedded graph lying on the surface side.

        Returns a list of dicts with the dart cycle and the sink vertices met.
        The faces inside source circles and holes are dropped.
        """
        pos = {}
        for v, r in enumerate(self.rotation):
            for i, d in enumerate(r):
                pos[d] = (v, i)
        nd = 2 * len(self.edges)
        if len(pos) != nd:
            raise InconsistentRotation("rotation does not list every edge end once")
        seen = [False] * nd
        faces = []
        for d0 in range(nd):
            if seen[d0]:
                continue
            cyc, d = [], d0
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                v, i = pos[d ^ 1]
                r = self.rotation[v]
                d = r[(i - 1) % len(r)]
            if d != d0:
                raise InconsistentRotation("face traversal does not close")
            if all(self.edges[x >> 1][0] != "Separatrix" and x & 1 for x in cyc):
                continue        # walks a cycle against its orientation: hole or source disk
            sinks = [self.end_vertex(x ^ 1) for x in cyc
                     if self.edges[x >> 1][0] != "Separatrix" and x & 1 == 0
                     and self.vertex_color[self.end_vertex(x ^ 1)] == "SinkWhite"]
            faces.append({"darts": cyc, "sinks": sinks})
        # a cycle without any vertex contributes one face on its surface side
        for k, _, seq in self.cycles:
            if not seq:
                faces.append({"darts": [], "sinks": []})
        return faces

    def euler(self):
        V = len(self.cycles)
        E = sum(1 for e in self.edges if e[0] == "Separatrix")
        return V - E + len(self.trace_faces())

    def to_compact(self):
        """Read the cycles back as a compact code and a vertex -> (list, item) map."""
        sep_label = {}
        for e, (col, u, v) in enumerate(self.edges):
            if col == "Separatrix":
                sep_label[u] = sep_label[v] = len([1 for x in self.edges[:e] if x[0] == "Separatrix"]) + 1
        code, where = [], {}
        for l, (k, _, seq) in enumerate(self.cycles):
            items = []
            for p, v in enumerate(seq):
                tok = self.vertex_token[v]
                items.append(sep_label.get(v, tok) if tok > 0 else tok)
                where[v] = (l, p)
            code.append((k, tuple(items)))
        return tuple(code), where

    def to_json(self) -> str:
        doc = {
            "surface": {"holes": self.holes},
            "vertices": [{"id": v, "color": c} for v, c in enumerate(self.vertex_color)],
            "edges": [{"id": e, "color": col, "ends": [u, v]} for e, (col, u, v) in enumerate(self.edges)],
            "cycles": [{"orientation": o, "sequence": list(seq)} for _, o, seq in self.cycles],
            "rotation": {str(v): list(r) for v, r in enumerate(self.rotation)},
            "marks": self.marks,
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "DistinguishingGraph":
        doc = json.loads(text)
        vcol = [v["color"] for v in doc["vertices"]]
        edges = [(e["color"], e["ends"][0], e["ends"][1]) for e in doc["edges"]]
        rotation = [doc["rotation"][str(v)] for v in range(len(vcol))]
        # tokens are not part of the exchange format; rebuild them from colors
        # and the neighbourhood-arc pattern along each cycle
        vtok = [0 if c == "SinkWhite" else 1 if c == "SaddleEnd" else None for c in vcol]
        cycles = []
        arc = {}
        for col, u, v in edges:
            if col != "Separatrix":
                arc[u] = col
        for cyc in doc["cycles"]:
            seq = tuple(cyc["sequence"])
            kind = "S" if all(arc.get(v) == "NeighborhoodArc" for v in seq) and seq and \
                all(vcol[v] == "SaddleEnd" for v in seq) else "B"
            for i, v in enumerate(seq):
                if vtok[v] is None:
                    vtok[v] = -1 if arc.get(v) == "NeighborhoodArc" else -2
            cycles.append((kind, cyc["orientation"], seq))
        return cls(doc["surface"]["holes"], vcol, vtok, edges, cycles, rotation, doc.get("marks"))


def distinguishing_graph_of(d: SeparatrixDiagram) -> DistinguishingGraph:
    """Drop sinks and unstable separatrices, contract internal saddles and
    insert source-neighbourhood circles; b-saddles survive implicitly as the
    gaps between consecutive source-like boundary items."""
    return DistinguishingGraph.from_compact(d.to_compact(), d.holes)
