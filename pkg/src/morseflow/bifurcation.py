"""Codimension-one codes: A-codes, B-codes, conversions and connections.

Conventions used throughout.

A mark is ('e', edge) or ('v', vertex) on a SeparatrixDiagram.  A-codes
(and the B-codes of SN, BSN and BDS) describe the flow before the
bifurcation with the collapsing trajectory marked; HS and HN B-codes are
marked Morse codes of the flow after it; connection codes describe the
moment of bifurcation.  Minus kinds are the plus codes of the reversed
flow with the sign flipped.

Start of reading (the first token of the first list):
  SN    the marked stable separatrix in its source list
  BSN   the '[' of the boundary source, read so that the b-saddle is last
  BDS   the a-saddle, read so that the b-saddle comes right after it
  HS    A: the marked separatrix inside its boundary region
        B: the marked a-saddle
  HN    A: the a-saddle the marked separatrix enters
        B: the '[' of the marked boundary source
SN, HS and HN take the least of the two readings; BSN and BDS have their
reading fixed by the flow direction along the boundary.
"""
from __future__ import annotations

from . import _compact as C
from . import _marked as M
from .code_text import BifurcationKind, FlowCode, parse_code
from .diagram import SeparatrixDiagram, diagram_from_compact

LP, RP, BLANK = M.LPAREN, M.RPAREN, M.BLANK


class IllegalMark(ValueError):
    pass


class NotConvertibleKind(ValueError):
    pass


class NoConnection(ValueError):
    pass


class MultipleConnections(ValueError):
    pass


class KindMismatch(ValueError):
    pass


LOCAL_BASES = ("SN", "BSN", "HS", "HN", "BDS")
CONNECTION_BASES = ("SC", "HSC", "BSC")
ORIENTED_BASES = ("BSN", "BDS")
CONNECTION_KINDS = {("S", "S"): "SC", ("S", "T+"): "HSC+", ("T-", "S"): "HSC-", ("T-", "T+"): "BSC"}


def as_kind(kind) -> BifurcationKind:
    if isinstance(kind, BifurcationKind):
        return kind
    return BifurcationKind.parse(str(kind))


def _code(code) -> FlowCode:
    return parse_code(code) if isinstance(code, str) else code


def _lists(code: FlowCode):
    return tuple((l.kind.value, tuple(l.items)) for l in code.lists)


def _flip(kind: BifurcationKind) -> BifurcationKind:
    s = kind.effective_sign
    return kind.with_sign("-" if s == "+" else "+")


# ---------------------------------------------------------------------------
# marks


def _comp_size(d: SeparatrixDiagram, v: int) -> int:
    for comp in d.boundary_components():
        if v in comp:
            return len(comp)
    return 0


def check_mark(d: SeparatrixDiagram, mark, kind) -> None:
    """Raise IllegalMark unless ``mark`` is legal for a plus (or BDS) kind."""
    kind = as_kind(kind)
    base = kind.base
    t, i = mark
    if base in ("SN", "BSN", "BDS") or (base in ("HS", "HN") and kind.form == "A"):
        if t != "e" or not 0 <= i < len(d.edges):
            raise IllegalMark(f"{kind} marks a trajectory")
        a, b, ek = d.edges[i]
        ka, kb = d.kinds[a], d.kinds[b]
        want = {"SN": ("stable", {"A"}, {"S"}), "HS": ("stable", {"B"}, {"S"}),
                "HN": ("stable", {"A"}, {"T+"}), "BSN": ("boundary", {"B"}, {"T-"}),
                "BDS": ("boundary", {"T+"}, {"T-"})}[base]
        if ek != want[0] or ka not in want[1] or kb not in want[2]:
            raise IllegalMark(f"{kind} needs a {want[0]} trajectory "
                              f"{'/'.join(want[1])} -> {'/'.join(want[2])}, got {ek} {ka} -> {kb}")
        if base in ("BSN", "BDS") and _comp_size(d, a) < 4:
            raise IllegalMark(f"{kind}: the boundary component has fewer than 4 singular points")
        if base in ("SN", "BSN", "BDS") and not d.collapse_is_admissible(i):
            raise IllegalMark(f"{kind}: collapsing the trajectory makes a loop or a closed contour")
        return
    if base in ("HS", "HN"):
        want = "T+" if base == "HS" else "B"
        if t != "v" or not 0 <= i < len(d.kinds) or d.kinds[i] != want:
            raise IllegalMark(f"{kind} marks a {want} point")
        return
    raise IllegalMark(f"{kind} takes no mark")


def legal_marks(d: SeparatrixDiagram, kind):
    kind = as_kind(kind)
    if kind.base in ("HS", "HN") and kind.form == "B":
        cands = [("v", v) for v in range(len(d.kinds))]
    else:
        cands = [("e", e) for e in range(len(d.edges))]
    out = []
    for m in cands:
        try:
            check_mark(d, m, kind)
        except IllegalMark:
            continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# A-codes and B-codes


def _edge_between(d, u, v, kind="boundary"):
    for e, (a, b, k) in enumerate(d.edges):
        if k == kind and {a, b} == {u, v}:
            return e
    return None


def _start_of(d, mark, kind):
    """(code, candidate starts) for the plain reading of a marked diagram."""
    code, pos = d.to_compact(positions=True)
    base = kind.base
    t, i = mark
    if base in ("SN", "HS") and kind.form == "A" or base == "SN":
        l, p = pos[("e", i)]
        return code, [(l, p, False), (l, p, True)]
    if base == "HN" and kind.form == "A":
        l, p = pos[("v", d.edges[i][1])]
        return code, [(l, p, False), (l, p, True)]
    if base == "HS":
        l, p = pos[("v", i)]
        return code, [(l, p, False), (l, p, True)]
    if base == "HN":
        l, o, c = pos[("v", i)]
        return code, [(l, o, False), (l, c, True)]
    a, b, _ = d.edges[i]
    if base == "BSN":
        l, o, c = pos[("v", a)]
        _, j = pos[("gap", b)]
        n = len(code[l][1])
        return code, [(l, o, False)] if j == (o - 1) % n else [(l, c, True)]
    if base == "BDS":
        l, q = pos[("v", a)]
        _, j = pos[("gap", b)]
        return code, [(l, q, False)] if j == q else [(l, q, True)]
    raise IllegalMark(f"no reading rule for {kind}")


def _pick(starts, orientation):
    """Keep the readings allowed by ``orientation``: None keeps both (the
    least one wins), 'AsStored' keeps the forward one, 'Reversed' the other."""
    if orientation is None or len(starts) == 1:
        return starts
    rev = str(getattr(orientation, "value", orientation)) == "Reversed"
    return [s for s in starts if s[2] == rev]


def make_a_code(d: SeparatrixDiagram, mark, kind, orientation=None) -> FlowCode:
    """A-code of the flow before the bifurcation with ``mark`` collapsing."""
    kind = as_kind(kind).with_form("A")
    if kind.base not in LOCAL_BASES:
        raise IllegalMark(f"{kind.base} has no A-code")
    if kind.effective_sign == "-":
        return minus_code_via_reversal(d, mark, kind, orientation)
    check_mark(d, mark, kind)
    code, starts = _start_of(d, mark, kind)
    out, _ = M.best(code, _pick(starts, orientation))
    return FlowCode.from_compact(out, kind)


def make_b_code(d: SeparatrixDiagram, mark, kind, orientation=None) -> FlowCode:
    """B-code.  For SN, BSN and BDS ``d`` and ``mark`` are the flow before the
    bifurcation and the collapsing trajectory; for HS and HN they are the
    flow after it and the a-saddle (HS) or boundary source (HN) that
    appeared."""
    kind = as_kind(kind).with_form("B")
    if kind.base not in LOCAL_BASES:
        raise IllegalMark(f"{kind.base} has no B-code")
    if kind.effective_sign == "-":
        return minus_code_via_reversal(d, mark, kind, orientation)
    if kind.base in ("SN", "BSN", "BDS"):
        return a_to_b(make_a_code(d, mark, kind.with_form("A"), orientation), orientation)
    check_mark(d, mark, kind)
    code, starts = _start_of(d, mark, kind)
    out, _ = M.best(code, _pick(starts, orientation))
    return FlowCode.from_compact(out, kind)


def minus_code_via_reversal(d: SeparatrixDiagram, mark, kind, orientation=None) -> FlowCode:
    """Code of a minus kind: the plus code of the reversed flow, sign flipped."""
    kind = as_kind(kind)
    if kind.effective_sign != "-":
        raise IllegalMark(f"{kind} is not a minus kind")
    plus = _flip(kind)
    r = d.reverse()
    if kind.base in CONNECTION_BASES:
        c = saddle_connection_code(r, plus, orientation)
    elif kind.form == "B":
        c = make_b_code(r, mark, plus, orientation)
    else:
        c = make_a_code(r, mark, plus, orientation)
    return FlowCode(c.lists, kind)


# ---------------------------------------------------------------------------
# conversions between the two forms


def _find(lists, x, skip=None):
    return [(l, p) for l, (_, t) in enumerate(lists) for p, y in enumerate(t)
            if y == x and (l, p) != skip]


def a_to_b(code, orientation=None) -> FlowCode:
    """B-code of the same bifurcation as an SN, BSN or BDS A-code.

    SN B-codes may be read either way; ``orientation`` picks as in
    ``make_a_code`` (None: the least reading)."""
    code = _code(code)
    kind = code.prefix
    if kind is None or kind.base not in ("SN", "BSN", "BDS") or kind.form != "A":
        raise NotConvertibleKind(f"no B-code rule for {kind}")
    lists = [list(t) for _, t in _lists(code)]
    kinds = [k for k, _ in _lists(code)]
    if kind.base == "SN":
        head = lists[0]
        if kinds[0] != "S" or not head or head[0] <= 0:
            raise NotConvertibleKind("an SN A-code starts with a source list")
        x, rest = head[0], head[1:]
        del lists[0], kinds[0]
        (l, p), = _find([(k, t) for k, t in zip(kinds, lists)], x)
        lists[l][p:p + 1] = [LP] + (rest or [BLANK]) + [RP]
        c = tuple(zip(kinds, map(tuple, lists)))
        q = p + len(rest or [BLANK]) + 1
        out, _ = M.best(c, _pick([(l, p, False), (l, q, True)], orientation))
    elif kind.base == "BSN":
        t = lists[0]
        if kinds[0] != "B" or not t or t[0] != C.OPEN:
            raise NotConvertibleKind("a BSN A-code starts with '['")
        c0 = t.index(C.CLOSE)
        q, rest = t[1:c0], t[c0 + 1:]
        if not rest:
            raise NotConvertibleKind("nothing precedes the boundary source")
        lists[0] = rest
        x = rest[-1]
        grp = q or [BLANK]
        if x == C.CLOSE:
            lists[0] = rest[:-1] + [LP] + grp + [RP, C.CLOSE]
            start = (0, len(lists[0]) - 1)
        elif x > 0:
            cur = tuple(zip(kinds, map(tuple, lists)))
            (l, p), = _find(cur, x, skip=(0, len(rest) - 1))
            lists[l][p:p + 1] = [LP] + q + [x, RP]
            start = (0, len(lists[0]) - 1)
        else:
            raise NotConvertibleKind("the boundary source does not follow a b-saddle")
        c = tuple(zip(kinds, map(tuple, lists)))
        out, _ = M.encode(c, start[0], start[1], True)
    else:
        t = lists[0]
        if kinds[0] != "B" or len(t) < 2 or t[0] <= 0:
            raise NotConvertibleKind("a BDS A-code starts with an a-saddle")
        x = t[0]
        lists[0] = t[1:]
        nxt = lists[0][0]
        if nxt == C.OPEN:
            lists[0] = [C.OPEN, LP, x, RP] + lists[0][1:]
        elif nxt > 0:
            cur = tuple(zip(kinds, map(tuple, lists)))
            (l, p), = _find(cur, nxt, skip=(0, 0))
            lists[l][p:p] = [LP, x, RP]
        else:
            raise NotConvertibleKind("the a-saddle is not followed by a b-saddle")
        c = tuple(zip(kinds, map(tuple, lists)))
        out, _ = M.encode(c, 0, 0, False)
    return FlowCode.from_compact(out, kind.with_form("B"))


def _paren_span(lists):
    for l, t in enumerate(lists):
        if LP in t:
            i = t.index(LP)
            j = t.index(RP, i)
            return l, i, j
    raise NotConvertibleKind("a B-code needs a highlighted group")


def b_to_a(code) -> FlowCode:
    """A-code of the same bifurcation as an SN, BSN or BDS B-code."""
    code = _code(code)
    kind = code.prefix
    if kind is None or kind.form != "B":
        raise NotConvertibleKind(f"{kind} is not a B-code")
    if kind.base in ("HS", "HN"):
        raise NotConvertibleKind(f"{kind.base} B-codes are marked Morse codes of the later flow")
    if kind.base not in ("SN", "BSN", "BDS"):
        raise NotConvertibleKind(f"no A-code for {kind.base}")
    kinds = [k for k, _ in _lists(code)]
    lists = [list(t) for _, t in _lists(code)]
    l, i, j = _paren_span(lists)
    grp = [x for x in lists[l][i + 1:j] if x != BLANK]
    if kind.base == "SN":
        bump = [[x + 1 if x > 0 else x for x in t] for t in lists]
        bump[l][i:j + 1] = [1]
        out = (("S", tuple([1] + [x + 1 for x in grp])),) + tuple(zip(kinds, map(tuple, bump)))
    elif kind.base == "BDS":
        if len(grp) != 1:
            raise NotConvertibleKind("a BDS B-code highlights exactly one number")
        k = grp[0]
        ren = [[1 if x == k else x + 1 if 0 < x < k else x for x in t] for t in lists]
        del ren[l][i:j + 1]
        ren[0] = [1] + ren[0]
        rot = []
        for t in ren:
            nums = [x for x in t if x > 0]
            if nums:
                s = t.index(min(nums))
                t = t[s:] + t[:s]
            rot.append(t)
        order = sorted(range(len(rot)), key=lambda a: rot[a][0] if rot[a] and rot[a][0] > 0 else 1 << 30)
        out = tuple((kinds[a], tuple(rot[a])) for a in order)
    else:
        out = _bsn_b_to_a(kinds, lists)
    return FlowCode.from_compact(out, kind.with_form("A"))


def _bsn_b_to_a(kinds, lists):
    mir = [list(M.mirror_items(t)) for t in lists]
    l, i, j = _paren_span(mir)
    grp = [x for x in mir[l][i + 1:j] if x != BLANK]
    t = mir[l]
    tries, found = [], []
    if t[(j + 1) % len(t)] == C.CLOSE:
        tries.append("close")
    if grp:
        tries.append("tplus")
    for how in tries:
        ls = [list(x) for x in mir]
        if how == "close":
            q = grp
            ls[l][i:j + 1] = []
            xl, xp = l, i % len(ls[l])
            while ls[xl][xp] != C.CLOSE:
                xp = (xp + 1) % len(ls[xl])
        else:
            q, m = grp[:-1], grp[-1]
            ls[l][i:j + 1] = [m]
            cur = tuple(zip(kinds, map(tuple, ls)))
            other = _find(cur, m, skip=(l, i))
            if len(other) != 1:
                continue
            xl, xp = other[0]
        ls[xl][xp + 1:xp + 1] = [C.OPEN] + q + [C.CLOSE]
        c = tuple(zip(kinds, map(tuple, ls)))
        out, _ = M.encode(c, xl, xp + 1, False)
        if not C.connected(out) or not _valid_plain(out):
            continue
        found.append(out)
    # both readings can give a valid flow; keep the one that converts back
    for out in found:
        try:
            back = a_to_b(FlowCode.from_compact(out, BifurcationKind("BSN", "+", "A")))
        except (NotConvertibleKind, ValueError):
            continue
        if _same_b(back, kinds, lists):
            return out
    if found:
        return found[0]
    raise NotConvertibleKind("the highlighted group fits no BSN pattern")


def _same_b(back, kinds, lists):
    return tuple((l.kind.value, l.items) for l in back.lists) == tuple(zip(kinds, map(tuple, lists)))


def _valid_plain(c):
    from .codec import validate_semantics
    return not validate_semantics(c)


# ---------------------------------------------------------------------------
# saddle connections


def _without(d: SeparatrixDiagram, drop, add):
    """Diagram with edges ``drop`` removed and ``add`` = (t, h, kind, at_t, at_h)
    inserted; ``at_t`` / ``at_h`` are darts whose rotation slots it takes."""
    keep = [e for e in range(len(d.edges)) if e not in drop]
    new = {e: k for k, e in enumerate(keep)}
    edges = [d.edges[e] for e in keep]
    hole_left = [d.hole_left[e] for e in keep]
    t, h, kind, at_t, at_h = add
    c = len(edges)
    edges.append((t, h, kind))
    hole_left.append(None)
    rot = []
    for r in d.rotation:
        out = []
        for x in r:
            if x == at_t:
                out.append(2 * c)
            elif x == at_h:
                out.append(2 * c + 1)
            elif (x >> 1) in new:
                out.append(2 * new[x >> 1] + (x & 1))
        rot.append(out)
    return SeparatrixDiagram(d.holes, d.kinds, edges, rot, hole_left)


def _forward_rewrites(d: SeparatrixDiagram):
    """Connections s2 -> s1 from a path s1 <-g1- v -> ... -> s2 -g3-> on a
    cell boundary: g1 stable, v -> s2 a directed run of stable or boundary
    trajectories, g3 an unstable separatrix of s2."""
    out = []
    for f in d.faces():
        if d.is_hole_face(f):
            continue
        m = len(f)
        for seq in (list(f), [x ^ 1 for x in reversed(f)]):
            for i in range(m):
                g1 = seq[i] >> 1
                s1, v = d.vertex_of(seq[i]), d.vertex_of(seq[i] ^ 1)
                if d.edges[g1] != (v, s1, "stable"):
                    continue
                cur = v
                for k in range(1, m - 1):
                    x = seq[(i + k) % m]
                    t, h, kind = d.edges[x >> 1]
                    if kind not in ("stable", "boundary") or (t, h) != (cur, d.vertex_of(x ^ 1)):
                        break
                    cur = h
                    y = seq[(i + k + 1) % m]
                    g3 = y >> 1
                    if g3 == g1 or d.edges[g3][:2] != (cur, d.vertex_of(y ^ 1)):
                        continue
                    if d.edges[g3][2] != "unstable" or cur == s1:
                        continue
                    kind = CONNECTION_KINDS.get((d.kinds[cur], d.kinds[s1]))
                    if kind is None:
                        continue
                    nd = _without(d, {g1, g3}, (cur, s1, "connection", 2 * g3, 2 * g1 + 1))
                    if nd.has_directed_cycle() or nd.check():
                        continue
                    out.append((kind, nd))
    return out


def connection_rewrites(d: SeparatrixDiagram):
    """All diagrams with one saddle connection obtained from ``d``.

    A cell whose boundary has the path s1 <- v -> ... -> s2 -> (stable
    separatrix into s1 from the source v, a directed run of separatrices
    or boundary trajectories from v to s2, an unstable separatrix of s2)
    loses the first and last trajectories and gains the connection
    s2 -> s1.  The same with all directions
    reversed gives the remaining connections.  Returns (kind, diagram)
    pairs, possibly with repeats.
    """
    out = _forward_rewrites(d)
    for _, nd in _forward_rewrites(d.reverse()):
        r = nd.reverse()
        out.append((connection_kind(r), r))
    return out


def _the_connection(d: SeparatrixDiagram):
    cs = [e for e, (_, _, k) in enumerate(d.edges) if k == "connection"]
    if not cs:
        raise NoConnection("the diagram has no saddle connection")
    if len(cs) > 1:
        raise MultipleConnections(f"the diagram has {len(cs)} saddle connections")
    return cs[0]


def connection_kind(d: SeparatrixDiagram) -> str:
    e = _the_connection(d)
    t, h, _ = d.edges[e]
    k = CONNECTION_KINDS.get((d.kinds[t], d.kinds[h]))
    if k is None:
        raise NoConnection(f"connection {d.kinds[t]} -> {d.kinds[h]} is of no known kind")
    return k


def saddle_connection_code(d: SeparatrixDiagram, kind, orientation=None) -> FlowCode:
    """Code at the moment of a saddle connection.

    The lower end s1 of the connection gets number 1 and the upper end s2
    number 2; reading starts at the single occurrence of 1.  For BSC both
    ends are written 1 (the b-saddle explicitly, in its place on the
    boundary) and reading starts at the b-saddle.
    """
    kind = as_kind(kind)
    if kind.base not in CONNECTION_BASES:
        raise NoConnection(f"{kind} is not a connection kind")
    e = _the_connection(d)
    have = connection_kind(d)
    want = kind.base + ("+" if kind.base == "HSC" and kind.effective_sign == "+" else
                        "-" if kind.base == "HSC" else "")
    if have != want:
        raise NoConnection(f"the connection is {have}, not {want}")
    if want == "HSC-":
        return minus_code_via_reversal(d, None, kind, orientation)
    s2, s1, _ = d.edges[e]
    if want == "BSC":
        code, pos = d.to_compact(positions=True, numbers={s2: 1, s1: 1})
        l, p = pos[("v", s2)]
        forced, links = {1: 1}, None
    else:
        code, pos = d.to_compact(positions=True, numbers={s1: 1, s2: 2})
        (l, p), = [(l, p) for l, (_, t) in enumerate(code) for p, x in enumerate(t) if x == 1]
        # the connection joins the single 1 to the 2s
        forced, links = {1: 1, 2: 2}, {1: 2}
    out, _ = M.best(code, _pick([(l, p, False), (l, p, True)], orientation), forced, links)
    return FlowCode.from_compact(out, kind)


# ---------------------------------------------------------------------------
# decoding codes back to marked diagrams


def marked_diagram(code):
    """(diagram, mark) described by a local-kind code.

    B-codes of SN, BSN and BDS are first turned into A-codes.  For minus
    kinds the result is the reversed flow, as written in the code.
    """
    code = _code(code)
    kind = code.prefix
    if kind is None or kind.base not in LOCAL_BASES:
        raise NotConvertibleKind(f"{kind} is not a local bifurcation kind")
    if kind.form == "B" and kind.base in ("SN", "BSN", "BDS"):
        code = b_to_a(code)
        kind = code.prefix
    c = code.compact()
    from .codec import SemanticInvalid, validate_semantics
    rep = validate_semantics(c)
    if rep:
        raise SemanticInvalid(rep)
    d, where = diagram_from_compact(c, positions=True)
    el = where.get((0, 0))
    n0 = len(c[0][1])
    base, form = kind.base, kind.form
    if base in ("SN", "HS") and form == "A":
        mark = el
    elif base == "HN" and form == "A":
        v = el[1]
        mark = ("e", next(e for e, (a, b, k) in enumerate(d.edges) if b == v and k == "stable"))
    elif base in ("HS", "HN"):
        mark = el
    elif base == "BSN":
        tm = where.get(("gap", 0, n0 - 1))
        if el is None or tm is None:
            raise IllegalMark("a BSN A-code starts with '[' and ends before a b-saddle")
        mark = ("e", _edge_between(d, el[1], tm[1]))
    else:
        tm = where.get(("gap", 0, 0))
        if el is None or tm is None:
            raise IllegalMark("a BDS A-code starts with an a-saddle followed by a b-saddle")
        mark = ("e", _edge_between(d, el[1], tm[1]))
    if mark is None or mark[1] is None:
        raise IllegalMark(f"the first item of the code is no legal {kind} mark")
    plus = kind if kind.effective_sign != "-" else _flip(kind)
    check_mark(d, mark, plus.with_form(form if base in ("HS", "HN") else "A"))
    return d, mark


_CONN_CACHE = {}


def connection_diagrams(holes: int, n: int):
    """Every connection diagram with ``n`` points on the sphere with ``holes``
    holes, up to homeomorphism: {canonical form: (kind, diagram)}."""
    key = (holes, n)
    if key not in _CONN_CACHE:
        from .enumeration import morse_flows
        found = {}
        for d in morse_flows(holes, n):
            for k, nd in connection_rewrites(d):
                found.setdefault(nd.canonical_form(True), (k, nd))
        _CONN_CACHE[key] = found
    return _CONN_CACHE[key]


def connection_diagram(code, max_points: int = 7):
    """Diagram at the moment of bifurcation described by a connection code,
    found by matching against the generated connection diagrams."""
    code = _code(code)
    kind = code.prefix
    if kind is None or kind.base not in CONNECTION_BASES:
        raise NoConnection(f"{kind} is not a connection kind")
    holes = sum(1 for l in code.lists if l.is_boundary)
    want = code.compact()
    for n in range(2, max_points + 1):
        for k, d in connection_diagrams(holes, n).values():
            kk = "HSC+" if k == "HSC-" and kind.effective_sign == "-" else k
            try:
                if k in ("HSC-",) and kind.effective_sign != "-":
                    continue
                if kind.base == "HSC" and kind.effective_sign == "-" and k != "HSC-":
                    continue
                if not kk.startswith(kind.base) or (kind.base == "SC" and k != "SC"):
                    continue
                c = saddle_connection_code(d, kind)
            except (NoConnection, MultipleConnections):
                continue
            if c.compact() == want:
                return d
    raise NoConnection(f"no connection diagram has the code {FlowCode(code.lists)}")


def codim1_key(code) -> tuple:
    """Hashable invariant of a codimension-one code: equal keys iff the
    codes describe topologically equivalent bifurcations."""
    code = _code(code)
    kind = code.prefix
    if kind is None:
        raise KindMismatch("a codimension-one code needs a kind prefix")
    sign = kind.effective_sign
    if kind.base in CONNECTION_BASES:
        d = connection_diagram(code)
        return (kind.base, sign, None, d.canonical_form(True))
    d, mark = marked_diagram(code)
    form = kind.form if kind.base in ("HS", "HN") else None
    reflect = kind.base not in ORIENTED_BASES
    return (kind.base, sign, form, d.with_marks({mark}).canonical_form(reflect))


def validate_bifurcation(code) -> list:
    """Problems with a codimension-one code, as strings; empty when fine."""
    try:
        code = _code(code)
    except ValueError as e:
        return [str(e)]
    if code.prefix is None:
        return ["missing kind prefix"]
    try:
        codim1_key(code)
    except (ValueError, StopIteration) as e:
        return [f"{type(e).__name__}: {e}"]
    return []


__all__ = [
    "IllegalMark", "KindMismatch", "as_kind", "MultipleConnections", "NoConnection", "NotConvertibleKind",
    "a_to_b", "b_to_a", "check_mark", "codim1_key", "connection_diagram", "connection_diagrams",
    "connection_kind", "connection_rewrites", "legal_marks", "make_a_code", "make_b_code",
    "marked_diagram", "minus_code_via_reversal", "saddle_connection_code", "validate_bifurcation",
]
