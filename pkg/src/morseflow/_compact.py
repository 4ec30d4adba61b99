"""Code-level combinatorics on compact codes.

A compact code is a tuple of (kind, items) with kind 'B' (boundary list) or
'S' (internal source list) and items in {n>0, 0, -1 '[', -2 ']'}.

Boundary points of a boundary list, in list order:
  '[' ... ']'   boundary source B (the numbers between are its separatrices)
  n outside     a-saddle T+ (boundary saddle with one stable separatrix)
  0             boundary sink Z
  gap           b-saddle T-, implicit between two consecutive source-like
                items (B or T+) with no 0 between them
"""
from __future__ import annotations

OPEN, CLOSE = -1, -2


def src_mask(kind, items):
    """True where a number lies in a source region (whole source list, or
    inside ``[ ... ]`` of a boundary list, read cyclically)."""
    if kind == "S":
        return [True] * len(items)
    n = len(items)
    mask = [False] * n
    if OPEN not in items:
        return mask
    start = items.index(OPEN)
    inside = False
    for k in range(n):
        i = (start + k) % n
        x = items[i]
        if x == OPEN:
            inside = True
        elif x == CLOSE:
            inside = False
        elif inside:
            mask[i] = True
    return mask


def masks(code):
    return [src_mask(k, t) for k, t in code]


def occurrences(code):
    occ = {}
    for li, (_, t) in enumerate(code):
        for p, x in enumerate(t):
            if x > 0:
                occ.setdefault(x, []).append((li, p))
    return occ


def boundary_events(items, mask):
    """Boundary points of one boundary list.

    Returns (events, gaps): events is the cyclic list of (position, kind)
    with kind in 'B', 'T', 'Z' (a B is reported at its '[' position);
    gaps is the set of positions j such that a T- sits right after item j.
    """
    n = len(items)
    ev = []
    ends = []          # (position, role) with role 'start', 'end', 'both', 'zero'
    for j in range(n):
        x = items[j]
        if x == OPEN:
            ev.append((j, "B"))
            ends.append((j, "start"))
        elif x == CLOSE:
            ends.append((j, "end"))
        elif x == 0:
            ev.append((j, "Z"))
            ends.append((j, "zero"))
        elif not mask[j]:
            ev.append((j, "T"))
            ends.append((j, "both"))
    gaps = set()
    m = len(ends)
    for i, (j, role) in enumerate(ends):
        if role in ("end", "both"):
            _, nrole = ends[(i + 1) % m]
            if nrole in ("start", "both"):
                gaps.add(j)
    return ev, gaps


def boundary_points(items, mask):
    """Cyclic sequence of (kind, position) including implicit T- points.

    Kinds: 'B', 'T+', 'Z', 'T-'.  A T- carries the position of the item it
    follows.
    """
    ev, gaps = boundary_events(items, mask)
    out = []
    n = len(items)
    evpos = {j: k for j, k in ev}
    for j in range(n):
        k = evpos.get(j)
        if k == "B":
            out.append(("B", j))
        elif k == "T":
            out.append(("T+", j))
        elif k == "Z":
            out.append(("Z", j))
        if j in gaps:
            out.append(("T-", j))
    return out


def source_like_count(items, mask):
    return sum(1 for j, x in enumerate(items) if x == OPEN or (x > 0 and not mask[j]))


def connected(code):
    if not code:
        return False
    occ = occurrences(code)
    adj = {i: set() for i in range(len(code))}
    for v in occ.values():
        if len(v) == 2:
            adj[v[0][0]].add(v[1][0])
            adj[v[1][0]].add(v[0][0])
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(code)


def _next_number(items, p):
    n = len(items)
    q = p
    while True:
        q = (q + 1) % n
        if items[q] > 0:
            return q


def face_walks(code, with_events=False):
    """Cycles of the code (faces of the distinguishing graph).

    Each face is a dict with 'halves' (number occurrences in walk order),
    'zeros' (positions of 0 items met) and, with ``with_events``, 'events':
    the ordered list of ('Z', (l, j)), ('M', (l, j)) for a T- after item j,
    and ('S', x, (l, p)) for passing internal saddle x by jumping from its
    occurrence (l, p).  Requires every number to occur exactly twice.
    """
    mk = masks(code)
    occ = occurrences(code)
    gaps = []
    for (k, t), m in zip(code, mk):
        gaps.append(boundary_events(t, m)[1] if k == "B" else set())
    halves = [(l, p) for l, (_, t) in enumerate(code) for p, x in enumerate(t) if x > 0]
    faces = []
    if not halves:
        for l, (_, t) in enumerate(code):
            ev, zs = [], []
            for j in range(len(t)):
                if t[j] == 0:
                    ev.append(("Z", (l, j)))
                    zs.append((l, j))
                if j in gaps[l]:
                    ev.append(("M", (l, j)))
            faces.append({"halves": [], "zeros": zs, "events": ev})
        return faces
    seen = set()
    for h in halves:
        if h in seen:
            continue
        walk, zs, ev = [], [], []
        x = h
        while x not in seen:
            seen.add(x)
            walk.append(x)
            l, p = x
            t = code[l][1]
            n = len(t)
            p2 = _next_number(t, p)
            j = p
            while True:
                if j in gaps[l]:
                    ev.append(("M", (l, j)))
                j = (j + 1) % n
                if j == p2:
                    break
                if t[j] == 0:
                    ev.append(("Z", (l, j)))
                    zs.append((l, j))
            lab = t[p2]
            a, b = occ[lab]
            y = b if a == (l, p2) else a
            if all(mk[o[0]][o[1]] for o in (a, b)):
                ev.append(("S", lab, (l, p2)))
            x = y
        faces.append({"halves": walk, "zeros": zs, "events": ev})
    return faces


def combination(code):
    """(A, B, S, T+, T-, Y, Z) of a semantically valid compact code."""
    mk = masks(code)
    occ = occurrences(code)
    A = sum(1 for k, _ in code if k == "S")
    B = sum(t.count(OPEN) for k, t in code if k == "B")
    S = sum(1 for v in occ.values() if all(mk[l][p] for l, p in v))
    Tp = len(occ) - S
    Z = sum(t.count(0) for k, t in code if k == "B")
    Tm = sum(len(boundary_events(t, m)[1]) for (k, t), m in zip(code, mk) if k == "B")
    Y = sum(1 for f in face_walks(code) if not f["zeros"])
    return (A, B, S, Tp, Tm, Y, Z)


def mirror_list(items):
    return tuple(CLOSE if x == OPEN else OPEN if x == CLOSE else x for x in reversed(items))


def mirror(code):
    return tuple((k, mirror_list(t)) for k, t in code)
