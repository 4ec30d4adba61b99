"""Pure-Python canonicalization kernel (reference and fallback).

Works on compact codes: a tuple of (kind, items) with kind 'B' or 'S' and
items from {n>0, 0, -1 '[', -2 ']'}.  ``_kernel.pyx`` mirrors this module
function for function.
"""

OPEN, CLOSE = -1, -2
BIG = 1 << 20
R_LBRACE, R_LSQ, R_RSQ, R_RBRACE = 0, 1, BIG - 2, BIG - 1


def rank(x):
    if x == OPEN:
        return R_LSQ
    if x == CLOSE:
        return R_RSQ
    return 3 + x            # 0 -> 3, n -> n + 3


def basepoints(code):
    pts = [(li, p) for li, (k, t) in enumerate(code) for p, x in enumerate(t) if x != 0]
    return pts or [(0, 0)]


def _prepare(code, reverse):
    """Lists (possibly mirrored) and the occurrence table."""
    if reverse:
        lists = [tuple((CLOSE if x == OPEN else OPEN if x == CLOSE else x) for x in reversed(t))
                 for _, t in code]
    else:
        lists = [tuple(t) for _, t in code]
    occ = {}
    for li, t in enumerate(lists):
        for p, x in enumerate(t):
            if x > 0:
                occ.setdefault(x, []).append((li, p))
    return lists, occ


def encode_key(code, li, p, reverse, bound=None):
    """Flattened rank sequence of the traversal from (li, p).

    With ``bound`` given, returns None as soon as the sequence is known to be
    lexicographically greater than ``bound``.
    """
    lists, occ = _prepare(code, reverse)
    if reverse and lists[li]:
        p = len(lists[li]) - 1 - p
    kinds = [k for k, _ in code]
    label = {}
    order = []
    listed = [False] * len(lists)
    listed[li] = True
    out = []
    tight = bound is not None
    cur = (li, p)
    while True:
        l, s = cur
        t = lists[l]
        n = len(t)
        seq = [R_LBRACE if kinds[l] == "B" else R_LSQ]
        for j in range(n):
            x = t[(s + j) % n]
            if x > 0:
                lab = label.get(x)
                if lab is None:
                    lab = len(label) + 1
                    label[x] = lab
                    order.append(x)
                seq.append(3 + lab)
            else:
                seq.append(rank(x))
        seq.append(R_RBRACE if kinds[l] == "B" else R_RSQ)
        for v in seq:
            if tight:
                b = bound[len(out)] if len(out) < len(bound) else -1
                if v > b:
                    return None
                if v < b:
                    tight = False
            out.append(v)
        nxt = None
        for x in order:
            for o in occ[x]:
                if not listed[o[0]]:
                    nxt = o
                    break
            if nxt is not None:
                break
        if nxt is None:
            break
        listed[nxt[0]] = True
        cur = nxt
    return out


def encode(code, li, p, reverse=False):
    """Traversal from (li, p): returns (encoded compact code, position map).

    The position map sends (list, item) of the input to (list, item) of the
    output.  Lists never reached (disconnected input) are dropped.
    """
    lists, occ = _prepare(code, reverse)
    n0 = [len(t) for _, t in code]
    if reverse and lists[li]:
        p = len(lists[li]) - 1 - p
    kinds = [k for k, _ in code]
    label, order = {}, []
    listed = [False] * len(lists)
    listed[li] = True
    out, pm = [], {}
    cur = (li, p)
    while True:
        l, s = cur
        t = lists[l]
        n = len(t)
        toks = []
        for j in range(n):
            q = (s + j) % n
            x = t[q]
            pm[(l, q)] = (len(out), j)
            if x > 0:
                if x not in label:
                    label[x] = len(label) + 1
                    order.append(x)
                toks.append(label[x])
            else:
                toks.append(x)
        out.append((kinds[l], tuple(toks)))
        nxt = None
        for x in order:
            for o in occ[x]:
                if not listed[o[0]]:
                    nxt = o
                    break
            if nxt is not None:
                break
        if nxt is None:
            break
        listed[nxt[0]] = True
        cur = nxt
    if reverse:
        pm = {(l, n0[l] - 1 - q): v for (l, q), v in pm.items()}
    return tuple(out), pm


def canonical_search(code, reflect=True, points=None):
    """Minimum traversal key over basepoints and orientations.

    Returns (key, (li, p, reverse)); the first minimizer in scan order wins.
    """
    best, arg = None, None
    pts = basepoints(code) if points is None else points
    for li, p in pts:
        for rev in ((False, True) if reflect else (False,)):
            k = encode_key(code, li, p, rev, best)
            if k is not None and (best is None or k < best):
                best, arg = k, (li, p, rev)
    return tuple(best), arg
