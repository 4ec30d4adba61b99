"""Traversal encoding for codes that carry highlights or fixed labels.

Works like ``_kernel_py.encode`` on compact codes whose items may also hold
'(' (-3), ')' (-4) and the blank highlight (-5).  Bifurcation codes are
small and built once each, so this stays in Python.
"""
from __future__ import annotations

OPEN, CLOSE, LPAREN, RPAREN, BLANK = -1, -2, -3, -4, -5
BIG = 1 << 20
_SWAP = {OPEN: CLOSE, CLOSE: OPEN, LPAREN: RPAREN, RPAREN: LPAREN}
_RANK = {OPEN: 1, LPAREN: 2, BLANK: 3, RPAREN: BIG - 3, CLOSE: BIG - 2}


def rank(x):
    """Token order { < [ < ( < 0 < 1 < 2 < ... < ) < ] < }."""
    r = _RANK.get(x)
    return 4 + x if r is None else r


def mirror_items(t):
    return tuple(_SWAP.get(x, x) for x in reversed(t))


def mirror(code):
    return tuple((k, mirror_items(t)) for k, t in code)


def key(code):
    out = []
    for k, t in code:
        out.append(0 if k == "B" else 1)
        out.extend(rank(x) for x in t)
        out.append(BIG - 1 if k == "B" else BIG - 2)
    return tuple(out)


def occurrences(code):
    occ = {}
    for l, (_, t) in enumerate(code):
        for p, x in enumerate(t):
            if x > 0:
                occ.setdefault(x, []).append((l, p))
    return occ


def _group_start(t, s):
    """Entering a list inside a highlighted group starts at its '('."""
    if LPAREN in t:
        i = t.index(LPAREN)
        j = t.index(RPAREN, i) if RPAREN in t[i:] else -1
        if i < s <= j:
            return i
    return s


def encode(code, li, p, reverse=False, forced=None, links=None):
    """Read ``code`` from item (li, p), optionally with mirrored lists.

    ``forced`` fixes the labels of some numbers; the rest are numbered in
    order of first visit, after the largest forced label.  The next list
    is entered through the smallest-labelled number already written that
    has an occurrence in an unlisted list.  ``links`` maps a number to
    another one that becomes reachable once the first is written (the two
    ends of a saddle connection); when that offers several unlisted lists
    each is tried and the least reading kept.  Returns (code, position map).
    """
    n0 = [len(t) for _, t in code]
    if reverse:
        code = mirror(code)
        p = n0[li] - 1 - p if n0[li] else 0
    occ = occurrences(code)
    links = links or {}
    label0 = dict(forced or {})
    found = []

    def walk(cur, label, nxt, written, listed, out, pm):
        label, written, listed, out, pm = dict(label), set(written), list(listed), list(out), dict(pm)
        while True:
            l, s = cur
            kind, t = code[l]
            n = len(t)
            s = _group_start(t, s)
            toks = []
            for j in range(n):
                q = (s + j) % n
                x = t[q]
                pm[(l, q)] = (len(out), j)
                if x > 0:
                    if x not in label:
                        label[x] = nxt
                        nxt += 1
                    written.add(x)
                    toks.append(label[x])
                else:
                    toks.append(x)
            out.append((kind, tuple(toks)))
            reach = set(written) | {links[x] for x in written if x in links}
            steps = None
            for x in sorted(reach, key=lambda y: label.get(y, BIG)):
                cand = [o for o in occ.get(x, ()) if not listed[o[0]]]
                if cand:
                    steps = cand if x not in written else cand[:1]
                    break
            if steps is None:
                found.append((key(out), tuple(out), pm))
                return
            if len(steps) > 1:
                for o in steps:
                    lst = list(listed)
                    lst[o[0]] = True
                    walk(o, label, nxt, written, lst, out, pm)
                return
            listed[steps[0][0]] = True
            cur = steps[0]

    listed = [False] * len(code)
    listed[li] = True
    walk((li, p), label0, max(label0.values(), default=0) + 1, set(), listed, [], {})
    _, out, pm = min(found, key=lambda f: f[0])
    if reverse:
        pm = {(l, n0[l] - 1 - q): v for (l, q), v in pm.items()}
    return out, pm


def best(code, starts, forced=None, links=None):
    """Least-keyed reading over (li, p, reverse) candidates."""
    found = None
    for li, p, rev in starts:
        c = encode(code, li, p, rev, forced, links)[0]
        k = key(c)
        if found is None or k < found[0]:
            found = (k, c, (li, p, rev))
    return found[1], found[2]
