# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonicalization kernel.  Same contract as ``_kernel_py``."""

from libc.stdlib cimport malloc, free

from ._kernel_py import basepoints, encode, rank, OPEN, CLOSE, BIG

cdef int R_LBRACE = 0
cdef int R_LSQ = 1
cdef int R_RSQ = (1 << 20) - 2
cdef int R_RBRACE = (1 << 20) - 1


cdef int _key(int nl, int* kind, int* start, int* length, int* tok,
              int* occ_l, int* occ_p, int li, int p, bint rev,
              int* out, int* bound, int blen, bint use_bound,
              int* label, int* order, int* listed) nogil:
    """Fill ``out``; return its length, or -1 when pruned against ``bound``."""
    cdef int i, j, l, s, n, x, v, lab, nlab = 0, nout = 0, nxt_l, nxt_p, k, o
    cdef bint tight = use_bound
    for i in range(nl):
        listed[i] = 0
    l = li
    s = p
    if rev and length[l] > 0:
        s = length[l] - 1 - p
    listed[l] = 1
    while True:
        n = length[l]
        for j in range(-1, n + 1):
            if j == -1:
                v = R_LBRACE if kind[l] == 0 else R_LSQ
            elif j == n:
                v = R_RBRACE if kind[l] == 0 else R_RSQ
            else:
                if rev:
                    x = tok[start[l] + (n - 1 - ((s + j) % n))]
                    if x == -1:
                        x = -2
                    elif x == -2:
                        x = -1
                else:
                    x = tok[start[l] + (s + j) % n]
                if x > 0:
                    lab = label[x]
                    if lab == 0:
                        nlab += 1
                        lab = nlab
                        label[x] = lab
                        order[lab] = x
                    v = 3 + lab
                elif x == -1:
                    v = R_LSQ
                elif x == -2:
                    v = R_RSQ
                else:
                    v = 3 + x
            if tight:
                if nout < blen:
                    if v > bound[nout]:
                        return -1
                    if v < bound[nout]:
                        tight = False
                else:
                    return -1
            out[nout] = v
            nout += 1
        nxt_l = -1
        for k in range(1, nlab + 1):
            x = order[k]
            for o in range(2):
                if not listed[occ_l[2 * x + o]]:
                    nxt_l = occ_l[2 * x + o]
                    nxt_p = occ_p[2 * x + o]
                    break
            if nxt_l >= 0:
                break
        if nxt_l < 0:
            break
        listed[nxt_l] = 1
        l = nxt_l
        s = nxt_p
        if rev:
            s = length[l] - 1 - nxt_p
    return nout


def canonical_search(code, reflect=True, points=None):
    """Minimum traversal key over basepoints and orientations."""
    cdef int nl = len(code)
    cdef int total = 0, i, j, x, m, c
    dense = {}
    for _, t in code:
        for x in t:
            if x > 0 and x not in dense:
                dense[x] = len(dense) + 1
    m = len(dense)
    for _, t in code:
        total += len(t)
    cdef int* kind = <int*>malloc(nl * sizeof(int))
    cdef int* start = <int*>malloc(nl * sizeof(int))
    cdef int* length = <int*>malloc(nl * sizeof(int))
    cdef int* tok = <int*>malloc((total + 1) * sizeof(int))
    cdef int* occ_l = <int*>malloc((2 * m + 2) * sizeof(int))
    cdef int* occ_p = <int*>malloc((2 * m + 2) * sizeof(int))
    cdef int* cnt = <int*>malloc((m + 1) * sizeof(int))
    cdef int cap = total + 2 * nl + 1
    cdef int* out = <int*>malloc(cap * sizeof(int))
    cdef int* best = <int*>malloc(cap * sizeof(int))
    cdef int* label = <int*>malloc((m + 1) * sizeof(int))
    cdef int* order = <int*>malloc((m + 1) * sizeof(int))
    cdef int* listed = <int*>malloc((nl + 1) * sizeof(int))
    cdef int blen = 0, r, bl = -1, bp = -1, k
    cdef bint brev = False, have = False
    try:
        for i in range(m + 1):
            cnt[i] = 0
        for i in range(2 * m + 2):
            occ_l[i] = 0
            occ_p[i] = 0
        c = 0
        for i, (kd, t) in enumerate(code):
            kind[i] = 0 if kd == "B" else 1
            start[i] = c
            length[i] = len(t)
            for j, x in enumerate(t):
                if x > 0:
                    x = dense[x]
                    if cnt[x] < 2:
                        occ_l[2 * x + cnt[x]] = i
                        occ_p[2 * x + cnt[x]] = j
                    cnt[x] += 1
                tok[c] = x
                c += 1
        for x in range(1, m + 1):
            if cnt[x] == 1:
                occ_l[2 * x + 1] = occ_l[2 * x]
                occ_p[2 * x + 1] = occ_p[2 * x]
        pts = basepoints(code) if points is None else points
        revs = [False, True] if reflect else [False]
        for li, p in pts:
            for rv in revs:
                for k in range(m + 1):
                    label[k] = 0
                r = _key(nl, kind, start, length, tok, occ_l, occ_p, li, p, rv,
                         out, best, blen, have, label, order, listed)
                if r < 0:
                    continue
                if have:
                    # r == blen here unless strictly smaller somewhere
                    k = 0
                    while k < r and k < blen and out[k] == best[k]:
                        k += 1
                    if k == r and r >= blen:
                        continue
                for k in range(r):
                    best[k] = out[k]
                blen = r
                have = True
                bl, bp, brev = li, p, rv
        key = tuple(best[k] for k in range(blen))
        return key, (bl, bp, bool(brev))
    finally:
        free(kind); free(start); free(length); free(tok); free(occ_l); free(occ_p)
        free(cnt); free(out); free(best); free(label); free(order); free(listed)
