# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring `_pykernels`: HLT coset enumeration and Bareiss rank."""
from libc.stdlib cimport malloc, realloc, free


cdef struct Tables:
    int *table
    int *parent
    int *queue
    int n
    int cap
    int ncols
    int max_cosets
    int overflow


cdef int _grow(Tables *t):
    cdef int newcap = t.cap * 2
    if newcap > t.max_cosets:
        newcap = t.max_cosets
    cdef int *nt = <int *> realloc(t.table, sizeof(int) * newcap * t.ncols)
    if nt == NULL:
        return -1
    t.table = nt
    cdef int *np_ = <int *> realloc(t.parent, sizeof(int) * newcap)
    if np_ == NULL:
        return -1
    t.parent = np_
    cdef int *nq = <int *> realloc(t.queue, sizeof(int) * newcap)
    if nq == NULL:
        return -1
    t.queue = nq
    t.cap = newcap
    return 0


cdef inline int _rep(Tables *t, int k):
    cdef int r = k
    cdef int nxt
    while t.parent[r] != r:
        r = t.parent[r]
    while t.parent[k] != r:
        nxt = t.parent[k]
        t.parent[k] = r
        k = nxt
    return r


cdef inline void _merge(Tables *t, int k, int l, int *qlen):
    k = _rep(t, k)
    l = _rep(t, l)
    if k == l:
        return
    if l < k:
        k, l = l, k
    t.parent[l] = k
    t.queue[qlen[0]] = l
    qlen[0] += 1


cdef void _coincidence(Tables *t, int a, int b):
    cdef int qlen = 0
    cdef int i = 0
    cdef int g, x, d, ix, m, n
    cdef int nc = t.ncols
    _merge(t, a, b, &qlen)
    while i < qlen:
        g = t.queue[i]
        i += 1
        for x in range(nc):
            d = t.table[g * nc + x]
            if d < 0:
                continue
            ix = x ^ 1
            t.table[d * nc + ix] = -1
            m = _rep(t, g)
            n = _rep(t, d)
            if t.table[m * nc + x] >= 0:
                _merge(t, n, t.table[m * nc + x], &qlen)
            elif t.table[n * nc + ix] >= 0:
                _merge(t, m, t.table[n * nc + ix], &qlen)
            else:
                t.table[m * nc + x] = n
                t.table[n * nc + ix] = m


cdef int _define(Tables *t, int c, int x):
    cdef int n, k
    if t.n >= t.max_cosets:
        t.overflow = 1
        return -1
    if t.n >= t.cap:
        if _grow(t) < 0:
            t.overflow = 1
            return -1
    n = t.n
    t.n += 1
    for k in range(t.ncols):
        t.table[n * t.ncols + k] = -1
    t.parent[n] = n
    t.table[c * t.ncols + x] = n
    t.table[n * t.ncols + (x ^ 1)] = c
    return n


cdef void _scan_and_fill(Tables *t, int alpha, int *w, int r):
    cdef int nc = t.ncols
    cdef int f = alpha
    cdef int b = alpha
    cdef int i = 0
    cdef int j = r - 1
    while True:
        while i <= j and t.table[f * nc + w[i]] >= 0:
            f = t.table[f * nc + w[i]]
            i += 1
        if i > j:
            if f != alpha:
                _coincidence(t, f, alpha)
            return
        while j >= i and t.table[b * nc + (w[j] ^ 1)] >= 0:
            b = t.table[b * nc + (w[j] ^ 1)]
            j -= 1
        if j < i:
            _coincidence(t, f, b)
            return
        if i == j:
            t.table[f * nc + w[i]] = b
            t.table[b * nc + (w[i] ^ 1)] = f
            return
        if _define(t, f, w[i]) < 0:
            return


def coset_enumerate(int ngens, relators, subgroup, int max_cosets):
    """Index of the subgroup, or -1 when more than max_cosets cosets are defined."""
    cdef int ncols = 2 * ngens
    if ncols == 0:
        return 1
    if max_cosets < 1:
        return -1
    cdef list words = [list(w) for w in relators if len(w)]
    cdef list sub = [list(w) for w in subgroup if len(w)]
    cdef int nrel = len(words)
    cdef int total = 0
    cdef int k, alpha, x, i, count
    for w in words:
        total += len(w)
    for w in sub:
        total += len(w)
    cdef int *flat = <int *> malloc(sizeof(int) * (total + 1))
    cdef int *offs = <int *> malloc(sizeof(int) * (nrel + len(sub) + 1))
    cdef int *lens = <int *> malloc(sizeof(int) * (nrel + len(sub) + 1))
    cdef Tables t
    t.ncols = ncols
    t.max_cosets = max_cosets
    t.cap = 64 if max_cosets > 64 else max_cosets
    t.table = <int *> malloc(sizeof(int) * t.cap * ncols)
    t.parent = <int *> malloc(sizeof(int) * t.cap)
    t.queue = <int *> malloc(sizeof(int) * t.cap)
    t.n = 1
    t.overflow = 0
    try:
        pos = 0
        idx = 0
        for w in words + sub:
            offs[idx] = pos
            lens[idx] = len(w)
            for letter in w:
                flat[pos] = letter
                pos += 1
            idx += 1
        for k in range(ncols):
            t.table[k] = -1
        t.parent[0] = 0
        for i in range(nrel, nrel + len(sub)):
            _scan_and_fill(&t, 0, flat + offs[i], lens[i])
            if t.overflow:
                return -1
        alpha = 0
        while alpha < t.n:
            if t.parent[alpha] == alpha:
                for i in range(nrel):
                    if t.parent[alpha] != alpha:
                        break
                    _scan_and_fill(&t, alpha, flat + offs[i], lens[i])
                    if t.overflow:
                        return -1
                if t.parent[alpha] == alpha:
                    for x in range(ncols):
                        if t.table[alpha * ncols + x] < 0:
                            if _define(&t, alpha, x) < 0:
                                return -1
            alpha += 1
        count = 0
        for k in range(t.n):
            if t.parent[k] == k:
                count += 1
        return count
    finally:
        free(flat)
        free(offs)
        free(lens)
        free(t.table)
        free(t.parent)
        free(t.queue)


def integer_rank(rows):
    """Rank over Q of an integer matrix given as a list of rows (Bareiss elimination)."""
    cdef list m = [list(src) for src in rows]
    if not m or not m[0]:
        return 0
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(m[0])
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, r, c, pivot
    cdef list row, top
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = -1
        for r in range(rank, nrows):
            if (<list> m[r])[col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        top = <list> m[rank]
        p = top[col]
        for r in range(rank + 1, nrows):
            row = <list> m[r]
            a = row[col]
            if a == 0 and prev == 1:
                for c in range(col, ncols):
                    row[c] = p * row[c]
                continue
            for c in range(col, ncols):
                row[c] = (p * row[c] - a * top[c]) // prev
        prev = p
        rank += 1
    return rank
