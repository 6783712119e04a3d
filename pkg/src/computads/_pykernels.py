"""Pure-Python kernels: HLT coset enumeration and fraction-free integer rank.

Letters are encoded as ints: generator i is 2*i, its inverse 2*i + 1.
The compiled module `_ckernels` implements the same algorithms.
"""
from __future__ import annotations


def coset_enumerate(ngens, relators, subgroup, max_cosets):
    """Index of the subgroup, or -1 when more than max_cosets cosets are defined."""
    ncols = 2 * ngens
    if ncols == 0:
        return 1
    table = [[-1] * ncols]
    parent = [0]
    queue = []

    def rep(k):
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def merge(k, l):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a, b):
        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                ix = x ^ 1
                table[d][ix] = -1
                m, n = rep(g), rep(d)
                if table[m][x] >= 0:
                    merge(n, table[m][x])
                elif table[n][ix] >= 0:
                    merge(m, table[n][ix])
                else:
                    table[m][x] = n
                    table[n][ix] = m
        queue.clear()

    def define(c, x):
        if len(table) >= max_cosets:
            raise OverflowError
        n = len(table)
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c

    def scan_and_fill(alpha, w):
        r = len(w)
        f, b = alpha, alpha
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != alpha:
                    coincidence(f, alpha)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    try:
        for w in subgroup:
            if w:
                scan_and_fill(0, w)
        alpha = 0
        while alpha < len(table):
            if parent[alpha] == alpha:
                for w in relators:
                    if parent[alpha] != alpha:
                        break
                    if w:
                        scan_and_fill(alpha, w)
                if parent[alpha] == alpha:
                    for x in range(ncols):
                        if table[alpha][x] < 0:
                            define(alpha, x)
            alpha += 1
    except OverflowError:
        return -1
    return sum(1 for k in range(len(table)) if parent[k] == k)


def integer_rank(rows):
    """Rank over Q of an integer matrix given as a list of rows (Bareiss elimination)."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = -1
        for r in range(rank, nrows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col, ncols):
                row[c] = (p * row[c] - a * top[c]) // prev
        prev = p
        rank += 1
    return rank
