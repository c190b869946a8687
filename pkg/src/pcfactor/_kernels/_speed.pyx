# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; semantics identical to pcfactor._kernels.pure.

See the pure module for the algorithm notes. The two implementations must
return identical results on identical inputs; the test suite enforces parity.
"""

from itertools import permutations

from libc.stdlib cimport free, malloc

from pcfactor._kernels.pure import ENUM_CAP
from pcfactor._kernels.pure import derangements as _py_derangements

cdef enum:
    MAXN = 16


def enumerate_two_factor_keys(rows, t):
    """Canonical keys of all properly colored 2-factors with cycles >= t."""
    cdef int n = len(rows)
    if n > ENUM_CAP:
        raise ValueError(f"two-factor enumeration capped at n={ENUM_CAP}")
    if n < 2:
        return []
    cdef int need = (t + 1) // 2

    cdef int col[MAXN * MAXN]
    cdef int i, j
    for i in range(n):
        row = rows[i]
        for j in range(n):
            col[i * n + j] = row[j]

    # derangements filtered by minimum cycle length, flattened with inverses
    filtered = [d for d in _py_derangements(n) if _min_cycle_len(d) >= need]
    cdef int nd = len(filtered)
    if nd == 0:
        return []
    cdef int *ders = <int *> malloc(2 * nd * n * sizeof(int))
    if ders == NULL:
        raise MemoryError()
    cdef int r
    for r in range(nd):
        d = filtered[r]
        for i in range(n):
            ders[2 * r * n + i] = d[i]
        for i in range(n):
            ders[(2 * r + 1) * n + d[i]] = i  # inverse

    # keys pack into 4-bit lanes (n <= 8), preserving lexicographic order
    cdef int sig[MAXN]
    cdef int inv_sig[MAXN]
    cdef int s0, a, b, ok
    cdef unsigned long long packed
    cdef int *dp
    cdef int *dip
    keys = set()
    try:
        for sigma in permutations(range(n)):
            for i in range(n):
                sig[i] = sigma[i]
                inv_sig[sig[i]] = i
            s0 = sig[0]
            for r in range(nd):
                dp = ders + 2 * r * n
                dip = dp + n
                if dp[s0] < s0:
                    continue  # canonical orientation of the unordered pair
                ok = 1
                for i in range(n):
                    if col[i * n + sig[i]] == col[i * n + dp[sig[i]]]:
                        ok = 0
                        break
                if not ok:
                    continue
                for j in range(n):
                    if col[inv_sig[j] * n + j] == col[inv_sig[dip[j]] * n + j]:
                        ok = 0
                        break
                if not ok:
                    continue
                packed = 0
                for i in range(n):
                    a = sig[i]
                    b = dp[a]
                    if a < b:
                        packed = (packed << 8) | <unsigned long long> ((a << 4) | b)
                    else:
                        packed = (packed << 8) | <unsigned long long> ((b << 4) | a)
                keys.add(packed)
    finally:
        free(ders)
    out = []
    for packed in sorted(keys):
        key = [0] * (2 * n)
        for i in range(n - 1, -1, -1):
            key[2 * i + 1] = <int> (packed & 15)
            key[2 * i] = <int> ((packed >> 4) & 15)
            packed >>= 8
        out.append(tuple(key))
    return out


def _min_cycle_len(p):
    cdef int n = len(p)
    cdef int q[MAXN]
    cdef int seen[MAXN]
    cdef int i, start, size, best
    for i in range(n):
        q[i] = p[i]
        seen[i] = 0
    best = n
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        i = start
        while not seen[i]:
            seen[i] = 1
            size += 1
            i = q[i]
        if size < best:
            best = size
    return best


cdef struct SearchState:
    int n
    int k
    int start
    int first_color
    int *mat0  # indexed by side-0 vertices; mat1 is the transpose
    int *mat1
    int *order0
    int *order1
    char *used0
    char *used1
    int *path


cdef int _extend(SearchState *st, int depth, int prev_color) noexcept:
    cdef int side = depth & 1
    cdef int n = st.n
    cdef int *line
    cdef int *order
    cdef char *used
    cdef int pos, cand, c, closing
    if side == 1:
        line = st.mat0 + st.path[depth - 1] * n
        order = st.order1
        used = st.used1
    else:
        line = st.mat1 + st.path[depth - 1] * n
        order = st.order0
        used = st.used0
    if depth == st.k - 1:
        # the final vertex lies on side 1 (k even); close back to the start
        for pos in range(n):
            cand = order[pos]
            if used[cand]:
                continue
            c = line[cand]
            if c == prev_color:
                continue
            closing = st.mat0[st.start * n + cand]
            if closing == c or closing == st.first_color:
                continue
            st.path[depth] = cand
            return 1
        return 0
    for pos in range(n):
        cand = order[pos]
        if used[cand]:
            continue
        c = line[cand]
        if c == prev_color:
            continue
        used[cand] = 1
        st.path[depth] = cand
        if depth == 1:
            st.first_color = c
        if _extend(st, depth + 1, c):
            used[cand] = 0
            return 1
        used[cand] = 0
    return 0


def find_pc_cycle(rows, start_side, start_index, k):
    """First properly colored k-cycle through the given vertex, or None."""
    cdef int n = len(rows)
    if n > MAXN:
        raise ValueError(f"cycle search kernel capped at n={MAXN}")
    cdef int i, j

    cols = list(zip(*rows))
    if start_side == 0:
        side0, side1 = rows, cols
    else:
        side0, side1 = cols, rows

    # mat0, mat1, the two candidate orders, and a path of up to 2n vertices
    cdef int *buf = <int *> malloc((2 * n * n + 4 * n) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int *mat0 = buf
    cdef int *mat1 = buf + n * n
    cdef int *order0 = buf + 2 * n * n
    cdef int *order1 = order0 + n
    cdef int *path = order1 + n
    cdef char used0[MAXN]
    cdef char used1[MAXN]

    cdef SearchState st
    cdef int found
    try:
        for i in range(n):
            r0 = side0[i]
            r1 = side1[i]
            for j in range(n):
                mat0[i * n + j] = r0[j]
                mat1[i * n + j] = r1[j]
        o0 = _search_order(side0)
        o1 = _search_order(side1)
        for i in range(n):
            order0[i] = o0[i]
            order1[i] = o1[i]
            used0[i] = 0
            used1[i] = 0

        st.n = n
        st.k = k
        st.start = start_index
        st.first_color = -1
        st.mat0 = mat0
        st.mat1 = mat1
        st.order0 = order0
        st.order1 = order1
        st.used0 = used0
        st.used1 = used1
        st.path = path

        used0[start_index] = 1
        path[0] = start_index
        found = _extend(&st, 1, -1)
        if not found:
            return None
        return [path[i] for i in range(k)]
    finally:
        free(buf)


def _search_order(lines):
    deg = [len(set(line)) for line in lines]
    return sorted(range(len(lines)), key=lambda i: (deg[i], i))
