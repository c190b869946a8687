"""Pure-Python search kernels.

These are the hot inner loops of the exhaustive oracle. The compiled module
``_speed`` implements the same two entry points with identical semantics and
identical deterministic output; either can back ``pcfactor._kernels``.

A 2-regular spanning subgraph of the complete bipartite host is exactly the
union of two disjoint perfect matchings, i.e. an unordered pair of
permutations (sigma, tau) with sigma(i) != tau(i) for all i. Enumeration
walks all sigma and all derangements d, taking tau = d o sigma; the cycle
type of the pair is the cycle type of d (conjugation invariance), so the
minimum-length filter is precomputed per derangement.
"""

from itertools import permutations

ENUM_CAP = 8  # (8!)*D_8 pairs is the largest desk-scale enumeration


def derangements(n: int) -> list[tuple[int, ...]]:
    """All fixed-point-free permutations of range(n), lexicographic."""
    out: list[tuple[int, ...]] = []
    perm = [0] * n
    used = [False] * n

    def extend(pos: int) -> None:
        if pos == n:
            out.append(tuple(perm))
            return
        for v in range(n):
            if not used[v] and v != pos:
                used[v] = True
                perm[pos] = v
                extend(pos + 1)
                used[v] = False

    if n > 0:
        extend(0)
    return out


def _inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return inv


def _min_cycle_len(p):
    n = len(p)
    seen = [False] * n
    best = n
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        i = start
        while not seen[i]:
            seen[i] = True
            size += 1
            i = p[i]
        best = min(best, size)
    return best


def enumerate_two_factor_keys(rows, t):
    """Canonical keys of all properly colored 2-factors with cycles >= t.

    ``rows`` is the n x n color matrix. A key is the flat tuple
    (a_0, b_0, ..., a_{n-1}, b_{n-1}) with {a_i, b_i} the sorted pair of
    Y-neighbors of x_i; keys are returned sorted.
    """
    n = len(rows)
    if n > ENUM_CAP:
        raise ValueError(f"two-factor enumeration capped at n={ENUM_CAP}")
    if n < 2:
        return []
    need = (t + 1) // 2  # bipartite cycle length 2m >= t  <=>  m >= ceil(t/2)
    cols = list(zip(*rows))
    ders = [(d, _inverse(d)) for d in derangements(n)
            if _min_cycle_len(d) >= need]
    keys: set[tuple[int, ...]] = set()

    rng = range(n)
    for sigma in permutations(rng):
        inv_sigma = _inverse(sigma)
        s0 = sigma[0]
        for d, d_inv in ders:
            if d[s0] < s0:
                continue  # canonical orientation of the unordered pair
            ok = True
            for i in rng:  # proper coloring at every x_i
                if rows[i][sigma[i]] == rows[i][d[sigma[i]]]:
                    ok = False
                    break
            if not ok:
                continue
            for j in rng:  # at every y_j; tau^-1 = sigma^-1 o d^-1
                if cols[j][inv_sigma[j]] == cols[j][inv_sigma[d_inv[j]]]:
                    ok = False
                    break
            if not ok:
                continue
            key = []
            for i in rng:
                a = sigma[i]
                b = d[a]
                if a < b:
                    key.append(a)
                    key.append(b)
                else:
                    key.append(b)
                    key.append(a)
            keys.add(tuple(key))
    return sorted(keys)


def find_pc_cycle(rows, start_side, start_index, k):
    """First properly colored k-cycle through the given vertex, or None.

    Depth-first extension alternating sides, pruning on adjacent-color
    equality and revisits; exact (no false negatives). Candidates are tried
    in ascending (color degree, index) order, fail-first. The result is a
    list of k indices; entries at even offsets lie on ``start_side``
    (0 = X, 1 = Y).
    """
    n = len(rows)
    cols = list(zip(*rows))
    order_x = _search_order(rows)
    order_y = _search_order(cols)
    # orient so "side 0" is the start vertex's side
    if start_side == 0:
        mat = (rows, cols)
        orders = (order_x, order_y)
    else:
        mat = (cols, rows)
        orders = (order_y, order_x)

    used = ([False] * n, [False] * n)
    used[0][start_index] = True
    path = [start_index]
    start_row = mat[0][start_index]

    def extend(prev_color):
        depth = len(path)
        side = depth % 2  # side of the next vertex
        line = mat[1 - side][path[-1]]
        if depth == k - 1:
            first_color = start_row[path[1]]
            for cand in orders[side]:
                if used[side][cand]:
                    continue
                c = line[cand]
                if c == prev_color:
                    continue
                closing = start_row[cand]
                if closing == c or closing == first_color:
                    continue
                path.append(cand)
                return True
            return False
        for cand in orders[side]:
            if used[side][cand]:
                continue
            c = line[cand]
            if c == prev_color:
                continue
            used[side][cand] = True
            path.append(cand)
            if extend(c):
                return True
            path.pop()
            used[side][cand] = False
        return False

    found = extend(None)
    return list(path) if found else None


def _search_order(lines):
    deg = [len(set(line)) for line in lines]
    return sorted(range(len(lines)), key=lambda i: (deg[i], i))
