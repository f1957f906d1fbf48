"""Brute-force reference computations, deliberately naive and independent of the package."""
from itertools import combinations, product


def turan_bruteforce(n, s):
    """Fewest edges over all 2**C(n,2) graphs on n vertices with no independent s-set."""
    pairs = list(combinations(range(n), 2))
    subsets = list(combinations(range(n), s))
    best = None
    for mask in range(1 << len(pairs)):
        e = bin(mask).count("1")
        if best is not None and e >= best:
            continue
        E = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        if all(any(p in E for p in combinations(S, 2)) for S in subsets):
            best = e
    return best


def independence_number(n, edges):
    E = {tuple(sorted(e)) for e in edges}
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            if not any(p in E for p in combinations(S, 2)):
                return size
    return 0


def naive_fair_quads(rows, k):
    n, m = len(rows), len(rows[0])
    return [(i, j, p, q)
            for i, j in combinations(range(n), 2)
            for p, q in combinations(range(m), 2)
            if (rows[i][p] + rows[j][q] - rows[i][q] - rows[j][p]) % k == 0]


def naive_covers(quads, n, m, a, b):
    """First uncovered (A-subset, B-subset) by plain double enumeration."""
    qs = set(map(tuple, quads))
    for S in combinations(range(n), a):
        for T in combinations(range(m), b):
            if not any((i, j, p, q) in qs for i, j in combinations(S, 2)
                       for p, q in combinations(T, 2)):
                return S, T
    return None


def naive_min_cover(n, m, profiles):
    """Smallest quad system meeting every profile, by subsets of increasing size."""
    cands = [(i, j, p, q) for i, j in combinations(range(n), 2)
             for p, q in combinations(range(m), 2)]
    bad = sorted({(S, T) for a, b in profiles
                  for S in combinations(range(n), a) for T in combinations(range(m), b)})
    masks = []
    for i, j, p, q in cands:
        mask = 0
        for idx, (S, T) in enumerate(bad):
            if i in S and j in S and p in T and q in T:
                mask |= 1 << idx
        masks.append(mask)
    full = (1 << len(bad)) - 1
    for size in range(len(cands) + 1):
        for chosen in combinations(range(len(cands)), size):
            acc = 0
            for c in chosen:
                acc |= masks[c]
            if acc == full:
                return size
    raise AssertionError("unreachable")


def gk_vertices(k):
    return list(product(range(k), repeat=k))


def gk_adjacent(f, g, k):
    return len({(a - b) % k for a, b in zip(f, g)}) == k


def naive_triangles(k):
    V = gk_vertices(k)
    return sum(1 for a, b, c in combinations(V, 3)
               if gk_adjacent(a, b, k) and gk_adjacent(b, c, k) and gk_adjacent(a, c, k))


def bitset_triangles(k):
    """Triangle count over all k**k vertices using neighbour bitsets."""
    V = gk_vertices(k)
    N = len(V)
    adj = [0] * N
    for x in range(N):
        for y in range(x + 1, N):
            if gk_adjacent(V[x], V[y], k):
                adj[x] |= 1 << y
                adj[y] |= 1 << x
    total = 0
    for x in range(N):
        nbrs = adj[x] >> (x + 1) << (x + 1)
        while nbrs:
            low = nbrs & -nbrs
            y = low.bit_length() - 1
            nbrs ^= low
            total += (adj[x] & adj[y] & ~((1 << (y + 1)) - 1)).bit_count()
    return total


def naive_clique_number(k):
    V = gk_vertices(k)
    best = 1
    cliques = [[v] for v in V]
    while cliques:
        nxt = []
        for cl in cliques:
            last = V.index(cl[-1])
            for w in V[last + 1:]:
                if all(gk_adjacent(w, u, k) for u in cl):
                    nxt.append(cl + [w])
        if nxt:
            best = len(nxt[0])
        cliques = nxt
    return best


def naive_cover5(n, m, e22):
    qs = set(map(tuple, e22))
    for S in combinations(range(n + m), 5):
        A = [v for v in S if v < n]
        B = [v - n for v in S if v >= n]
        if len(A) >= 4 or len(B) >= 4:
            continue
        if not any((i, j, p, q) in qs for i, j in combinations(A, 2)
                   for p, q in combinations(B, 2)):
            return S
    return None
