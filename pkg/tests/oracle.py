"""
Independent reference implementations used to freeze expected values.

These are deliberately naive: plain tuples, sets and brute force, sharing
no code with the package.
"""

from itertools import combinations, permutations


def compose(s, p):
    return tuple(s[v - 1] for v in p)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def pattern_of(seq):
    srt = sorted(seq)
    return tuple(srt.index(v) + 1 for v in seq)


def contains(p, q):
    return any(pattern_of([p[i] for i in idx]) == tuple(q) for idx in combinations(range(len(p)), len(q)))


def avoids_all(p, basis):
    return not any(contains(p, b) for b in basis)


def inversions(p):
    return sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])


def closure_order(gens, n):
    """Size of the group generated by ``gens`` (repeated products until stable)."""
    ident = tuple(range(1, n + 1))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def distances(gens, n, seeds=None):
    """Word length under left multiplication from ``seeds`` (default: identity)."""
    ident = tuple(range(1, n + 1))
    seeds = list(seeds) if seeds is not None else [ident]
    dist = {s: 0 for s in seeds}
    frontier = list(dist)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return dist


def brute_wst(gens, n):
    dist = distances(gens, n)
    if len(dist) < len(list(permutations(range(n)))):
        return float("inf")
    return max(dist.values())


# class oracles by their textbook descriptions


def is_rotation(p):
    n = len(p)
    return any(p == tuple(list(range(a + 1, n + 1)) + list(range(1, a + 1))) for a in range(n)) or n == 0


def rr_members(n):
    if n == 0:
        return [()]
    rots = [tuple(list(range(a + 1, n + 1)) + list(range(1, a + 1))) for a in range(n)]
    return sorted(set(rots) | {r[::-1] for r in rots})


def t_members(n):
    """Adjacent transpositions, the identity, and the two cyclic shifts by one."""
    ident = list(range(1, n + 1))
    out = {tuple(ident)}
    for i in range(n - 1):
        q = ident[:]
        q[i], q[i + 1] = q[i + 1], q[i]
        out.add(tuple(q))
    if n >= 2:
        out.add(tuple([n] + list(range(2, n)) + [1]))
        out.add(tuple([n] + list(range(1, n))))
        out.add(tuple(list(range(2, n + 1)) + [1]))
    return sorted(out)


def fib_members(n):
    """Direct sums of 1 and 21."""
    if n == 0:
        return [()]
    out = [(1,) + tuple(v + 1 for v in rest) for rest in fib_members(n - 1)]
    if n >= 2:
        out += [(2, 1) + tuple(v + 2 for v in rest) for rest in fib_members(n - 2)]
    return sorted(out)


def rin_table(n):
    return distances(t_members(n), n, rr_members(n))


def tcd(p):
    n = len(p)

    def cd(a, b):
        d = abs(a - b)
        return min(d, n - d)

    return cd(p[0], p[-1]) + sum(cd(a, b) for a, b in zip(p, p[1:]))


def segments_cross(a, b, c, d):
    """Proper crossing of segments ab and cd (interiors meet at a single point)."""
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    if len({a, b, c, d}) < 4:
        return False
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def geometric_crossings(coords, edges):
    edges = list(edges)
    total = 0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            (u, v), (x, y) = edges[i], edges[j]
            if segments_cross(coords[u], coords[v], coords[x], coords[y]):
                total += 1
    return total


def brute_treewidth(n, edges):
    """Minimum over all elimination orders of the maximum back-degree."""
    if not edges:
        return 0
    best = n
    for order in permutations(range(n)):
        adj = {v: set() for v in range(n)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        width = 0
        for v in order:
            ns = adj.pop(v)
            width = max(width, len(ns))
            if width >= best:
                break
            for w in ns:
                adj[w] |= ns - {w}
                adj[w].discard(v)
        best = min(best, width)
    return best
