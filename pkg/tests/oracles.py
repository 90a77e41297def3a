"""Naive reference implementations, written straight from the definitions.

Nothing here imports the search engine or the vectorized validators; the
tests compare the package against these.
"""
from itertools import combinations, permutations, product


def is_partial_order(leq):
    n = len(leq)
    r = range(n)
    return (all(leq[i][i] for i in r)
            and all(not (leq[i][j] and leq[j][i]) or i == j for i in r for j in r)
            and all(not (leq[i][j] and leq[j][k]) or leq[i][k] for i in r for j in r for k in r))


def is_pomonoid(mult, leq, e):
    n = len(mult)
    r = range(n)
    if not is_partial_order(leq):
        return False
    if any(mult[mult[a][b]][c] != mult[a][mult[b][c]] for a in r for b in r for c in r):
        return False
    if any(mult[e][a] != a or mult[a][e] != a for a in r):
        return False
    # monotone in each argument
    return all(leq[mult[a][c]][mult[b][c]] and leq[mult[c][a]][mult[c][b]]
               for a in r for b in r for c in r if leq[a][b])


def is_sposet(act, leq, S):
    n, m = len(act), S.size
    if not is_partial_order(leq):
        return False
    for x in range(n):
        if act[x][S.identity] != x:
            return False
        for s in range(m):
            for t in range(m):
                if act[act[x][s]][t] != act[x][S.mult[s][t]]:
                    return False
                if S.leq[s][t] and not leq[act[x][s]][act[x][t]]:
                    return False
            for y in range(n):
                if leq[x][y] and not leq[act[x][s]][act[y][s]]:
                    return False
    return True


def is_map(A, B, t):
    n, m = A.size, A.over.size
    for x in range(n):
        for s in range(m):
            if t[A.act[x][s]] != B.act[t[x]][s]:
                return False
        for y in range(n):
            if A.leq[x][y] and not B.leq[t[x]][t[y]]:
                return False
    return True


def all_maps(A, B):
    """Every S-poset map table A -> B, lexicographic."""
    return [t for t in product(range(B.size), repeat=A.size) if is_map(A, B, t)]


def is_embedding(A, B, t):
    return all(A.leq[x][y] == B.leq[t[x]][t[y]] for x in range(A.size) for y in range(A.size))


def are_isomorphic(A, B):
    if A.size != B.size:
        return False
    return any(is_map(A, B, p) and is_embedding(A, B, p) for p in permutations(range(B.size)))


# Green's relations from ideals, computed as plain sets


def right_ideal(S, a):
    return frozenset(S.mult[a][s] for s in range(S.size))


def left_ideal(S, a):
    return frozenset(S.mult[s][a] for s in range(S.size))


def two_sided_ideal(S, a):
    return frozenset(S.mult[S.mult[s][a]][t] for s in range(S.size) for t in range(S.size))


def is_regular(S, a):
    return any(S.mult[S.mult[a][x]][a] == a for x in range(S.size))


def is_complete_lattice(leq):
    """Every subset, the empty one included, has a sup and an inf."""
    n = len(leq)
    if n == 0:
        return False
    for r in range(n + 1):
        for X in combinations(range(n), r):
            ub = [u for u in range(n) if all(leq[x][u] for x in X)]
            lb = [u for u in range(n) if all(leq[u][x] for x in X)]
            if not any(all(leq[u][v] for v in ub) for u in ub):
                return False
            if not any(all(leq[v][u] for v in lb) for u in lb):
                return False
    return True


def monoids(n):
    """Monoid tables on 0..n-1 with identity 0, one per iso class, by canonical form."""
    seen = {}
    rest = [(a, b) for a in range(1, n) for b in range(1, n)]
    for vals in product(range(n), repeat=len(rest)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (a, b), v in zip(rest, vals):
            t[a][b] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            continue
        forms = []
        for p in permutations(range(1, n)):
            p = (0,) + p
            inv = [0] * n
            for i, q in enumerate(p):
                inv[q] = i
            forms.append(tuple(tuple(p[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n)))
        key = min(forms)
        seen.setdefault(key, tuple(map(tuple, t)))
    return sorted(seen)
