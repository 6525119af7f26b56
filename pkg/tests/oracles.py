"""Slow reference implementations written straight from the definitions.

They share no code with the package and are used to produce frozen values.
"""
from fractions import Fraction
from itertools import combinations


def zero_cells(rows):
    return {(u, v) for v, r in enumerate(rows) for u in range(r)}


def naive_evolve(rows, points, n, m):
    z = zero_cells(rows)
    occ = set(points)
    while True:
        new = set(occ)
        for u in range(n):
            for v in range(m):
                if (u, v) in occ:
                    continue
                r = sum(1 for x in range(n) if (x, v) in occ)
                c = sum(1 for y in range(m) if (u, y) in occ)
                if (r, c) not in z:
                    new.add((u, v))
        if new == occ:
            return occ
        occ = new


def naive_spans(rows, points, n, m):
    return len(naive_evolve(rows, points, n, m)) == n * m


def naive_gamma(rows):
    if not rows:
        return 0
    n, m = rows[0], len(rows)
    cells = [(u, v) for v in range(m) for u in range(n)]
    for s in range(0, n * m + 1):
        for a in combinations(cells, s):
            if naive_spans(rows, a, n, m):
                return s
    raise AssertionError


def naive_rho(alpha, beta, points):
    pts = list(points)
    best = Fraction(0)
    for s in range(1, len(pts) + 1):
        for b in combinations(pts, s):
            val = s - alpha * len({u for u, _ in b}) - beta * len({v for _, v in b})
            best = max(best, val)
    return best


def naive_rate_in_box(rows, alpha, beta, n, m, max_size):
    """min rho over all spanning subsets of R_{n,m} with at most max_size points."""
    cells = [(u, v) for v in range(m) for u in range(n)]
    best = None
    for s in range(0, max_size + 1):
        for a in combinations(cells, s):
            if naive_spans(rows, a, n, m):
                val = naive_rho(alpha, beta, a)
                if best is None or val < best:
                    best = val
    return best


def naive_evolve_enhanced(rows, points, n, m, f=(), g=()):
    """Growth in the n x m box with row v boosted by f[v] and column u by g[u]."""
    z = zero_cells(rows)
    f = list(f) + [0] * m
    g = list(g) + [0] * n
    occ = set(points)
    while True:
        new = set(occ)
        for u in range(n):
            for v in range(m):
                if (u, v) in occ:
                    continue
                r = sum(1 for x in range(n) if (x, v) in occ) + f[v]
                c = sum(1 for y in range(m) if (u, y) in occ) + g[u]
                if (r, c) not in z:
                    new.add((u, v))
        if new == occ:
            return occ
        occ = new


def is_thin(points):
    pts = set(points)
    for u, v in pts:
        row = sum(1 for x, y in pts if y == v)
        col = sum(1 for x, y in pts if x == u)
        if row > 1 and col > 1:
            return False
    return True


def naive_gamma_thin(rows, pad=2):
    """Smallest thin spanning set inside the box padded by ``pad`` on both sides."""
    n, m = rows[0] + pad, len(rows) + pad
    cells = [(u, v) for v in range(m) for u in range(n)]
    for s in range(0, n * m + 1):
        for a in combinations(cells, s):
            if is_thin(a) and naive_spans(rows, a, n, m):
                return s
    raise AssertionError


def partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for p in range(min(n, cap), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


if __name__ == "__main__":
    import json
    import sys

    what = sys.argv[1] if len(sys.argv) > 1 else "gamma"
    out = {}
    if what == "gamma":
        for size in range(0, 7):
            for rows in partitions(size):
                out[",".join(map(str, rows))] = naive_gamma(rows)
    elif what == "thin":
        for size in range(1, 6):
            for rows in partitions(size):
                out[",".join(map(str, rows))] = naive_gamma_thin(rows)
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
