"""Smallest spanning sets and their bounds.

Exact values come from exhaustive search over canonical representatives:
spanning is invariant under permuting rows and columns, so it is enough to
look at 0-1 matrices whose row counts and column counts are nonincreasing and
whose rows (columns) with equal counts appear in decreasing lexicographic
order. Alternately sorting rows and columns within those blocks strictly
increases the row-major reading of the matrix, so every orbit contains such a
representative.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError, InvalidInputError
from .growth import (PointSet, enhancement, from_masks, spans, spans_enhanced,
                     spans_masks)
from .young import (YoungDiagram, corner_rectangles, max_rectangle,
                    outer_boundary, partitions, shrink, triangle)

DEFAULT_BUDGET = 2_000_000


def default_budget() -> int:
    try:
        return int(os.environ.get("HG_BUDGET_NODES", DEFAULT_BUDGET))
    except ValueError:
        raise InvalidInputError("HG_BUDGET_NODES must be an integer") from None


class _Counter:
    def __init__(self, budget, what):
        self.budget = default_budget() if budget is None else int(budget)
        self.nodes = 0
        self.what = what

    def tick(self, bounds=None):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"{self.what}: node budget {self.budget} exceeded", bounds)


# ---------------------------------------------------------------------------
# canonical enumeration


def _blocks(labels):
    out = []
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] != labels[start]:
            out.append((start, i - start))
            start = i
    return out


def _count_vectors(total, blocks, max_part):
    """Count vectors, nonincreasing inside each block, summing to total."""
    if not blocks:
        if total == 0:
            yield ()
        return
    (_, length), rest = blocks[0], blocks[1:]
    room = sum(l for _, l in rest) * max_part
    for here in range(min(total, length * max_part), -1, -1):
        if total - here > room:
            break
        for p in partitions(here, max_part=max_part, max_len=length):
            head = p + (0,) * (length - len(p))
            for tail in _count_vectors(total - here, rest, max_part):
                yield head + tail


def _gale_ryser(r, c) -> bool:
    if sum(r) != sum(c):
        return False
    cs = sorted(c, reverse=True)
    conj = [sum(1 for x in r if x > k) for k in range(len(cs))]
    a = b = 0
    for k in range(len(cs)):
        a += cs[k]
        b += conj[k]
        if a > b:
            return False
    return True


def _fill(r, c, n, m, row_lab, col_lab):
    """0-1 matrices with row sums r and column sums c in canonical form."""
    rows = [0] * m
    placed = [0] * n
    # tie[j]: columns j and j+1 are interchangeable and equal so far
    tie = [j + 1 < n and col_lab[j] == col_lab[j + 1] and c[j] == c[j + 1] for j in range(n)]
    rows_after = [sum(1 for x in r[i + 1:] if x > 0) for i in range(m)]
    cmp_prev = [i > 0 and row_lab[i] == row_lab[i - 1] and r[i] == r[i - 1] for i in range(m)]

    def row_rec(i):
        if i == m:
            yield rows
            return
        if r[i] == 0:
            rows[i] = 0
            yield from row_rec(i + 1)
            return
        yield from cell_rec(i, 0, r[i], cmp_prev[i], 0)

    def cell_rec(i, j, left, eq_prev, mask):
        if j == n:
            if left == 0:
                rows[i] = mask
                yield from row_rec(i + 1)
            return
        if left > n - j:
            return
        prev_bit = (rows[i - 1] >> j) & 1 if eq_prev else 1
        cur_left = (mask >> (j - 1)) & 1 if j > 0 else 1
        for bit in (1, 0):
            if bit and (left == 0 or placed[j] >= c[j]):
                continue
            if not bit and c[j] - placed[j] > rows_after[i]:
                continue
            if bit > prev_bit:
                continue
            if j > 0 and tie[j - 1] and bit > cur_left:
                continue
            untie = j > 0 and tie[j - 1] and cur_left > bit
            if untie:
                tie[j - 1] = False
            placed[j] += bit
            yield from cell_rec(i, j + 1, left - bit, eq_prev and bit == prev_bit,
                                mask | (bit << j))
            placed[j] -= bit
            if untie:
                tie[j - 1] = True

    yield from row_rec(0)


def canonical_sets(n: int, m: int, size: int, row_lab=None, col_lab=None):
    """Canonical representatives of size-``size`` subsets of R_{n,m}.

    ``row_lab``/``col_lab`` restrict the permutation group to lines sharing a
    label (labels must form contiguous blocks). Yields lists of row masks;
    the list is reused, copy it to keep it.
    """
    row_lab = list(row_lab) if row_lab is not None else [0] * m
    col_lab = list(col_lab) if col_lab is not None else [0] * n
    if size > n * m:
        return
    rblocks, cblocks = _blocks(row_lab), _blocks(col_lab)
    cvecs = list(_count_vectors(size, cblocks, m))
    for r in _count_vectors(size, rblocks, n):
        for c in cvecs:
            if _gale_ryser(r, c):
                yield from _fill(r, c, n, m, row_lab, col_lab)


def masks_cols(rows, n):
    cols = [0] * n
    for v, mask in enumerate(rows):
        x = mask
        while x:
            low = x & -x
            cols[low.bit_length() - 1] |= 1 << v
            x ^= low
    return cols


# ---------------------------------------------------------------------------
# gamma


@dataclass
class GammaResult:
    value: int
    witness: PointSet
    lower_bounds: dict = field(default_factory=dict)
    upper_bound: int = 0
    nodes: int = 0
    extra: dict = field(default_factory=dict)


_GAMMA_CACHE: dict[tuple, GammaResult] = {}


def gamma(z: YoungDiagram, budget=None) -> GammaResult:
    """Exact minimum size of a spanning set, with a witness inside R_{a0,b0}."""
    key = z.rows
    if key in _GAMMA_CACHE:
        return _GAMMA_CACHE[key]
    n, m = z.width, z.height
    if z.is_empty():
        res = GammaResult(0, PointSet(frozenset(), (0, 0)), {"quarter_area": 0}, 0)
        _GAMMA_CACHE[key] = res
        return res
    bounds = gamma_bounds(z, budget=budget)
    lower = max(int(math.ceil(v)) for v in bounds["lower"].values())
    upper = bounds["upper"]
    counter = _Counter(budget, f"gamma({z})")
    for s in range(lower, upper + 1):
        for rows in canonical_sets(n, m, s):
            counter.tick({"lower": s, "upper": upper})
            cols = masks_cols(rows, n)
            if spans_masks(list(rows), cols, n, m, z.rows):
                res = GammaResult(s, from_masks(rows, n, m), bounds["lower"], upper, counter.nodes)
                _GAMMA_CACHE[key] = res
                return res
    raise AssertionError("the diagram itself always spans")  # pragma: no cover


def gamma_value(z: YoungDiagram, budget=None) -> int:
    return gamma(z, budget).value


def _gamma_or_lower(z: YoungDiagram, budget) -> int:
    """Exact gamma when affordable, otherwise the best cheap lower bound."""
    if z.is_empty():
        return 0
    if z.rows in _GAMMA_CACHE:
        return _GAMMA_CACHE[z.rows].value
    try:
        return gamma(z, budget).value
    except BudgetExceededError:
        return max(_quarter(z), max_rectangle(z)[2])


def _quarter(z):
    return -(-z.cardinality() // 4)


def lb_general(z: YoungDiagram, a: int, b: int, y: YoungDiagram, self_bound: int,
               sub_budget=None) -> Fraction | None:
    """Half the minimum over the outer boundary of y of the mass-plus-residual terms.

    ``self_bound`` is a lower bound used where the term needs gamma(z) itself
    (k = 0 or l = 0). Returns None for an empty y.
    """
    if a < 1 or b < 1 or not (len(z.rows) >= b and z.rows[b - 1] >= a):
        raise InvalidInputError(f"R_{{{a},{b}}} is not contained in the zero-set")
    if y.width > a - 1 or y.height > b - 1:
        raise InvalidInputError("inner diagram must lie in R_{a-1,b-1}")
    cells = outer_boundary(y)
    if not cells:
        return None
    best = None
    for k, l in cells:
        gd = self_bound if l == 0 else _gamma_or_lower(shrink(z, l, "down"), sub_budget)
        gl = self_bound if k == 0 else _gamma_or_lower(shrink(z, k, "left"), sub_budget)
        term = k * b + l * a - k * l + gd + gl
        best = term if best is None else min(best, term)
    return Fraction(best, 2)


def gamma_bounds(z: YoungDiagram, rect=None, y=None, budget=None) -> dict:
    """Quarter-area, line-growth and lb-general lower bounds, and the trivial upper bound."""
    card = z.cardinality()
    line = max_rectangle(z)[2]
    out = {"quarter_area": _quarter(z), "line_growth": line}
    sub_budget = 20_000 if budget is None else min(int(budget), 20_000)
    if rect is not None or y is not None:
        if rect is None or y is None:
            raise InvalidInputError("lb-general needs both a rectangle and an inner diagram")
        val = lb_general(z, rect[0], rect[1], y, max(out.values()), sub_budget)
        if val is not None:
            out["lb_general"] = val
    elif card > 0:
        # default driver: every maximal rectangle with every staircase inside it,
        # iterated because terms with k = 0 or l = 0 reuse the current bound
        best = max(out.values())
        while True:
            cur = best
            for a, b in corner_rectangles(z):
                for i in range(1, min(a, b)):
                    val = lb_general(z, a, b, triangle(i), cur, sub_budget)
                    if val is not None:
                        cur = max(cur, math.ceil(val))
                        out["lb_general"] = max(out.get("lb_general", 0), val)
            if cur <= best:
                break
            best = cur
    return {"lower": out, "upper": card}


# ---------------------------------------------------------------------------
# thin sets


def thin_points(f, g) -> list[tuple[int, int]]:
    """Canonical thin arrangement: row i holds f_i points, each alone in its column;
    then column (sum f + j) holds g_j points, each alone in its row."""
    pts = []
    col = 0
    for i, k in enumerate(f):
        for _ in range(k):
            pts.append((col, i))
            col += 1
    row = len(f)
    for j, k in enumerate(g):
        for _ in range(k):
            pts.append((col + j, row))
            row += 1
    return pts


def is_thin(points) -> bool:
    pts = set(points)
    rc, cc = {}, {}
    for u, v in pts:
        rc[v] = rc.get(v, 0) + 1
        cc[u] = cc.get(u, 0) + 1
    return all(rc[v] == 1 or cc[u] == 1 for u, v in pts)


def _spans_points(z, pts) -> bool:
    n = max([z.width] + [u + 1 for u, _ in pts])
    m = max([z.height] + [v + 1 for _, v in pts])
    return spans(z, PointSet(frozenset(pts), (n, m)))


def _thin_pairs(s):
    """(f, g) with sum s; singletons are always listed in f."""
    for t in range(s, -1, -1):
        for f in partitions(t):
            for g in partitions(s - t):
                if g and g[-1] < 2:
                    continue
                yield f, g


def gamma_thin(z: YoungDiagram, budget=None) -> GammaResult:
    """Smallest thin spanning set (each point alone on its row or its column)."""
    if z.is_empty():
        return GammaResult(0, PointSet(frozenset(), (0, 0)), {}, 0, extra={"f": (), "g": ()})
    gam = gamma(z, budget).value
    counter = _Counter(budget, f"gamma_thin({z})")
    for s in range(gam, 2 * gam + 1):
        for f, g in _thin_pairs(s):
            counter.tick({"lower": s, "upper": 2 * gam})
            pts = thin_points(f, g)
            if _spans_points(z, pts):
                n = max([z.width] + [u + 1 for u, _ in pts])
                m = max([z.height] + [v + 1 for _, v in pts])
                return GammaResult(s, PointSet(frozenset(pts), (n, m)), {"gamma": gam},
                                   2 * gam, counter.nodes, {"f": f, "g": g})
    raise AssertionError("a thin spanning set of size 2*gamma always exists")  # pragma: no cover


def gamma_bar_thin(z: YoungDiagram, budget=None) -> tuple[int, tuple, tuple]:
    """Least total enhancement mass under which the empty set spans."""
    if z.is_empty():
        return 0, (), ()
    counter = _Counter(budget, f"gamma_bar_thin({z})")
    # f = rows of z always works, so |z| caps the search
    for s in range(0, z.cardinality() + 1):
        for t in range(s, -1, -1):
            for f in partitions(t):
                for g in partitions(s - t):
                    counter.tick({"lower": s, "upper": z.cardinality()})
                    if spans_enhanced(z, f, g):
                        return s, enhancement(f), enhancement(g)
    raise AssertionError("enhancing by the rows of z always spans")  # pragma: no cover


# ---------------------------------------------------------------------------
# constructions and projections


def two_y_double(a: PointSet) -> PointSet:
    """Two disjoint translated Young diagrams on disjoint lines, of size 2|a|.

    Columns and then rows of a are sorted by decreasing count; every column
    with k points is replaced by k stacked sites above the doubled bounding
    box, every row with k points by k sites to its right.
    """
    pts = a.points
    if not pts:
        return PointSet(frozenset(), a.box)
    cc = {}
    rc = {}
    for u, v in pts:
        cc[u] = cc.get(u, 0) + 1
        rc[v] = rc.get(v, 0) + 1
    ccounts = sorted(cc.values(), reverse=True)
    rcounts = sorted(rc.values(), reverse=True)
    w, h = len(ccounts), len(rcounts)
    out = set()
    for u, k in enumerate(ccounts):
        for j in range(k):
            out.add((u, h + j))
    for v, k in enumerate(rcounts):
        for j in range(k):
            out.add((2 * w + j, v))
    n = max(max(u for u, _ in out) + 1, a.box[0])
    m = max(max(v for _, v in out) + 1, a.box[1])
    return PointSet(frozenset(out), (n, m))


def heavy_part(a: PointSet, k: int) -> PointSet:
    """Points whose row or column holds more than k points of a."""
    rc = a.row_counts()
    cc = a.col_counts()
    keep = frozenset(p for p in a.points if rc[p[1]] > k or cc[p[0]] > k)
    return PointSet(keep, a.box)


def projections(points) -> tuple[int, int]:
    pts = list(points)
    return len({u for u, _ in pts}), len({v for _, v in pts})
