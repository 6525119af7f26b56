"""The energy-entropy functional, the large-deviation rate and related bounds.

All arithmetic is exact (``fractions.Fraction``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InternalError, InvalidInputError
from .extremal import (_Counter, canonical_sets, gamma, masks_cols)
from .flow import FlowNetwork
from .growth import PointSet, enhancement, spans, spans_enhanced, spans_masks
from .young import YoungDiagram, outer_boundary, partitions, shrink

ZERO = Fraction(0)


def as_rational(x) -> Fraction:
    """Exact rational from a Fraction, int, ``"p/q"`` or decimal string.

    Floats are converted through their shortest decimal repr.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    try:
        return Fraction(repr(x) if isinstance(x, float) else str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational number: {x!r}") from exc


@dataclass(frozen=True)
class RateQuery:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = as_rational(self.alpha), as_rational(self.beta)
        if not (0 <= a <= 1 and 0 <= b <= 1):
            raise InvalidInputError(f"alpha and beta must lie in [0, 1], got {a}, {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def __iter__(self):
        return iter((self.alpha, self.beta))


def query(alpha, beta) -> RateQuery:
    return RateQuery(alpha, beta)


@dataclass
class RateResult:
    value: Fraction
    witness_A: PointSet | None = None
    witness_B: PointSet | None = None
    exact: bool = True
    extra: dict = field(default_factory=dict)


def energy(q: RateQuery, points) -> Fraction:
    pts = list(points)
    nx = len({u for u, _ in pts})
    ny = len({v for _, v in pts})
    return len(pts) - q.alpha * nx - q.beta * ny


# ---------------------------------------------------------------------------
# rho


def rho(q: RateQuery, a: PointSet) -> RateResult:
    """max over subsets B of |B| - alpha |pi_x B| - beta |pi_y B|, by one min cut.

    Items are points (profit 1) that require their column (cost alpha) and
    row (cost beta). The returned B is the minimal optimal subset.
    """
    pts = a.sorted()
    if not pts:
        return RateResult(ZERO, a, PointSet(frozenset(), a.box))
    d = math.lcm(q.alpha.denominator, q.beta.denominator)
    ca, cb = int(q.alpha * d), int(q.beta * d)
    cols = sorted({u for u, _ in pts})
    rows = sorted({v for _, v in pts})
    cidx = {u: 2 + len(pts) + i for i, u in enumerate(cols)}
    ridx = {v: 2 + len(pts) + len(cols) + i for i, v in enumerate(rows)}
    net = FlowNetwork(2 + len(pts) + len(cols) + len(rows))
    inf = d * (len(pts) + 1)
    for i, (u, v) in enumerate(pts):
        net.add_edge(0, 2 + i, d)
        net.add_edge(2 + i, cidx[u], inf)
        net.add_edge(2 + i, ridx[v], inf)
    for u in cols:
        net.add_edge(cidx[u], 1, ca)
    for v in rows:
        net.add_edge(ridx[v], 1, cb)
    cut = net.max_flow(0, 1)
    side = net.source_side(0)
    b = frozenset(p for i, p in enumerate(pts) if 2 + i in side)
    value = Fraction(len(pts) * d - cut, d)
    return RateResult(value, a, PointSet(b, a.box))


BRUTE_LIMIT = 16


def rho_bruteforce(q: RateQuery, a: PointSet) -> RateResult:
    """Exhaustive version of rho. The witness is the smallest optimal subset,
    ties broken lexicographically."""
    pts = a.sorted()
    if len(pts) > BRUTE_LIMIT:
        raise InvalidInputError(f"brute force limited to {BRUTE_LIMIT} points")
    best, best_key, best_set = ZERO, (0, ()), ()
    for mask in range(1, 1 << len(pts)):
        sub = tuple(p for i, p in enumerate(pts) if mask >> i & 1)
        val = energy(q, sub)
        key = (len(sub), sub)
        if val > best or (val == best and key < best_key):
            best, best_key, best_set = val, key, sub
    return RateResult(best, a, PointSet(frozenset(best_set), a.box))


def _rho_value(q: RateQuery, pts) -> Fraction:
    if q.alpha + q.beta < 1:
        return max(ZERO, energy(q, pts))
    return rho(q, PointSet(frozenset(pts), _bbox(pts))).value


def _bbox(pts):
    return (max([0] + [u + 1 for u, _ in pts]), max([0] + [v + 1 for _, v in pts]))


# ---------------------------------------------------------------------------
# line growth


def _open_unit(q: RateQuery):
    if q.alpha >= 1 or q.beta >= 1:
        raise InvalidInputError("line-growth formulas need alpha, beta < 1")


def rate_rect_recursion(a: int, b: int, q: RateQuery) -> Fraction:
    """Dynamic program for the rate of R_{a,b}."""
    _open_unit(q)
    al, be = q.alpha, q.beta
    if a < 0 or b < 0:
        raise InvalidInputError("rectangle sides must be nonnegative")
    table = [[ZERO] * (b + 1) for _ in range(a + 1)]
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            h = max(ZERO, -al + j * (1 - be)) + table[i - 1][j]
            v = max(ZERO, -be + i * (1 - al)) + table[i][j - 1]
            table[i][j] = min(h, v)
    return table[a][b]


def rate_rect_closed(a: int, b: int, q: RateQuery) -> Fraction:
    """Closed form for the rate of R_{a,b}."""
    _open_unit(q)
    al, be = q.alpha, q.beta
    if be > al:
        return rate_rect_closed(b, a, RateQuery(be, al))
    da = math.floor(be / (1 - al))
    db = math.floor(al / (1 - be))
    if b <= db or a <= da:
        return ZERO
    if db * (1 - be) <= be:
        return ((1 - al) * a * b + ((al - be) * db - be) * a - be * b
                - (1 - be) * da * db + be * da + be * db + be
                - max((1 - be) * db, (1 - al) * da))
    return ((1 - al) * a * b + al * db * a - be * b + be * db
            + min(-be * (db + 1) * a - (1 - be) * da * db + be * da + be - (1 - al) * da,
                  -db * a))


def rate_bootstrap_diag(theta: int, alpha) -> Fraction:
    """Rate of the threshold-theta triangle on the diagonal alpha = beta."""
    al = as_rational(alpha)
    if theta < 1:
        raise InvalidInputError("theta must be at least 1")
    if not 0 <= al < 1:
        raise InvalidInputError("alpha must lie in [0, 1)")
    k = -(-theta // 2)
    m = math.floor(1 / (1 - al))
    if m > k:
        return ZERO
    if theta % 2 == 0:
        return (k + m) * (k - m + 1) - al * (k + m + 2) * (k - m + 1)
    return ((k + m - 1) * (k - m) + k) - al * ((k + m + 1) * (k - m) + k + 1)


# ---------------------------------------------------------------------------
# support


class SupportRegion:
    """The closed region where the rate is positive, described cell by cell."""

    def __init__(self, z: YoungDiagram):
        self.z = z
        self.cells = outer_boundary(z)

    def margin(self, alpha, beta):
        al, be = as_rational(alpha), as_rational(beta)
        if not self.cells:
            return None
        return min(max(u * (1 - al) - be, v * (1 - be) - al) for u, v in self.cells)

    def contains(self, alpha, beta) -> bool:
        mg = self.margin(alpha, beta)
        return mg is None or mg >= 0

    def interior_contains(self, alpha, beta) -> bool:
        """Strict version: every cell has a positive margin, so the rate is positive."""
        mg = self.margin(alpha, beta)
        return mg is None or mg > 0

    def _beta_max(self, al):
        best = None
        for u, v in self.cells:
            h1 = u * (1 - al)
            if v > 0:
                h2 = 1 - al / v
            else:
                h2 = Fraction(10**9) if al == 0 else Fraction(-(10**9))
            h = max(h1, h2)
            best = h if best is None else min(best, h)
        return best

    def boundary(self, grid: int = 100) -> list[tuple[Fraction, Fraction]]:
        """Upper boundary beta*(alpha) as a polyline, with exact vertices."""
        if not self.cells:
            return [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))]
        lines = set()
        for u, v in self.cells:
            lines.add((Fraction(u), Fraction(-u)))
            if v > 0:
                lines.add((Fraction(1), Fraction(-1, v)))
        lines = sorted(lines)
        alphas = {Fraction(i, grid) for i in range(grid + 1)}
        for p1, q1 in lines:
            for level in (0, 1):
                if q1 != 0:
                    alphas.add((level - p1) / q1)
            for p2, q2 in lines:
                if q1 != q2:
                    alphas.add((p2 - p1) / (q1 - q2))
        out = []
        for al in sorted(x for x in alphas if 0 <= x <= 1):
            bm = self._beta_max(al)
            if bm >= 0:
                out.append((al, min(bm, Fraction(1))))
        return out


def support_region(z: YoungDiagram) -> SupportRegion:
    return SupportRegion(z)


# ---------------------------------------------------------------------------
# bounds


def rate_bounds(z: YoungDiagram, q: RateQuery, k: int | None = None, budget=None) -> dict:
    """Lower bound from the k-heavy part and the three upper bounds.

    With ``k=None`` the lower bound is maximized over k.
    """
    mx, mn = max(q.alpha, q.beta), min(q.alpha, q.beta)
    gam = gamma(z, budget).value
    ks = range(0, max(z.width, z.height) + 1) if k is None else [k]
    best_k, best = None, None
    for kk in ks:
        if kk < 0:
            raise InvalidInputError("k must be nonnegative")
        g = gamma(shrink(z, kk, "diag"), budget).value
        val = g * (1 - mx * (1 + Fraction(1, kk + 1)))
        if best is None or val > best:
            best_k, best = kk, val
    return {
        "lower": best,
        "k": best_k,
        "upper_area": (1 - mx) * z.cardinality(),
        "upper_gamma": 2 * (1 - mn) * gam,
        "upper_trivial": Fraction(gam),
    }


# ---------------------------------------------------------------------------
# search


def _thin_rows(counts, x0=0, y0=0):
    """Row i gets counts[i] points, each in its own column."""
    pts, col = [], x0
    for i, k in enumerate(counts):
        for _ in range(k):
            pts.append((col, y0 + i))
            col += 1
    return pts


def _thin_cols(counts, x0=0, y0=0):
    return [(u, v) for v, u in _thin_rows(counts, y0, x0)]


def seed_sets(z: YoungDiagram, q: RateQuery) -> dict[str, list]:
    """Spanning constructions behind the upper bounds and the support formula."""
    seeds = {}
    wit = gamma(z).witness
    seeds["gamma_witness"] = wit.sorted()
    seeds["zero_set"] = [tuple(c) for c in z.cells()]
    seeds["rows_spread"] = _thin_rows(z.rows)
    seeds["cols_spread"] = _thin_cols(z.columns())
    a, b = wit.box
    rc = sorted(wit.row_counts().values(), reverse=True)
    cc = sorted(wit.col_counts().values(), reverse=True)
    seeds["split_witness"] = _thin_rows(rc, 2 * a, 0) + _thin_cols(cc, 0, 2 * b)
    seeds["line_sequence"] = line_sequence(z, q)[1]
    cells = outer_boundary(z)
    big = max(max(u, v) for u, v in cells)
    for u0, v0 in cells:
        pts = []
        x = y = 0
        for _ in range(big):  # big rows with u0 points, each on a fresh column
            pts += [(x + j, y) for j in range(u0)]
            x += u0
            y += 1
        for _ in range(big):  # big columns with v0 points, each on a fresh row
            pts += [(x, y + j) for j in range(v0)]
            x += 1
            y += v0
        seeds[f"lines_{u0}_{v0}"] = pts
    return seeds


def line_sequence(z: YoungDiagram, q: RateQuery):
    """Best set built by filling whole lines one at a time.

    With k full columns and l full rows, a new row fills once it holds
    rows[l] - k points, a new column once it holds cols[k] - l points. Placing
    those points on fresh lines makes the blocks share no lines, so rho is
    the sum of the positive block energies. Returns (value, points).
    """
    al, be = q.alpha, q.beta
    cols = z.columns()

    @lru_cache(maxsize=None)
    def best(k, l):
        if not z.contains(k, l):
            return ZERO, ()
        x = max(0, z.rows[l] - k)
        y = max(0, cols[k] - l)
        h = max(ZERO, x * (1 - al) - be) + best(k, l + 1)[0]
        v = max(ZERO, y * (1 - be) - al) + best(k + 1, l)[0]
        if h <= v:
            return h, (("h", x),) + best(k, l + 1)[1]
        return v, (("v", y),) + best(k + 1, l)[1]

    value, plan = best(0, 0)
    pts = []
    nh = sum(1 for t, _ in plan if t == "h")
    nv = sum(1 for t, _ in plan if t == "v")
    # horizontal lines are rows 0.., vertical lines are columns 0..; their
    # extra points go on fresh rows/columns beyond those
    fresh_col, fresh_row = nv, nh
    hi = vi = 0
    for kind, cnt in plan:
        if kind == "h":
            for _ in range(cnt):
                pts.append((fresh_col, hi))
                fresh_col += 1
            hi += 1
        else:
            for _ in range(cnt):
                pts.append((vi, fresh_row))
                fresh_row += 1
            vi += 1
    return value, pts


def _spans_pts(z, pts) -> bool:
    n, m = _bbox(pts)
    return spans(z, PointSet(frozenset(pts), (max(n, z.width), max(m, z.height))))


def _cheap_lower(q, rows_counts, cols_counts, size, nx, ny):
    al, be = q.alpha, q.beta
    lb = max(ZERO, size - al * nx - be * ny)
    if rows_counts:
        lb = max(lb, max(rows_counts) * (1 - al) - be)
    if cols_counts:
        lb = max(lb, max(cols_counts) * (1 - be) - al)
    return lb


def rate_search(z: YoungDiagram, q: RateQuery, box_pad: int = 1, budget=None,
                max_size: int | None = None, use_seeds: bool = True) -> RateResult:
    """Smallest rho over spanning sets found by search.

    Candidates are the constructions from ``seed_sets`` plus every canonical
    set inside R_{a0+pad, b0+pad}. When alpha + beta < 1, sets larger than
    best / (1 - alpha - beta) cannot improve, so the box search is complete.
    Otherwise sizes are capped by ``max_size`` (default 2 gamma).
    The value is always an upper bound on the rate. ``exact`` is set only when
    it is certified: it meets the proven lower bound or a closed form.
    ``extra["complete_in_box"]`` records whether the box search was exhaustive.
    """
    if z.is_empty():
        return RateResult(ZERO, PointSet(frozenset(), (0, 0)), PointSet(frozenset(), (0, 0)))
    al, be = q.alpha, q.beta
    counter = _Counter(budget, f"rate_search({z})")
    gam = gamma(z).value
    bounds = rate_bounds(z, q)
    floor_ = max(ZERO, bounds["lower"])

    n, m = z.width + box_pad, z.height + box_pad
    if use_seeds:
        cands = seed_sets(z, q)
    else:
        # the zero-set itself always spans and lies in the box
        cands = {"zero_set": [tuple(c) for c in z.cells()]}
    best, best_pts, best_src = None, None, None
    for name, pts in cands.items():
        if _spans_pts(z, pts):
            val = _rho_value(q, pts)
            if best is None or val < best:
                best, best_pts, best_src = val, pts, name

    complete = True
    if al + be < 1:
        cap = int(best / (1 - al - be))
    else:
        cap = 2 * gam if max_size is None else max_size
        complete = cap >= n * m
    cap = min(cap, n * m)
    s = 1
    while best > floor_ and s <= cap:
        for rows in canonical_sets(n, m, s):
            counter.tick({"best": best, "lower": floor_})
            rc = [x.bit_count() for x in rows if x]
            cols = masks_cols(rows, n)
            cc = [x.bit_count() for x in cols if x]
            if _cheap_lower(q, rc, cc, s, len(cc), len(rc)) >= best:
                continue
            if not spans_masks(list(rows), cols, n, m, z.rows):
                continue
            pts = [(u, v) for v in range(m) for u in range(n) if rows[v] >> u & 1]
            val = _rho_value(q, pts)
            if val < best:
                best, best_pts, best_src = val, pts, "box_search"
                if al + be < 1:
                    cap = min(cap, int(best / (1 - al - be)))
                if best <= floor_:
                    break
        s += 1
        if al + be < 1:
            cap = min(cap, int(best / (1 - al - be)))

    pinned = best <= floor_
    if best < floor_:
        raise InternalError(f"search value {best} below the proven lower bound {floor_}")
    a_set = PointSet(frozenset(best_pts), _box_for(z, best_pts))
    b_set = rho(q, a_set).witness_B
    extra = {"source": best_src, "lower": floor_, "complete_in_box": complete, "box": (n, m),
             "nodes": counter.nodes}
    ref = closed_form_reference(z, q)
    if ref is not None:
        extra["closed_form"] = ref
        if best < ref:
            raise InternalError(f"search value {best} below the closed form {ref}")
    exact = pinned or (ref is not None and best == ref)
    return RateResult(best, a_set, b_set, exact, extra)


def _box_for(z, pts):
    n, m = _bbox(pts)
    return max(n, z.width), max(m, z.height)


def closed_form_reference(z: YoungDiagram, q: RateQuery):
    """Known exact rate for rectangles and (on the diagonal) triangles, else None."""
    if z.is_empty() or q.alpha >= 1 or q.beta >= 1:
        return None
    if len(set(z.rows)) == 1:
        return rate_rect_closed(z.width, z.height, q)
    theta = z.width
    if q.alpha == q.beta and z.rows == tuple(range(theta, 0, -1)):
        return rate_bootstrap_diag(theta, q.alpha)
    return None


def rate(z: YoungDiagram, q: RateQuery, **kw) -> RateResult:
    """The rate, by closed form where one applies and by ``rate_search`` otherwise.

    With alpha or beta equal to 1 every B has nonpositive energy, so the rate
    is 0 and z itself is a witness. Rectangles use the closed form, with the
    line-by-line construction as witness.
    """
    if z.is_empty() or max(q.alpha, q.beta) == 1:
        pts = [tuple(c) for c in z.cells()]
        a_set = PointSet(frozenset(pts), (z.width, z.height))
        return RateResult(ZERO, a_set, rho(q, a_set).witness_B, True, {"source": "trivial"})
    if len(set(z.rows)) == 1:
        value, pts = line_sequence(z, q)
        ref = rate_rect_closed(z.width, z.height, q)
        if value != ref or not _spans_pts(z, pts):
            raise InternalError(f"line construction {value} disagrees with closed form {ref}")
        a_set = PointSet(frozenset(pts), _box_for(z, pts))
        return RateResult(ref, a_set, rho(q, a_set).witness_B, True,
                          {"source": "closed_form", "closed_form": ref})
    return rate_search(z, q, **kw)


def rate_grid(z: YoungDiagram, alphas, betas, **kw) -> list[tuple[Fraction, Fraction, Fraction]]:
    out = []
    for al in alphas:
        for be in betas:
            out.append((as_rational(al), as_rational(be), rate(z, RateQuery(al, be), **kw).value))
    return out


# ---------------------------------------------------------------------------
# enhancement rate


def enhancement_rate(z: YoungDiagram, q: RateQuery, budget=None):
    """min |A| + (1-alpha) sum f + (1-beta) sum g over triples under which A spans.

    Returns (value, A, f, g). A is searched in the box spanned by z and the
    enhanced lines; enhanced dynamics are simulated with a margin box.
    """
    al, be = q.alpha, q.beta
    if z.is_empty():
        return ZERO, PointSet(frozenset(), (0, 0)), (), ()
    if al == 1:
        return ZERO, PointSet(frozenset(), (0, 0)), enhancement(z.rows), ()
    if be == 1:
        return ZERO, PointSet(frozenset(), (0, 0)), (), enhancement(z.columns())
    counter = _Counter(budget, f"enhancement_rate({z})")
    g0 = gamma(z)
    best = Fraction(g0.value)
    best_t = (g0.witness, (), ())
    fmax = int(best / (1 - al))
    gmax = int(best / (1 - be))
    for tf in range(0, fmax + 1):
        for tg in range(0, gmax + 1):
            cost = (1 - al) * tf + (1 - be) * tg
            if cost >= best:
                continue
            for f in partitions(tf):
                for g in partitions(tg):
                    n = max(z.width, len(g))
                    m = max(z.height, len(f))
                    rlab = list(f) + [0] * (m - len(f))
                    clab = list(g) + [0] * (n - len(g))
                    s = 0
                    while cost + s < best:
                        found = None
                        for rows in canonical_sets(n, m, s, rlab, clab):
                            counter.tick({"best": best})
                            pts = [(u, v) for v in range(m) for u in range(n) if rows[v] >> u & 1]
                            if spans_enhanced(z, f, g, pts):
                                found = pts
                                break
                        if found is not None:
                            best = cost + s
                            best_t = (PointSet(frozenset(found), (n, m)), f, g)
                            break
                        s += 1
    a, f, g = best_t
    return best, a, enhancement(f), enhancement(g)
