"""Monte Carlo spanning probabilities and random Young diagrams.

Every replicate draws from its own generator seeded by ``(seed, p_index,
replicate)``, so results do not depend on how replicates are spread over
worker threads.
"""
from __future__ import annotations

import bisect
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import BudgetExceededError, InvalidInputError
from .euclid import rost_height, vershik_height
from .growth import spans_masks
from .rate import RateQuery
from .young import YoungDiagram

DEFAULT_MAX_CELLS = 4_000_000
WILSON_Z = float(stats.norm.ppf(0.975))


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HG_THREADS", os.cpu_count() or 1)))
    except ValueError as exc:
        raise InvalidInputError("HG_THREADS must be an integer") from exc


def box_side(p: float, exponent) -> int:
    """ceil(p ** -exponent), robust to float noise at exact powers."""
    return max(1, math.ceil(p ** (-float(exponent)) - 1e-9))


@dataclass(frozen=True)
class McConfig:
    z: YoungDiagram
    q: RateQuery
    p_list: tuple
    replicates: int
    seed: int
    max_cells: int = DEFAULT_MAX_CELLS

    def __post_init__(self):
        ps = tuple(float(p) for p in self.p_list)
        if not ps or any(not 0 < p < 1 for p in ps):
            raise InvalidInputError("densities must lie in (0, 1)")
        if any(ps[i] <= ps[i + 1] for i in range(len(ps) - 1)):
            raise InvalidInputError("densities must be strictly decreasing")
        if self.replicates < 1:
            raise InvalidInputError("replicates must be positive")
        object.__setattr__(self, "p_list", ps)

    def sides(self, p: float) -> tuple[int, int]:
        return box_side(p, self.q.alpha), box_side(p, self.q.beta)


@dataclass
class McRow:
    p: float
    n: int
    m: int
    successes: int
    replicates: int

    @property
    def phat(self) -> float:
        return self.successes / self.replicates

    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.replicates)


@dataclass
class McEstimate:
    rows: list
    slope: float | None = None
    stderr: float | None = None
    extra: dict = field(default_factory=dict)


def wilson_interval(k: int, n: int, z: float = WILSON_Z) -> tuple[float, float]:
    if n <= 0:
        raise InvalidInputError("need at least one trial")
    ph = k / n
    den = 1 + z * z / n
    mid = (ph + z * z / (2 * n)) / den
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    lo = 0.0 if k == 0 else max(0.0, mid - half)
    hi = 1.0 if k == n else min(1.0, mid + half)
    return lo, hi


def sample_rows(rng: np.random.Generator, n: int, m: int, p: float) -> list[int]:
    """Row masks of an i.i.d. density-p subset of the n x m box.

    Each row gets a binomial number of points placed on distinct uniform
    columns, which has the same law as n independent coin flips.
    """
    counts = rng.binomial(n, p, size=m)
    rows = []
    for k in counts:
        mask = 0
        if k:
            for u in rng.choice(n, size=int(k), replace=False):
                mask |= 1 << int(u)
        rows.append(mask)
    return rows


def _cols_of(rows, n):
    cols = [0] * n
    for v, r in enumerate(rows):
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= 1 << v
            r ^= low
    return cols


def _spans_rows(z: YoungDiagram, rows, n, m) -> bool:
    # simulate in a box that also contains z
    bn, bm = max(n, z.width), max(m, z.height)
    rows = list(rows) + [0] * (bm - m)
    return spans_masks(rows, _cols_of(rows, bn), bn, bm, z.rows)


def _replicate(z, seed, pi, rep, p, n, m) -> bool:
    rng = np.random.default_rng([seed, pi, rep])
    return _spans_rows(z, sample_rows(rng, n, m, p), n, m)


def _count(z, seed, pi, reps, p, n, m) -> int:
    return sum(_replicate(z, seed, pi, r, p, n, m) for r in reps)


def _parallel_count(fn, n_reps: int, threads: int) -> int:
    threads = max(1, min(threads, n_reps))
    if threads == 1:
        return fn(range(n_reps))
    chunks = [range(i, n_reps, threads) for i in range(threads)]
    with ThreadPoolExecutor(threads) as ex:
        return sum(ex.map(fn, chunks))


def span_probability(cfg: McConfig, threads: int | None = None) -> McEstimate:
    """Estimate P(span) for each density; the slope is fitted when possible."""
    threads = default_threads() if threads is None else threads
    seed = int(cfg.seed) & (2 ** 64 - 1)
    rows = []
    for pi, p in enumerate(cfg.p_list):
        n, m = cfg.sides(p)
        if n * m > cfg.max_cells:
            raise BudgetExceededError(f"box {n}x{m} exceeds the cell cap {cfg.max_cells}",
                                      {"rows": [r.__dict__ for r in rows]})
        k = _parallel_count(lambda reps: _count(cfg.z, seed, pi, reps, p, n, m),
                            cfg.replicates, threads)
        rows.append(McRow(p, n, m, k, cfg.replicates))
    est = McEstimate(rows, extra={"fit": "weighted least squares of log phat on log p, "
                                         "weights 1/var via delta method, rows with phat in (0,1)"})
    usable = [r for r in rows if 0 < r.successes < r.replicates]
    if len(usable) >= 3:
        est.slope, est.stderr = slope_fit(est)
    return est


def slope_fit(est: McEstimate) -> tuple[float, float]:
    """Weighted least-squares slope of log phat against log p and its standard error.

    Var(log phat) is taken as (1 - phat) / (reps * phat).
    """
    use = [r for r in est.rows if 0 < r.successes < r.replicates]
    if len(use) < 3:
        raise InvalidInputError("slope fit needs at least 3 rows with 0 < phat < 1")
    x = np.log([r.p for r in use])
    y = np.log([r.phat for r in use])
    w = np.array([r.replicates * r.phat / (1 - r.phat) for r in use])
    xb = np.sum(w * x) / np.sum(w)
    yb = np.sum(w * y) / np.sum(w)
    sxx = np.sum(w * (x - xb) ** 2)
    slope = float(np.sum(w * (x - xb) * (y - yb)) / sxx)
    return slope, float(math.sqrt(1 / sxx))


def coupled_indicators(z: YoungDiagram, n: int, m: int, p_list, replicates: int, seed: int):
    """Spanning indicators for several densities driven by shared uniforms.

    Returns an array of shape (replicates, len(p_list)); since spanning is
    monotone in the initial set, each row is nondecreasing in p.
    """
    ps = [float(p) for p in p_list]
    out = np.zeros((replicates, len(ps)), dtype=bool)
    for rep in range(replicates):
        u = np.random.default_rng([int(seed), rep]).random((m, n))
        for j, p in enumerate(ps):
            occ = u < p
            rows = [int(sum(1 << int(c) for c in np.flatnonzero(occ[v]))) for v in range(m)]
            out[rep, j] = _spans_rows(z, rows, n, m)
    return out


# ---------------------------------------------------------------------------
# random Young diagrams


def rost_sample(n: int, seed) -> YoungDiagram:
    """n steps of corner growth, each adding a uniformly chosen addable cell."""
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    draws = rng.random(n)
    rows: list[int] = []
    corners = [0]  # row indices v whose cell (rows[v], v) is addable
    for t in range(n):
        v = corners[int(draws[t] * len(corners))]
        if v == len(rows):
            rows.append(0)
            corners.append(v + 1)  # a new row above is now addable
        rows[v] += 1
        # v stays addable iff it is still shorter than the row below
        if v > 0 and rows[v] == rows[v - 1]:
            corners.pop(bisect.bisect_left(corners, v))
        # row v + 1 becomes addable now that it is shorter than row v
        if v + 1 < len(rows) and rows[v + 1] == rows[v] - 1:
            bisect.insort(corners, v + 1)
    return YoungDiagram(tuple(rows))


def _parts_from_mults(mults) -> YoungDiagram:
    sizes = np.arange(len(mults), 0, -1)
    parts = np.repeat(sizes, np.asarray(mults)[::-1])
    return YoungDiagram(tuple(int(p) for p in parts))


def vershik_sample(n: int, seed, method: str = "pdc", max_tries: int = 1_000_000) -> YoungDiagram:
    """Uniform random partition of n.

    Part multiplicities m_i are independent geometric with P(m_i = k)
    proportional to x^(ik), x = exp(-pi / sqrt(6n)); conditioned on sum i*m_i
    = n the law is uniform. ``plain`` rejects until the sum hits n. ``pdc``
    draws m_2.. only and sets m_1 to the remainder r, accepting with
    probability x^r, which realises the same conditional law with far fewer
    rejections.
    """
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    if method not in ("pdc", "plain"):
        raise InvalidInputError(f"unknown method {method!r}")
    rng = np.random.default_rng(seed)
    x = math.exp(-math.pi / math.sqrt(6 * n))
    i = np.arange(1, n + 1)
    q = -np.expm1(i * math.log(x))  # success probabilities 1 - x^i
    for _ in range(max_tries):
        mults = rng.geometric(q) - 1
        if method == "plain":
            if int(np.dot(i, mults)) == n:
                return _parts_from_mults(mults)
            continue
        r = n - int(np.dot(i[1:], mults[1:]))
        if r < 0:
            continue
        if rng.random() < x ** r:
            mults[0] = r
            return _parts_from_mults(mults)
    raise BudgetExceededError(f"no sample after {max_tries} tries", {"tries": max_tries})


CURVES = {"rost": rost_height, "vershik": vershik_height}


def _diagram_polyline(y: YoungDiagram, s: float, R: float):
    """Boundary vertices of (y / s) clipped to [0, R]^2, from the y-axis to the x-axis."""
    cols = [min(c / s, R) for c in y.columns()]
    xs, ys = [0.0], [cols[0]]
    for u, h in enumerate(cols):
        x1 = min((u + 1) / s, R)
        nxt = cols[u + 1] if u + 1 < len(cols) and (u + 1) / s < R else 0.0
        xs.append(x1)
        ys.append(h)
        xs.append(x1)
        ys.append(nxt)
        if x1 >= R:
            break
    return np.array(xs), np.array(ys)


def _curve_polyline(fn, R: float, pitch: float):
    x = np.arange(0.0, R + pitch, pitch)
    x = np.minimum(x, R)
    h = np.minimum(fn(x), R)
    h[0] = min(R, float(np.minimum(fn(0.0), R)))
    xs = np.append(x, R)
    ys = np.append(h, 0.0)
    return xs, ys


def _rotated(xs, ys):
    xi, eta = xs - ys, xs + ys
    keep = np.concatenate([[True], np.diff(xi) > 0])
    return xi[keep], eta[keep]


def shape_distance(y: YoungDiagram, curve: str, radius, metric: str = "rotated") -> float:
    """Sup distance on [0, R]^2 between the diagram scaled by n^(-1/2) and a limit curve.

    Both regions are clipped to [0, R]^2. With ``metric="rotated"`` (default)
    the boundary height is x + y as a function of x - y, compared on a grid of
    pitch at most n^(-1/2); this frame is insensitive to the steep parts of
    the curves near the axes. ``metric="vertical"`` compares column heights
    with the range the curve sweeps over each column.
    """
    if y.is_empty():
        raise InvalidInputError("diagram must be nonempty")
    if curve not in CURVES:
        raise InvalidInputError(f"unknown curve {curve!r}")
    if metric not in ("rotated", "vertical"):
        raise InvalidInputError(f"unknown metric {metric!r}")
    fn = CURVES[curve]
    R = float(radius)
    s = math.sqrt(y.cardinality())
    if metric == "vertical":
        ncols = math.ceil(R * s)
        cols = np.zeros(ncols)
        have = np.array(y.columns()[:ncols], dtype=float)
        cols[: len(have)] = have
        top = np.minimum(cols / s, R)
        u = np.arange(ncols)
        hi = np.minimum(fn(u / s), R)
        lo = np.minimum(fn(np.minimum(u + 1, R * s) / s), R)
        return float(np.maximum(np.maximum(top - hi, lo - top), 0.0).max())
    pitch = 1.0 / s
    xi_y, eta_y = _rotated(*_diagram_polyline(y, s, R))
    xi_c, eta_c = _rotated(*_curve_polyline(fn, R, pitch / 4))
    grid = np.arange(-R, R + pitch / 2, pitch / 2)
    # outside a polyline's xi range the clipped region runs along an axis: eta = |xi|
    ey = np.interp(grid, xi_y, eta_y, left=np.nan, right=np.nan)
    ec = np.interp(grid, xi_c, eta_c, left=np.nan, right=np.nan)
    ey = np.where(np.isnan(ey), np.abs(grid), ey)
    ec = np.where(np.isnan(ec), np.abs(grid), ec)
    return float(np.max(np.abs(ey - ec)))


def boundary_points(y: YoungDiagram) -> list[tuple[float, float]]:
    """Corner points of the rescaled boundary, from (0, height) to (width, 0)."""
    s = math.sqrt(y.cardinality()) if y.cardinality() else 1.0
    cols = y.columns()
    pts = [(0.0, (cols[0] if cols else 0) / s)]
    for u, h in enumerate(cols):
        nxt = cols[u + 1] if u + 1 < len(cols) else 0
        pts.append(((u + 1) / s, h / s))
        if nxt != h:
            pts.append(((u + 1) / s, nxt / s))
    return pts
