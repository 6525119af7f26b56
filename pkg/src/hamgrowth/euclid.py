"""Continuous zero-sets, their discretizations and limit reference values.

A Euclidean zero-set is described by its nonincreasing height function h on
[0, inf): the region is the closure of {(x, y): y < h(x)}. Staircases,
rectangles and L-shapes are exact (``Fraction`` breakpoints); the two limit
curves are evaluated in floating point and truncated to [0, R]^2.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import InvalidInputError
from .extremal import gamma
from .rate import RateQuery, as_rational, rate_rect_closed
from .young import YoungDiagram

ROST_C = 6 ** 0.25
VERSHIK_K = math.pi / math.sqrt(6)

KINDS = ("staircase", "rectangle", "lshape", "rost", "vershik")


def rost_height(x):
    """Height of the corner-growth limit curve sqrt(x) + sqrt(y) = 6^(1/4)."""
    x = np.asarray(x, dtype=float)
    out = np.where(x < ROST_C ** 2, (ROST_C - np.sqrt(np.clip(x, 0, None))) ** 2, 0.0)
    return out if out.ndim else float(out)


def vershik_height(x):
    """Height of exp(-kx) + exp(-ky) = 1 with k = pi / sqrt(6)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = -np.log1p(-np.exp(-VERSHIK_K * x)) / VERSHIK_K
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EuclideanZeroSet:
    kind: str
    steps: tuple = ()          # staircase only: ((x_end, height), ...)
    params: tuple = ()         # rectangle (a, b); lshape (a, w)
    scale: Fraction = Fraction(1)
    radius: float | None = None  # truncation for curves

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "scale", as_rational(self.scale))
        if self.scale <= 0:
            raise InvalidInputError("scale must be positive")
        if self.kind in ("staircase", "rectangle", "lshape"):
            steps = tuple((as_rational(x), as_rational(h)) for x, h in _steps_of(self))
            xs = [x for x, _ in steps]
            hs = [h for _, h in steps]
            if any(x <= 0 for x in xs) or any(h <= 0 for h in hs):
                raise InvalidInputError("breakpoints and heights must be positive")
            if any(xs[i] >= xs[i + 1] for i in range(len(xs) - 1)):
                raise InvalidInputError("breakpoints must increase")
            if any(hs[i] < hs[i + 1] for i in range(len(hs) - 1)):
                raise InvalidInputError("heights must be nonincreasing")
            object.__setattr__(self, "steps", steps)
            object.__setattr__(self, "params", tuple(as_rational(p) for p in self.params))
        elif self.radius is not None and self.radius <= 0:
            raise InvalidInputError("radius must be positive")

    @property
    def exact(self) -> bool:
        return self.kind not in ("rost", "vershik")

    def bounded(self) -> bool:
        return self.exact or self.kind == "rost" or self.radius is not None

    def width(self):
        if self.exact:
            return self.steps[-1][0] if self.steps else Fraction(0)
        if self.kind == "rost":
            full = float(self.scale) * ROST_C ** 2
            return full if self.radius is None else min(full, self.radius)
        return self.radius

    def height(self, x):
        """Height just left of x, i.e. the largest y with [x - eps, x] x [0, y] inside."""
        if self.exact:
            x = as_rational(x)
            for xe, h in self.steps:
                if x <= xe:
                    return h
            return Fraction(0)
        s = float(self.scale)
        fn = rost_height if self.kind == "rost" else vershik_height
        h = s * fn(float(x) / s)
        if self.radius is not None:
            if float(x) > self.radius:
                return 0.0
            h = min(h, self.radius)
        return h

    def scaled(self, c) -> "EuclideanZeroSet":
        c = as_rational(c)
        r = None if self.radius is None else self.radius * float(c)
        return EuclideanZeroSet(self.kind, tuple((x * c, h * c) for x, h in self.steps),
                                self.params, self.scale * c, r)


def _steps_of(e: EuclideanZeroSet):
    s = as_rational(e.scale)
    if e.kind == "rectangle":
        a, b = (as_rational(p) for p in e.params)
        return ((a * s, b * s),) if a > 0 and b > 0 else ()
    if e.kind == "lshape":
        a, w = (as_rational(p) for p in e.params)
        if a < w:
            raise InvalidInputError("lshape needs a >= w")
        if a == w:
            return ((a * s, a * s),)
        return ((w * s, a * s), (a * s, w * s))
    return e.steps


def staircase(steps) -> EuclideanZeroSet:
    """Staircase from ((x_end, height), ...); an empty tuple is the empty set."""
    return EuclideanZeroSet("staircase", tuple(steps))


def rectangle(a, b) -> EuclideanZeroSet:
    return EuclideanZeroSet("rectangle", params=(as_rational(a), as_rational(b)))


def lshape(a, w=1) -> EuclideanZeroSet:
    """Union of the a x w and w x a rectangles."""
    return EuclideanZeroSet("lshape", params=(as_rational(a), as_rational(w)))


def rost_curve(radius=None) -> EuclideanZeroSet:
    return EuclideanZeroSet("rost", radius=radius)


def vershik_curve(radius=None) -> EuclideanZeroSet:
    return EuclideanZeroSet("vershik", radius=radius)


def parse_euclid(text: str) -> EuclideanZeroSet:
    """Parse ``rect:A,B``, ``lshape:A[,W]``, ``rost[:R]``, ``vershik:R``,
    ``stairs:X@H,X@H,...`` or ``empty``."""
    s = text.strip()
    try:
        kind, _, rest = s.partition(":")
        if kind == "empty":
            return staircase(())
        if kind == "rect":
            a, b = rest.split(",")
            return rectangle(a, b)
        if kind == "lshape":
            parts = rest.split(",")
            return lshape(*parts)
        if kind == "rost":
            return rost_curve(float(rest) if rest else None)
        if kind == "vershik":
            return vershik_curve(float(rest) if rest else None)
        if kind == "stairs":
            steps = [tuple(p.split("@")) for p in rest.split(",") if p]
            return staircase(steps)
    except InvalidInputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InvalidInputError(f"cannot parse euclidean zero-set {text!r}: {exc}") from exc
    raise InvalidInputError(f"cannot parse euclidean zero-set {text!r}")


# ---------------------------------------------------------------------------
# discretization and area


def discretize(e: EuclideanZeroSet, n: int) -> YoungDiagram:
    """Largest diagram whose cells, shrunk by 1/n, lie inside e.

    Column u has height floor(n * h((u+1)/n)) since h is nonincreasing.
    """
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    if not e.bounded():
        raise InvalidInputError("unbounded zero-set needs a truncation radius")
    cols = []
    u = 0
    while True:
        x = Fraction(u + 1, n)
        if e.exact:
            c = math.floor(n * e.height(x))
        else:
            # guard against float noise right at integer heights
            c = math.floor(n * e.height(float(x)) + 1e-9)
        if c <= 0:
            break
        cols.append(c)
        u += 1
    return YoungDiagram(cols).transpose() if cols else YoungDiagram()


def area(e: EuclideanZeroSet):
    """Exact area for staircases, numerical (truncated) area for curves."""
    if e.exact:
        prev = Fraction(0)
        tot = Fraction(0)
        for x, h in e.steps:
            tot += (x - prev) * h
            prev = x
        return tot
    w = e.width()
    if w is None:
        return float(e.scale) ** 2  # both curves enclose unit area
    val, _ = integrate.quad(lambda x: e.height(x), 0.0, w, limit=200)
    return val


def tail(e: EuclideanZeroSet) -> float:
    """Area lost to truncation (0 for exact kinds)."""
    if e.exact:
        return 0.0
    return float(e.scale) ** 2 - float(area(e))


def perimeter(e: EuclideanZeroSet):
    """Boundary length of the (truncated) region; for monotone regions 2(width + height)."""
    w = e.width()
    h = e.height(0) if e.exact else e.height(1e-12)
    return 2 * (w + h)


def area_gap(e: EuclideanZeroSet, n: int) -> float:
    return abs(discretize(e, n).cardinality() / n ** 2 - float(area(e)))


# ---------------------------------------------------------------------------
# limits


def gamma_limit(e: EuclideanZeroSet):
    """Known limit of gamma(Z_n)/n^2, or None."""
    s2 = e.scale ** 2 if e.exact else None
    if e.exact and not e.steps:
        return Fraction(0)
    if e.kind == "rectangle":
        a, b = e.params
        return a * b * s2
    if e.kind == "lshape":
        a, w = e.params
        return a * w * s2
    return None


def _series_entry(e, n, budget):
    z = discretize(e, n)
    return n, Fraction(gamma(z, budget).value, n * n)


def scaled_gamma_series(e: EuclideanZeroSet, n_list, budget=None, threads: int = 1):
    """[(n, gamma(Z_n)/n^2, reference)] with the known limit as reference (or None)."""
    ref = gamma_limit(e)
    ns = [int(n) for n in n_list]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(lambda n: _series_entry(e, n, budget), ns))
    else:
        rows = [_series_entry(e, n, budget) for n in ns]
    return [(n, v, ref) for n, v in rows]


def _pow_three_halves(x: Fraction):
    """x^(3/2), exact when x is a rational square, else float."""
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return x * Fraction(num, den)
    return float(x) ** 1.5


def reference_values(e: EuclideanZeroSet, q: RateQuery, gamma_tilde=None, area_value=None) -> dict:
    """Closed-form limit values and two-sided bounds that apply to e.

    ``I_lower``/``I_upper`` are the general bounds from the limiting gamma
    and area (supplied estimates are used when no exact value is known).
    """
    al, be = q.alpha, q.beta
    hi, lo = max(al, be), min(al, be)
    g = gamma_limit(e)
    if g is None:
        g = gamma_tilde
    ar = area(e) if e.exact else area_value
    out: dict = {}
    if ar is not None:
        out["area"] = ar
    if g is not None:
        g = as_rational(g) if not isinstance(g, float) else g
        out["gamma"] = g
        out["I_lower"] = (1 - hi) * g
        ups = [2 * (1 - lo) * g, g]
        if ar is not None:
            ups.append((1 - hi) * ar)
        out["I_upper"] = min(ups)
        if ar is not None:
            out["slope_at_10"] = ar
    if e.kind == "rectangle":
        a, b = e.params
        out["I"] = (1 - hi) * a * b * e.scale ** 2
    if e.kind == "lshape":
        a, w = e.params
        s2 = (w * e.scale) ** 2
        r = a / w  # the shape is w*scale times the unit-width L with arm r
        out["gamma_thin"] = 2 * (r - 1) * s2
        out["slope_at_11"] = out["gamma_thin"]
        if al == be:
            if r >= 2:
                out["I_edge_lower"] = 2 * (r - 1) * ((1 - al) - 2 * (1 - al) ** 2) * s2
                out["I_edge_upper"] = 2 * (r - 1) * (1 - al) * s2
            if r >= 3 and 0 < al < 1:
                low = r - 2 * al - 9 * r * _pow_three_halves(al)
                out["I_arm_lower"] = low * s2
                out["I_arm_upper"] = (r - 2 * al) * s2
    return out


def rect_convergence(q: RateQuery, n_list, a=1, b=1):
    """[(n, I(R_{ceil(an), ceil(bn)})/n^2, limit, gap)] from the closed form."""
    a, b = as_rational(a), as_rational(b)
    limit = (1 - max(q.alpha, q.beta)) * a * b
    rows = []
    for n in n_list:
        val = rate_rect_closed(math.ceil(a * n), math.ceil(b * n), q) / (n * n)
        rows.append((n, val, limit, val - limit))
    return rows


def convergence_constant(q: RateQuery, a=1, b=1, n_max: int = 12):
    """Constant C with |gap(n)| <= C/n for every n >= 1, for integer a, b.

    Past n0 = floor(alpha/(1-beta)) + floor(beta/(1-alpha)) + 2 the quantity
    n^2 * gap(n) is affine in n, c1*n + c0, so |gap| <= (|c1| + |c0|/n0)/n
    there; below n0 the finitely many values are taken directly. Returns
    (C, (c1, c0), n0). Raises InvalidInputError if the affine tail fails to
    hold on the checked range (n0 .. n0 + n_max).
    """
    a, b = int(a), int(b)
    al, be = q.alpha, q.beta
    n0 = math.floor(al / (1 - be)) + math.floor(be / (1 - al)) + 2
    ns = list(range(n0, n0 + n_max + 1))
    vals = [g * n * n for n, _, _, g in rect_convergence(q, ns, a, b)]
    c1 = vals[1] - vals[0]
    c0 = vals[0] - c1 * n0
    for n, v in zip(ns, vals):
        if v != c1 * n + c0:
            raise InvalidInputError("scaled gap is not affine on the checked range")
    c = abs(c1) + abs(c0) / n0
    for n, _, _, g in rect_convergence(q, range(1, n0), a, b):
        c = max(c, abs(g) * n)
    return c, (c1, c0), n0
