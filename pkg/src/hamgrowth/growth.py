"""The neighborhood growth map, its fixpoint and spanning checks.

Configurations live in a finite box R_{N,M}. Internally each horizontal line is
an int bit mask (bit u set means (u, v) occupied) and each vertical line is a
mask over rows, so a sweep costs O(N + M) big-int operations.
"""
from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from typing import Iterable

from .errors import InternalError, InvalidInputError
from .young import YoungDiagram


@dataclass(frozen=True)
class PointSet:
    points: frozenset
    box: tuple[int, int]

    def __post_init__(self):
        pts = frozenset((int(u), int(v)) for u, v in self.points)
        n, m = (int(x) for x in self.box)
        if n < 0 or m < 0:
            raise InvalidInputError("box sides must be nonnegative")
        bad = [p for p in pts if not (0 <= p[0] < n and 0 <= p[1] < m)]
        if bad:
            raise InvalidInputError(f"points outside box {n}x{m}: {sorted(bad)[:5]}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "box", (n, m))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points, key=lambda p: (p[1], p[0])))

    def __contains__(self, p):
        return tuple(p) in self.points

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self.points, key=lambda p: (p[1], p[0]))

    def row_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, v in self.points:
            out[v] = out.get(v, 0) + 1
        return out

    def col_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for u, _ in self.points:
            out[u] = out.get(u, 0) + 1
        return out

    def with_box(self, box) -> "PointSet":
        return PointSet(self.points, tuple(box))

    def is_full(self) -> bool:
        return len(self.points) == self.box[0] * self.box[1]

    def transpose(self) -> "PointSet":
        return PointSet(frozenset((v, u) for u, v in self.points), (self.box[1], self.box[0]))


def point_set(points: Iterable, box=None, z: YoungDiagram | None = None) -> PointSet:
    """Build a PointSet; the default box is the bounding rectangle of z and the points."""
    pts = frozenset((int(u), int(v)) for u, v in points)
    if box is None:
        n = max([z.width if z else 0] + [u + 1 for u, _ in pts])
        m = max([z.height if z else 0] + [v + 1 for _, v in pts])
        box = (n, m)
    return PointSet(pts, tuple(box))


def full_box(n: int, m: int) -> PointSet:
    return PointSet(frozenset((u, v) for u in range(n) for v in range(m)), (n, m))


def enhancement(values=()) -> tuple[int, ...]:
    """Validate an enhancement sequence and trim trailing zeros."""
    vals = [int(x) for x in values]
    if any(x < 0 for x in vals):
        raise InvalidInputError("enhancement values must be nonnegative")
    if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
        raise InvalidInputError("enhancement values must be nonincreasing")
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


def _pad(seq, n):
    seq = tuple(seq)[:n]
    return seq + (0,) * (n - len(seq))


# ---------------------------------------------------------------------------
# mask kernel


def to_masks(points, n: int, m: int):
    rows = [0] * m
    cols = [0] * n
    for u, v in points:
        rows[v] |= 1 << u
        cols[u] |= 1 << v
    return rows, cols


def from_masks(rows, n: int, m: int) -> PointSet:
    pts = [(u, v) for v in range(m) for u in range(n) if rows[v] >> u & 1]
    return PointSet(frozenset(pts), (n, m))


def _sweep(rows, cols, n, m, zrows, f, g):
    """One synchronous application of the rule. Returns new masks and a change flag."""
    zlen = len(zrows)
    rc = [rows[v].bit_count() + f[v] for v in range(m)]
    # threshold for column u: a cell fills iff its row count reaches it
    thr = []
    for u in range(n):
        c = cols[u].bit_count() + g[u]
        thr.append(zrows[c] if c < zlen else 0)

    corder = sorted(range(n), key=thr.__getitem__)
    ckeys = [thr[u] for u in corder]
    cprefix = [0]
    for u in corder:
        cprefix.append(cprefix[-1] | (1 << u))
    rorder = sorted(range(m), key=rc.__getitem__, reverse=True)
    rkeys = [-rc[v] for v in rorder]
    rprefix = [0]
    for v in rorder:
        rprefix.append(rprefix[-1] | (1 << v))

    changed = False
    new_rows = rows[:]
    for v in range(m):
        add = cprefix[bisect.bisect_right(ckeys, rc[v])]
        if add & ~rows[v]:
            new_rows[v] = rows[v] | add
            changed = True
    if not changed:
        return rows, cols, False
    new_cols = cols[:]
    for u in range(n):
        # rows whose count is at least thr[u]
        new_cols[u] = cols[u] | rprefix[bisect.bisect_right(rkeys, -thr[u])]
    return new_rows, new_cols, True


def evolve_masks(rows, cols, n, m, zrows, f=None, g=None, max_steps=None):
    """Iterate to the fixpoint. Returns (rows, cols, changing_steps)."""
    f = _pad(f or (), m)
    g = _pad(g or (), n)
    steps = 0
    while True:
        rows, cols, changed = _sweep(rows, cols, n, m, zrows, f, g)
        if not changed:
            return rows, cols, steps
        steps += 1
        if max_steps is not None and steps > max_steps:
            return rows, cols, steps


def spans_masks(rows, cols, n, m, zrows, f=None, g=None) -> bool:
    full = (1 << n) - 1
    rows, _, _ = evolve_masks(rows, cols, n, m, zrows, f, g)
    return all(r == full for r in rows)


# ---------------------------------------------------------------------------
# public operations


def tmax_bound(z: YoungDiagram) -> int:
    """(k+2)(a_0+1)...(a_k+1) for rows a_0..a_k; 1 for the empty diagram."""
    if z.is_empty():
        return 1
    out = len(z.rows) + 1
    for a in z.rows:
        out *= a + 1
    return out


def _check_enh(f, g):
    return enhancement(f), enhancement(g)


def step(z: YoungDiagram, a: PointSet, f=(), g=()) -> PointSet:
    """One application of the (possibly enhanced) growth map inside a's box."""
    f, g = _check_enh(f, g)
    n, m = a.box
    rows, cols = to_masks(a.points, n, m)
    rows, _, _ = _sweep(rows, cols, n, m, z.rows, _pad(f, m), _pad(g, n))
    return from_masks(rows, n, m)


def evolve(z: YoungDiagram, a: PointSet, f=(), g=()) -> tuple[PointSet, int]:
    """Fixpoint of the growth map started from a, and the number of sweeps.

    The step count is the number of sweeps that added points, but at least 1
    (one sweep is always performed to confirm inertness).
    """
    f, g = _check_enh(f, g)
    n, m = a.box
    rows, cols = to_masks(a.points, n, m)
    # the completion-time bound is proven for one-sided enhancements
    limit = tmax_bound(z) if not (f and g) else None
    rows, cols, steps = evolve_masks(rows, cols, n, m, z.rows, f, g,
                                     max_steps=limit)
    if limit is not None and steps > limit:
        raise InternalError(f"evolution exceeded the completion-time bound {limit}")
    return from_masks(rows, n, m), max(steps, 1)


def spans(z: YoungDiagram, a: PointSet, f=(), g=()) -> bool:
    """Whether a fills its box (equivalently the whole quadrant)."""
    n, m = a.box
    if n < z.width or m < z.height:
        raise InvalidInputError(f"box {n}x{m} does not contain the zero-set's bounding rectangle")
    f, g = _check_enh(f, g)
    rows, cols = to_masks(a.points, n, m)
    return spans_masks(rows, cols, n, m, z.rows, f, g)


def enhanced_box(z: YoungDiagram, f=(), g=(), base=(0, 0)) -> tuple[int, int]:
    """A box large enough that enhanced spanning inside it matches the quadrant.

    Beyond the enhanced lines we keep a full copy of z's width (height) of
    plain columns (rows), so plain lines that fill reach any threshold of z.
    """
    n0 = max(base[0], len(g), z.width)
    m0 = max(base[1], len(f), z.height)
    return n0 + z.width, m0 + z.height


def spans_enhanced(z: YoungDiagram, f=(), g=(), points=()) -> bool:
    """Enhanced spanning of the quadrant, simulated in a large enough box."""
    f, g = _check_enh(f, g)
    pts = list(points)
    base = (max([0] + [u + 1 for u, _ in pts]), max([0] + [v + 1 for _, v in pts]))
    n, m = enhanced_box(z, f, g, base)
    rows, cols = to_masks(pts, n, m)
    return spans_masks(rows, cols, n, m, z.rows, f, g)


def materialize(a: PointSet, f=(), g=()) -> PointSet:
    """Replace enhancements by disjoint thin blocks placed outside a's box.

    Row v receives f_v points in fresh columns, column u receives g_u points in
    fresh rows; every fresh line holds exactly one point.
    """
    f, g = _check_enh(f, g)
    n, m = max(a.box[0], len(g)), max(a.box[1], len(f))
    pts = set(a.points)
    col = n
    for v, k in enumerate(f):
        for _ in range(k):
            pts.add((col, v))
            col += 1
    row = m
    for u, k in enumerate(g):
        for _ in range(k):
            pts.add((u, row))
            row += 1
    return PointSet(frozenset(pts), (col, row))


# ---------------------------------------------------------------------------
# serialization


def parse_point_set(text: str) -> PointSet:
    """Parse ``# box N M`` + ``u v`` lines, or the JSON form."""
    s = text.strip()
    try:
        if s.startswith("{"):
            data = json.loads(s)
            return PointSet(frozenset(tuple(p) for p in data["points"]), tuple(data["box"]))
        box = None
        pts = []
        for line in s.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts and parts[0] == "box":
                    box = (int(parts[1]), int(parts[2]))
                continue
            u, v = line.split()
            pts.append((int(u), int(v)))
    except InvalidInputError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise InvalidInputError(f"cannot parse point set: {exc}") from exc
    if box is None:
        raise InvalidInputError("point set file needs a '# box N M' header")
    return PointSet(frozenset(pts), box)


def format_point_set(a: PointSet) -> str:
    lines = [f"# box {a.box[0]} {a.box[1]}"]
    lines += [f"{u} {v}" for u, v in a.sorted()]
    return "\n".join(lines) + "\n"


def point_set_json(a: PointSet) -> dict:
    return {"box": list(a.box), "points": [list(p) for p in a.sorted()]}
