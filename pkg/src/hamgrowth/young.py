"""Young diagrams used as zero-sets of the growth rule.

A diagram is stored as its row lengths, bottom row first: row ``v`` holds the
cells ``(0, v), ..., (rows[v] - 1, v)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import InvalidInputError

INF = math.inf


class Cell(NamedTuple):
    u: int
    v: int


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 1 for r in rows):
            raise InvalidInputError(f"row lengths must be positive: {list(rows)}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise InvalidInputError(f"row lengths must be nonincreasing: {list(rows)}")
        object.__setattr__(self, "rows", rows)

    # basic queries
    def cardinality(self) -> int:
        return sum(self.rows)

    def __len__(self):
        return self.cardinality()

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    @property
    def height(self) -> int:
        return len(self.rows)

    def is_empty(self) -> bool:
        return not self.rows

    def contains(self, u: int, v: int) -> bool:
        return 0 <= v < len(self.rows) and 0 <= u < self.rows[v]

    def __contains__(self, cell) -> bool:
        return self.contains(*cell)

    def cells(self) -> list[Cell]:
        return [Cell(u, v) for v, r in enumerate(self.rows) for u in range(r)]

    def columns(self) -> tuple[int, ...]:
        """Column heights, left to right."""
        return tuple(sum(1 for r in self.rows if r > u) for u in range(self.width))

    def transpose(self) -> "YoungDiagram":
        return YoungDiagram(self.columns())

    def row_threshold(self, c: int) -> int:
        """Smallest row count r with (r, c) outside the diagram."""
        return self.rows[c] if c < len(self.rows) else 0

    def __str__(self):
        return ",".join(map(str, self.rows)) if self.rows else "empty"


def from_rows(rows) -> YoungDiagram:
    return YoungDiagram(tuple(rows))


def rectangle(a: int, b: int) -> YoungDiagram:
    if a < 0 or b < 0:
        raise InvalidInputError("rectangle sides must be nonnegative")
    return YoungDiagram((a,) * b if a > 0 else ())


def triangle(theta: int) -> YoungDiagram:
    """Cells with u + v <= theta - 1."""
    if theta < 0:
        raise InvalidInputError("theta must be nonnegative")
    return YoungDiagram(tuple(range(theta, 0, -1)))


def lshape(a: int, b: int, c: int, d: int) -> YoungDiagram:
    """Union of R_{a+b,c} and R_{a,c+d}."""
    if min(a, b, c, d) < 0:
        raise InvalidInputError("lshape parameters must be nonnegative")
    rows = [a + b] * c + [a] * d
    return YoungDiagram(tuple(r for r in rows if r > 0))


def from_cells(cells) -> YoungDiagram:
    """Diagram from a cell set; raises if the set is not a Young diagram."""
    cells = set(map(tuple, cells))
    if not cells:
        return YoungDiagram()
    height = max(v for _, v in cells) + 1
    rows = [sum(1 for (_, v) in cells if v == j) for j in range(height)]
    z = YoungDiagram(tuple(rows)) if all(rows) else None
    if z is None or set(z.cells()) != cells:
        raise InvalidInputError("cell set is not a Young diagram")
    return z


def outer_boundary(z: YoungDiagram) -> list[Cell]:
    """Cells outside z with a left or lower neighbour inside, sorted by (v, u)."""
    out = []
    for v in range(z.height + 1):
        left = z.rows[v] if v < z.height else 0
        below = z.rows[v - 1] if v >= 1 else 0
        # (left, v) has its left neighbour inside when left > 0; cells
        # (u, v) with u in [left, below) have their lower neighbour inside.
        us = set(range(left, max(left, below)))
        if left > 0:
            us.add(left)
        out.extend(Cell(u, v) for u in sorted(us))
    return out


def shrink(z: YoungDiagram, k: int, mode: str = "diag"):
    """Perturbations of a diagram.

    ``down`` drops the k bottom rows, ``left`` removes k cells from every row,
    ``diag`` does both. ``corner`` returns ``(residual, strip_size)`` where the
    residual is the diag-shrunk diagram and the strip is the part of z not
    covered by the residual shifted by (k, k).
    """
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    if mode == "down":
        return YoungDiagram(z.rows[k:])
    if mode == "left":
        return YoungDiagram(tuple(r - k for r in z.rows if r > k))
    if mode == "diag":
        return YoungDiagram(tuple(r - k for r in z.rows[k:] if r > k))
    if mode == "corner":
        res = shrink(z, k, "diag")
        return res, z.cardinality() - res.cardinality()
    raise InvalidInputError(f"unknown shrink mode {mode!r}")


def corner_strip(z: YoungDiagram, k: int) -> list[Cell]:
    res = shrink(z, k, "diag")
    return [c for c in z.cells() if not res.contains(c.u - k, c.v - k)]


def max_rectangle(z: YoungDiagram) -> tuple[int, int, int]:
    """Largest-area R_{a,b} inside z; ties go to the smallest a."""
    best = (0, 0, 0)
    for v, r in enumerate(z.rows):
        a, b = r, v + 1
        if a * b > best[2] or (a * b == best[2] and a < best[0]):
            best = (a, b, a * b)
    return best


def corner_rectangles(z: YoungDiagram) -> list[tuple[int, int]]:
    """All inclusion-maximal rectangles R_{a,b} inside z."""
    out = []
    for v, r in enumerate(z.rows):
        if v + 1 == z.height or z.rows[v + 1] < r:
            out.append((r, v + 1))
    return out


def truncate(z: YoungDiagram, a=INF, b=INF) -> tuple[YoungDiagram, int]:
    """Intersection with R_{a,b} and the number of cells removed."""
    if a < 0 or b < 0:
        raise InvalidInputError("truncation sides must be nonnegative")
    rows = z.rows if b == INF else z.rows[: int(b)]
    if a != INF:
        rows = tuple(min(r, int(a)) for r in rows)
    out = YoungDiagram(tuple(r for r in rows if r > 0))
    return out, z.cardinality() - out.cardinality()


def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as nonincreasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n

    def rec(rem, cap, left):
        if rem == 0:
            yield ()
            return
        if left == 0:
            return
        for p in range(min(rem, cap), 0, -1):
            if p * left < rem:
                break
            for rest in rec(rem - p, p, left - 1):
                yield (p,) + rest

    yield from rec(n, max_part, max_len)


def all_diagrams(n: int) -> list[YoungDiagram]:
    return [YoungDiagram(p) for p in partitions(n)]


def parse_diagram(text: str) -> YoungDiagram:
    """Parse ``3,2,1``, ``rect:AxB``, ``tri:T``, ``lshape:A,B,C,D`` or JSON."""
    s = text.strip()
    try:
        if s.startswith("{"):
            data = json.loads(s)
            return from_rows(data["rows"])
        if s in ("", "empty", "[]"):
            return YoungDiagram()
        if s.startswith("rect:"):
            a, b = s[5:].lower().split("x")
            return rectangle(int(a), int(b))
        if s.startswith("tri:"):
            return triangle(int(s[4:]))
        if s.startswith("lshape:"):
            a, b, c, d = (int(t) for t in s[7:].split(","))
            return lshape(a, b, c, d)
        return from_rows(int(t) for t in s.strip("[]").split(",") if t.strip())
    except InvalidInputError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"cannot parse diagram {text!r}: {exc}") from exc
