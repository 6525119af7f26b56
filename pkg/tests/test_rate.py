import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from hamgrowth.errors import InvalidInputError
from hamgrowth.extremal import gamma
from hamgrowth.growth import PointSet, full_box, point_set, spans, spans_enhanced
from hamgrowth.rate import (RateQuery, as_rational, energy, enhancement_rate, line_sequence, query,
                            rate, rate_bootstrap_diag, rate_bounds, rate_grid, rate_rect_closed,
                            rate_rect_recursion, rate_search, rho, rho_bruteforce, seed_sets,
                            support_region)
from hamgrowth.young import YoungDiagram, all_diagrams, from_rows, rectangle, triangle

from oracles import naive_rho

DATA = Path(__file__).parent / "data"
GRID10 = [F(i, 10) for i in range(10)]


def test_as_rational():
    assert as_rational("3/10") == F(3, 10)
    assert as_rational("0.3") == F(3, 10)
    assert as_rational(0.25) == F(1, 4)
    assert as_rational(1) == 1
    with pytest.raises(InvalidInputError):
        as_rational("x")


def test_query_validation():
    with pytest.raises(InvalidInputError):
        query(F(3, 2), 0)
    with pytest.raises(InvalidInputError):
        query(0, -1)
    assert query("1/4", "0.5") == RateQuery(F(1, 4), F(1, 2))


def test_rho_examples():
    q = query(F(3, 4), F(3, 4))
    assert rho(q, PointSet(frozenset(), (1, 1))).value == 0
    assert rho(q, point_set([(0, 0)])).value == 0
    res = rho(query(F(1, 2), F(1, 2)), full_box(2, 2))
    assert res.value == 2 and res.witness_B.points == full_box(2, 2).points
    for n in range(1, 6):
        for al in (F(0), F(1, 3), F(3, 4)):
            row = point_set([(u, 0) for u in range(n)])
            be = F(1, 5)
            assert rho_bruteforce(query(al, be), row).value == max(0, n * (1 - al) - be)


def test_rho_matches_bruteforce_random():
    rng = random.Random(2024)
    for _ in range(200):
        k = rng.randint(0, 12)
        pts = {(rng.randrange(5), rng.randrange(5)) for _ in range(k)}
        a = PointSet(frozenset(pts), (5, 5))
        q = query(F(rng.randint(0, 12), 12), F(rng.randint(0, 7), 7))
        fast, slow = rho(q, a), rho_bruteforce(q, a)
        assert fast.value == slow.value
        assert fast.witness_B.points <= a.points
        assert energy(q, fast.witness_B.points) == fast.value


def test_rho_against_independent_oracle():
    rng = random.Random(8)
    for _ in range(60):
        pts = {(rng.randrange(4), rng.randrange(4)) for _ in range(rng.randint(0, 8))}
        q = query(F(rng.randint(0, 6), 6), F(rng.randint(0, 6), 6))
        assert rho(q, PointSet(frozenset(pts), (4, 4))).value == naive_rho(q.alpha, q.beta, pts)


def test_rho_bruteforce_limit():
    with pytest.raises(InvalidInputError):
        rho_bruteforce(query(0, 0), full_box(5, 4))


@settings(max_examples=80, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=10),
       st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(0, 8), st.integers(0, 8))
def test_rho_monotone_when_alpha_beta_small(pts, extra, i, j):
    q = query(F(i, 20), F(j, 20))
    a = PointSet(frozenset(pts), (5, 5))
    b = PointSet(frozenset(pts | {extra}), (5, 5))
    ra, rb = rho(q, a).value, rho(q, b).value
    assert ra <= len(a)
    if extra not in pts:
        assert rb - ra >= 1 - q.alpha - q.beta


def test_rect_recursion_examples():
    q = query(F(3, 10), F(2, 5))
    assert rate_rect_recursion(1, 1, q) == F(3, 10)
    assert all(rate_rect_recursion(a, 0, q) == 0 for a in range(5))
    assert rate_rect_recursion(3, 4, query(0, 0)) == 12
    with pytest.raises(InvalidInputError):
        rate_rect_recursion(1, 1, query(1, 0))


def test_closed_form_equals_recursion():
    for al in GRID10:
        for be in GRID10:
            q = query(al, be)
            for a in range(7):
                for b in range(7):
                    assert rate_rect_closed(a, b, q) == rate_rect_recursion(a, b, q)


def test_bootstrap_examples():
    assert rate_bootstrap_diag(2, F(1, 4)) == 1
    assert rate_bootstrap_diag(2, F(1, 2)) == 0
    assert rate_bootstrap_diag(3, 0) == 4
    assert rate_bootstrap_diag(4, 0) == 6


@pytest.mark.parametrize("z, q, value", [
    (triangle(2), query(0, 0), 2),
    (triangle(2), query(F(1, 4), F(1, 4)), 1),
    (rectangle(1, 1), query(F(3, 10), F(2, 5)), F(3, 10)),
])
def test_rate_search_examples(z, q, value):
    res = rate_search(z, q)
    assert res.value == value and res.exact
    assert spans(z, res.witness_A)
    assert res.witness_B.points <= res.witness_A.points
    assert energy(q, res.witness_B.points) == rho(q, res.witness_A).value == value


def test_rate_search_matches_box_oracle():
    oracle = json.loads((DATA / "rate_box_oracle.json").read_text())
    for key, table in oracle.items():
        z = from_rows(int(t) for t in key.split(","))
        for ab, value in table.items():
            al, be = ab.split(",")
            q = query(al, be)
            assert rate_search(z, q, use_seeds=False, max_size=99).value == F(value), (key, ab)
            assert rate_search(z, q).value <= F(value)


def test_rate_search_rectangles_match_closed_form():
    for a in range(1, 4):
        for b in range(1, 4):
            for al in GRID10[::3]:
                for be in GRID10[::3]:
                    q = query(al, be)
                    res = rate_search(rectangle(a, b), q)
                    assert res.value == rate_rect_closed(a, b, q) and res.exact


def test_line_sequence_realizes_recursion():
    for a in range(1, 6):
        for b in range(1, 6):
            for al in GRID10[::2]:
                q = query(al, F(1, 10))
                value, pts = line_sequence(rectangle(a, b), q)
                assert value == rate_rect_recursion(a, b, q)
                a_set = point_set(pts, z=rectangle(a, b))
                assert spans(rectangle(a, b), a_set)
                assert rho(q, a_set).value == value


def test_seeds_span():
    for size in range(1, 6):
        for z in all_diagrams(size):
            for name, pts in seed_sets(z, query(F(1, 4), F(1, 3))).items():
                assert spans(z, point_set(pts, z=z)), (z, name)


def test_rate_dispatch():
    assert rate(triangle(3), query(1, F(1, 2))).value == 0
    res = rate(rectangle(9, 4), query(F(3, 10), F(1, 5)))
    assert res.value == rate_rect_closed(9, 4, query(F(3, 10), F(1, 5))) and res.exact
    assert rho(query(F(3, 10), F(1, 5)), res.witness_A).value == res.value


def test_rate_at_origin_is_gamma_and_monotone():
    for size in range(1, 5):
        for z in all_diagrams(size):
            grid = [F(i, 4) for i in range(5)]
            vals = {(al, be): v for al, be, v in rate_grid(z, grid, grid)}
            assert vals[(0, 0)] == gamma(z).value
            for (al, be), v in vals.items():
                if al + F(1, 4) <= 1:
                    assert vals[(al + F(1, 4), be)] <= v
                if be + F(1, 4) <= 1:
                    assert vals[(al, be + F(1, 4))] <= v


@pytest.mark.parametrize("z", [triangle(2), rectangle(1, 1), YoungDiagram((2, 1, 1)), rectangle(2, 2)])
def test_concavity_below_antidiagonal(z):
    h = F(1, 8)
    pts = [(i * h, j * h) for i in range(9) for j in range(9) if (i + j) * h <= 1]
    val = {p: rate(z, query(*p)).value for p in pts}
    for (a, b) in pts:
        for da, db in ((1, 0), (0, 1), (1, -1), (1, 1)):
            lo, hi = (a - da * h, b - db * h), (a + da * h, b + db * h)
            if lo in val and hi in val:
                assert 2 * val[(a, b)] >= val[lo] + val[hi]


def test_support_examples():
    reg = support_region(triangle(2))
    assert not reg.contains(F(6, 10), F(6, 10))
    assert reg.contains(F(4, 10), F(4, 10))
    for size in range(1, 6):
        for z in all_diagrams(size):
            assert support_region(z).contains(0, 0)
    assert support_region(YoungDiagram()).contains(1, 1)


def test_support_boundary_is_on_the_edge():
    for z in [triangle(2), triangle(3), rectangle(2, 2), YoungDiagram((3, 1))]:
        reg = support_region(z)
        for al, be in reg.boundary(20):
            if be < 1:
                assert reg.margin(al, be) == 0
            assert reg.contains(al, be)


def test_support_agrees_with_rate():
    for z in [triangle(2), rectangle(2, 2)]:
        reg = support_region(z)
        for i in range(0, 11, 2):
            for j in range(0, 11, 2):
                al, be = F(i, 10), F(j, 10)
                assert reg.interior_contains(al, be) == (rate(z, query(al, be)).value > 0)


def test_rate_bounds_examples():
    for a, b in [(2, 2), (3, 2)]:
        q = query(F(1, 5), F(1, 10))
        assert rate_bounds(rectangle(a, b), q, k=0)["lower"] <= rate_rect_closed(a, b, q)
    b0 = rate_bounds(triangle(3), query(0, 0), k=0)
    assert b0["lower"] == 4 == b0["upper_trivial"]
    with pytest.raises(InvalidInputError):
        rate_bounds(triangle(2), query(0, 0), k=-1)


def test_rate_bounds_sandwich_small():
    grid = [F(i, 5) for i in range(6)]
    for size in range(1, 5):
        for z in all_diagrams(size):
            for al in grid:
                for be in grid:
                    q = query(al, be)
                    b = rate_bounds(z, q)
                    v = rate(z, q).value
                    assert b["lower"] <= v <= min(b["upper_area"], b["upper_gamma"], b["upper_trivial"])


def test_enhancement_rate():
    for z in [triangle(2), rectangle(1, 1), YoungDiagram((2, 1, 1))]:
        v, a, f, g = enhancement_rate(z, query(0, 0))
        assert v == gamma(z).value
        assert enhancement_rate(z, query(1, F(1, 3)))[0] == 0
        assert enhancement_rate(z, query(F(1, 3), 1))[0] == 0
    q = query(F(1, 4), F(1, 4))
    v, a, f, g = enhancement_rate(triangle(2), q)
    assert v >= rate(triangle(2), q).value == 1
    assert spans_enhanced(triangle(2), f, g, a.points)
    assert v == len(a) + (1 - q.alpha) * sum(f) + (1 - q.beta) * sum(g)
