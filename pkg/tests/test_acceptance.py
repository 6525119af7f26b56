"""End-to-end acceptance checks, one test per criterion."""
import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from hamgrowth.euclid import convergence_constant, rect_convergence
from hamgrowth.extremal import gamma, gamma_bar_thin, gamma_thin
from hamgrowth.growth import PointSet, evolve, tmax_bound
from hamgrowth.randmc import McConfig, rost_sample, shape_distance, span_probability, vershik_sample
from hamgrowth.rate import (query, rate_bounds, rate_rect_closed, rate_rect_recursion, rate_search,
                            rho, support_region)
from hamgrowth.young import YoungDiagram, all_diagrams, rectangle, shrink, triangle

from oracles import naive_rho

TENTHS = [F(k, 10) for k in range(11)]


def test_01_exact_gamma(report):
    t = time.perf_counter()
    bad = [(a, b) for a in range(1, 4) for b in range(1, 4) if gamma(rectangle(a, b)).value != a * b]
    tri = [gamma(triangle(k)).value for k in (2, 3, 4)]
    dt = time.perf_counter() - t
    report(1, "exact gamma on rectangles and triangles", not bad and tri == [2, 4, 6] and dt < 60,
           f"triangles {tri}, {dt:.1f}s")


def test_02_gamma_sandwich(report):
    t = time.perf_counter()
    count, bad = 0, []
    for size in range(1, 8):
        for z in all_diagrams(size):
            count += 1
            g = gamma(z).value
            if not math.ceil(size / 4) <= g <= size:
                bad.append(z.rows)
    dt = time.perf_counter() - t
    report(2, "ceil(|Z|/4) <= gamma <= |Z| for |Z| <= 7", not bad and dt < 300,
           f"{count} diagrams, {dt:.1f}s")


def test_03_rho_oracle(report):
    t = time.perf_counter()
    rng = random.Random(31337)
    bad = 0
    for _ in range(200):
        k = rng.randint(0, 12)
        pts = set()
        while len(pts) < k:
            pts.add((rng.randrange(6), rng.randrange(6)))
        den = rng.randint(1, 12)
        q = query(F(rng.randint(0, den), den), F(rng.randint(0, den), den))
        if rho(q, PointSet(frozenset(pts), (6, 6))).value != naive_rho(q.alpha, q.beta, pts):
            bad += 1
    dt = time.perf_counter() - t
    report(3, "min-cut rho equals brute force on 200 random sets", bad == 0 and dt < 30,
           f"{bad} mismatches, {dt:.1f}s")


def test_04_closed_form_vs_recursion(report):
    t = time.perf_counter()
    bad = 0
    for a in range(7):
        for b in range(7):
            for al in TENTHS[:10]:
                for be in TENTHS[:10]:
                    q = query(al, be)
                    bad += rate_rect_closed(a, b, q) != rate_rect_recursion(a, b, q)
    dt = time.perf_counter() - t
    report(4, "rectangle closed form equals recursion", bad == 0 and dt < 10, f"{dt:.1f}s")


def test_05_bootstrap_diagonal(report):
    t = time.perf_counter()
    got = {al: rate_search(triangle(2), query(al, al), box_pad=2).value for al in TENTHS[:5] + [F(1, 2)]}
    want = {al: max(F(0), 2 - 4 * al) for al in got}
    dt = time.perf_counter() - t
    report(5, "T_2 diagonal rate is 2 - 4 alpha", got == want and dt < 120,
           ", ".join(f"{k}:{v}" for k, v in got.items()) + f", {dt:.1f}s")


def test_06_support_agreement(report):
    t = time.perf_counter()
    bad = []
    for z in (triangle(2), triangle(3), rectangle(2, 2)):
        reg = support_region(z)
        for al in TENTHS:
            for be in TENTHS:
                pos = rate_search(z, query(al, be)).value > 0
                if pos != reg.interior_contains(al, be):
                    bad.append((z.rows, al, be))
    dt = time.perf_counter() - t
    report(6, "support formula matches positivity of the rate", not bad and dt < 600,
           f"{len(bad)} mismatches, {dt:.1f}s")


def test_07_bounds_sandwich(report):
    t = time.perf_counter()
    bad = []
    for size in range(1, 6):
        for z in all_diagrams(size):
            for al in TENTHS:
                for be in TENTHS:
                    q = query(al, be)
                    b = rate_bounds(z, q)
                    v = rate_search(z, q).value
                    up = min(b["upper_area"], b["upper_gamma"], b["upper_trivial"])
                    if not b["lower"] <= v <= up:
                        bad.append((z.rows, al, be))
    dt = time.perf_counter() - t
    report(7, "rate bounds sandwich the searched rate", not bad and dt < 600,
           f"{len(bad)} violations, {dt:.1f}s")


def test_08_thin_brackets(report):
    t = time.perf_counter()
    bad = []
    for size in range(1, 7):
        for z in all_diagrams(size):
            g, th = gamma(z).value, gamma_thin(z).value
            lo, hi = gamma_bar_thin(shrink(z, 1, "diag"))[0], gamma_bar_thin(z)[0]
            if not (g <= th <= 2 * g and lo <= th <= hi):
                bad.append(z.rows)
    dt = time.perf_counter() - t
    report(8, "thin brackets for |Z| <= 6", not bad and dt < 600, f"{dt:.1f}s")


@pytest.mark.slow
def test_09_monte_carlo_slopes(report):
    t = time.perf_counter()
    q = query(F(1, 4), F(1, 4))
    r11 = span_probability(McConfig(rectangle(1, 1), q, tuple(2.0 ** -k for k in range(6, 12)), 10 ** 4, 7))
    t2 = span_probability(McConfig(triangle(2), q, tuple(2.0 ** -k for k in range(5, 10)), 10 ** 4, 7))
    dt = time.perf_counter() - t
    ok = abs(r11.slope - 0.5) <= 0.10 and abs(t2.slope - 1.0) <= 0.25 and dt < 900
    report(9, "Monte Carlo power-law slopes", ok,
           f"R11 {r11.slope:.3f}+-{r11.stderr:.3f}, T2 {t2.slope:.3f}+-{t2.stderr:.3f}, {dt:.0f}s")


@pytest.mark.slow
def test_10_limit_shapes(report):
    t = time.perf_counter()
    n = 10 ** 5
    rost = [shape_distance(rost_sample(n, s), "rost", 2.0) for s in range(5)]
    vers = [shape_distance(vershik_sample(n, s), "vershik", 3.0) for s in range(5)]
    dt = time.perf_counter() - t
    ok = sum(d <= 0.06 for d in rost) >= 4 and sum(d <= 0.10 for d in vers) >= 4 and dt < 300
    report(10, "random diagrams near their limit shapes", ok,
           "rost " + " ".join(f"{d:.3f}" for d in rost) + "; vershik " + " ".join(f"{d:.3f}" for d in vers)
           + f"; {dt:.0f}s")


def test_11_euclidean_convergence(report):
    t = time.perf_counter()
    bad, worst = [], F(0)
    for al in TENTHS[:10]:
        for be in TENTHS[:10]:
            q = query(al, be)
            c, _, _ = convergence_constant(q)
            worst = max(worst, c)
            for n, _, _, gap in rect_convergence(q, range(1, 13)):
                if abs(gap) > c / n:
                    bad.append((al, be, n))
    dt = time.perf_counter() - t
    report(11, "scaled rectangle rate converges at rate C/n", not bad and dt < 10,
           f"max C = {worst}, {dt:.1f}s")


def test_12_termination(report):
    t = time.perf_counter()
    rng = random.Random(12)
    bad = 0
    for _ in range(500):
        rows = sorted((rng.randint(1, 5) for _ in range(rng.randint(1, 4))), reverse=True)
        z = YoungDiagram(tuple(rows))
        n, m = z.width + rng.randint(0, 5), z.height + rng.randint(0, 5)
        pts = {(rng.randrange(n), rng.randrange(m)) for _ in range(rng.randint(0, n * m // 2))}
        _, steps = evolve(z, PointSet(frozenset(pts), (n, m)))
        bad += steps > tmax_bound(z)
    dt = time.perf_counter() - t
    report(12, "500 fuzzed runs stop within tmax", bad == 0 and dt < 60, f"{dt:.1f}s")


SEEDED_RUNS = [
    ["mc-span", "--zero", "tri:2", "--alpha", "1/4", "--beta", "1/4", "--p", "0.1,0.05,0.02",
     "--reps", "500", "--seed", "7", "--out", "csv"],
    ["mc-span", "--zero", "rect:1x1", "--alpha", "1/4", "--beta", "1/4", "--p", "0.1,0.05,0.02",
     "--reps", "500", "--seed", "7", "--out", "json"],
    ["sample-young", "--model", "rost", "--n", "1000", "--seed", "3"],
    ["sample-young", "--model", "vershik", "--n", "1000", "--seed", "3"],
    ["shape-dist", "--model", "vershik", "--n", "1000", "--seed", "3", "--curve", "vershik", "--radius", "3"],
]


def _cli(argv, threads):
    env = dict(os.environ, HG_THREADS=str(threads))
    r = subprocess.run([sys.executable, "-m", "hamgrowth", *argv], capture_output=True, text=True, env=env)
    assert r.returncode == 0, r.stderr
    return r.stdout


def test_13_reproducibility(report):
    bad = []
    for argv in SEEDED_RUNS:
        outs = {_cli(argv, 1), _cli(argv, 1), _cli(argv, 4), _cli(argv, 4)}
        if len(outs) != 1:
            bad.append(argv[0])
    report(13, "seeded subcommands are byte-identical across runs and threads", not bad,
           f"{len(SEEDED_RUNS)} invocations")
