# %% [markdown]
# # Simulation checks
#
# Monte Carlo estimates of the spanning probability, their fitted power-law
# slopes, and random Young diagrams measured against their limit curves.

# %%
from fractions import Fraction as F

from hamgrowth import query
from hamgrowth.euclid import lshape, parse_euclid, reference_values, scaled_gamma_series
from hamgrowth.randmc import McConfig, rost_sample, shape_distance, span_probability, vershik_sample
from hamgrowth.young import rectangle, triangle

q = query(F(1, 4), F(1, 4))
cfg = McConfig(rectangle(1, 1), q, tuple(2.0 ** -k for k in range(6, 12)), 4000, 7)
est = span_probability(cfg)
for r in est.rows:
    print(f"p={r.p:.5f}  box={r.n}x{r.m}  phat={r.phat:.4f}  ci={r.wilson()}")
print("slope", est.slope, "+-", est.stderr, "(rate 1/2)")

# %%
est = span_probability(McConfig(triangle(2), q, tuple(2.0 ** -k for k in range(5, 10)), 4000, 7))
print("T_2 slope", est.slope, "+-", est.stderr, "(rate 1)")

# %% [markdown]
# Random diagrams of size n, rescaled by sqrt(n), sit close to their limit
# curves.

# %%
for n in (10 ** 3, 10 ** 4, 10 ** 5):
    print(n, shape_distance(rost_sample(n, 0), "rost", 2.0), shape_distance(vershik_sample(n, 0), "vershik", 3.0))

# %% [markdown]
# Discretized continuous zero-sets: the scaled minimum spanning size and the
# closed-form references.

# %%
for n, v, ref in scaled_gamma_series(parse_euclid("rect:1,1"), [1, 2, 3, 4]):
    print(n, v, ref)
print(reference_values(lshape(4), query(F(1, 16), F(1, 16))))
