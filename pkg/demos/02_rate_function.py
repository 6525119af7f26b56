# %% [markdown]
# # Energy-entropy rate
#
# With the box sides scaled as p^{-alpha} and p^{-beta}, the spanning
# probability decays like p^{I(alpha, beta)}. For rectangles I has a closed
# form; for other zero-sets it comes from a search over spanning sets.

# %%
from fractions import Fraction as F

from hamgrowth import query, rate_bootstrap_diag, rate_rect_closed, rate_search, support_region
from hamgrowth.rate import rate, rate_grid
from hamgrowth.young import rectangle, triangle

q = query(F(1, 5), F(3, 10))
for a, b in [(1, 1), (2, 1), (3, 2), (9, 4)]:
    print(f"R_{a},{b}: I = {rate_rect_closed(a, b, q)}")

# %% [markdown]
# Along the diagonal the threshold-2 bootstrap zero-set has rate 2 - 4 alpha
# until it hits zero.

# %%
for k in range(6):
    al = F(k, 10)
    print(al, rate_search(triangle(2), query(al, al), box_pad=2).value, rate_bootstrap_diag(2, al))

# %% [markdown]
# The region where the rate is positive has an explicit description.

# %%
reg = support_region(triangle(3))
for k in range(0, 11, 2):
    al = F(k, 10)
    row = "".join("#" if reg.interior_contains(al, F(j, 10)) else "." for j in range(11))
    print(f"alpha={str(al):>4}  {row}")

# %% [markdown]
# A coarse slice of the surface for R_{9,4}, plot-ready as (alpha, beta, value).

# %%
grid = [F(k, 4) for k in range(5)]
for al, be, v in rate_grid(rectangle(9, 4), grid, grid):
    print(al, be, v)
print(rate(triangle(2), query(F(1, 10), F(1, 5))))
