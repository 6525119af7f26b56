# %% [markdown]
# # Smallest spanning sets
#
# A cell of the Hamming plane becomes occupied once the counts of occupied
# cells on its row and column leave the zero-set Z. This script computes the
# smallest initial sets that eventually fill every cell, for a few small
# zero-sets, and compares them with the cheap bounds.

# %%
from hamgrowth import evolve, gamma, gamma_bar_thin, gamma_bounds, gamma_thin, parse_diagram
from hamgrowth.young import all_diagrams

for text in ["rect:2x3", "tri:2", "tri:3", "tri:4", "3,1", "lshape:2,1,2,1"]:
    z = parse_diagram(text)
    res = gamma(z)
    print(f"{text:>16}  |Z|={z.cardinality():2d}  gamma={res.value}  witness={sorted(res.witness.points)}")

# %% [markdown]
# The witness really spans: running the dynamics from it fills its box.

# %%
z = parse_diagram("tri:3")
w = gamma(z).witness
full, steps = evolve(z, w)
print(len(full), "cells after", steps, "steps in a", w.box, "box")

# %% [markdown]
# Lower and upper bounds next to the exact value, for every diagram of size 6.

# %%
for z in all_diagrams(6):
    b = gamma_bounds(z)
    print(f"{str(z.rows):>20}  lower={b['lower']}  gamma={gamma(z).value}  upper={b['upper']}")

# %% [markdown]
# Restricting to thin sets (each point alone on its row or on its column)
# costs at most a factor two.

# %%
for text in ["tri:2", "tri:3", "rect:2x2", "3,1"]:
    z = parse_diagram(text)
    print(f"{text:>8}  gamma={gamma(z).value}  thin={gamma_thin(z).value}  bar_thin={gamma_bar_thin(z)[0]}")
