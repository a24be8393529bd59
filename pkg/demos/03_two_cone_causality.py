"""
Two cones, one separation
=========================

A separation can sit outside the flat cone yet inside the quantum one.
"""

# %%
import numpy as np

from bicone import causality as cz
from bicone import svg
from bicone.tensor import apply_boost, bimetric, boost, covector, minkowski, vector

g = minkowski()
g_hat = bimetric(g, 8.0, covector(1, 0, 0, 0))  # cone speed 3
events = {"inside": vector(1, 0.5, 0, 0), "window": vector(1, 2, 0, 0), "outside": vector(1, 4, 0, 0)}
records = []
for name, d in events.items():
    rec = cz.classify(d, g, g_hat)
    records.append(rec)
    print(f"{name:8} g: {rec.class_g.value:9} ghat: {rec.class_ghat.value}")

# %% How much coupling does each one need?
for L in (0.5, 2.0, 4.0):
    print(f"L={L}: alpha_min = {cz.required_alpha(L, 1.0, 1.0)}, bisection {cz.bisect_required_alpha(L, 1.0, 1.0)}")

# %% The flat-cone order of the window separation flips past v = 0.5
d = events["window"]
v = cz.ordering_reversal_threshold(d, g)
for speed in (v - 1e-3, v + 1e-3):
    print(f"boost {speed:.4f}: dt' = {apply_boost(boost([speed, 0, 0]), d).components[0]:+.5f}")
print("under ghat:", cz.ordering_reversal_threshold(d, g_hat))

# %%
print(svg.emit_cone_svg(records, 3.0, 1.0, "two_cones.svg"))
