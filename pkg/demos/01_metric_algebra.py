"""
Rank-one metrics and boosts
===========================

The quantum metric is the flat metric plus a rank-one term, alpha u u.
That structure gives a closed-form inverse and determinant.
"""

# %%
import numpy as np

from bicone import tensor
from bicone.tensor import bimetric, boost, covector, minkowski, vector

eta = minkowski()
u = covector(1.0, 0.2, 0.0, 0.0)
g_hat = bimetric(eta, 3.0, u)
print(g_hat.components)

# %% Closed form against numpy's LU route
closed = tensor.inverse(g_hat).components
generic = np.linalg.inv(g_hat.components)
print("max |closed - LU| =", np.max(np.abs(closed - generic)))
print("det via lemma     =", tensor.determinant(g_hat))
print("det via numpy     =", np.linalg.det(g_hat.components))

# %% A degenerate choice is refused outright
try:
    bimetric(eta, 1.0, covector(0, 1, 0, 0))
except Exception as exc:
    print(type(exc).__name__, exc)

# %% Boosts keep the flat interval; u has to ride along as a covector
b = boost([0.6, 0.0, 0.0])
d = vector(1.0, 2.0, 0.0, 0.0)
print("gamma =", b.gamma)
print("s2 before/after:", tensor.interval(eta, d), tensor.interval(eta, tensor.apply_boost(b, d)))
boosted = tensor.boost_metric(b, g_hat)
print("ghat s2 before/after:", tensor.interval(g_hat, d), tensor.interval(boosted, tensor.apply_boost(b, d)))
