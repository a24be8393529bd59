"""
Entanglement and surface evolution
==================================

The coupling is switched on by entanglement entropy. Surface-by-surface
evolution is consistent only when the local pieces commute.
"""

# %%
import itertools

import numpy as np

from bicone import entanglement as ent
from bicone.entanglement import I2, KET_0, KET_PLUS, SIGMA_X, SIGMA_Z

bell = ent.bell_state()
rho_a, rho_b = ent.reduced_states(bell)
S = ent.entanglement_entropy(rho_a)
print("S(Bell) =", S, "ln 2 =", np.log(2))
print("alpha_eff:", ent.effective_alpha(S, 3.0))

prod = ent.BipartiteState.product(KET_PLUS, KET_0)
print("S(product) =", ent.entanglement_entropy(ent.reduced_states(prod)[0]), ent.is_product(prod))

# %% A 2x3 state: both sides see the same entropy
rng = np.random.default_rng(1)
psi = ent.random_state((2, 3), rng)
print([ent.entanglement_entropy(r) for r in ent.reduced_states(psi)])

# %% Three commuting sites: every order of the same moves agrees
hams = [np.kron(SIGMA_Z, I2), np.kron(I2, SIGMA_Z), np.kron(SIGMA_Z, SIGMA_Z)]
surface = ent.SurfaceToy.flat(hams)
moves = [(0, 0.4), (1, -0.7), (2, 1.1)]
v0 = ent.random_state((2, 2), rng).vector
print(ent.integrability_check(surface).passes, ent.ordering_spread(v0, surface, moves))

# %% Swap one site for sigma_x and order starts to matter
bad = ent.SurfaceToy.flat([np.kron(SIGMA_Z, I2), np.kron(SIGMA_X, I2), np.kron(I2, SIGMA_Z)])
rep = ent.integrability_check(bad)
print(rep.failing_pairs, rep.worst, ent.ordering_spread(v0, bad, moves))
first = ent.evolve_along(v0, bad, moves)[0]
for perm in itertools.permutations(moves):
    print([site for site, _ in perm], np.linalg.norm(ent.evolve_along(v0, bad, perm)[0] - first))
