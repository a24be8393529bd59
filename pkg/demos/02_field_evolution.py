"""
Homogeneous scalar field
========================

With no matter the field is a plain oscillator, phi = cos t for m = 1.
Its time derivative sets how wide the quantum cone opens.
"""

# %%
import numpy as np

from bicone import scalar_field as sf

s0 = sf.ScalarFieldState(phi=1.0, phi_dot=0.0, mass=1.0)
traj = sf.evolve_homogeneous(s0, None, 1e-3, int(round(2 * np.pi / 1e-3)))
print("max |phi - cos t| :", np.max(np.abs(traj.phi - np.cos(traj.t))))
print("relative energy drift:", np.ptp(traj.energy) / traj.energy[0])

# %% RK4 is fourth order: halving dt buys about 16x
for dt in (0.2, 0.1, 0.05):
    tr = sf.evolve_homogeneous(s0, None, dt, int(round(2 * np.pi / dt)))
    print(f"dt={dt:<5} error={np.max(np.abs(tr.phi - np.cos(tr.t))):.3e}")

# %% Switch on alpha: the cone speed breathes with phi_dot
s1 = sf.ScalarFieldState(phi=0.0, phi_dot=1.0, mass=1.0, alpha=3.0)
traj = sf.evolve_homogeneous(s1, None, 0.01, 629)
print("c(t) ranges over", traj.c_of_t.min(), "to", traj.c_of_t.max())
# sqrt(1 + 3 cos^2 t) by hand
print("closed form at t=1:", np.sqrt(1 + 3 * np.cos(traj.t[100]) ** 2), "vs", traj.c_of_t[100])

# %% A matter background shifts the acceleration
rho = sf.MatterBackground((0.1, 0.0, 0.0, 0.0))
print("phi_ddot vacuum:", sf.solve_acceleration(0.5, 1.0, 1.0, 3.0, 1.0))
print("phi_ddot matter:", sf.solve_acceleration(0.5, 1.0, 1.0, 3.0, 1.0, rho))
