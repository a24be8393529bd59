"""
The 11 km correlation scenario
==============================

Correlations over 11 km arriving at 10^4 c0. How wide must the quantum cone
be for the two stations to be causally connected through it?
"""

# %%
import tempfile

from bicone import causality as cz
from bicone import scenario

C0 = 299_792_458.0
L, v = 11_000.0, 1e4

q = cz.qi_from_speed(v)
print(f"theta_qi = {q.theta_qi:.10f} rad, w_qi = {q.w_qi}")

# %% alpha phi_dot^2 / c0^2 is unit free
T = L / v  # light-metres
beta = cz.required_alpha(L, T, 1.0)
print("alpha phi_dot^2 / c0^2 =", beta)
print("alpha for phi_dot = 1/s:", beta * C0**2, "m^2")

# %% Just below and above the threshold
for b in (beta * (1 - 1e-6), beta * (1 + 1e-6)):
    print(b, cz.classify_at_coupling(L, T, b).class_ghat.value)

# %% The shipped preset does the same and writes artifacts
with tempfile.TemporaryDirectory() as out:
    res = scenario.run_preset("gisin11km", out)
    for quantity, value, unit in res.report:
        print(f"{quantity:>44} = {value} {unit}")
