"""Randomised invariant suites behind ``bicone check``.

Each check draws from a seeded generator and returns ``(passed, detail)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from bicone import causality, entanglement, scalar_field, tensor
from bicone.errors import BiconeError
from bicone.tensor import bimetric, covector, minkowski, vector

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def random_rank_one(rng, alpha_max=10.0, margin=0.5):
    """(alpha, u) with 1 + alpha u.u >= margin so the metric stays Lorentzian and well conditioned."""
    while True:
        alpha = rng.uniform(0.0, alpha_max)
        u = rng.uniform(-1.0, 1.0, 4)
        if 1.0 + alpha * float(u @ ETA @ u) >= margin:
            return alpha, covector(u)


def check_inverse_identity(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        alpha, u = random_rank_one(rng)
        m = bimetric(minkowski(), alpha, u)
        worst = max(worst, np.max(np.abs(tensor.inverse(m).components @ m.components - np.eye(4))))
    return worst < 1e-12, f"max |g^-1 g - 1| = {worst:.2e}"


def check_determinant_lemma(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        alpha, u = random_rank_one(rng)
        m = bimetric(minkowski(), alpha, u)
        expected = -(1.0 + alpha * float(u.components @ ETA @ u.components))
        worst = max(worst, abs(np.linalg.det(m.components) - expected) / abs(expected))
    return worst < 1e-12, f"max relative error = {worst:.2e}"


def check_closed_form_inverse(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        alpha, u = random_rank_one(rng)
        m = bimetric(minkowski(), alpha, u)
        worst = max(worst, np.max(np.abs(tensor.inverse(m).components - tensor.generic_inverse(m.components))))
    return worst < 1e-12, f"max |closed - generic| = {worst:.2e}"


def random_velocity(rng, c=1.0, vmax=0.9):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v) * rng.uniform(0.0, vmax) * c


def check_boost_orthogonality(rng, n=1000):
    worst = max(tensor.orthogonality_defect(tensor.boost(random_velocity(rng))) for _ in range(n))
    return worst < 1e-12, f"max orthogonality defect = {worst:.2e}"


def check_boost_invariance(rng, n=1000):
    worst = 0.0
    g = minkowski()
    for _ in range(n):
        alpha, u = random_rank_one(rng)
        b = tensor.boost(random_velocity(rng))
        d = vector(rng.uniform(-1, 1, 4))
        d2 = tensor.apply_boost(b, d)
        gh = bimetric(g, alpha, u)
        gh2 = tensor.boost_metric(b, gh)
        for before, after in ((tensor.interval(g, d), tensor.interval(g, d2)),
                              (tensor.interval(gh, d), tensor.interval(gh2, d2))):
            worst = max(worst, abs(before - after) / max(1.0, abs(before)))
    return worst < 1e-12, f"max interval change = {worst:.2e}"


def check_signature(rng, n=1000):
    for _ in range(n):
        alpha, u = random_rank_one(rng)
        eig = np.linalg.eigvalsh(bimetric(minkowski(), alpha, u).components)
        if not (np.sum(eig > 0) == 1 and np.sum(eig < 0) == 3):
            return False, f"non-Lorentzian eigenvalues {eig}"
    return True, f"{n} metrics Lorentzian"


def check_c_null_root(rng, n=100):
    worst = 0.0
    for _ in range(n):
        state = scalar_field.ScalarFieldState(0.0, rng.uniform(-3, 3), alpha=rng.uniform(0, 10))
        gh = scalar_field.quantum_metric(state)
        root = bisect(lambda c: tensor.interval(gh, vector(1.0, c, 0, 0)), 0.0, 1e3, xtol=1e-14, rtol=1e-15)
        worst = max(worst, abs(scalar_field.c_of_state(state) - root))
    return worst < 1e-10, f"max |c - null root| = {worst:.2e}"


def check_energy_conservation(rng, n=3):
    worst = 0.0
    for _ in range(n):
        s0 = scalar_field.ScalarFieldState(rng.uniform(-1, 1), rng.uniform(-1, 1), mass=rng.uniform(0.5, 2))
        traj = scalar_field.evolve_homogeneous(s0, None, 1e-3, 10_000)
        e = traj.energy
        worst = max(worst, float(np.max(np.abs(e - e[0])) / e[0]))
    return worst < 1e-8, f"max relative energy drift = {worst:.2e}"


def check_cone_nesting(rng, n=100_000):
    alpha = rng.uniform(0, 10, n)
    phi_dot = rng.uniform(-3, 3, n)
    d = rng.uniform(-3, 3, (n, 4))
    s2 = d[:, 0] ** 2 - np.sum(d[:, 1:] ** 2, axis=1)
    s2_hat = s2 + alpha * (phi_dot * d[:, 0]) ** 2
    bad = int(np.sum((s2 > causality.NULL_TOL) & ~(s2_hat > causality.NULL_TOL)))
    return bad == 0, f"{bad} counterexamples in {n}"


def check_alpha_monotone(rng, n=200):
    for _ in range(n):
        d = vector(rng.uniform(-3, 3, 4))
        u = covector(rng.uniform(-1, 1, 4))
        prev = -math.inf
        for alpha in np.linspace(0, 5, 11):
            try:
                s = tensor.interval(bimetric(minkowski(), float(alpha), u), d)
            except BiconeError:
                break  # metric left the Lorentzian class
            if s < prev:
                return False, f"s2_ghat decreased at alpha={alpha}"
            prev = s
    return True, f"{n} separations monotone"


def check_required_alpha_boundary(rng, n=200, eps=1e-8):
    for _ in range(n):
        T = rng.uniform(0.5, 2)
        L = T * rng.uniform(1.05, 3)
        a = causality.required_alpha(L, T, 1.0)
        gh_lo = bimetric(minkowski(), a - eps, covector(1.0, 0, 0, 0))
        gh_hi = bimetric(minkowski(), a + eps, covector(1.0, 0, 0, 0))
        d = vector(T, L, 0, 0)
        if causality.causal_class(tensor.interval(gh_lo, d)) is not causality.Causality.SPACELIKE:
            return False, f"not spacelike just below alpha_min (L={L}, T={T})"
        if causality.causal_class(tensor.interval(gh_hi, d)) is not causality.Causality.TIMELIKE:
            return False, f"not timelike just above alpha_min (L={L}, T={T})"
    return True, f"{n} boundaries exact to {eps:g}"


def check_reversal_threshold(rng, n=500, eps=1e-6):
    g = minkowski()
    for _ in range(n):
        dt = rng.uniform(0.1, 1)
        dx = dt * rng.uniform(1.2, 5)
        d = vector(dt, dx, 0, 0)
        v = causality.ordering_reversal_threshold(d, g)
        after = tensor.apply_boost(tensor.boost([v + eps, 0, 0]), d).components[0]
        before = tensor.apply_boost(tensor.boost([v - eps, 0, 0]), d).components[0]
        if not (after < 0 < before):
            return False, f"threshold {v} wrong for {d.components}"
    return True, f"{n} thresholds exact to {eps:g}"


def check_qi_roundtrip(rng, n=1000):
    worst = 0.0
    for theta in rng.uniform(0.0, math.pi / 2, n):
        via_angle = causality.qi_from_angle(theta)
        back = causality.qi_from_speed(via_angle.v_qi)
        worst = max(worst, abs(back.theta_qi - theta), abs(back.w_qi - via_angle.w_qi) / max(1.0, via_angle.w_qi))
    return worst < 1e-12, f"max roundtrip error = {worst:.2e}"


def check_entropy_symmetry(rng, n=10_000):
    worst = 0.0
    for i in range(n):
        psi = entanglement.random_state((2, 2) if i % 2 else (2, 3), rng)
        a, b = entanglement.reduced_states(psi)
        worst = max(worst, abs(entanglement.entanglement_entropy(a) - entanglement.entanglement_entropy(b)))
    return worst < 1e-10, f"max |S_A - S_B| = {worst:.2e}"


def check_entropy_bounds(rng, n=2000):
    for i in range(n):
        dims = [(2, 2), (2, 3), (3, 3), (2, 4)][i % 4]
        psi = entanglement.random_state(dims, rng)
        S = entanglement.entanglement_entropy(entanglement.reduced_states(psi)[0])
        if not (0.0 <= S <= math.log(min(dims))):
            return False, f"S = {S} outside bounds for dims {dims}"
    return True, f"{n} states within [0, ln min(dA, dB)]"


def _two_level_entropy(sigma: float) -> float:
    amp = np.array([[math.sqrt(1 - sigma * sigma), 0, 0], [0, sigma, 0]])
    psi = entanglement.BipartiteState(amp)
    return entanglement.entanglement_entropy(entanglement.reduced_states(psi)[0])


def product_entropy_threshold(tol: float = 1e-10, s_max: float = 1e-9) -> float:
    """Schmidt coefficient at which the entropy reaches ``s_max``.

    Between ``tol`` and this value a state is not a product by the Schmidt
    test yet has entropy below ``s_max``.
    """
    return bisect(lambda x: _two_level_entropy(x) - s_max, tol, 1e-2, xtol=1e-16)


def near_product_state(rng, dims=(2, 3)) -> entanglement.BipartiteState:
    a = rng.normal(size=dims[0]) + 1j * rng.normal(size=dims[0])
    b = rng.normal(size=dims[1]) + 1j * rng.normal(size=dims[1])
    amp = np.outer(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
    amp = amp + 10.0 ** rng.uniform(-14, -2) * (rng.normal(size=dims) + 1j * rng.normal(size=dims))
    return entanglement.BipartiteState(amp / np.linalg.norm(amp))


def check_product_iff_zero(rng, n=10_000):
    """is_product(tol=1e-10) implies S < 1e-9, and S < 1e-9 implies a Schmidt tail below the matched threshold."""
    sigma_star = product_entropy_threshold()
    for i in range(n):
        psi = entanglement.random_state((2, 2), rng) if i % 2 else near_product_state(rng)
        S = entanglement.entanglement_entropy(entanglement.reduced_states(psi)[0])
        sv = entanglement.schmidt_coefficients(psi)[1]
        if entanglement.is_product(psi, 1e-10) and not S < 1e-9:
            return False, f"product state with S = {S:.3e}"
        if S < 1e-9 and not sv < sigma_star * (1 + 1e-6):
            return False, f"S = {S:.3e} but Schmidt tail {sv:.3e}"
    return True, f"{n} states consistent (matched threshold {sigma_star:.3e})"


def _toy(commuting: bool):
    from bicone.entanglement import I2, SIGMA_X, SIGMA_Z

    if commuting:
        hams = [np.kron(SIGMA_Z, I2), np.kron(I2, SIGMA_X), np.kron(SIGMA_Z, SIGMA_X)]
    else:
        hams = [np.kron(SIGMA_Z, I2), np.kron(SIGMA_X, I2), np.kron(I2, SIGMA_X)]
    return entanglement.SurfaceToy.flat(hams, spacing=10.0)


def check_path_independence(rng, n=20):
    for _ in range(n):
        surf = _toy(True)
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        moves = [(i, float(rng.uniform(-2, 2))) for i in range(3)]
        if not entanglement.integrability_check(surf).passes:
            return False, "commuting toy failed integrability"
        spread = entanglement.ordering_spread(psi, surf, moves)
        if spread > 1e-10:
            return False, f"orderings differ by {spread:.2e}"
    return True, f"{n} surfaces order-independent"


def check_path_dependence(rng):
    surf = _toy(False)
    psi = np.array([1, 0, 0, 0], dtype=complex)
    spread = entanglement.ordering_spread(psi, surf, [(0, 0.7), (1, 0.9), (2, 0.4)])
    report = entanglement.integrability_check(surf)
    return (not report.passes) and spread > 1e-3, f"commutator {report.worst:.3f}, ordering spread {spread:.3f}"


def check_unitarity(rng, n=200):
    worst = 0.0
    for _ in range(n):
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = A + A.conj().T
        psi = entanglement.random_state((2, 2), rng)
        rho = entanglement.density(psi)
        out = entanglement.heisenberg_step(rho, h, rng.uniform(-3, 3))
        surf = entanglement.SurfaceToy.flat([h], spacing=10.0)
        new_psi, _ = entanglement.deform_surface(psi.vector, surf, 0, rng.uniform(-3, 3))
        worst = max(worst, abs(np.trace(out.matrix) - 1), abs(np.linalg.norm(new_psi) - 1))
    return worst < 1e-12, f"max norm/trace deviation = {worst:.2e}"


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    run: Callable


CHECKS = [
    Check("tensor", "inverse identity", check_inverse_identity),
    Check("tensor", "determinant lemma", check_determinant_lemma),
    Check("tensor", "closed-form inverse", check_closed_form_inverse),
    Check("tensor", "boost orthogonality", check_boost_orthogonality),
    Check("tensor", "boost invariance", check_boost_invariance),
    Check("tensor", "signature preservation", check_signature),
    Check("scalar_field", "c equals null root", check_c_null_root),
    Check("scalar_field", "vacuum energy conservation", check_energy_conservation),
    Check("causality", "cone nesting", check_cone_nesting),
    Check("causality", "monotone in alpha", check_alpha_monotone),
    Check("causality", "required alpha boundary", check_required_alpha_boundary),
    Check("causality", "ordering reversal threshold", check_reversal_threshold),
    Check("causality", "qi roundtrip", check_qi_roundtrip),
    Check("entanglement", "entropy symmetry", check_entropy_symmetry),
    Check("entanglement", "entropy bounds", check_entropy_bounds),
    Check("entanglement", "product iff zero entropy", check_product_iff_zero),
    Check("entanglement", "path independence", check_path_independence),
    Check("entanglement", "path dependence witness", check_path_dependence),
    Check("entanglement", "unitarity", check_unitarity),
]


def run_checks(seed: int = 0):
    """Yield ``(check, passed, detail)`` for every suite, each with its own child seed."""
    seeds = np.random.SeedSequence(seed).spawn(len(CHECKS))
    for check, ss in zip(CHECKS, seeds):
        passed, detail = check.run(np.random.default_rng(ss))
        yield check, bool(passed), detail
