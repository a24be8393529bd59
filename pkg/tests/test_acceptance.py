"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` (or ``-v``) to see the lines;
they are printed with capture disabled, so they show up in either mode.
"""

import itertools
import math
import shutil
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.optimize import bisect

from bicone import causality as cz
from bicone import entanglement as ent
from bicone import scalar_field as sf
from bicone import scenario, tensor
from bicone.causality import Causality
from bicone.checks import random_rank_one, random_velocity
from bicone.entanglement import I2, SIGMA_X, SIGMA_Z
from bicone.tensor import apply_boost, bimetric, boost, boost_metric, covector, interval, minkowski, vector

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_metric_algebra(verdict):
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    inv_err = det_err = closed_err = 0.0
    for _ in range(1000):
        alpha, u = random_rank_one(rng)
        m = bimetric(minkowski(), alpha, u)
        mi = tensor.inverse(m).components
        inv_err = max(inv_err, np.max(np.abs(mi @ m.components - np.eye(4))))
        lemma = -1.0 * (1.0 + alpha * float(u.components @ ETA @ u.components))
        det_err = max(det_err, abs(np.linalg.det(m.components) - lemma), abs(tensor.determinant(m) - lemma))
        closed_err = max(closed_err, np.max(np.abs(mi - tensor.generic_inverse(m.components))))
    elapsed = time.perf_counter() - t0
    ok = max(inv_err, det_err, closed_err) < 1e-12 and elapsed < 1.0
    verdict(
        1,
        ok,
        f"inverse {inv_err:.1e}, det lemma {det_err:.1e}, closed vs generic {closed_err:.1e} (< 1e-12); {elapsed:.3f} s (< 1 s)",
    )


def test_criterion_02_c_of_t_consistency(verdict):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        state = sf.ScalarFieldState(rng.uniform(-2, 2), rng.uniform(-3, 3), mass=rng.uniform(0, 2), alpha=rng.uniform(0, 10))
        gh = sf.quantum_metric(state)
        root = bisect(lambda c: interval(gh, vector(1.0, c, 0, 0)), 0.0, 1e3, xtol=1e-14, rtol=1e-15)
        worst = max(worst, abs(sf.c_of_state(state) - root))
    verdict(2, worst < 1e-10, f"max |c_of_state - null root| = {worst:.1e} over 100 states (< 1e-10)")


def test_criterion_03_boosts(verdict):
    rng = np.random.default_rng(3)
    orth = inv_g = inv_ghat = 0.0
    for _ in range(1000):
        b = boost(random_velocity(rng))
        lam = b.matrix
        orth = max(orth, np.max(np.abs(np.einsum("mn,ms->ns", lam, ETA @ lam @ ETA) - np.eye(4))))
        alpha, u = random_rank_one(rng)
        gh = bimetric(minkowski(), alpha, u)
        d = vector(rng.uniform(-1, 1, 4))
        d2 = apply_boost(b, d)
        s2, s2b = interval(minkowski(), d), interval(minkowski(), d2)
        inv_g = max(inv_g, abs(s2b - s2) / max(1.0, abs(s2)))
        h2, h2b = interval(gh, d), interval(boost_metric(b, gh), d2)
        inv_ghat = max(inv_ghat, abs(h2b - h2) / max(1.0, abs(h2)))
    ok = max(orth, inv_g, inv_ghat) < 1e-12
    verdict(3, ok, f"orthogonality {orth:.1e}, interval g {inv_g:.1e}, interval ghat {inv_ghat:.1e} over 1000 boosts (< 1e-12)")


def test_criterion_04_vacuum_evolution(verdict):
    s0 = sf.ScalarFieldState(1.0, 0.0, mass=1.0)
    n = int(round(2 * math.pi / 1e-3))
    traj = sf.evolve_homogeneous(s0, None, 1e-3, n)
    err = float(np.max(np.abs(traj.phi - np.cos(traj.t))))
    e = traj.energy
    drift = float(np.max(np.abs(e - e[0])) / e[0])

    def coarse(dt):
        tr = sf.evolve_homogeneous(s0, None, dt, int(round(2 * math.pi / dt)))
        return float(np.max(np.abs(tr.phi - np.cos(tr.t))))

    ratio = coarse(0.1) / coarse(0.05)
    ok = err < 1e-6 and drift < 1e-8 and 14.0 < ratio < 18.0
    verdict(4, ok, f"max |phi - cos t| = {err:.1e} (< 1e-6), energy drift {drift:.1e} (< 1e-8), halving-dt ratio {ratio:.2f} (~16)")


def test_criterion_05_causal_window(verdict):
    gh = bimetric(minkowski(), 8.0, covector(1, 0, 0, 0))
    rec = cz.classify(vector(1, 2, 0, 0), minkowski(), gh)
    closed = cz.required_alpha(2, 1, 1, 1)
    bis = cz.bisect_required_alpha(2, 1, 1, 1)
    ok = (
        rec.class_g is Causality.SPACELIKE
        and rec.s2_g == -3.0
        and rec.class_ghat is Causality.TIMELIKE
        and abs(rec.s2_ghat - 5.0) < 1e-12
        and abs(closed - 3.0) < 1e-8
        and abs(bis - 3.0) < 1e-8
    )
    verdict(
        5,
        ok,
        f"g: {rec.class_g.value} s2={rec.s2_g:g}, ghat: {rec.class_ghat.value} s2={rec.s2_ghat:g}; "
        f"required alpha closed {closed!r}, bisection {bis!r}",
    )


def test_criterion_06_ordering_reversal(verdict):
    d = vector(1, 2, 0, 0)
    v = cz.ordering_reversal_threshold(d, minkowski())
    after = apply_boost(boost([0.5 + 1e-6, 0, 0]), d).components[0]
    before = apply_boost(boost([0.5 - 1e-6, 0, 0]), d).components[0]
    ok = abs(v - 0.5) < 1e-10 and after < 0 < before
    verdict(6, ok, f"v* = {v!r} (0.5 +- 1e-10); dt' at +1e-6: {after:.2e}, at -1e-6: {before:.2e}")


def test_criterion_07_gisin_scenario(verdict, tmp_path):
    t0 = time.perf_counter()
    res = scenario.run_preset("gisin11km", tmp_path)
    elapsed = time.perf_counter() - t0
    rep = {q: v for q, v, _ in res.report}
    w = rep["w_qi"]
    beta = rep["required_alpha_phidot2_over_c02"]
    beta_b = rep["required_alpha_phidot2_over_c02_bisection"]
    ok = (
        abs(w - 1e-4) <= 1e-12 * 1e-4
        and abs(beta - (1e8 - 1)) <= 1e-12 * (1e8 - 1)
        and abs(beta_b - beta) <= 1e-6 * beta
        and rep["class_g"] == "spacelike"
        and rep["class_ghat_above_threshold"] == "timelike"
        and rep["flip_confirmed"] is True
        and elapsed < 1.0
    )
    verdict(
        7,
        ok,
        f"w_qi = {w!r}, alpha phi_dot^2/c0^2 = {beta!r} (bisection {beta_b!r}), "
        f"g {rep['class_g']} -> ghat {rep['class_ghat_above_threshold']}; {elapsed:.3f} s (< 1 s)",
    )


def test_criterion_08_entanglement(verdict):
    rng = np.random.default_rng(8)
    bell = ent.entanglement_entropy(ent.reduced_states(ent.bell_state())[0])
    prod = 0.0
    for _ in range(1000):
        a = ent.random_state((2, 2), rng).amplitudes[0]
        b = ent.random_state((2, 3), rng).amplitudes[1]
        psi = ent.BipartiteState.product(a / np.linalg.norm(a), b / np.linalg.norm(b))
        prod = max(prod, ent.entanglement_entropy(ent.reduced_states(psi)[0]))
    sym = 0.0
    violations = 0
    for dims in ((2, 2), (2, 3)):
        for _ in range(10_000):
            ra, rb = ent.reduced_states(ent.random_state(dims, rng))
            Sa, Sb = ent.entanglement_entropy(ra), ent.entanglement_entropy(rb)
            sym = max(sym, abs(Sa - Sb))
            violations += not (0.0 <= Sa <= math.log(min(dims)) and 0.0 <= Sb <= math.log(min(dims)))
    ok = abs(bell - math.log(2)) < 1e-12 and prod < 1e-12 and sym < 1e-10 and violations == 0
    verdict(
        8,
        ok,
        f"Bell S - ln2 = {bell - math.log(2):.1e}, max product S = {prod:.1e}, "
        f"max |S_A - S_B| = {sym:.1e} on 2x10^4 states, bound violations {violations}",
    )


def test_criterion_09_surface_toy(verdict):
    rng = np.random.default_rng(9)
    commuting = ent.SurfaceToy.flat(
        [np.kron(SIGMA_Z, I2), np.kron(I2, SIGMA_Z), np.kron(SIGMA_Z, SIGMA_Z)]
    )
    psi = ent.random_state((2, 2), rng).vector
    moves = [(0, 0.37), (1, -0.81), (2, 1.23)]
    finals = [ent.evolve_along(psi, commuting, p)[0] for p in itertools.permutations(moves)]
    spread = max(np.linalg.norm(a - b) for a, b in itertools.combinations(finals, 2))
    passes = ent.integrability_check(commuting).passes

    noncommuting = ent.SurfaceToy.flat([np.kron(SIGMA_Z, I2), np.kron(SIGMA_X, I2), np.kron(I2, SIGMA_Z)])
    report = ent.integrability_check(noncommuting)
    witness = ent.ordering_spread(psi, noncommuting, moves)
    ok = passes and len(finals) == 6 and spread < 1e-10 and not report.passes and witness > 1e-3
    verdict(
        9,
        ok,
        f"commuting: check {'passes' if passes else 'fails'}, 6-ordering spread {spread:.1e} (< 1e-10); "
        f"non-commuting: check {'passes' if report.passes else 'fails'} (worst {report.worst:.2f}), spread {witness:.3f} (> 1e-3)",
    )


def _cli():
    exe = shutil.which("bicone")
    return [exe] if exe else [sys.executable, "-m", "bicone.cli"]


def test_criterion_10_determinism(verdict, tmp_path):
    for run in ("a", "b"):
        subprocess.run(
            [*_cli(), "preset", "gisin11km", "--out-dir", str(tmp_path / run)], check=True, capture_output=True
        )
    files = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
    other = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
    same = files == other and bool(files) and all(
        (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes() for f in files
    )
    verdict(10, same, f"{len(files)} artifacts from two `bicone preset gisin11km` runs are byte-identical: {same}")
