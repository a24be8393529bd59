"""Scalar field data, its stress-energy, and homogeneous time evolution.

The field lives on a flat gravitational background g = eta. Only the
spatially homogeneous sector is evolved; there the equation of motion

    box(phi) + V'(phi) - kappa * s * alpha * T_hat^{mu nu} hat_nabla_mu hat_nabla_nu phi = 0

reduces to a scalar equation for phi_ddot, because the quantum metric
g_hat = diag(1 + alpha phi_dot^2, -1, -1, -1) depends on phi_dot and its
connection therefore on phi_ddot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bicone.errors import DegenerateMetric, NonConvergence, SignatureError
from bicone.tensor import (
    DEGENERACY_TOL,
    FourVector,
    MetricTensor,
    bimetric,
    covector,
    determinant,
    inverse,
    minkowski,
)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50


@dataclass(frozen=True)
class ScalarFieldState:
    """Field value and first derivatives at one spacetime point (natural units)."""

    phi: float
    phi_dot: float = 0.0
    grad_phi: tuple = (0.0, 0.0, 0.0)
    mass: float = 0.0
    alpha: float = 0.0
    kappa: float = 1.0

    def __post_init__(self):
        grad = tuple(float(x) for x in self.grad_phi)
        if len(grad) != 3:
            raise ValueError("grad_phi must have three components")
        object.__setattr__(self, "grad_phi", grad)
        if self.mass < 0:
            raise ValueError("mass must be non-negative")
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        lemma = 1.0 + self.alpha * (self.phi_dot**2 - sum(x * x for x in grad))
        if lemma <= DEGENERACY_TOL:
            raise DegenerateMetric(f"1 + alpha (phi_dot^2 - |grad phi|^2) = {lemma:.3e}")

    @property
    def is_homogeneous(self) -> bool:
        return not any(self.grad_phi)

    def replace(self, **changes) -> "ScalarFieldState":
        values = {f: getattr(self, f) for f in self.__dataclass_fields__}
        values.update(changes)
        return ScalarFieldState(**values)


@dataclass(frozen=True)
class MatterBackground:
    """Constant diagonal matter stress-energy T_hat^{mu nu}."""

    diagonal: tuple = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        diag = tuple(float(x) for x in self.diagonal)
        if len(diag) != 4:
            raise ValueError("T_hat needs four diagonal entries")
        if not all(math.isfinite(x) for x in diag):
            raise ValueError("T_hat entries must be finite")
        object.__setattr__(self, "diagonal", diag)

    @property
    def T_hat(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def is_vacuum(self) -> bool:
        return not any(self.diagonal)


def potential(state: ScalarFieldState) -> float:
    return 0.5 * state.mass**2 * state.phi**2


def potential_prime(state: ScalarFieldState) -> float:
    return state.mass**2 * state.phi


def energy_density(state: ScalarFieldState) -> float:
    """Conserved vacuum energy 1/2 phi_dot^2 + V of a homogeneous field."""
    return 0.5 * state.phi_dot**2 + potential(state)


def gradient(state: ScalarFieldState) -> FourVector:
    """The covector d_mu phi = (phi_dot, d_i phi)."""
    return covector(state.phi_dot, *state.grad_phi)


def quantum_metric(state: ScalarFieldState, g: Optional[MetricTensor] = None) -> MetricTensor:
    return bimetric(minkowski() if g is None else g, state.alpha, gradient(state))


def stress_energy_phi(state: ScalarFieldState, g: MetricTensor) -> np.ndarray:
    """T_phi^{mu nu} of the scalar field on metric ``g`` (upper indices)."""
    g_inv = inverse(g).components
    d_up = g_inv @ gradient(state).components
    kinetic = float(gradient(state).components @ d_up)
    T = np.outer(d_up, d_up) - 0.5 * g_inv * kinetic + g_inv * potential(state)
    return T / state.kappa


def s_ratio(g: MetricTensor, g_hat: MetricTensor) -> float:
    """Volume ratio s = sqrt(-det g_hat) / sqrt(-det g)."""
    det_g = determinant(g)
    det_hat = determinant(g_hat)
    if det_g >= 0 or det_hat >= 0:
        raise SignatureError(f"determinants must be negative, got {det_g:g} and {det_hat:g}")
    return math.sqrt(det_hat / det_g)


def c_of_state(state: ScalarFieldState, c0: float = 1.0) -> float:
    """Light speed of the quantum metric for a spatially homogeneous field."""
    return c0 * math.sqrt(1.0 + state.alpha / c0**2 * state.phi_dot**2)


# --- homogeneous evolution -------------------------------------------------------


def _hatted_hessian_diag(phi_dot: float, phi_ddot: float, alpha: float) -> tuple:
    """Diagonal of hat_nabla_mu hat_nabla_nu phi for a homogeneous field.

    g_hat_00 = 1 + alpha phi_dot^2 is the only time-dependent component, so the
    only connection coefficient that meets d_0 phi is
    Gamma_hat^0_00 = alpha phi_dot phi_ddot / (1 + alpha phi_dot^2);
    Gamma_hat^0_ii vanish because g_hat_ii = -1 is constant.
    """
    g00 = 1.0 + alpha * phi_dot * phi_dot
    gamma_000 = 0.5 / g00 * (2.0 * alpha * phi_dot * phi_ddot)
    return (phi_ddot - gamma_000 * phi_dot, 0.0, 0.0, 0.0)


def _residual(phi, phi_dot, phi_ddot, mass, alpha, kappa, t_hat_diag) -> float:
    s = math.sqrt(1.0 + alpha * phi_dot * phi_dot)
    hess = _hatted_hessian_diag(phi_dot, phi_ddot, alpha)
    coupling = sum(t * h for t, h in zip(t_hat_diag, hess))
    return phi_ddot + mass * mass * phi - kappa * s * alpha * coupling


def solve_acceleration(
    phi: float,
    phi_dot: float,
    mass: float,
    alpha: float,
    kappa: float,
    matter: Optional[MatterBackground] = None,
) -> float:
    """phi_ddot from the homogeneous equation of motion.

    Vacuum gives -m^2 phi directly. With matter the equation is solved by
    damped Newton iteration started from the vacuum value.
    """
    if 1.0 + alpha * phi_dot * phi_dot <= DEGENERACY_TOL:
        raise DegenerateMetric("quantum metric degenerate during evolution")
    a = -mass * mass * phi
    if matter is None or matter.is_vacuum or alpha == 0.0:
        return a
    diag = matter.diagonal
    scale = max(1.0, abs(a))

    def F(x):
        return _residual(phi, phi_dot, x, mass, alpha, kappa, diag)

    r = F(a)
    for _ in range(NEWTON_MAX_ITER):
        if abs(r) <= NEWTON_TOL * scale:
            return a
        h = 1e-6 * max(1.0, abs(a))
        slope = (F(a + h) - F(a - h)) / (2.0 * h)
        if slope == 0.0 or not math.isfinite(slope):
            break
        step = -r / slope
        lam = 1.0
        for _ in range(30):
            trial = a + lam * step
            r_trial = F(trial)
            if abs(r_trial) < abs(r):
                break
            lam *= 0.5
        a, r = trial, r_trial
    if abs(r) <= NEWTON_TOL * scale:
        return a
    raise NonConvergence(f"phi_ddot solve failed: residual {r:.3e} at phi={phi}, phi_dot={phi_dot}")


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    phi: np.ndarray
    phi_dot: np.ndarray
    alpha: float
    mass: float = 0.0
    kappa: float = 1.0

    def __len__(self):
        return len(self.t)

    def state(self, k: int) -> ScalarFieldState:
        return ScalarFieldState(
            float(self.phi[k]), float(self.phi_dot[k]), mass=self.mass, alpha=self.alpha, kappa=self.kappa
        )

    @property
    def c_of_t(self) -> np.ndarray:
        return np.sqrt(1.0 + self.alpha * self.phi_dot**2)

    @property
    def s_ratio(self) -> np.ndarray:
        # determinant lemma: det g_hat / det eta = 1 + alpha phi_dot^2
        return np.sqrt(1.0 + self.alpha * self.phi_dot**2)

    @property
    def energy(self) -> np.ndarray:
        return 0.5 * self.phi_dot**2 + 0.5 * self.mass**2 * self.phi**2


def evolve_homogeneous(
    state0: ScalarFieldState,
    matter: Optional[MatterBackground],
    dt: float,
    steps: int,
) -> Trajectory:
    """Classical RK4 integration of the homogeneous field, ``steps + 1`` samples."""
    if not state0.is_homogeneous:
        raise ValueError("evolve_homogeneous requires grad_phi = 0")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")

    m, alpha, kappa = state0.mass, state0.alpha, state0.kappa

    def acc(p, v):
        return solve_acceleration(p, v, m, alpha, kappa, matter)

    phi = np.empty(steps + 1)
    vel = np.empty(steps + 1)
    p, v = float(state0.phi), float(state0.phi_dot)
    phi[0], vel[0] = p, v
    half = 0.5 * dt
    for k in range(1, steps + 1):
        a1 = acc(p, v)
        p2, v2 = p + half * v, v + half * a1
        a2 = acc(p2, v2)
        p3, v3 = p + half * v2, v + half * a2
        a3 = acc(p3, v3)
        p4, v4 = p + dt * v3, v + dt * a3
        a4 = acc(p4, v4)
        p = p + dt / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4)
        v = v + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        phi[k], vel[k] = p, v
    t = np.arange(steps + 1) * dt
    return Trajectory(t, phi, vel, alpha, m, kappa)
