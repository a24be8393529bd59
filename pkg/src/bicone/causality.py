"""Two-cone causal classification, QI-speed geometry and signal timing."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bicone.errors import OutOfRange, UnreachableSeparation
from bicone.tensor import FourVector, MetricTensor, bimetric, covector, interval, minkowski, vector

NULL_TOL = 1e-12


class Causality(enum.Enum):
    TIMELIKE = "timelike"
    NULL = "null"
    SPACELIKE = "spacelike"

    def __str__(self):
        return self.value


def causal_class(s2: float, tol: float = NULL_TOL) -> Causality:
    if s2 > tol:
        return Causality.TIMELIKE
    if s2 < -tol:
        return Causality.SPACELIKE
    return Causality.NULL


@dataclass(frozen=True)
class CausalRecord:
    delta: FourVector
    class_g: Causality
    class_ghat: Causality
    s2_g: float
    s2_ghat: float

    @property
    def is_communication_window(self) -> bool:
        """Spacelike for the gravitational cone but reachable inside the quantum cone."""
        return self.class_g is Causality.SPACELIKE and self.class_ghat is not Causality.SPACELIKE


def classify(delta: FourVector, g: MetricTensor, g_hat: MetricTensor, tol: float = NULL_TOL) -> CausalRecord:
    s2 = interval(g, delta)
    s2_hat = interval(g_hat, delta)
    return CausalRecord(delta, causal_class(s2, tol), causal_class(s2_hat, tol), s2, s2_hat)


# --- quantum-information speed ----------------------------------------------------


@dataclass(frozen=True)
class QISpeed:
    """Speed of quantum-information transfer as speed, cone angle and inverse speed.

    ``theta_qi`` is the half-angle of the signal cone measured from the time
    axis of a diagram with c0 at 45 degrees.
    """

    v_qi: float
    theta_qi: float
    w_qi: float
    c0: float = 1.0


def qi_from_speed(v: float, c0: float = 1.0) -> QISpeed:
    if not v >= 0:
        raise ValueError(f"speed must be non-negative, got {v}")
    if math.isinf(v):
        return QISpeed(math.inf, math.pi / 2, 0.0, c0)
    if v == 0:
        return QISpeed(0.0, 0.0, math.inf, c0)
    return QISpeed(float(v), math.atan2(v, c0), c0 / v, c0)


def qi_from_angle(theta: float, c0: float = 1.0) -> QISpeed:
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    if theta == 0.0:
        return QISpeed(0.0, 0.0, math.inf, c0)
    if theta == math.pi / 2:
        return QISpeed(math.inf, theta, 0.0, c0)
    # tan and cot separately so that tiny angles keep a finite, nonzero speed
    return QISpeed(c0 * math.tan(theta), float(theta), math.cos(theta) / math.sin(theta), c0)


# --- alpha needed to connect two events -------------------------------------------


def required_alpha(L: float, T: float, phi_dot: float, c0: float = 1.0) -> float:
    """Smallest alpha that makes a separation (T, L) non-spacelike in the quantum metric.

    ``L`` and ``T`` share the unit system of ``c0``; ``phi_dot`` is per unit
    time and alpha is returned in length^2.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    if L <= c0 * T:
        return 0.0
    if phi_dot == 0:
        raise UnreachableSeparation(f"L = {L:g} exceeds c0 T = {c0 * T:g} and phi_dot = 0")
    ratio = L / (c0 * T)
    return (ratio * ratio - 1.0) * c0 * c0 / (phi_dot * phi_dot)


def _reduced_delta(L: float, T: float, c0: float) -> FourVector:
    # scale-free separation: time leg c0 T / L, space leg 1
    return vector(c0 * T / L, 1.0, 0.0, 0.0)


def classify_at_coupling(L: float, T: float, beta: float, c0: float = 1.0) -> CausalRecord:
    """Classify (T, L) when the quantum metric has alpha phi_dot^2 / c0^2 = ``beta``."""
    g = minkowski()
    g_hat = bimetric(g, beta, covector(1.0, 0.0, 0.0, 0.0))
    return classify(_reduced_delta(L, T, c0), g, g_hat)


def bisect_required_alpha(
    L: float, T: float, phi_dot: float, c0: float = 1.0, rtol: float = 1e-15, max_iter: int = 400
) -> float:
    """Bisection over the coupling using :func:`classify` only.

    Independent of the closed form in :func:`required_alpha`; used to confirm it.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    if phi_dot == 0:
        if L <= c0 * T:
            return 0.0
        raise UnreachableSeparation(f"L = {L:g} exceeds c0 T = {c0 * T:g} and phi_dot = 0")

    def reachable(beta):
        return classify_at_coupling(L, T, beta, c0).class_ghat is not Causality.SPACELIKE

    if L <= 0 or reachable(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while not reachable(hi):
        lo, hi = hi, 2.0 * hi
        if math.isinf(hi):
            raise UnreachableSeparation("no finite coupling reaches the separation")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= rtol * hi:
            break
        if reachable(mid):
            hi = mid
        else:
            lo = mid
    return hi * c0 * c0 / (phi_dot * phi_dot)


# --- ordering reversal -----------------------------------------------------------


def cone_speed(m: MetricTensor, direction=(1.0, 0.0, 0.0)) -> float:
    """Forward null speed of ``m`` along a spatial direction.

    Positive root of m_00 + 2 c m_0i n^i + c^2 m_ij n^i n^j = 0.
    """
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    M = m.components
    a = float(n @ M[1:, 1:] @ n)
    b = 2.0 * float(M[0, 1:] @ n)
    c = float(M[0, 0])
    disc = b * b - 4.0 * a * c
    if disc < 0 or a >= 0:
        raise ValueError("metric has no forward null direction along this axis")
    # a < 0 < c: the roots have opposite sign; take the positive one stably
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b if b != 0 else 1.0))
    roots = [r for r in (q / a, c / q if q != 0 else math.inf) if r > 0]
    return min(roots)


def ordering_reversal_threshold(delta: FourVector, m: MetricTensor) -> Optional[float]:
    """Boost speed beyond which the time order of a spacelike separation flips.

    The boost is along the separation, in the kinematics whose limiting speed is
    the cone speed c of ``m``: dt' = gamma (dt - v dx / c^2) < 0 for v > c^2 dt / dx.
    Returns None for timelike or null separations, whose order no admissible
    boost can reverse.
    """
    s2 = interval(m, delta)
    if causal_class(s2) is not Causality.SPACELIKE:
        return None
    dt = float(delta.components[0])
    spatial = np.asarray(delta.components[1:])
    dx = float(np.linalg.norm(spatial))
    c = cone_speed(m, spatial / dx)
    return c * c * dt / dx


# --- signal transit --------------------------------------------------------------


def transit_time(L: float, t: np.ndarray, c: np.ndarray, rtol: float = 1e-10) -> float:
    """Earliest T with integral_0^T c(t) dt = L for a sampled signal speed.

    The speed is taken piecewise linear between samples; the cumulative
    trapezoid locates the bracketing interval and bisection finishes it.
    """
    t = np.asarray(t, dtype=float)
    c = np.asarray(c, dtype=float)
    if t.shape != c.shape or t.ndim != 1 or len(t) < 2:
        raise ValueError("t and c must be 1-D arrays of equal length >= 2")
    if np.any(c <= 0):
        raise ValueError("signal speed must stay positive")
    if L < 0:
        raise ValueError("L must be non-negative")
    if L == 0:
        return float(t[0])
    seg = 0.5 * (c[1:] + c[:-1]) * np.diff(t)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    if cum[-1] < L:
        raise OutOfRange(f"trajectory covers distance {cum[-1]:.6g} < L = {L:.6g}")
    k = int(np.searchsorted(cum, L, side="left")) - 1
    k = max(k, 0)
    t0, t1 = t[k], t[k + 1]
    c0, c1 = c[k], c[k + 1]
    h = t1 - t0
    need = L - cum[k]

    def covered(tau):
        ct = c0 + (c1 - c0) * tau / h
        return 0.5 * (c0 + ct) * tau

    lo, hi = 0.0, h
    tol = rtol * L
    for _ in range(200):
        if covered(hi) - covered(lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if covered(mid) < need:
            lo = mid
        else:
            hi = mid
    return float(t0 + 0.5 * (lo + hi))
