"""Four-dimensional metric algebra in natural units (c0 = c_g = 1).

Metrics carry signature (+, -, -, -). A quantum metric built by
:func:`bimetric` remembers the gravitational base metric, the coupling and
the covector it was built from, so its inverse and determinant can be taken
in closed form (Sherman-Morrison and the matrix determinant lemma) instead of
by a generic 4x4 solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence, Union

import numpy as np

from bicone.errors import DegenerateMetric, SignatureError, SuperluminalBoost, VarianceError

DEGENERACY_TOL = 1e-10

Kind = Literal["gravitational", "quantum"]
Variance = Literal["contravariant", "covariant"]


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FourVector:
    """Four real components tagged with their index position.

    ``contravariant`` is dx^mu, ``covariant`` is u_mu (e.g. the gradient of
    a scalar field). The tag is never guessed from the numbers.
    """

    components: np.ndarray
    variance: Variance = "contravariant"

    def __post_init__(self):
        comps = _frozen(self.components)
        if comps.shape != (4,):
            raise ValueError(f"four-vector needs 4 components, got shape {comps.shape}")
        if self.variance not in ("contravariant", "covariant"):
            raise VarianceError(f"unknown variance tag {self.variance!r}")
        object.__setattr__(self, "components", comps)

    @property
    def is_covariant(self) -> bool:
        return self.variance == "covariant"

    def __iter__(self):
        return iter(self.components)


def vector(*components: float) -> FourVector:
    """Contravariant four-vector; accepts four scalars or one sequence."""
    if len(components) == 1:
        components = tuple(components[0])
    return FourVector(np.asarray(components, dtype=float), "contravariant")


def covector(*components: float) -> FourVector:
    """Covariant four-vector; accepts four scalars or one sequence."""
    if len(components) == 1:
        components = tuple(components[0])
    return FourVector(np.asarray(components, dtype=float), "covariant")


@dataclass(frozen=True)
class MetricTensor:
    """Symmetric, non-degenerate, Lorentzian 4x4 metric.

    ``upper`` marks an inverse metric g^{mu nu}. ``base``, ``alpha`` and ``u``
    are filled only for metrics built as ``base + alpha * u (x) u``.
    """

    components: np.ndarray
    kind: Kind = "gravitational"
    upper: bool = False
    base: Optional["MetricTensor"] = field(default=None, repr=False, compare=False)
    alpha: float = field(default=0.0, repr=False, compare=False)
    u: Optional[FourVector] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        comps = _frozen(self.components)
        if comps.shape != (4, 4):
            raise ValueError(f"metric needs shape (4, 4), got {comps.shape}")
        if not np.all(np.isfinite(comps)):
            raise DegenerateMetric("metric has non-finite components")
        if not np.array_equal(comps, comps.T):
            raise ValueError("metric components are not symmetric")
        det = float(np.linalg.det(comps))
        if abs(det) < DEGENERACY_TOL:
            raise DegenerateMetric(f"|det| = {abs(det):.3e} is below {DEGENERACY_TOL:g}")
        eig = np.linalg.eigvalsh(comps)
        if not (np.sum(eig > 0) == 1 and np.sum(eig < 0) == 3):
            raise SignatureError(f"metric is not Lorentzian (+,-,-,-): eigenvalues {eig}")
        object.__setattr__(self, "components", comps)

    @property
    def is_rank_one_update(self) -> bool:
        return self.base is not None

    def __array__(self, dtype=None, copy=None):
        return np.array(self.components, dtype=dtype)


def minkowski() -> MetricTensor:
    return MetricTensor(np.diag([1.0, -1.0, -1.0, -1.0]), "gravitational")


def metric(components, kind: Kind = "gravitational") -> MetricTensor:
    """Wrap a plain 4x4 array as a lower-index metric."""
    return MetricTensor(np.asarray(components, dtype=float), kind)


def _require(v: FourVector, variance: Variance, what: str) -> np.ndarray:
    if not isinstance(v, FourVector):
        raise VarianceError(f"{what} must be a FourVector tagged {variance}")
    if v.variance != variance:
        raise VarianceError(f"{what} must be {variance}, got {v.variance}")
    return v.components


def raise_index(m: MetricTensor, w: FourVector) -> FourVector:
    """u^mu = m^{mu nu} u_nu for a lower-index metric ``m``."""
    comps = _require(w, "covariant", "argument")
    return FourVector(inverse(m).components @ comps, "contravariant")


def lower_index(m: MetricTensor, v: FourVector) -> FourVector:
    comps = _require(v, "contravariant", "argument")
    return FourVector(m.components @ comps, "covariant")


def norm_squared(m: MetricTensor, w: FourVector) -> float:
    """Invariant square of a vector or covector under metric ``m``."""
    if w.is_covariant:
        return float(w.components @ inverse(m).components @ w.components)
    return float(w.components @ m.components @ w.components)


def bimetric(g: MetricTensor, alpha: float, u: FourVector) -> MetricTensor:
    """Quantum metric g_hat = g + alpha * u_mu u_nu built from the covector ``u``."""
    if g.upper:
        raise VarianceError("bimetric expects a lower-index gravitational metric")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    uc = _require(u, "covariant", "u")
    comps = g.components + alpha * np.outer(uc, uc)
    return MetricTensor(comps, "quantum", base=g, alpha=float(alpha), u=u)


def _diagonal_inverse(comps: np.ndarray) -> Optional[np.ndarray]:
    if np.count_nonzero(comps - np.diag(np.diagonal(comps))) == 0:
        return np.diag(1.0 / np.diagonal(comps))
    return None


def inverse(m: MetricTensor) -> MetricTensor:
    """Inverse metric.

    Rank-one-built metrics use the Sherman-Morrison closed form
    ``g^{mu nu} - alpha u^mu u^nu / (1 + alpha u.u)``; diagonal metrics are
    inverted entrywise; anything else falls back to a generic solve.
    """
    if m.is_rank_one_update:
        g_inv = inverse(m.base).components
        up = g_inv @ m.u.components
        denom = 1.0 + m.alpha * float(m.u.components @ up)
        if abs(denom) < DEGENERACY_TOL:
            raise DegenerateMetric(f"1 + alpha u.u = {denom:.3e}")
        comps = g_inv - (m.alpha / denom) * np.outer(up, up)
    else:
        comps = _diagonal_inverse(m.components)
        if comps is None:
            comps = generic_inverse(m.components)
    return MetricTensor(comps, m.kind, upper=not m.upper)


def generic_inverse(components: np.ndarray) -> np.ndarray:
    """Dense LU inverse, refined and symmetrised; the cross-check for :func:`inverse`."""
    A = np.asarray(components, dtype=float)
    try:
        inv = np.linalg.inv(A)
    except np.linalg.LinAlgError as exc:
        raise DegenerateMetric(str(exc)) from exc
    # one step of iterative refinement
    inv = inv + inv @ (np.eye(4) - A @ inv)
    return 0.5 * (inv + inv.T)


def determinant(m: MetricTensor) -> float:
    if m.is_rank_one_update:
        return determinant(m.base) * (1.0 + m.alpha * norm_squared(m.base, m.u))
    return float(np.linalg.det(m.components))


def interval(m: MetricTensor, dx: FourVector) -> float:
    """Line element m_{mu nu} dx^mu dx^nu."""
    d = _require(dx, "contravariant", "dx")
    return float(d @ m.components @ d)


# --- Lorentz boosts -----------------------------------------------------------


@dataclass(frozen=True)
class LorentzBoost:
    """Pure boost with limiting speed ``c`` (1 for the gravitational cone)."""

    velocity: np.ndarray
    matrix: np.ndarray
    gamma: float
    c: float = 1.0

    @property
    def preserved_metric(self) -> np.ndarray:
        return np.diag([self.c**2, -1.0, -1.0, -1.0])

    @property
    def inverse_matrix(self) -> np.ndarray:
        G = self.preserved_metric
        return np.diag(1.0 / np.diagonal(G)) @ self.matrix.T @ G


def boost(v: Union[Sequence[float], np.ndarray], c: float = 1.0) -> LorentzBoost:
    """Boost matrix Lambda^mu_nu for frame velocity ``v``.

    With ``c = 1`` this is the standard special-relativistic boost. Other
    values give the boost that preserves ``diag(c^2, -1, -1, -1)``, i.e. the
    symmetry group of a wider light cone.
    """
    vel = np.asarray(v, dtype=float)
    if vel.shape != (3,):
        raise ValueError("boost velocity must be a 3-vector")
    speed2 = float(vel @ vel)
    if speed2 >= c * c:
        raise SuperluminalBoost(f"|v| = {np.sqrt(speed2):.17g} is not below c = {c:g}")
    gamma = 1.0 / np.sqrt(1.0 - speed2 / (c * c))
    lam = np.eye(4)
    lam[0, 0] = gamma
    lam[0, 1:] = -gamma * vel / (c * c)
    lam[1:, 0] = -gamma * vel
    if speed2 > 0.0:
        lam[1:, 1:] += (gamma - 1.0) * np.outer(vel, vel) / speed2
    return LorentzBoost(_frozen(vel), _frozen(lam), float(gamma), float(c))


def orthogonality_defect(b: LorentzBoost) -> float:
    """max |Lambda^mu_nu Lambda_mu^sigma - delta_nu^sigma| with indices moved by the preserved metric."""
    G = b.preserved_metric
    G_inv = np.diag(1.0 / np.diagonal(G))
    lowered = G @ b.matrix @ G_inv  # Lambda_mu^sigma
    return float(np.max(np.abs(b.matrix.T @ lowered - np.eye(4))))


def apply_boost(b: LorentzBoost, x: FourVector) -> FourVector:
    if x.is_covariant:
        return FourVector(b.inverse_matrix.T @ x.components, "covariant")
    return FourVector(b.matrix @ x.components, "contravariant")


def boost_metric(b: LorentzBoost, m: MetricTensor) -> MetricTensor:
    """Metric components seen in the boosted frame.

    For rank-one-built metrics the defining covector is co-transformed and the
    metric rebuilt, so the closed-form inverse stays available.
    """
    if m.upper:
        raise VarianceError("boost_metric expects a lower-index metric")
    if m.is_rank_one_update:
        return bimetric(boost_metric(b, m.base), m.alpha, apply_boost(b, m.u))
    if np.array_equal(m.components, b.preserved_metric):
        return m
    L = b.inverse_matrix
    comps = L.T @ m.components @ L
    return MetricTensor(0.5 * (comps + comps.T), m.kind)
