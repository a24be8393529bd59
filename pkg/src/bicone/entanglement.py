"""Bipartite pure states, reduced density matrices and entanglement entropy.

Also holds a lattice toy of surface-by-surface evolution: each site of a
discretised spacelike surface carries a local time and a local Hamiltonian
density, and advancing one site's time applies that site's unitary. The toy
is consistent (order independent) exactly when the local Hamiltonians
commute pairwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Literal, Sequence

import numpy as np

from bicone.errors import DimensionMismatch, InvalidDensity, NotNormalized, SpacelikeViolation

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
EIGEN_CLAMP = 1e-14

# Pauli matrices and single-qubit basis states, handy for building examples.
I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class BipartiteState:
    """Pure state of A (x) B stored as a dA x dB amplitude matrix psi[a, b]."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or min(amps.shape) < 2:
            raise DimensionMismatch(f"amplitudes must be dA x dB with dA, dB >= 2, got {amps.shape}")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"sum |psi|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec: Sequence[complex], dims: tuple[int, int], normalize: bool = False):
        v = np.asarray(vec, dtype=complex)
        dA, dB = dims
        if v.size != dA * dB:
            raise DimensionMismatch(f"{v.size} amplitudes do not fit dims {dims}")
        if normalize:
            v = v / np.linalg.norm(v)
        return cls(v.reshape(dA, dB))

    @classmethod
    def product(cls, psi_a, psi_b):
        return cls(np.outer(np.asarray(psi_a, dtype=complex), np.asarray(psi_b, dtype=complex)))

    @property
    def dims(self) -> tuple[int, int]:
        return self.amplitudes.shape

    @property
    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)


def bell_state() -> BipartiteState:
    """(|00> + |11>) / sqrt 2."""
    return BipartiteState.from_vector(np.array([1, 0, 0, 1]) / math.sqrt(2), (2, 2))


def random_state(dims: tuple[int, int], rng: np.random.Generator) -> BipartiteState:
    """Haar-random pure state (complex Gaussian, normalised)."""
    n = dims[0] * dims[1]
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return BipartiteState.from_vector(v, dims, normalize=True)


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        rho = np.array(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InvalidDensity(f"density matrix must be square, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise InvalidDensity("density matrix is not Hermitian")
        tr = np.trace(rho)
        if abs(tr - 1.0) > NORM_TOL:
            raise InvalidDensity(f"trace is {tr}")
        if np.min(np.linalg.eigvalsh(rho)) < -HERMITIAN_TOL:
            raise InvalidDensity("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def density(psi: BipartiteState) -> DensityOperator:
    v = psi.vector
    return DensityOperator(np.outer(v, v.conj()))


def partial_trace(rho: DensityOperator, keep: Literal["A", "B"], dims: tuple[int, int]) -> DensityOperator:
    """Reduced state of subsystem ``keep``; the other factor is summed out."""
    dA, dB = dims
    if rho.dim != dA * dB:
        raise DimensionMismatch(f"rho has dimension {rho.dim}, dims {dims} need {dA * dB}")
    r = rho.matrix.reshape(dA, dB, dA, dB)
    if keep == "A":
        red = np.einsum("ajbj->ab", r)
    elif keep == "B":
        red = np.einsum("iaib->ab", r)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    # hermitian part only, to keep summation rounding out of the invariants
    return DensityOperator(0.5 * (red + red.conj().T))


def reduced_states(psi: BipartiteState) -> tuple[DensityOperator, DensityOperator]:
    rho = density(psi)
    return partial_trace(rho, "A", psi.dims), partial_trace(rho, "B", psi.dims)


def entanglement_entropy(rho_reduced: DensityOperator, base: float = math.e) -> float:
    """von Neumann entropy -Tr rho ln rho, in nats unless ``base`` is given."""
    if not isinstance(rho_reduced, DensityOperator):
        rho_reduced = DensityOperator(rho_reduced)
    lam = rho_reduced.eigenvalues()
    lam = lam[lam > EIGEN_CLAMP]
    S = float(-np.sum(lam * np.log(lam)))
    S = max(S, 0.0)
    if base != math.e:
        S /= math.log(base)
    return S


def schmidt_coefficients(psi: BipartiteState) -> np.ndarray:
    return np.linalg.svd(psi.amplitudes, compute_uv=False)


def is_product(psi: BipartiteState, tol: float = 1e-10) -> bool:
    return bool(schmidt_coefficients(psi)[1] < tol)


def effective_alpha(S: float, alpha_max: float, tol: float = 1e-12) -> float:
    """Coupling switched on by entanglement: 0 for product states, ``alpha_max`` otherwise."""
    if S < 0:
        raise ValueError(f"entropy must be non-negative, got {S}")
    return 0.0 if S <= tol else float(alpha_max)


# --- unitary steps ---------------------------------------------------------------


def _check_hermitian(h: np.ndarray, what: str = "Hamiltonian") -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got {h.shape}")
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise ValueError(f"{what} is not Hermitian")
    return h


def propagator(h: np.ndarray, dtau: float, hbar_c0: float = 1.0) -> np.ndarray:
    """exp(-i h dtau / hbar_c0) via the eigendecomposition of Hermitian ``h``."""
    lam, V = np.linalg.eigh(_check_hermitian(h))
    return (V * np.exp(-1j * lam * dtau / hbar_c0)) @ V.conj().T


def heisenberg_step(rho: DensityOperator, h: np.ndarray, dtau: float, hbar_c0: float = 1.0) -> DensityOperator:
    h = np.asarray(h)
    if h.shape != rho.matrix.shape:
        raise DimensionMismatch(f"h has shape {h.shape}, rho has {rho.matrix.shape}")
    if dtau == 0:
        return rho
    U = propagator(h, dtau, hbar_c0)
    out = U @ rho.matrix @ U.conj().T
    return DensityOperator(0.5 * (out + out.conj().T))


# --- lattice surface toy ---------------------------------------------------------


@dataclass(frozen=True)
class SurfaceToy:
    """Discretised spacelike surface.

    ``sites`` are lattice positions along one axis, ``local_times`` the
    surface's time at each site, ``local_hamiltonians`` the Hamiltonian
    density of each site acting on the full joint space.
    """

    sites: tuple
    local_times: tuple
    local_hamiltonians: tuple = field(repr=False)
    hbar_c0: float = 1.0
    c0: float = 1.0

    def __post_init__(self):
        sites = tuple(float(x) for x in self.sites)
        times = tuple(float(x) for x in self.local_times)
        hams = tuple(_check_hermitian(h, f"local Hamiltonian {i}") for i, h in enumerate(self.local_hamiltonians))
        if not (len(sites) == len(times) == len(hams)) or not sites:
            raise DimensionMismatch("sites, local_times and local_hamiltonians must have equal non-zero length")
        if len({h.shape for h in hams}) != 1:
            raise DimensionMismatch("local Hamiltonians act on different spaces")
        if self.hbar_c0 <= 0:
            raise ValueError("hbar_c0 must be positive")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "local_times", times)
        object.__setattr__(self, "local_hamiltonians", hams)
        _check_spacelike(sites, times, self.c0)

    @classmethod
    def flat(cls, hamiltonians: Sequence[np.ndarray], spacing: float = 10.0, **kw):
        n = len(hamiltonians)
        return cls(tuple(spacing * i for i in range(n)), (0.0,) * n, tuple(hamiltonians), **kw)

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @property
    def dim(self) -> int:
        return self.local_hamiltonians[0].shape[0]


def _check_spacelike(sites, times, c0):
    order = np.argsort(sites)
    for i, j in zip(order[:-1], order[1:]):
        gap = sites[j] - sites[i]
        if abs(times[j] - times[i]) >= gap / c0:
            raise SpacelikeViolation(
                f"local-time skew {abs(times[j] - times[i]):g} between sites {i} and {j} "
                f"is not below spacing / c0 = {gap / c0:g}"
            )


def deform_surface(psi: np.ndarray, surface: SurfaceToy, site: int, dtau: float) -> tuple[np.ndarray, SurfaceToy]:
    """Push the surface forward by ``dtau`` at one site.

    Returns the evolved joint state and the deformed surface; the inputs are
    left untouched.
    """
    if not 0 <= site < surface.n_sites:
        raise IndexError(f"site {site} out of range for {surface.n_sites} sites")
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (surface.dim,):
        raise DimensionMismatch(f"state has shape {psi.shape}, surface acts on dimension {surface.dim}")
    times = list(surface.local_times)
    times[site] += dtau
    new_surface = replace(surface, local_times=tuple(times))
    if dtau == 0:
        return psi.copy(), new_surface
    U = propagator(surface.local_hamiltonians[site], dtau, surface.hbar_c0)
    return U @ psi, new_surface


def evolve_along(psi: np.ndarray, surface: SurfaceToy, moves: Iterable[tuple[int, float]]):
    for site, dtau in moves:
        psi, surface = deform_surface(psi, surface, site, dtau)
    return psi, surface


@dataclass(frozen=True)
class IntegrabilityReport:
    commutator_norms: dict
    tol: float

    @property
    def passes(self) -> bool:
        return all(v < self.tol for v in self.commutator_norms.values())

    @property
    def worst(self) -> float:
        return max(self.commutator_norms.values(), default=0.0)

    @property
    def failing_pairs(self) -> list:
        return [pair for pair, v in self.commutator_norms.items() if v >= self.tol]


def integrability_check(surface: SurfaceToy, tol: float = 1e-12) -> IntegrabilityReport:
    """Spectral norms of all pairwise commutators of the local Hamiltonians."""
    hams = surface.local_hamiltonians
    norms = {}
    for i, j in itertools.combinations(range(len(hams)), 2):
        comm = hams[i] @ hams[j] - hams[j] @ hams[i]
        norms[(i, j)] = float(np.linalg.norm(comm, 2))
    return IntegrabilityReport(norms, tol)


def ordering_spread(psi: np.ndarray, surface: SurfaceToy, moves: Sequence[tuple[int, float]]) -> float:
    """Largest norm difference between final states over all orderings of ``moves``."""
    finals = [evolve_along(psi, surface, perm)[0] for perm in itertools.permutations(moves)]
    return max(float(np.linalg.norm(a - b)) for a, b in itertools.combinations(finals, 2)) if len(finals) > 1 else 0.0
