"""Bimetric light-cone simulator.

Two metrics share one flat spacetime: the gravitational metric eta and a
quantum metric widened by the gradient of a scalar field. The package builds
both, evolves the field, classifies event separations under each cone,
measures bipartite entanglement, and runs small scenarios from INI files.
"""

from bicone.causality import (
    CausalRecord,
    Causality,
    QISpeed,
    bisect_required_alpha,
    classify,
    ordering_reversal_threshold,
    qi_from_angle,
    qi_from_speed,
    required_alpha,
    transit_time,
)
from bicone.entanglement import (
    BipartiteState,
    DensityOperator,
    SurfaceToy,
    bell_state,
    deform_surface,
    density,
    effective_alpha,
    entanglement_entropy,
    heisenberg_step,
    integrability_check,
    is_product,
    partial_trace,
)
from bicone.errors import *  # noqa: F401,F403
from bicone.scalar_field import (
    MatterBackground,
    ScalarFieldState,
    Trajectory,
    c_of_state,
    evolve_homogeneous,
    potential,
    potential_prime,
    s_ratio,
    stress_energy_phi,
)
from bicone.tensor import (
    FourVector,
    LorentzBoost,
    MetricTensor,
    apply_boost,
    bimetric,
    boost,
    boost_metric,
    covector,
    determinant,
    interval,
    inverse,
    minkowski,
    vector,
)

__version__ = "0.1.0"
