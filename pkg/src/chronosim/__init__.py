"""chronosim: relational emergent-time simulation at desk scale.

The library builds globally stationary clock-system entangled states,
recovers effective Schroedinger dynamics by conditioning on clock readings,
quantifies how entanglement suppresses an observer's local coherence, and
evaluates kinematic, gravitational, and cosmological emergent-time
integrals.  A scenario-driven CLI (``chronosim run``) and narrative demo
scripts sit on top; see the README.

Natural units: hbar = 1 everywhere (:data:`HBAR`); the speed of light is an
explicit argument defaulting to 1.
"""

from .qlin import (
    HBAR,
    DensityMatrix,
    Operator,
    StateVector,
    eig_hermitian,
    evolve_unitary,
    hermitian_operator,
    partial_trace,
    pure_density,
    tensor_product,
)
from .clockwork import (
    ClockModel,
    HistoryState,
    build_fourier_clock,
    build_history_state,
    constraint_residual,
    lattice_frequencies,
)
from .conditioning import (
    ConditionalTrajectory,
    align_phase,
    condition_on_clock,
    conditional_trajectory,
    reparametrized_trajectory,
    schrodinger_residual,
)
from .entcoh import (
    TICK_RATE_FUNCTIONS,
    CoherenceCurve,
    ObserverProfile,
    ObserverScenarioRow,
    coherence_curve,
    coherence_model,
    dephased_qubit_state,
    entanglement_entropy,
    l1_coherence,
    three_observer_scenario,
)
from .chronometry import (
    EmergentTimeSeries,
    WorldlineSpec,
    accumulate_tick_rate,
    adaptive_simpson,
    as_time_function,
    emergent_time_exponential,
    emergent_time_flrw,
    emergent_time_metric,
    emergent_time_schwarzschild,
    emergent_time_unified,
    schwarzschild_factor,
    sr_factor,
)
from .errors import ConfigError, DomainError, UndefinedConditionalStateError

__version__ = "0.1.0"

__all__ = [
    "HBAR",
    "__version__",
    # qlin
    "StateVector", "Operator", "DensityMatrix",
    "tensor_product", "evolve_unitary", "partial_trace", "eig_hermitian",
    "hermitian_operator", "pure_density",
    # clockwork
    "ClockModel", "HistoryState", "build_fourier_clock", "build_history_state",
    "constraint_residual", "lattice_frequencies",
    # conditioning
    "ConditionalTrajectory", "condition_on_clock", "conditional_trajectory",
    "align_phase", "schrodinger_residual", "reparametrized_trajectory",
    # entcoh
    "ObserverProfile", "ObserverScenarioRow", "CoherenceCurve",
    "TICK_RATE_FUNCTIONS", "coherence_curve", "coherence_model",
    "entanglement_entropy", "dephased_qubit_state", "l1_coherence",
    "three_observer_scenario",
    # chronometry
    "WorldlineSpec", "EmergentTimeSeries", "sr_factor", "schwarzschild_factor",
    "emergent_time_schwarzschild", "emergent_time_flrw",
    "emergent_time_exponential", "emergent_time_metric", "emergent_time_unified",
    "adaptive_simpson", "accumulate_tick_rate", "as_time_function",
    # errors
    "DomainError", "UndefinedConditionalStateError", "ConfigError",
]
