"""Dynamics and entanglement of two exchange-coupled spins between thermal baths.

The closed-form propagators (with and without an exponential memory kernel)
live in `markov` and `postmarkov`; `oracle` provides the independent
numerical-integration cross-checks; `entanglement` the Wootters concurrence;
`experiments`/`cli` the configuration-driven CSV experiments.
"""

from .entanglement import ConcurrenceResult, spin_flip, wootters_concurrence
from .errors import (
    BasisMismatch,
    DomainError,
    InvalidState,
    NonPositiveTransitionFrequency,
    NumericalFailure,
    SingularS,
    SpinBathError,
    StepTooLarge,
    UnsupportedCoherence,
)
from .markov import (
    MarkovPropagator,
    a_coefficients,
    coherence_eigenvalue,
    markov_propagate,
    steady_populations,
    steady_state,
    steady_state_concurrence,
)
from .model import (
    EigenSystem,
    ModelParams,
    Rates,
    TransitionOperators,
    eigensystem,
    hamiltonian,
    planck_occupation,
    rates,
    rates_sum_difference_form,
    spectral_density,
    transition_operators,
)
from .oracle import (
    Superoperator,
    build_lindbladian,
    integrate_markov,
    integrate_postmarkov_mode,
    population_block,
    population_closure_residual,
)
from .postmarkov import (
    JordanForm,
    MemoryKernel,
    PostMarkovPropagator,
    concurrence_trajectory,
    jordan_form,
    postmarkov_propagate,
    xi,
)
from .states import (
    COMPUTATIONAL,
    EIGEN,
    DensityMatrix,
    InitialState,
    Trajectory,
    initial_density,
    to_computational,
    to_eigen,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMismatch",
    "COMPUTATIONAL",
    "ConcurrenceResult",
    "DensityMatrix",
    "DomainError",
    "EIGEN",
    "EigenSystem",
    "InitialState",
    "InvalidState",
    "JordanForm",
    "MarkovPropagator",
    "MemoryKernel",
    "ModelParams",
    "NonPositiveTransitionFrequency",
    "NumericalFailure",
    "PostMarkovPropagator",
    "Rates",
    "SingularS",
    "SpinBathError",
    "StepTooLarge",
    "Superoperator",
    "Trajectory",
    "TransitionOperators",
    "UnsupportedCoherence",
    "a_coefficients",
    "build_lindbladian",
    "coherence_eigenvalue",
    "concurrence_trajectory",
    "eigensystem",
    "hamiltonian",
    "initial_density",
    "integrate_markov",
    "integrate_postmarkov_mode",
    "jordan_form",
    "markov_propagate",
    "planck_occupation",
    "population_block",
    "population_closure_residual",
    "postmarkov_propagate",
    "rates",
    "rates_sum_difference_form",
    "spectral_density",
    "spin_flip",
    "steady_populations",
    "steady_state",
    "steady_state_concurrence",
    "to_computational",
    "to_eigen",
    "transition_operators",
    "wootters_concurrence",
    "xi",
]
