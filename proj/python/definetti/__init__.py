"""de Finetti approximations for coherent-power states.

Thin re-export of the pybind11 core; see the project README for usage.
"""

from ._core import (
    CoherentPowerState,
    InvalidInput,
    PhaseSpaceGrid,
    ResourceError,
    TruncationError,
    annihilation,
    cartesian_grid,
    choose_dim,
    coherent_amplitudes,
    coherent_row,
    commutator_check,
    conditional_state,
    displacement_matrix,
    from_profile,
    gaussian_profile_components,
    lambda_dense,
    measure_nu,
    partial_trace,
    profile_adapted_grid,
    reduced_state,
    split_amplitude,
    tail,
    tensor_power,
    trace_norm,
    verify_bound,
    verify_profile,
    weight_state_dense,
)

__all__ = [
    "CoherentPowerState",
    "InvalidInput",
    "PhaseSpaceGrid",
    "ResourceError",
    "TruncationError",
    "annihilation",
    "cartesian_grid",
    "choose_dim",
    "coherent_amplitudes",
    "coherent_row",
    "commutator_check",
    "conditional_state",
    "displacement_matrix",
    "from_profile",
    "gaussian_profile_components",
    "lambda_dense",
    "measure_nu",
    "partial_trace",
    "profile_adapted_grid",
    "reduced_state",
    "split_amplitude",
    "tail",
    "tensor_power",
    "trace_norm",
    "verify_bound",
    "verify_profile",
    "weight_state_dense",
]
