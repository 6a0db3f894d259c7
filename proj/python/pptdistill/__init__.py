"""Python bindings for the pptd C++ core."""

from ._core import (
    DEFAULT_TOLERANCE,
    InvalidArgument,
    SolverError,
    code_lp,
    code_lp_table,
    fidelity_isotropic_closed,
    fidelity_maxent_closed,
    fidelity_ppt,
    fidelity_werner1_closed,
    hashing_rate,
    isotropic_bounds,
    isotropic_power_lp,
    isotropic_state,
    max_correlated_pt_eigs,
    max_correlated_rate,
    max_entangled,
    partial_transpose,
    read_state,
    state_bounds,
    werner_bounds,
    werner_power_lp,
    werner_rains_bound,
    werner_state,
    write_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
