"""micro-macro Parareal for slow-fast Ornstein-Uhlenbeck moment equations."""

from ._core import (  # noqa: F401
    AssumptionReport,
    ErrorLevel,
    ExperimentConfig,
    MmprError,
    OUParams,
    Quantity,
    SlopeFit,
    SweepRow,
    a_sigma,
    b_sigma_inverse_schur,
    boundary_layer_time,
    check_assumptions,
    config_from_json,
    covariance_system,
    default_eps_grid,
    delta_lambda,
    eigenvalues,
    exact_flow,
    fit_slopes,
    lambda_sigma,
    lambda_sigma_eps,
    mat_exp,
    mc_validate,
    mean_full_matrix,
    run_moment_parareal,
    simulate_ensemble,
    solve,
    steady_state_covariance,
    sweep_epsilon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
