//! Finite-difference checks of the exact constructions.

mod checks;
mod curvature;
mod functions;
mod jacobi;
mod report;
mod residual;

pub use checks::{
    gauge_factor, gauge_identity_check, gauge_sides, reduction_check, reduction_pair, sample_well_inside,
    separable_point, separation_check, separation_sample, SeparationReport, SeparationSample,
};
pub use curvature::{curvature_oracle, curvature_oracle_with};
pub use functions::{TestFunction, WProfile};
pub use jacobi::{half_flat_laplacian, JacobiPoint};
pub use report::{
    convergence_slope, run_check, CheckKind, OracleDetail, OracleReport, Tolerances, DEFAULT_FD_STEP, DEFAULT_SEED,
};
pub use residual::{eigenfunction_residual, ground_state_residual};
