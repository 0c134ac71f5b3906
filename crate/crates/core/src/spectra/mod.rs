//! Invariant polynomial spaces, exact operator matrices, eigenvalues, and
//! the closed-form potentials, ground state and energies.

mod basis;
mod eigen;
mod energies;
mod laguerre;
mod matrix;
mod problem;

pub use basis::{enumerate_basis, BasisSpec, Space};
pub use eigen::{dense_eigenvalues, eigen_solve, EigenResult};
pub use energies::{
    es_spectrum, ground_energy, ground_state_at, ground_state_value, physical_energy, physical_energy_f64, potential,
    EsLevel, GroundStateSpec, PotentialKind,
};
pub use laguerre::{laguerre_check, laguerre_in_tau1, LaguerreLevel, LaguerreReport};
pub use matrix::{normalize_exact, operator_matrix, OperatorMatrix};
pub use problem::{basis_level, hamiltonian_for, reducibility_chain, solve_space, ReducibilityReport, Spectrum};
