//! Exact polynomial and differential-operator algebra in three variables.

mod diffop;
mod json;
mod monomial;
mod numeric;
mod polynomial;
mod ratfunc;
mod symmetric;

pub use diffop::DiffOperator;
pub use json::{OperatorJson, OperatorTerm, PolynomialJson, ScalarTerm};
pub use monomial::{int, rat, Chart, MultiIndex, Rational};
pub use numeric::{central_difference, derivative_estimate, evaluate, evaluate_with};
pub use polynomial::{rational_to_f64 as to_f64, Polynomial};
pub use ratfunc::RationalFunction;
pub use symmetric::{
    change_of_variables_rho_to_tau, is_symmetric, symmetric_to_tau, tau_images, tau_to_rho,
};

/// The i-th variable of `chart` as a polynomial.
pub fn var(chart: Chart, i: usize) -> Polynomial {
    Polynomial::var(chart, i)
}

/// Constant polynomial.
pub fn cst(chart: Chart, c: Rational) -> Polynomial {
    Polynomial::constant(chart, c)
}
