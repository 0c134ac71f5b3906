use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operators::{build_h_es, HamiltonianChart, PotentialParams};
use crate::polyops::{int, Rational};

use super::basis::{enumerate_basis, Space};
use super::matrix::{normalize_exact, operator_matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreLevel {
    pub n: u32,
    pub eigenvalue: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreReport {
    pub alpha: Rational,
    pub levels: Vec<LaguerreLevel>,
    pub first_failure: Option<u32>,
}

impl LaguerreReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Coefficients in `τ1` of `L_n^{(α)}(2ωτ1)`, lowest power first.
pub fn laguerre_in_tau1(n: u32, alpha: &Rational, omega: &Rational) -> Vec<Rational> {
    // L_n^{(α)}(x) = Σ_k (−1)^k C(n+α, n−k) x^k / k!
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut scale = Rational::one();
    let two_omega = omega * int(2);
    for k in 0..=n {
        let mut binom = Rational::one();
        for i in 0..(n - k) {
            binom = binom * (int(n as i64) + alpha - int(i as i64)) / int((i + 1) as i64);
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        out.push(sign * binom * &scale);
        scale = scale * &two_omega / int((k + 1) as i64);
    }
    out
}

/// Match the eigenvectors of the exactly solvable `τ1` operator on
/// `P1_N` against Laguerre polynomials with `α = 2γ + 1`.
pub fn laguerre_check(params: &PotentialParams, n_max: u32) -> Result<LaguerreReport> {
    if params.gamma <= Rational::zero() {
        return Err(Error::InvalidInput(format!("gamma must be positive, got {}", params.gamma)));
    }
    let es = params.with_level(int(n_max as i64)).exactly_solvable();
    let h = build_h_es(HamiltonianChart::Tau1, &es)?;
    let m = operator_matrix(&h, &enumerate_basis(Space::P1, n_max))?;
    let alpha = &params.gamma * int(2) + int(1);
    let mut levels = Vec::new();
    let mut first_failure = None;
    for n in 0..=n_max {
        let eigenvalue = &params.omega * int(12) * int(n as i64);
        let space = m.eigenspace(&eigenvalue);
        let mut target = laguerre_in_tau1(n, &alpha, &params.omega);
        target.resize(m.dim(), Rational::zero());
        let matches = space.len() == 1 && normalize_exact(&space[0]) == normalize_exact(&target);
        if !matches && first_failure.is_none() {
            first_failure = Some(n);
        }
        levels.push(LaguerreLevel {
            n,
            eigenvalue,
            matches,
        });
    }
    Ok(LaguerreReport {
        alpha,
        levels,
        first_failure,
    })
}
