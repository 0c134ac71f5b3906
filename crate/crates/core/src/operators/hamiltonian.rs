use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyops::{int, Chart, DiffOperator, MultiIndex, Polynomial, Rational};

use super::laplacian::{build_delta_r, k, mi, rho_euler, rho_gradient_sum, rho_sum, x};
use super::params::PotentialParams;

/// Where a gauge-rotated Hamiltonian lives: the full rho chart, the full
/// tau chart, or one of the two reductions onto polynomials in (τ1, τ2) and
/// in τ1 alone. The reductions are tau-chart operators that never touch the
/// dropped variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HamiltonianChart {
    Rho,
    Tau,
    Tau12,
    Tau1,
}

impl HamiltonianChart {
    pub const ALL: [HamiltonianChart; 4] = [
        HamiltonianChart::Rho,
        HamiltonianChart::Tau,
        HamiltonianChart::Tau12,
        HamiltonianChart::Tau1,
    ];

    pub fn chart(self) -> Chart {
        match self {
            HamiltonianChart::Rho => Chart::Rho,
            _ => Chart::Tau,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            HamiltonianChart::Rho => "rho",
            HamiltonianChart::Tau => "tau",
            HamiltonianChart::Tau12 => "tau12",
            HamiltonianChart::Tau1 => "tau1",
        }
    }
}

impl fmt::Display for HamiltonianChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for HamiltonianChart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HamiltonianChart::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown Hamiltonian chart {:?}", s)))
    }
}

fn tau_euler(c: Chart, weights: [i64; 3]) -> DiffOperator {
    let mut op = DiffOperator::zero(c);
    for (i, w) in weights.into_iter().enumerate() {
        if w != 0 {
            op = op.with_poly_term(MultiIndex::unit(i), x(c, i).scale(&int(w)));
        }
    }
    op
}

/// `12 A τ1 (E − N)` with `E` the given grading operator.
fn raising_block(euler: &DiffOperator, tau1: &Polynomial, p: &PotentialParams) -> DiffOperator {
    let c = tau1.chart();
    let shifted = euler - &DiffOperator::multiplication(Polynomial::constant(c, p.n_level.clone()));
    shifted.mul_poly(tau1).scale(&(&p.a_coupling * int(12)))
}

fn h_rho(p: &PotentialParams) -> Result<DiffOperator> {
    let lap = build_delta_r(Chart::Rho)?;
    let grad = rho_gradient_sum();
    let euler = rho_euler();
    let one_minus_2g = int(1) - &p.gamma * int(2);
    let op = &(&(-&lap) + &grad.scale(&(one_minus_2g * int(2))))
        + &euler.scale(&(&p.omega * int(12)));
    Ok(&op + &raising_block(&euler, &rho_sum(), p))
}

fn h_tau(p: &PotentialParams) -> DiffOperator {
    let c = Chart::Tau;
    let (t1, t2, t3) = (x(c, 0), x(c, 1), x(c, 2));
    let mut op = DiffOperator::zero(c)
        .with_poly_term(mi(2, 0, 0), t1.scale(&int(-6)))
        .with_poly_term(mi(0, 2, 0), (&t1 * &(&t2.scale(&int(7)) - &t1.pow(2))).scale(&int(-2)))
        .with_poly_term(mi(0, 0, 2), (&t3 * &(&t2.scale(&int(6)) - &t1.pow(2))).scale(&int(-2)))
        .with_poly_term(mi(1, 1, 0), t2.scale(&int(-24)))
        .with_poly_term(mi(1, 0, 1), t3.scale(&int(-36)))
        .with_poly_term(
            mi(0, 1, 1),
            (&(&t2.pow(2).scale(&int(4)) + &(&t1 * &t3).scale(&int(9))) - &(&t1.pow(2) * &t2))
                .scale(&int(-2)),
        )
        .with_poly_term(mi(1, 0, 0), k(c, -18))
        .with_poly_term(mi(0, 1, 0), t1.scale(&int(-14)))
        .with_poly_term(mi(0, 0, 1), (&t2.scale(&int(7)) - &t1.pow(2)).scale(&int(-2)));
    let one_minus_2g = int(1) - &p.gamma * int(2);
    let sym_grad = DiffOperator::zero(c)
        .with_poly_term(mi(1, 0, 0), k(c, 3))
        .with_poly_term(mi(0, 1, 0), t1.scale(&int(2)))
        .with_poly_term(mi(0, 0, 1), t2.clone());
    let euler = tau_euler(c, [1, 2, 3]);
    op = &op + &sym_grad.scale(&(one_minus_2g * int(2)));
    op = &op + &euler.scale(&(&p.omega * int(12)));
    &op + &raising_block(&euler, &t1, p)
}

fn h_tau12(p: &PotentialParams) -> DiffOperator {
    let c = Chart::Tau;
    let (t1, t2) = (x(c, 0), x(c, 1));
    let one_plus_g = &p.gamma + int(1);
    let five_plus_4g = &p.gamma * int(4) + int(5);
    let op = DiffOperator::zero(c)
        .with_poly_term(mi(2, 0, 0), t1.scale(&int(-6)))
        .with_poly_term(mi(0, 2, 0), (&t1 * &(&t2.scale(&int(7)) - &t1.pow(2))).scale(&int(-2)))
        .with_poly_term(mi(1, 1, 0), t2.scale(&int(-24)))
        .with_poly_term(mi(1, 0, 0), Polynomial::constant(c, one_plus_g * int(-12)))
        .with_poly_term(mi(0, 1, 0), t1.scale(&(five_plus_4g * int(-2))));
    let euler = tau_euler(c, [1, 2, 0]);
    let op = &op + &euler.scale(&(&p.omega * int(12)));
    &op + &raising_block(&euler, &t1, p)
}

fn h_tau1(p: &PotentialParams) -> DiffOperator {
    let c = Chart::Tau;
    let t1 = x(c, 0);
    let one_plus_g = &p.gamma + int(1);
    let op = DiffOperator::zero(c)
        .with_poly_term(mi(2, 0, 0), t1.scale(&int(-6)))
        .with_poly_term(mi(1, 0, 0), Polynomial::constant(c, one_plus_g * int(-12)));
    let euler = tau_euler(c, [1, 0, 0]);
    let op = &op + &euler.scale(&(&p.omega * int(12)));
    &op + &raising_block(&euler, &t1, p)
}

/// Gauge-rotated quasi-exactly-solvable Hamiltonian in the requested chart.
///
/// The rho form is `−Δ_R + 2(1−2γ)Σ∂ + 12ωΣρ∂ + 12Aτ1(Σρ∂ − N)`.
pub fn build_h_qes(chart: HamiltonianChart, params: &PotentialParams) -> Result<DiffOperator> {
    match chart {
        HamiltonianChart::Rho => h_rho(params),
        HamiltonianChart::Tau => Ok(h_tau(params)),
        HamiltonianChart::Tau12 => Ok(h_tau12(params)),
        HamiltonianChart::Tau1 => Ok(h_tau1(params)),
    }
}

/// The exactly-solvable limit: [`build_h_qes`] with `A = 0`.
pub fn build_h_es(chart: HamiltonianChart, params: &PotentialParams) -> Result<DiffOperator> {
    build_h_qes(chart, &params.exactly_solvable())
}

/// `ΔV_N = 12 A N τ1` as a multiplication operator in the rho or tau chart.
pub fn delta_v(chart: Chart, params: &PotentialParams) -> Result<DiffOperator> {
    let tau1 = match chart {
        Chart::Rho => rho_sum(),
        Chart::Tau => x(Chart::Tau, 0),
        other => {
            return Err(Error::InvalidInput(format!(
                "the level shift is defined in the rho and tau charts, not {}",
                other
            )))
        }
    };
    let c: Rational = &params.a_coupling * &params.n_level * int(12);
    Ok(DiffOperator::multiplication(tau1.scale(&c)))
}
