use std::collections::BTreeMap;

use num_traits::One;

use super::diffop::DiffOperator;
use super::monomial::{Chart, MultiIndex, Rational};
use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// The elementary symmetric polynomials of the rho variables.
pub fn tau_images() -> [Polynomial; 3] {
    let x: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(Chart::Rho, i)).collect();
    let t1 = &(&x[0] + &x[1]) + &x[2];
    let t2 = &(&(&x[0] * &x[1]) + &(&x[0] * &x[2])) + &(&x[1] * &x[2]);
    let t3 = &(&x[0] * &x[1]) * &x[2];
    [t1, t2, t3]
}

/// Expand a tau-chart polynomial as a polynomial in rho.
pub fn tau_to_rho(p: &Polynomial) -> Result<Polynomial> {
    if p.chart() != Chart::Tau {
        return Err(Error::ChartMismatch {
            expected: Chart::Tau,
            found: p.chart(),
        });
    }
    Ok(p.substitute(&tau_images()))
}

/// Rewrite an S3-symmetric rho polynomial in the elementary symmetric
/// polynomials, by repeatedly cancelling the lex-leading term.
pub fn symmetric_to_tau(p: &Polynomial) -> Result<Polynomial> {
    if p.chart() != Chart::Rho {
        return Err(Error::ChartMismatch {
            expected: Chart::Rho,
            found: p.chart(),
        });
    }
    let images = tau_images();
    let mut cache: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
    let mut work = p.clone();
    let mut out = Polynomial::zero(Chart::Tau);
    while let Some((lead, c)) = work
        .terms()
        .iter()
        .max_by(|a, b| a.0.lex_cmp(b.0))
        .map(|(m, c)| (*m, c.clone()))
    {
        let [a, b, d] = lead.0;
        if a < b || b < d {
            return Err(Error::NotDescending(format!(
                "polynomial is not symmetric (stray leading term with exponents {:?})",
                lead.0
            )));
        }
        let e = MultiIndex::new(a - b, b - d, d);
        let expanded = cache
            .entry(e)
            .or_insert_with(|| Polynomial::monomial(Chart::Tau, e, Rational::one()).substitute(&images));
        work = &work - &expanded.scale(&c);
        out.add_term(e, c);
    }
    Ok(out)
}

fn symmetric_fn_to_tau(f: &RationalFunction) -> Result<RationalFunction> {
    let num = symmetric_to_tau(f.numerator())?;
    let den = symmetric_to_tau(f.denominator())?;
    RationalFunction::new(num, den)
}

/// Push a rho-chart operator that preserves symmetric polynomials down to the
/// tau chart.
///
/// The tau operator `Σ c_β ∂^β` is recovered from the images of the tau
/// monomials `τ^β`, `|β| ≤ order`, by the triangular recursion
/// `c_β = (img_β − Σ_{γ<β} c_γ β!/(β−γ)! τ^{β−γ}) / β!`, then checked against
/// the images of every tau monomial of weighted degree up to
/// `2·order + 3`.
pub fn change_of_variables_rho_to_tau(op: &DiffOperator) -> Result<DiffOperator> {
    if op.chart() != Chart::Rho {
        return Err(Error::ChartMismatch {
            expected: Chart::Rho,
            found: op.chart(),
        });
    }
    let order = op.order();
    let image = |beta: &MultiIndex| -> Result<RationalFunction> {
        let rho = tau_to_rho(&Polynomial::monomial(Chart::Tau, *beta, Rational::one()))?;
        let img = op.apply(&rho)?;
        symmetric_fn_to_tau(&img).map_err(|e| match e {
            Error::NotDescending(msg) => Error::NotDescending(format!(
                "image of tau^{:?} leaves the symmetric polynomials: {}",
                beta.0, msg
            )),
            other => other,
        })
    };

    let mut betas: Vec<MultiIndex> = Vec::new();
    for total in 0..=order {
        for a in 0..=total {
            for b in 0..=(total - a) {
                betas.push(MultiIndex::new(a, b, total - a - b));
            }
        }
    }

    let mut coeffs: BTreeMap<MultiIndex, RationalFunction> = BTreeMap::new();
    for beta in &betas {
        let mut residual = image(beta)?;
        for (gamma, c) in &coeffs {
            if gamma == beta || !gamma.divides(beta) {
                continue;
            }
            let rest = beta.checked_sub(gamma).unwrap();
            let factor = Rational::new(beta.factorial(), rest.factorial());
            let shift = Polynomial::monomial(Chart::Tau, rest, factor);
            residual = &residual - &c.mul_poly(&shift);
        }
        let c = residual.scale(&Rational::new(1.into(), beta.factorial()));
        if !c.is_zero() {
            coeffs.insert(*beta, c);
        }
    }
    let result = DiffOperator::from_terms(Chart::Tau, coeffs);

    let bound = 2 * order + 3;
    for p3 in 0..=bound / 3 {
        for p2 in 0..=(bound - 3 * p3) / 2 {
            for p1 in 0..=(bound - 3 * p3 - 2 * p2) {
                let beta = MultiIndex::new(p1, p2, p3);
                if beta.degree() <= order {
                    continue;
                }
                let expected = image(&beta)?;
                let got = result.apply(&Polynomial::monomial(
                    Chart::Tau,
                    beta,
                    Rational::one(),
                ))?;
                let diff = &got - &expected;
                if !diff.is_zero() {
                    return Err(Error::NotDescending(format!(
                        "no tau operator of order {} reproduces the image of tau^{:?} (defect {})",
                        order, beta.0, diff
                    )));
                }
            }
        }
    }
    Ok(result)
}

/// True if `p` is invariant under every permutation of the rho variables.
pub fn is_symmetric(p: &Polynomial) -> bool {
    symmetric_to_tau(p).is_ok()
}
