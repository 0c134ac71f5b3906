use super::diffop::DiffOperator;
use super::monomial::MultiIndex;
use crate::error::{Error, Result};

/// Central stencil for the k-th derivative, second-order accurate, as
/// (offset in steps, weight) pairs; the caller divides by `h^k`.
fn stencil(k: u32) -> &'static [(i32, f64)] {
    match k {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => &[],
    }
}

/// Tensor-product central difference estimate of `∂^alpha f(x)`.
pub fn central_difference<F>(f: &F, x: &[f64; 3], alpha: &MultiIndex, h: f64) -> Result<f64>
where
    F: Fn(&[f64; 3]) -> f64 + ?Sized,
{
    if alpha.0.iter().any(|&k| k > 4) {
        return Err(Error::InvalidInput(format!(
            "finite differences support derivative order at most 4 per variable, got {:?}",
            alpha.0
        )));
    }
    let s = [stencil(alpha.0[0]), stencil(alpha.0[1]), stencil(alpha.0[2])];
    let mut acc = 0.0;
    for &(i, wi) in s[0] {
        for &(j, wj) in s[1] {
            for &(k, wk) in s[2] {
                let p = [
                    x[0] + i as f64 * h,
                    x[1] + j as f64 * h,
                    x[2] + k as f64 * h,
                ];
                acc += wi * wj * wk * f(&p);
            }
        }
    }
    Ok(acc / h.powi(alpha.degree() as i32))
}

/// Derivative estimate with one optional Richardson step.
pub fn derivative_estimate<F>(
    f: &F,
    x: &[f64; 3],
    alpha: &MultiIndex,
    h: f64,
    richardson: bool,
) -> Result<f64>
where
    F: Fn(&[f64; 3]) -> f64 + ?Sized,
{
    let coarse = central_difference(f, x, alpha, h)?;
    if !richardson || alpha.degree() == 0 {
        return Ok(coarse);
    }
    let fine = central_difference(f, x, alpha, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Numerical action of `op` on a smooth function at `x`.
pub fn evaluate<F>(op: &DiffOperator, f: &F, x: &[f64; 3], fd_step: f64) -> Result<f64>
where
    F: Fn(&[f64; 3]) -> f64 + ?Sized,
{
    evaluate_with(op, f, x, fd_step, true)
}

/// As [`evaluate`], with Richardson refinement switchable (plain central
/// differences are what convergence-rate measurements need).
pub fn evaluate_with<F>(
    op: &DiffOperator,
    f: &F,
    x: &[f64; 3],
    fd_step: f64,
    richardson: bool,
) -> Result<f64>
where
    F: Fn(&[f64; 3]) -> f64 + ?Sized,
{
    if !(fd_step > 0.0) || !fd_step.is_finite() {
        return Err(Error::InvalidInput(format!("fd_step must be positive, got {}", fd_step)));
    }
    let mut acc = 0.0;
    for (alpha, c) in op.terms() {
        let coeff = c.eval_f64(x)?;
        let d = if alpha.degree() == 0 {
            f(x)
        } else {
            derivative_estimate(f, x, alpha, fd_step, richardson)?
        };
        acc += coeff * d;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::{Chart, Polynomial, RationalFunction};

    #[test]
    fn third_derivative_of_cubic() {
        let f = |x: &[f64; 3]| x[0].powi(3) * x[1];
        let d = derivative_estimate(&f, &[1.5, 2.0, 0.0], &MultiIndex::new(3, 0, 0), 1e-2, true).unwrap();
        assert!((d - 12.0).abs() < 1e-6, "{}", d);
        let m = derivative_estimate(&f, &[1.5, 2.0, 0.0], &MultiIndex::new(2, 1, 0), 1e-2, true).unwrap();
        assert!((m - 9.0).abs() < 1e-6, "{}", m);
    }

    #[test]
    fn singular_coefficient_is_reported() {
        let inv = RationalFunction::new(Polynomial::one(Chart::Rho), Polynomial::var(Chart::Rho, 0)).unwrap();
        let op = DiffOperator::zero(Chart::Rho).with_term(MultiIndex::unit(1), inv);
        let f = |x: &[f64; 3]| x[1];
        assert!(matches!(
            evaluate(&op, &f, &[0.0, 1.0, 1.0], 1e-4),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn rejects_non_positive_step() {
        let op = DiffOperator::partial(Chart::Rho, 0);
        let f = |x: &[f64; 3]| x[0];
        assert!(evaluate(&op, &f, &[1.0, 1.0, 1.0], 0.0).is_err());
    }
}
