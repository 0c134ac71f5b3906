use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyops::{to_f64, Rational};

use super::matrix::OperatorMatrix;

const SCHUR_EPS: f64 = 1e-14;
const SCHUR_MAX_ITER: usize = 10_000;
const INVERSE_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Exact eigenvalues, present when they were read off a triangular
    /// matrix; in the same order as `eigenvalues`.
    pub exact: Option<Vec<Rational>>,
    /// Eigenvectors in basis coordinates, normalized to unit max-norm.
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
    /// `‖M v − λ v‖∞` per pair, measured against the exact matrix.
    pub residuals: Vec<f64>,
    pub matrix_norm: f64,
}

impl EigenResult {
    pub fn real_parts(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Eigenvalues of an exact matrix: read off the diagonal when the matrix is
/// triangular, otherwise balance, reduce to Schur form and certify each
/// value by inverse iteration against the exact matrix.
pub fn eigen_solve(m: &OperatorMatrix) -> Result<EigenResult> {
    let norm = m.norm_inf();
    if m.is_triangular() {
        let mut exact = m.diagonal();
        exact.sort();
        return Ok(EigenResult {
            eigenvalues: exact.iter().map(|v| Complex64::new(to_f64(v), 0.0)).collect(),
            residuals: vec![0.0; exact.len()],
            exact: Some(exact),
            eigenvectors: None,
            matrix_norm: norm,
        });
    }
    let a = m.to_f64();
    let mut values = dense_eigenvalues(&a)?;
    values.sort_by(cmp_complex);
    let ac = a.map(|v| Complex64::new(v, 0.0));
    let tol = 1e-10 * norm.max(f64::MIN_POSITIVE);
    let mut vectors = Vec::with_capacity(values.len());
    let mut residuals = Vec::with_capacity(values.len());
    for (k, lambda) in values.iter().enumerate() {
        let (v, res) = certify(&ac, *lambda, norm, k);
        if res > tol {
            return Err(Error::NumericalFailure {
                message: format!("eigenpair {} (λ = {}) has residual {:e} above {:e}", k, lambda, res, tol),
                partial: values.clone(),
            });
        }
        vectors.push(v.iter().copied().collect());
        residuals.push(res);
    }
    Ok(EigenResult {
        eigenvalues: values,
        exact: None,
        eigenvectors: Some(vectors),
        residuals,
        matrix_norm: norm,
    })
}

/// Eigenvalues of a dense real matrix after diagonal balancing.
pub fn dense_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let balanced = balance(a.clone());
    let schur = nalgebra::Schur::try_new(balanced, SCHUR_EPS, SCHUR_MAX_ITER).ok_or_else(|| {
        Error::NumericalFailure {
            message: format!("Schur iteration did not converge in {} steps", SCHUR_MAX_ITER),
            partial: Vec::new(),
        }
    })?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(mut a: DMatrix<f64>) -> DMatrix<f64> {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].abs()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / RADIX {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            while c > r * RADIX {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// Inverse iteration from a slightly shifted eigenvalue; returns the
/// normalized vector and its residual against `a`.
fn certify(a: &DMatrix<Complex64>, lambda: Complex64, norm: f64, seed: usize) -> (DVector<Complex64>, f64) {
    let n = a.nrows();
    let shift = 1e-10 * norm.max(1.0);
    let mu = lambda + Complex64::new(shift, 0.5 * shift);
    let shifted = a - DMatrix::from_diagonal_element(n, n, mu);
    let lu = shifted.lu();
    let mut v = DVector::from_fn(n, |i, _| Complex64::new(1.0 + ((i * 7 + seed * 3) % 11) as f64 / 11.0, 0.0));
    for _ in 0..INVERSE_STEPS {
        match lu.solve(&v) {
            Some(next) if next.iter().all(|z| z.re.is_finite() && z.im.is_finite()) => v = next,
            _ => break,
        }
        normalize(&mut v);
    }
    normalize(&mut v);
    let r = a * &v - &v * lambda;
    let res = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (v, res)
}

fn normalize(v: &mut DVector<Complex64>) {
    let (idx, big) = v
        .iter()
        .enumerate()
        .map(|(i, z)| (i, z.norm()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if big > 0.0 {
        let pivot = v[idx];
        v.iter_mut().for_each(|z| *z /= pivot);
    }
}
