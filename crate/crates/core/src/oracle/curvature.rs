use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::geometry::{metric_upper, TrianglePoint};

use super::checks::stencil_interior;

type Christoffel = [[[f64; 3]; 3]; 3];

fn upper_at(x: &[f64; 3]) -> Result<Matrix3<f64>> {
    Ok(metric_upper(&TrianglePoint::from_rho(*x)?))
}

/// Covariant metric by numerical inversion, refusing ill-conditioned
/// matrices.
fn lower_at(x: &[f64; 3]) -> Result<Matrix3<f64>> {
    let g = upper_at(x)?;
    let inv = g
        .try_inverse()
        .ok_or_else(|| Error::Conditioning(f64::INFINITY))?;
    let cond = g.norm() * inv.norm();
    if !(cond <= 1e8) {
        return Err(Error::Conditioning(cond));
    }
    Ok(inv)
}

fn shifted(x: &[f64; 3], k: usize, s: f64) -> [f64; 3] {
    let mut y = *x;
    y[k] += s;
    y
}

/// `Γ^a_{bc}` with the covariant metric differenced at step `h`.
fn christoffel(x: &[f64; 3], h: f64) -> Result<Christoffel> {
    let g_inv = upper_at(x)?;
    let mut dg = [Matrix3::zeros(); 3];
    for (k, d) in dg.iter_mut().enumerate() {
        *d = (lower_at(&shifted(x, k, h))? - lower_at(&shifted(x, k, -h))?) / (2.0 * h);
    }
    let mut out = [[[0.0; 3]; 3]; 3];
    for (a, out_a) in out.iter_mut().enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                out_a[b][c] = 0.5
                    * (0..3)
                        .map(|d| g_inv[(a, d)] * (dg[b][(d, c)] + dg[c][(d, b)] - dg[d][(b, c)]))
                        .sum::<f64>();
            }
        }
    }
    Ok(out)
}

fn scalar_curvature_plain(x: &[f64; 3], h: f64) -> Result<f64> {
    let gam = christoffel(x, h)?;
    let mut dgam = [[[[0.0; 3]; 3]; 3]; 3];
    for (k, dk) in dgam.iter_mut().enumerate() {
        let up = christoffel(&shifted(x, k, h), h)?;
        let down = christoffel(&shifted(x, k, -h), h)?;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    dk[a][b][c] = (up[a][b][c] - down[a][b][c]) / (2.0 * h);
                }
            }
        }
    }
    let g_inv = upper_at(x)?;
    let mut scalar = 0.0;
    for b in 0..3 {
        for c in 0..3 {
            let mut ric = 0.0;
            for a in 0..3 {
                ric += dgam[a][a][b][c] - dgam[c][a][b][a];
                for d in 0..3 {
                    ric += gam[a][a][d] * gam[d][b][c] - gam[a][c][d] * gam[d][b][a];
                }
            }
            scalar += g_inv[(b, c)] * ric;
        }
    }
    Ok(scalar)
}

/// Scalar curvature of the metric read off the radial Laplacian, from
/// numerically inverted metrics and differenced Christoffel symbols.
pub fn curvature_oracle_with(p: &TrianglePoint, fd_step: f64, richardson: bool) -> Result<f64> {
    if !(fd_step > 0.0) || !fd_step.is_finite() {
        return Err(Error::InvalidInput(format!("fd_step must be positive, got {}", fd_step)));
    }
    p.require_interior("curvature oracle")?;
    let rho = p.rho();
    if !stencil_interior(&rho, 10.0 * fd_step) {
        return Err(Error::SingularConfiguration(format!(
            "{:?} is within ten steps of the boundary",
            rho
        )));
    }
    let coarse = scalar_curvature_plain(&rho, fd_step)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = scalar_curvature_plain(&rho, fd_step / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

pub fn curvature_oracle(p: &TrianglePoint, fd_step: f64) -> Result<f64> {
    curvature_oracle_with(p, fd_step, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_points_near_the_boundary() {
        let p = TrianglePoint::from_rho([1.0, 1.0, 3.999]).unwrap();
        assert!(curvature_oracle(&p, 1e-3).is_err());
        let q = TrianglePoint::from_rho([1.0, 1.0, 1.0]).unwrap();
        assert!(curvature_oracle(&q, -1.0).is_err());
    }

    #[test]
    fn homogeneous_of_degree_minus_one() {
        let p = TrianglePoint::from_rho([0.9, 1.2, 1.5]).unwrap();
        let a = curvature_oracle(&p, 1e-3).unwrap();
        let b = curvature_oracle(&p.scaled(2.0).unwrap(), 2e-3).unwrap();
        assert!((b - a / 2.0).abs() < 1e-6 * a.abs(), "{} {}", a, b);
    }
}
