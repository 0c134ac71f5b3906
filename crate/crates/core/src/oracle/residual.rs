use crate::error::{Error, Result};
use crate::geometry::TrianglePoint;
use crate::operators::{build_delta_lb, PotentialParams, Variant};
use crate::polyops::{evaluate, tau_to_rho, to_f64, Chart, Polynomial};
use crate::spectra::{ground_energy, ground_state_at, potential, GroundStateSpec, PotentialKind};

use super::checks::stencil_interior;

fn require_stencil(p: &TrianglePoint, fd_step: f64) -> Result<[f64; 3]> {
    p.require_interior("residual")?;
    let rho = p.rho();
    if !stencil_interior(&rho, fd_step) {
        return Err(Error::SingularConfiguration(format!(
            "finite-difference stencil leaves the interior at {:?}",
            rho
        )));
    }
    Ok(rho)
}

/// `|(−Δ_LB + V − E0) Ψ0| / |E0 Ψ0|` at `p`, with `V = V0` for the
/// quasi-exactly solvable ground state and `Ves` otherwise.
pub fn ground_state_residual(spec: &GroundStateSpec, p: &TrianglePoint, fd_step: f64) -> Result<f64> {
    let rho = require_stencil(p, fd_step)?;
    let pf = spec.params.as_f64();
    let (a, kind) = match spec.variant {
        Variant::Qes => (pf.a, PotentialKind::V0),
        Variant::Es => (0.0, PotentialKind::Ves),
    };
    let psi = |x: &[f64; 3]| ground_state_at(&pf, a, *x);
    let lap = evaluate(&build_delta_lb()?, &psi, &rho, fd_step)?;
    let e0 = to_f64(&ground_energy(&spec.params));
    let v = potential(kind, &spec.params, p)?;
    let value = psi(&rho);
    Ok((-lap + (v - e0) * value).abs() / (e0 * value).abs())
}

/// `|(−Δ_LB + V_qes,N − E) (P Ψ0)| / |E P Ψ0|` for a polynomial `P` in the
/// rho or tau chart and a physical energy `E`.
pub fn eigenfunction_residual(
    params: &PotentialParams,
    poly: &Polynomial,
    energy: f64,
    p: &TrianglePoint,
    fd_step: f64,
) -> Result<f64> {
    let rho = require_stencil(p, fd_step)?;
    let poly = match poly.chart() {
        Chart::Rho => poly.clone(),
        Chart::Tau => tau_to_rho(poly)?,
        other => {
            return Err(Error::ChartMismatch {
                expected: Chart::Rho,
                found: other,
            })
        }
    };
    let pf = params.as_f64();
    let phi = |x: &[f64; 3]| poly.eval_f64(x) * ground_state_at(&pf, pf.a, *x);
    let lap = evaluate(&build_delta_lb()?, &phi, &rho, fd_step)?;
    let v = potential(PotentialKind::VqesN, params, p)?;
    let value = phi(&rho);
    Ok((-lap + (v - energy) * value).abs() / (energy * value).abs().max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::{int, rat};
    use crate::spectra::{solve_space, Space};

    #[test]
    fn ground_state_solves_the_schrodinger_equation() {
        let p = TrianglePoint::from_rho([0.8, 1.1, 1.4]).unwrap();
        for (params, variant) in [
            (PotentialParams::ints(0, 1, 1, 0).unwrap(), Variant::Es),
            (PotentialParams::new(0, rat(3, 2), rat(5, 2), rat(1, 3)).unwrap(), Variant::Qes),
        ] {
            let spec = GroundStateSpec::new(params, variant).unwrap();
            let r = ground_state_residual(&spec, &p, 1e-4).unwrap();
            assert!(r < 1e-6, "{:e}", r);
        }
    }

    #[test]
    fn quasi_exact_level_one() {
        let params = PotentialParams::new(1, int(1), rat(3, 2), rat(1, 2)).unwrap();
        let s = solve_space(Space::P1, &params, Variant::Qes).unwrap();
        let p = TrianglePoint::from_rho([0.9, 1.0, 1.3]).unwrap();
        for (k, z) in s.eigen.eigenvalues.iter().enumerate() {
            let m = s.matrix.to_f64();
            // eigenvector of the 2×2 matrix [[a, b], [c, d]]: (b, λ − a)
            let v = [m[(0, 1)], z.re - m[(0, 0)]];
            let poly = Polynomial::from_terms(
                Chart::Tau,
                [(crate::polyops::MultiIndex::ZERO, v[0]), (crate::polyops::MultiIndex::unit(0), v[1])]
                    .into_iter()
                    .map(|(a, c)| (a, crate::polyops::Rational::from_float(c).unwrap())),
            );
            let r = eigenfunction_residual(&params, &poly, s.physical_energies[k], &p, 1e-4).unwrap();
            assert!(r < 1e-6, "level {}: {:e}", k, r);
        }
    }
}
