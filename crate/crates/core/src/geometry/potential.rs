use crate::error::{Error, Result};
use crate::operators::MassTriple;

use super::metric::weighted_p_sum;
use super::point::{Membership, TrianglePoint};

fn require_finite_region(p: &TrianglePoint, what: &str) -> Result<()> {
    match p.membership() {
        Membership::Interior => Ok(()),
        Membership::Boundary => Err(Error::DivergentPotential(format!(
            "{} is singular on the collinear boundary at {:?}",
            what,
            p.rho()
        ))),
        Membership::Exterior => p.require_interior(what),
    }
}

/// `Ṽ = 9/(8τ1) + τ1/(2(τ1² − 4τ2))`; the second term is negative inside.
pub fn effective_potential(p: &TrianglePoint) -> Result<f64> {
    require_finite_region(p, "effective potential")?;
    let [t1, _, _] = p.tau();
    Ok(9.0 / (8.0 * t1) - t1 / (2.0 * p.gap()))
}

/// The same potential assembled from the side lengths by partial fractions.
pub fn effective_potential_r(p: &TrianglePoint) -> Result<f64> {
    require_finite_region(p, "effective potential")?;
    let [r12, r13, r23] = p.r();
    let big_p = r12 * r12 + r13 * r13 + r23 * r23;
    let perimeter = r12 + r13 + r23;
    let first = 1.0 / (r13 * r23 * (r13 + r23)) * (1.0 / (r13 + r23 - r12) + 1.0 / perimeter);
    let second = 1.0 / (r12 * r13 * r23) * (1.0 / (r12 + r23 - r13) + 1.0 / (r12 + r13 - r23));
    Ok(9.0 / (8.0 * big_p) - big_p / 16.0 * (first + second))
}

/// `Ṽ_m = 3M/(8P′) + P′/(2 m1 m2 m3 (Σρ² − 2Σρρ))` with `M = m1+m2+m3`.
pub fn effective_potential_masses(p: &TrianglePoint, masses: &MassTriple) -> Result<f64> {
    require_finite_region(p, "mass-weighted effective potential")?;
    let [m1, m2, m3] = masses.as_f64();
    let pp = weighted_p_sum(p, masses);
    Ok(3.0 * (m1 + m2 + m3) / (8.0 * pp) - pp / (2.0 * m1 * m2 * m3 * p.gap()))
}

/// Closed-form Ricci scalar `(41τ1² − 84τ2) / (12 τ1 (4τ2 − τ1²))`.
pub fn ricci_scalar(p: &TrianglePoint) -> Result<f64> {
    p.require_interior("Ricci scalar")?;
    let [t1, t2, _] = p.tau();
    Ok((41.0 * t1 * t1 - 84.0 * t2) / (12.0 * t1 * p.gap()))
}
