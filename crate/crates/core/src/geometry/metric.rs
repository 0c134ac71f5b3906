use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operators::MassTriple;

use super::point::TrianglePoint;

/// Pointwise metric quantities at an interior configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricData {
    pub g_upper: [[f64; 3]; 3],
    /// Determinant of `g_upper` computed as a 3×3 determinant.
    pub det: f64,
    /// `6 τ1 (4τ2 − τ1²)`.
    pub det_factorized: f64,
    pub tau: [f64; 3],
    /// Squared triangle area from Heron's formula on the side lengths.
    pub area_sq: f64,
    /// `P = r12² + r13² + r23²`.
    pub p_sum: f64,
}

/// Contravariant metric read off the second-order part of the radial
/// Laplacian: diagonal `4ρ_i`, off-diagonal `ρ_i + ρ_j − ρ_k`.
pub fn metric_upper(p: &TrianglePoint) -> Matrix3<f64> {
    let [a, b, c] = p.rho();
    Matrix3::new(
        4.0 * a,
        a + b - c,
        a + c - b,
        a + b - c,
        4.0 * b,
        b + c - a,
        a + c - b,
        b + c - a,
        4.0 * c,
    )
}

pub fn heron_area_sq(p: &TrianglePoint) -> f64 {
    let [a, b, c] = p.r();
    let s = (a + b + c) / 2.0;
    s * (s - a) * (s - b) * (s - c)
}

pub fn metric_data(p: &TrianglePoint) -> Result<MetricData> {
    p.require_interior("metric data")?;
    let g = metric_upper(p);
    let tau = p.tau();
    Ok(MetricData {
        g_upper: to_rows(&g),
        det: g.determinant(),
        det_factorized: 6.0 * tau[0] * p.gap(),
        tau,
        area_sq: heron_area_sq(p),
        p_sum: tau[0],
    })
}

pub(crate) fn to_rows(g: &Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| g[(i, j)]))
}

/// Contravariant metric for unequal masses: diagonal `(2/μ_ij) ρ_ij`, and
/// off-diagonal `(ρ_i + ρ_j − ρ_k)/m` with `m` the mass shared by the two
/// pairs.
pub fn mass_metric(p: &TrianglePoint, masses: &MassTriple) -> Matrix3<f64> {
    let [m1, m2, m3] = masses.as_f64();
    let [a, b, c] = p.rho();
    let inv_mu = [(m1 + m2) / (m1 * m2), (m1 + m3) / (m1 * m3), (m2 + m3) / (m2 * m3)];
    let (x12, x13, x23) = ((a + b - c) / m1, (a + c - b) / m2, (b + c - a) / m3);
    Matrix3::new(
        2.0 * inv_mu[0] * a,
        x12,
        x13,
        x12,
        2.0 * inv_mu[1] * b,
        x23,
        x13,
        x23,
        2.0 * inv_mu[2] * c,
    )
}

/// `P′ = m1 m2 ρ12 + m1 m3 ρ13 + m2 m3 ρ23`.
pub fn weighted_p_sum(p: &TrianglePoint, masses: &MassTriple) -> f64 {
    let [m1, m2, m3] = masses.as_f64();
    let [a, b, c] = p.rho();
    m1 * m2 * a + m1 * m3 * b + m2 * m3 * c
}

/// Factorized determinant of the mass metric,
/// `2 (m1+m2+m3)/(m1² m2² m3²) · P′ · (4τ2 − τ1²)`. Negative outside.
pub fn det_masses(p: &TrianglePoint, masses: &MassTriple) -> f64 {
    let [m1, m2, m3] = masses.as_f64();
    let m = m1 * m2 * m3;
    2.0 * (m1 + m2 + m3) / (m * m) * weighted_p_sum(p, masses) * p.gap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{sample_interior, PERMUTATIONS};
    use crate::polyops::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn equilateral_unit_triangle() {
        let p = TrianglePoint::from_rho([1.0, 1.0, 1.0]).unwrap();
        let m = metric_data(&p).unwrap();
        assert_eq!(m.g_upper[0][0], 4.0);
        assert_eq!(m.g_upper[0][1], 1.0);
        assert!(rel(m.det, 54.0) < 1e-14);
        assert_eq!(m.det_factorized, 54.0);
        assert!(rel(m.area_sq, 3.0 / 16.0) < 1e-14);
        assert!(rel(96.0 * m.p_sum * m.area_sq, 54.0) < 1e-14);
    }

    #[test]
    fn boundary_and_near_boundary() {
        let p = TrianglePoint::from_rho([1.0, 1.0, 4.0]).unwrap();
        assert!(metric_data(&p).is_err());
        let near = TrianglePoint::from_rho([1.0, 1.0, 4.0 - 1e-6]).unwrap();
        assert!(metric_data(&near).unwrap().det < 1e-3);
    }

    #[test]
    fn determinant_factorizations_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in sample_interior(&mut rng, 1000) {
            let m = metric_data(&p).unwrap();
            assert!(m.det > 0.0);
            assert!(rel(m.det, m.det_factorized) < 1e-12, "{:?}", p);
            assert!(rel(16.0 * m.area_sq, p.gap()) < 1e-10, "{:?}", p);
            assert!(rel(96.0 * m.p_sum * m.area_sq, m.det_factorized) < 1e-10);
        }
    }

    #[test]
    fn determinant_is_permutation_invariant() {
        let p = TrianglePoint::from_rho([0.7, 1.3, 1.1]).unwrap();
        let d = metric_data(&p).unwrap().det;
        for perm in PERMUTATIONS {
            assert!(rel(metric_data(&p.permuted(perm)).unwrap().det, d) < 1e-13);
        }
    }

    #[test]
    fn mass_determinant_examples() {
        let p = TrianglePoint::from_rho([1.0, 1.0, 1.0]).unwrap();
        assert_eq!(det_masses(&p, &MassTriple::equal()), 54.0);
        let degenerate = TrianglePoint::from_rho([1.0, 1.0, 4.0]).unwrap();
        let m = MassTriple::new(int(1), int(2), int(3)).unwrap();
        assert_eq!(det_masses(&degenerate, &m), 0.0);
        assert_eq!(mass_metric(&p, &MassTriple::equal()), metric_upper(&p));
    }

    #[test]
    fn mass_determinant_matches_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = MassTriple::new(int(1), int(2), int(3)).unwrap();
        for p in sample_interior(&mut rng, 20) {
            assert!(rel(mass_metric(&p, &m).determinant(), det_masses(&p, &m)) < 1e-12);
        }
    }
}
