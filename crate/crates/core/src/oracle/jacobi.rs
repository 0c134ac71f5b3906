use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::TrianglePoint;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Two vectorial Jacobi coordinates of three unit masses with the centre of
/// mass removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPoint {
    pub q1: [f64; 3],
    pub q2: [f64; 3],
}

impl JacobiPoint {
    pub fn from_flat(q: &[f64; 6]) -> Self {
        JacobiPoint {
            q1: [q[0], q[1], q[2]],
            q2: [q[3], q[4], q[5]],
        }
    }

    pub fn flat(&self) -> [f64; 6] {
        [self.q1[0], self.q1[1], self.q1[2], self.q2[0], self.q2[1], self.q2[2]]
    }

    /// Particle positions in the centre-of-mass frame.
    pub fn positions(&self) -> [[f64; 3]; 3] {
        let r3: [f64; 3] = std::array::from_fn(|k| (2.0f64 / 3.0).sqrt() * self.q2[k]);
        let r1 = std::array::from_fn(|k| (-r3[k] - SQRT2 * self.q1[k]) / 2.0);
        let r2 = std::array::from_fn(|k| (-r3[k] + SQRT2 * self.q1[k]) / 2.0);
        [r1, r2, r3]
    }

    /// Squared pair distances `(ρ12, ρ13, ρ23)`.
    pub fn rho(&self) -> [f64; 3] {
        let [r1, r2, r3] = self.positions();
        let d = |a: [f64; 3], b: [f64; 3]| (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>();
        [d(r1, r2), d(r1, r3), d(r2, r3)]
    }

    pub fn triangle(&self) -> Result<TrianglePoint> {
        TrianglePoint::from_rho(self.rho())
    }

    /// Uniform draw from `[-1, 1]^6`, redrawn until the triangle is well
    /// inside the configuration space (`4τ2 − τ1² ≥ margin·τ1²`).
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> Result<Self> {
        for _ in 0..10_000 {
            let q: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let j = JacobiPoint::from_flat(&q);
            if let Ok(p) = j.triangle() {
                let t1 = p.tau()[0];
                if t1 > 0.3 && p.gap() >= margin * t1 * t1 {
                    return Ok(j);
                }
            }
        }
        Err(Error::SingularConfiguration(
            "could not draw a Jacobi point away from the collinear boundary".into(),
        ))
    }
}

/// Half the flat six-dimensional Laplacian of `f(ρ(q))` by central
/// differences, with one Richardson step when requested.
pub fn half_flat_laplacian<F>(f: &F, q: &JacobiPoint, h: f64, richardson: bool) -> f64
where
    F: Fn(&[f64; 3]) -> f64 + ?Sized,
{
    let x = q.flat();
    let g = |y: &[f64; 6]| f(&JacobiPoint::from_flat(y).rho());
    let centre = g(&x);
    let plain = |h: f64| {
        (0..6)
            .map(|k| {
                let mut up = x;
                let mut down = x;
                up[k] += h;
                down[k] -= h;
                (g(&up) - 2.0 * centre + g(&down)) / (h * h)
            })
            .sum::<f64>()
            / 2.0
    };
    if richardson {
        (4.0 * plain(h / 2.0) - plain(h)) / 3.0
    } else {
        plain(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distances_from_positions() {
        let j = JacobiPoint {
            q1: [1.0, 0.0, 0.0],
            q2: [0.0, 0.0, 0.0],
        };
        let rho = j.rho();
        assert!((rho[0] - 2.0).abs() < 1e-15);
        assert!((rho[1] - 0.5).abs() < 1e-15);
        assert!((rho[2] - 0.5).abs() < 1e-15);
        let com: f64 = j.positions().iter().map(|r| r[0]).sum();
        assert!(com.abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle() {
        let j = JacobiPoint {
            q1: [1.0, 0.0, 0.0],
            q2: [0.0, 1.0, 0.0],
        };
        for v in j.rho() {
            assert!((v - 2.0).abs() < 1e-14, "{:?}", j.rho());
        }
    }

    #[test]
    fn sampled_points_are_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let j = JacobiPoint::sample(&mut rng, 0.1).unwrap();
            assert!(j.triangle().unwrap().is_interior());
        }
    }

    #[test]
    fn flat_laplacian_of_rho_sum() {
        let j = JacobiPoint {
            q1: [0.3, -0.2, 0.5],
            q2: [0.1, 0.7, -0.4],
        };
        let f = |r: &[f64; 3]| r[0] + r[1] + r[2];
        assert!((half_flat_laplacian(&f, &j, 1e-3, true) - 18.0).abs() < 1e-6);
    }
}
