use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A configuration of three bodies, stored as squared relative distances
/// `(ρ12, ρ13, ρ23)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrianglePoint {
    rho: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Interior => "interior",
            Membership::Boundary => "boundary",
            Membership::Exterior => "exterior",
        })
    }
}

impl TrianglePoint {
    pub fn from_rho(rho: [f64; 3]) -> Result<Self> {
        if rho.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidInput(format!(
                "squared distances must be positive and finite, got {:?}",
                rho
            )));
        }
        Ok(TrianglePoint { rho })
    }

    pub fn from_r(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidInput(format!(
                "distances must be positive and finite, got {:?}",
                r
            )));
        }
        Self::from_rho(r.map(|v| v * v))
    }

    pub fn rho(&self) -> [f64; 3] {
        self.rho
    }

    pub fn r(&self) -> [f64; 3] {
        self.rho.map(f64::sqrt)
    }

    /// Elementary symmetric polynomials `(τ1, τ2, τ3)`.
    pub fn tau(&self) -> [f64; 3] {
        let [a, b, c] = self.rho;
        [a + b + c, a * b + a * c + b * c, a * b * c]
    }

    /// `4τ2 − τ1²`, which is `16 S²` for the triangle of interaction.
    pub fn gap(&self) -> f64 {
        let [t1, t2, _] = self.tau();
        4.0 * t2 - t1 * t1
    }

    pub fn membership(&self) -> Membership {
        let t1 = self.tau()[0];
        let gap = self.gap();
        if gap.abs() <= 1e-12 * (t1 * t1).max(1.0) {
            Membership::Boundary
        } else if gap > 0.0 {
            Membership::Interior
        } else {
            Membership::Exterior
        }
    }

    pub fn is_interior(&self) -> bool {
        self.membership() == Membership::Interior
    }

    pub(crate) fn require_interior(&self, what: &str) -> Result<()> {
        match self.membership() {
            Membership::Interior => Ok(()),
            m => Err(Error::SingularConfiguration(format!(
                "{} needs an interior point, {:?} is {}",
                what, self.rho, m
            ))),
        }
    }

    /// Relabel the pairs: component `i` of the result is component
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        TrianglePoint {
            rho: perm.map(|i| self.rho[i]),
        }
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_rho(self.rho.map(|v| v * factor))
    }
}

/// Whether `p` lies inside, on the boundary of, or outside the space of
/// non-degenerate triangles.
pub fn in_configuration_space(p: &TrianglePoint) -> Membership {
    p.membership()
}

/// Draw `count` interior points by sampling side lengths uniformly from
/// `[0.2, 2]` and rejecting non-triangles.
pub fn sample_interior<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<TrianglePoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.2..2.0));
        let [a, b, c] = r;
        if a < b + c && b < a + c && c < a + b {
            let p = TrianglePoint::from_r(r).expect("sides are positive");
            if p.is_interior() {
                out.push(p);
            }
        }
    }
    out
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
];

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn membership_examples() {
        let p = |a, b, c| TrianglePoint::from_rho([a, b, c]).unwrap().membership();
        assert_eq!(p(1.0, 1.0, 1.0), Membership::Interior);
        assert_eq!(p(1.0, 1.0, 4.0), Membership::Boundary);
        assert_eq!(p(1.0, 1.0, 9.0), Membership::Exterior);
        assert!(TrianglePoint::from_rho([1.0, 0.0, 1.0]).is_err());
        assert!(TrianglePoint::from_r([1.0, -1.0, 1.0]).is_err());
    }

    #[test]
    fn membership_matches_triangle_inequalities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.1..3.0));
            let [a, b, c] = r;
            let strict = a < b + c && b < a + c && c < a + b;
            let m = TrianglePoint::from_r(r).unwrap().membership();
            if m != Membership::Boundary {
                assert_eq!(strict, m == Membership::Interior, "{:?}", r);
            }
        }
    }

    #[test]
    fn sampler_stays_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = sample_interior(&mut rng, 200);
        assert_eq!(pts.len(), 200);
        assert!(pts.iter().all(|p| p.gap() > 0.0));
    }
}
