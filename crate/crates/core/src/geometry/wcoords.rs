use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::point::TrianglePoint;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const NUDGE: f64 = 1e-9;

/// Coordinates separating the `L1` symmetry. `w1`, `w2` are annihilated by
/// `L1`; along `L1` the angle `w3` decreases at unit rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WCoords {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

pub fn w1(p: &TrianglePoint) -> f64 {
    p.tau()[0]
}

/// `2 √(τ1² − 3τ2)`, zero exactly on the equilateral ray.
pub fn w2(p: &TrianglePoint) -> f64 {
    let [a, b, c] = p.rho();
    let s = a * a + b * b + c * c - a * b - a * c - b * c;
    2.0 * s.max(0.0).sqrt()
}

/// Closed form on the ordered region `ρ12 < ρ13 < ρ23`.
fn w3_ordered(rho: [f64; 3], w2: f64) -> f64 {
    let [a, b, c] = rho;
    let arg = |x: f64| (x / w2).clamp(-1.0, 1.0).asin();
    SQRT3 / 9.0 * (arg(2.0 * a - c - b) + arg(2.0 * c - b - a) - arg(2.0 * b - c - a) - 0.75 * PI)
}

/// `w3` at a point with three distinct components: sort into the ordered
/// region, and map back with `w3 → −w3 − √3π/6` if the sorting permutation
/// is odd.
fn w3_distinct(rho: [f64; 3], w2: f64) -> f64 {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| rho[i].total_cmp(&rho[j]));
    let sorted = idx.map(|i| rho[i]);
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| idx[i] > idx[j])
        .count();
    let v = w3_ordered(sorted, w2);
    if inversions % 2 == 0 {
        v
    } else {
        -v - SQRT3 * PI / 6.0
    }
}

/// Where two components coincide `w3` is taken as the average of the two
/// one-sided values; the sides differ by `√3π/9` there, so in practice this
/// reports `UndefinedW3`.
pub fn w_coords(p: &TrianglePoint) -> Result<WCoords> {
    p.require_interior("w-coordinates")?;
    let rho = p.rho();
    let (w1, w2) = (w1(p), w2(p));
    if w2 <= 1e-12 * w1 {
        return Err(Error::UndefinedW3(format!(
            "all three squared distances are equal at {:?}",
            rho
        )));
    }
    let tie = (0..3).find(|&i| (0..3).any(|j| j != i && rho[j] == rho[i]));
    let w3 = match tie {
        None => w3_distinct(rho, w2),
        Some(i) => {
            let step = NUDGE * rho[i];
            let mut up = rho;
            let mut down = rho;
            up[i] += step;
            down[i] -= step;
            let hi = w3_distinct(up, w2);
            let lo = w3_distinct(down, w2);
            if (hi - lo).abs() > 1e-6 {
                return Err(Error::UndefinedW3(format!(
                    "one-sided limits disagree by {:e} at {:?}",
                    (hi - lo).abs(),
                    rho
                )));
            }
            0.5 * (hi + lo)
        }
    };
    Ok(WCoords { w1, w2, w3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{sample_interior, PERMUTATIONS};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(a: f64, b: f64, c: f64) -> TrianglePoint {
        TrianglePoint::from_rho([a, b, c]).unwrap()
    }

    fn l1_derivative(f: impl Fn(&TrianglePoint) -> f64, p: &TrianglePoint, h: f64) -> f64 {
        let [a, b, c] = p.rho();
        let v = [b - c, c - a, a - b];
        let shift = |s: f64| TrianglePoint::from_rho(std::array::from_fn(|i| p.rho()[i] + s * v[i])).unwrap();
        (f(&shift(h)) - f(&shift(-h))) / (2.0 * h)
    }

    #[test]
    fn w1_w2_examples() {
        let w = w_coords(&pt(1.0, 2.0, 3.0)).unwrap();
        assert_eq!(w.w1, 6.0);
        assert!((w.w2 - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        assert!(matches!(w_coords(&pt(1.0, 1.0, 1.0)), Err(Error::UndefinedW3(_))));
    }

    #[test]
    fn cyclic_relabeling_keeps_w3() {
        let base = w_coords(&pt(1.0, 2.0, 3.0)).unwrap().w3;
        let cyc = w_coords(&pt(3.0, 1.0, 2.0)).unwrap().w3;
        assert!((base - cyc).abs() < 1e-14);
    }

    #[test]
    fn transposition_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in sample_interior(&mut rng, 50) {
            let w = w_coords(&p).unwrap().w3;
            for (k, perm) in PERMUTATIONS.into_iter().enumerate() {
                let q = w_coords(&p.permuted(perm)).unwrap().w3;
                let expected = if k < 3 { w } else { -w - SQRT3 * PI / 6.0 };
                assert!((q - expected).abs() < 1e-12, "{:?} {:?}", p, perm);
            }
        }
    }

    #[test]
    fn l1_annihilates_w1_w2_and_lowers_w3() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in sample_interior(&mut rng, 40) {
            let w = w_coords(&p).unwrap();
            if w.w2 < 0.2 {
                continue;
            }
            assert!(l1_derivative(w1, &p, 1e-5).abs() < 1e-8);
            assert!(l1_derivative(w2, &p, 1e-5).abs() < 1e-8);
            let d3 = l1_derivative(|q| w_coords(q).unwrap().w3, &p, 1e-5);
            assert!((d3 + 1.0).abs() < 1e-6, "{:?}: {}", p, d3);
        }
    }

    #[test]
    fn two_equal_components_jump() {
        let err = w_coords(&pt(1.0, 1.0, 1.7)).unwrap_err();
        assert!(matches!(err, Error::UndefinedW3(_)));
        let hi = w_coords(&pt(1.0 + 1e-7, 1.0, 1.7)).unwrap().w3;
        let lo = w_coords(&pt(1.0 - 1e-7, 1.0, 1.7)).unwrap().w3;
        assert!(((hi - lo).abs() - SQRT3 * PI / 9.0).abs() < 1e-6);
    }
}
