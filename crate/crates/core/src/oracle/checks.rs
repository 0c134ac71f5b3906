use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{effective_potential, metric_upper, sample_interior, w_coords, TrianglePoint};
use crate::operators::{build_delta_lb, build_delta_r, build_delta_r_w, build_l1};
use crate::polyops::{evaluate_with, Chart, DiffOperator};

use super::functions::{TestFunction, WProfile};
use super::jacobi::{half_flat_laplacian, JacobiPoint};

/// `|a − b| / max(|b|, |scale|)`, falling back to the absolute difference
/// when both references vanish.
pub(crate) fn relative(a: f64, b: f64, scale: f64) -> f64 {
    let d = (a - b).abs();
    let den = b.abs().max(scale.abs());
    if den > 0.0 {
        d / den
    } else {
        d
    }
}

/// Whether every point of the `3×3×3` stencil of half-width `h` around
/// `rho` is an interior configuration.
pub(crate) fn stencil_interior(rho: &[f64; 3], h: f64) -> bool {
    (0..27).all(|k| {
        let s = [k % 3, (k / 3) % 3, k / 9].map(|d| d as f64 - 1.0);
        let x: [f64; 3] = std::array::from_fn(|i| rho[i] + s[i] * h);
        TrianglePoint::from_rho(x).map(|p| p.is_interior()).unwrap_or(false)
    })
}

/// Interior points with `4τ2 − τ1² ≥ margin·τ1²`.
pub fn sample_well_inside<R: Rng + ?Sized>(rng: &mut R, count: usize, margin: f64) -> Vec<TrianglePoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = sample_interior(rng, 1).remove(0);
        let t1 = p.tau()[0];
        if p.gap() >= margin * t1 * t1 {
            out.push(p);
        }
    }
    out
}

/// One sample of the reduction: `(½Δ⁶ f, Δ_R f)`. Polynomial functions get
/// the radial Laplacian applied exactly.
pub fn reduction_pair(f: TestFunction, q: &JacobiPoint, fd_step: f64, richardson: bool) -> Result<(f64, f64)> {
    let rho = q.rho();
    let eval = |x: &[f64; 3]| f.eval(x);
    let flat = half_flat_laplacian(&eval, q, fd_step, richardson);
    let delta_r = build_delta_r(Chart::Rho)?;
    let radial = match f.polynomial() {
        Some(p) => delta_r.apply_poly(&p)?.eval_f64(&rho),
        None => {
            if !stencil_interior(&rho, fd_step) {
                return Err(Error::SingularConfiguration(format!(
                    "finite-difference stencil leaves the interior at {:?}",
                    rho
                )));
            }
            evaluate_with(&delta_r, &eval, &rho, fd_step, richardson)?
        }
    };
    Ok((flat, radial))
}

/// Maximum relative mismatch between half the flat Laplacian and the radial
/// Laplacian over `samples` Jacobi points drawn from `rng`.
pub fn reduction_check<R: Rng + ?Sized>(f: TestFunction, samples: usize, fd_step: f64, rng: &mut R) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = JacobiPoint::sample(rng, 0.1)?;
        let (flat, radial) = reduction_pair(f, &q, fd_step, true)?;
        worst = worst.max(relative(flat, radial, f.eval(&q.rho())));
    }
    Ok(worst)
}

/// `D^{-1/4}` with `D` the determinant of the contravariant metric.
pub fn gauge_factor(rho: &[f64; 3]) -> f64 {
    match TrianglePoint::from_rho(*rho) {
        Ok(p) => metric_upper(&p).determinant().powf(-0.25),
        Err(_) => f64::NAN,
    }
}

/// Both sides of the gauge identity at `p`: `(Γ⁻¹ Δ_R(Γ f), (Δ_LB − Ṽ) f)`.
pub fn gauge_sides(p: &TrianglePoint, f: TestFunction, fd_step: f64, richardson: bool) -> Result<(f64, f64)> {
    p.require_interior("gauge identity")?;
    let rho = p.rho();
    if !stencil_interior(&rho, fd_step) {
        return Err(Error::SingularConfiguration(format!(
            "the gauge factor is singular within one step of {:?}",
            rho
        )));
    }
    let delta_r = build_delta_r(Chart::Rho)?;
    let delta_lb = build_delta_lb()?;
    let rotated = |x: &[f64; 3]| gauge_factor(x) * f.eval(x);
    let eval = |x: &[f64; 3]| f.eval(x);
    let lhs = evaluate_with(&delta_r, &rotated, &rho, fd_step, richardson)? / gauge_factor(&rho);
    let rhs = evaluate_with(&delta_lb, &eval, &rho, fd_step, richardson)? - effective_potential(p)? * f.eval(&rho);
    Ok((lhs, rhs))
}

/// `|Γ⁻¹ Δ_R(Γ f) − (Δ_LB − Ṽ) f| / (1 + |rhs|)`.
pub fn gauge_identity_check(p: &TrianglePoint, f: TestFunction, fd_step: f64) -> Result<f64> {
    let (lhs, rhs) = gauge_sides(p, f, fd_step, true)?;
    Ok((lhs - rhs).abs() / (1.0 + rhs.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationSample {
    /// `L1 F` by finite differences in ρ.
    pub l1: f64,
    /// `−∂F/∂w3` in closed form.
    pub minus_dw3: f64,
    /// Real part of `e^{−imw3} Δ_R(ψ e^{imw3})`, differenced in ρ.
    pub radial_rho: f64,
    /// Imaginary part of the same quotient; vanishes.
    pub radial_imag: f64,
    /// The separated radial operator on `ψ`, differenced in `(w1, w2)`.
    pub radial_w: f64,
    pub profile_value: f64,
}

impl SeparationSample {
    pub fn l1_error(&self) -> f64 {
        relative(self.l1, self.minus_dw3, self.profile_value)
    }

    pub fn radial_error(&self) -> f64 {
        let scale = self.radial_w.abs().max(self.profile_value.abs());
        relative(self.radial_rho, self.radial_w, scale).max(relative(self.radial_imag, 0.0, scale))
    }
}

fn w_of(x: &[f64; 3]) -> Option<(f64, f64, f64)> {
    let p = TrianglePoint::from_rho(*x).ok()?;
    let w = w_coords(&p).ok()?;
    Some((w.w1, w.w2, w.w3))
}

/// Whether `p` is usable for the separation check at step `h`: three
/// clearly distinct components, away from the boundary and the
/// equilateral ray.
pub fn separable_point(p: &TrianglePoint, h: f64) -> bool {
    let [a, b, c] = p.rho();
    let t1 = a + b + c;
    let spread = (a - b).abs().min((a - c).abs()).min((b - c).abs());
    spread > 0.05 * t1 && spread > 20.0 * h && p.gap() > 0.05 * t1 * t1 && stencil_interior(&p.rho(), 2.0 * h)
}

/// Separation of `w3` at one point for `ψ(w1, w2) e^{imw3}`.
pub fn separation_sample(
    m: i32,
    profile: WProfile,
    p: &TrianglePoint,
    fd_step: f64,
    richardson: bool,
) -> Result<SeparationSample> {
    if !separable_point(p, fd_step) {
        return Err(Error::UndefinedW3(format!(
            "{:?} is too close to a coincidence plane or the boundary",
            p.rho()
        )));
    }
    let rho = p.rho();
    let (w1, w2, w3) = w_of(&rho).ok_or_else(|| Error::UndefinedW3(format!("{:?}", rho)))?;
    let mf = m as f64;
    let part = |x: &[f64; 3], phase: fn(f64) -> f64| match w_of(x) {
        Some((a, b, c)) => profile.eval(a, b) * phase(mf * c),
        None => f64::NAN,
    };
    let f_cos = |x: &[f64; 3]| part(x, f64::cos);
    let f_sin = |x: &[f64; 3]| part(x, f64::sin);
    let psi = profile.eval(w1, w2);
    let (s, c) = (mf * w3).sin_cos();

    let l1 = evaluate_with(&build_l1(Chart::Rho, false)?, &f_cos, &rho, fd_step, richardson)?;
    let minus_dw3 = mf * psi * s;

    let delta_r = build_delta_r(Chart::Rho)?;
    let dc = evaluate_with(&delta_r, &f_cos, &rho, fd_step, richardson)?;
    let ds = evaluate_with(&delta_r, &f_sin, &rho, fd_step, richardson)?;
    let radial_rho = dc * c + ds * s;
    let radial_imag = ds * c - dc * s;

    let full = build_delta_r_w()?;
    let angular = full.coefficient(&crate::polyops::MultiIndex::new(0, 0, 2));
    let radial_op = DiffOperator::from_terms(
        Chart::W,
        full.terms().iter().filter(|(a, _)| a.0[2] == 0).map(|(a, c)| (*a, c.clone())),
    );
    let g = |x: &[f64; 3]| profile.eval(x[0], x[1]);
    let w = [w1, w2, w3];
    let radial_w = evaluate_with(&radial_op, &g, &w, fd_step, richardson)? - mf * mf * angular.eval_f64(&w)? * psi;

    Ok(SeparationSample {
        l1,
        minus_dw3,
        radial_rho,
        radial_imag,
        radial_w,
        profile_value: psi,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationReport {
    pub samples: usize,
    pub l1_max_err: f64,
    pub radial_max_err: f64,
}

impl SeparationReport {
    pub fn max_rel_err(&self) -> f64 {
        self.l1_max_err.max(self.radial_max_err)
    }
}

/// Separation check over `samples` points, redrawing points that sit too
/// close to a plane where two squared distances coincide.
pub fn separation_check<R: Rng + ?Sized>(
    m: i32,
    profile: WProfile,
    samples: usize,
    fd_step: f64,
    rng: &mut R,
) -> Result<SeparationReport> {
    let mut report = SeparationReport {
        samples,
        l1_max_err: 0.0,
        radial_max_err: 0.0,
    };
    let mut taken = 0;
    let mut tries = 0;
    while taken < samples {
        tries += 1;
        if tries > 100 * samples + 1000 {
            return Err(Error::UndefinedW3("could not draw separable sample points".into()));
        }
        let p = sample_interior(rng, 1).remove(0);
        if !separable_point(&p, fd_step) {
            continue;
        }
        let s = separation_sample(m, profile, &p, fd_step, true)?;
        report.l1_max_err = report.l1_max_err.max(s.l1_error());
        report.radial_max_err = report.radial_max_err.max(s.radial_error());
        taken += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PERMUTATIONS;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(a: f64, b: f64, c: f64) -> TrianglePoint {
        TrianglePoint::from_rho([a, b, c]).unwrap()
    }

    #[test]
    fn reduction_on_rho_sum_is_eighteen() {
        let q = JacobiPoint {
            q1: [0.4, -0.3, 0.2],
            q2: [-0.1, 0.6, 0.5],
        };
        let (flat, radial) = reduction_pair(TestFunction::Tau1, &q, 1e-3, true).unwrap();
        assert_eq!(radial, 18.0);
        assert!((flat - 18.0).abs() < 1e-6, "{}", flat);
        let (flat, radial) = reduction_pair(TestFunction::One, &q, 1e-4, true).unwrap();
        assert_eq!((flat, radial), (0.0, 0.0));
    }

    #[test]
    fn reduction_suite_meets_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in TestFunction::SUITE {
            let err = reduction_check(f, 20, 1e-4, &mut rng).unwrap();
            let bound = if f.is_polynomial() { 1e-5 } else { 1e-4 };
            assert!(err <= bound, "{}: {:e}", f, err);
        }
    }

    #[test]
    fn gauge_identity_examples() {
        let e = gauge_identity_check(&pt(1.0, 1.0, 1.0), TestFunction::One, 1e-4).unwrap();
        assert!(e < 1e-4, "{:e}", e);
        let (lhs, rhs) = gauge_sides(&pt(1.0, 1.0, 1.0), TestFunction::One, 1e-4, true).unwrap();
        assert!((rhs - 0.125).abs() < 1e-12);
        assert!((lhs - 0.125).abs() < 1e-5, "{}", lhs);
        let e = gauge_identity_check(&pt(1.0, 2.0, 2.0), TestFunction::Tau1, 1e-4).unwrap();
        assert!(e < 1e-4, "{:e}", e);
        assert!(gauge_identity_check(&pt(1.0, 1.0, 4.0), TestFunction::One, 1e-4).is_err());
    }

    #[test]
    fn gauge_identity_is_linear_and_symmetric() {
        let p = pt(0.8, 1.3, 1.7);
        let (l1, r1) = gauge_sides(&p, TestFunction::ExpTau1, 1e-4, true).unwrap();
        for perm in PERMUTATIONS {
            let (l2, r2) = gauge_sides(&p.permuted(perm), TestFunction::ExpTau1, 1e-4, true).unwrap();
            assert!((l1 - l2).abs() < 1e-7 * (1.0 + l1.abs()));
            assert!((r1 - r2).abs() < 1e-7 * (1.0 + r1.abs()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in sample_well_inside(&mut rng, 10, 0.05) {
            for f in TestFunction::SUITE {
                let e = gauge_identity_check(&p, f, 1e-4).unwrap();
                assert!(e < 1e-4, "{} at {:?}: {:e}", f, p.rho(), e);
            }
        }
    }

    #[test]
    fn separation_examples() {
        let p = pt(0.7, 1.2, 1.9);
        let s0 = separation_sample(0, WProfile::Gaussian, &p, 1e-4, true).unwrap();
        assert!(s0.l1_error() < 1e-5 && s0.radial_error() < 1e-5, "{:?}", s0);
        let s1 = separation_sample(1, WProfile::W2Squared, &p, 1e-4, true).unwrap();
        assert!((s1.radial_w - 22.0 * 3.8).abs() < 1e-5, "{:?}", s1);
        assert!(s1.radial_error() < 1e-4 && s1.l1_error() < 1e-4, "{:?}", s1);
        let q = p.permuted(PERMUTATIONS[1]);
        let s2 = separation_sample(1, WProfile::W2Squared, &q, 1e-4, true).unwrap();
        assert!((s1.radial_rho - s2.radial_rho).abs() < 1e-6 * s1.radial_rho.abs(), "{:?} {:?}", s1, s2);
        assert!((s1.l1 - s2.l1).abs() < 1e-6 * (1.0 + s1.l1.abs()));
        assert!((s1.radial_w - s2.radial_w).abs() < 1e-12 * s1.radial_w.abs());
        assert!(separation_sample(1, WProfile::One, &pt(1.0, 1.0, 1.5), 1e-4, true).is_err());
    }

    #[test]
    fn separation_over_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 0..3 {
            for profile in WProfile::ALL {
                let r = separation_check(m, profile, 10, 1e-4, &mut rng).unwrap();
                assert!(r.max_rel_err() < 1e-4, "m={} {}: {:?}", m, profile, r);
            }
        }
    }
}
