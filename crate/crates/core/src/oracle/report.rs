use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ricci_scalar;

use super::checks::{
    gauge_identity_check, gauge_sides, reduction_pair, relative, sample_well_inside, separable_point,
    separation_sample,
};
use super::curvature::curvature_oracle_with;
use super::functions::{TestFunction, WProfile};
use super::jacobi::JacobiPoint;

pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Reduction,
    Gauge,
    Separation,
    Curvature,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::Reduction,
        CheckKind::Gauge,
        CheckKind::Separation,
        CheckKind::Curvature,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CheckKind::Reduction => "reduction",
            CheckKind::Gauge => "gauge",
            CheckKind::Separation => "separation",
            CheckKind::Curvature => "curvature",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown check {:?}", s)))
    }
}

/// Pass thresholds of the numeric checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub reduction_poly: f64,
    pub reduction: f64,
    pub gauge: f64,
    pub separation: f64,
    pub curvature: f64,
    pub ground_state: f64,
    pub slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            reduction_poly: 1e-5,
            reduction: 1e-4,
            gauge: 1e-4,
            separation: 1e-4,
            curvature: 1e-4,
            ground_state: 1e-4,
            slope: 1.8,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 7] = [
        "reduction_poly",
        "reduction",
        "gauge",
        "separation",
        "curvature",
        "ground_state",
        "slope",
    ];

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidInput(format!("tolerance {} must be a non-negative number", key)));
        }
        let slot = match key {
            "reduction_poly" => &mut self.reduction_poly,
            "reduction" => &mut self.reduction,
            "gauge" => &mut self.gauge,
            "separation" => &mut self.separation,
            "curvature" => &mut self.curvature,
            "ground_state" => &mut self.ground_state,
            "slope" => &mut self.slope,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown tolerance {:?}, expected one of {}",
                    other,
                    Self::KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

/// One function or mode inside a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDetail {
    pub label: String,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub slope: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check: CheckKind,
    pub samples: usize,
    pub seed: u64,
    pub fd_step: f64,
    pub max_rel_err: f64,
    /// Smallest measured log-log convergence slope; absent when every
    /// mismatch is at rounding level at all steps.
    pub slope: Option<f64>,
    pub pass: bool,
    pub details: Vec<OracleDetail>,
}

/// Least-squares slope of `ln e` against `ln h`, coarsest step first, or
/// `None` when the coarsest error is already at rounding level (the
/// differencing is exact for that function).
pub fn convergence_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || !(points[0].1 > 1e-9) || points.iter().any(|&(_, e)| !(e > 0.0)) {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Steps `h0, h0/2, h0/4, h0/8`: three refinements.
fn ladder(h0: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| h0 / f64::powi(2.0, k as i32)).collect()
}

fn min_slope(slopes: impl IntoIterator<Item = Option<f64>>) -> Option<f64> {
    slopes.into_iter().flatten().reduce(f64::min)
}

fn finish(check: CheckKind, samples: usize, seed: u64, fd_step: f64, details: Vec<OracleDetail>, slope_tol: f64) -> OracleReport {
    let max_rel_err = details.iter().map(|d| d.max_rel_err).fold(0.0, f64::max);
    let slope = min_slope(details.iter().map(|d| d.slope));
    let pass = details.iter().all(|d| d.pass) && slope.is_none_or(|s| s >= slope_tol);
    OracleReport {
        check,
        samples,
        seed,
        fd_step,
        max_rel_err,
        slope,
        pass,
        details,
    }
}

const SLOPE_POINTS: usize = 4;

fn reduction_report(samples: usize, fd_step: f64, seed: u64, tol: &Tolerances) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..samples)
        .map(|_| JacobiPoint::sample(&mut rng, 0.1))
        .collect::<Result<Vec<_>>>()?;
    let mut details = Vec::new();
    for f in TestFunction::SUITE {
        let mismatch = |q: &JacobiPoint, h: f64, richardson: bool| -> Result<f64> {
            let (flat, radial) = reduction_pair(f, q, h, richardson)?;
            Ok(relative(flat, radial, f.eval(&q.rho())))
        };
        let mut worst = 0.0f64;
        for q in &points {
            worst = worst.max(mismatch(q, fd_step, true)?);
        }
        let mut curve = Vec::new();
        for h in ladder(0.02, 4) {
            let mut e = 0.0f64;
            for q in points.iter().take(SLOPE_POINTS) {
                e = e.max(mismatch(q, h, false)?);
            }
            curve.push((h, e));
        }
        let tolerance = if f.is_polynomial() { tol.reduction_poly } else { tol.reduction };
        let slope = convergence_slope(&curve);
        details.push(OracleDetail {
            label: f.id().to_string(),
            max_rel_err: worst,
            tolerance,
            slope,
            pass: worst <= tolerance && slope.is_none_or(|s| s >= tol.slope),
        });
    }
    Ok(finish(CheckKind::Reduction, samples, seed, fd_step, details, tol.slope))
}

fn gauge_report(samples: usize, fd_step: f64, seed: u64, tol: &Tolerances) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_well_inside(&mut rng, samples, 0.05);
    let mut details = Vec::new();
    for f in TestFunction::SUITE {
        let mut worst = 0.0f64;
        for p in &points {
            worst = worst.max(gauge_identity_check(p, f, fd_step)?);
        }
        let mut curve = Vec::new();
        for h in ladder(0.01, 4) {
            let mut e = 0.0f64;
            for p in points.iter().take(SLOPE_POINTS) {
                let (lhs, rhs) = gauge_sides(p, f, h, false)?;
                e = e.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
            }
            curve.push((h, e));
        }
        let slope = convergence_slope(&curve);
        details.push(OracleDetail {
            label: f.id().to_string(),
            max_rel_err: worst,
            tolerance: tol.gauge,
            slope,
            pass: worst <= tol.gauge && slope.is_none_or(|s| s >= tol.slope),
        });
    }
    Ok(finish(CheckKind::Gauge, samples, seed, fd_step, details, tol.slope))
}

fn separation_report(samples: usize, fd_step: f64, seed: u64, tol: &Tolerances) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coarse = 0.01;
    let mut points = Vec::with_capacity(samples);
    let mut tries = 0;
    while points.len() < samples {
        tries += 1;
        if tries > 1000 * (samples + 1) {
            return Err(Error::UndefinedW3("could not draw separable sample points".into()));
        }
        let p = sample_well_inside(&mut rng, 1, 0.05).remove(0);
        if separable_point(&p, coarse) {
            points.push(p);
        }
    }
    let mut details = Vec::new();
    for m in 0..3 {
        for profile in WProfile::ALL {
            let mismatch = |p, h, richardson| -> Result<f64> {
                let s = separation_sample(m, profile, p, h, richardson)?;
                Ok(s.l1_error().max(s.radial_error()))
            };
            let mut worst = 0.0f64;
            for p in &points {
                worst = worst.max(mismatch(p, fd_step, true)?);
            }
            let mut curve = Vec::new();
            for h in ladder(coarse, 4) {
                let mut e = 0.0f64;
                for p in points.iter().take(SLOPE_POINTS) {
                    e = e.max(mismatch(p, h, false)?);
                }
                curve.push((h, e));
            }
            let slope = convergence_slope(&curve);
            details.push(OracleDetail {
                label: format!("m={} psi={}", m, profile.id()),
                max_rel_err: worst,
                tolerance: tol.separation,
                slope,
                pass: worst <= tol.separation && slope.is_none_or(|s| s >= tol.slope),
            });
        }
    }
    Ok(finish(CheckKind::Separation, samples, seed, fd_step, details, tol.slope))
}

/// The curvature comparison is against the closed form; the slope is the
/// self-convergence rate `|R(h) − R(h/2)|` of the oracle.
fn curvature_report(samples: usize, fd_step: f64, seed: u64, tol: &Tolerances) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_well_inside(&mut rng, samples, 0.1);
    let mut worst = 0.0f64;
    for p in &points {
        let oracle = curvature_oracle_with(p, fd_step, true)?;
        let closed = ricci_scalar(p)?;
        worst = worst.max(relative(oracle, closed, 0.0));
    }
    let mut curve = Vec::new();
    let steps = ladder(0.02, SLOPE_POINTS + 1);
    for w in steps.windows(2) {
        let mut e = 0.0f64;
        for p in points.iter().take(3) {
            let a = curvature_oracle_with(p, w[0], false)?;
            let b = curvature_oracle_with(p, w[1], false)?;
            e = e.max((a - b).abs() / b.abs());
        }
        curve.push((w[0], e));
    }
    let slope = convergence_slope(&curve);
    let details = vec![OracleDetail {
        label: "closed-form Ricci scalar".into(),
        max_rel_err: worst,
        tolerance: tol.curvature,
        slope,
        pass: worst <= tol.curvature && slope.is_none_or(|s| s >= tol.slope),
    }];
    Ok(finish(CheckKind::Curvature, samples, seed, fd_step, details, tol.slope))
}

/// Run one numeric check on `samples` points drawn from a generator seeded
/// with `seed`.
pub fn run_check(kind: CheckKind, samples: usize, fd_step: f64, seed: u64, tol: &Tolerances) -> Result<OracleReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is needed".into()));
    }
    if !(fd_step > 0.0) || !fd_step.is_finite() {
        return Err(Error::InvalidInput(format!("fd_step must be positive, got {}", fd_step)));
    }
    match kind {
        CheckKind::Reduction => reduction_report(samples, fd_step, seed, tol),
        CheckKind::Gauge => gauge_report(samples, fd_step, seed, tol),
        CheckKind::Separation => separation_report(samples, fd_step, seed, tol),
        CheckKind::Curvature => curvature_report(samples, fd_step, seed, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_quadratic_decay() {
        let pts: Vec<(f64, f64)> = ladder(0.1, 4).into_iter().map(|h| (h, 3.0 * h * h)).collect();
        assert!((convergence_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(convergence_slope(&[(0.1, 0.0), (0.05, 0.0)]), None);
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.set("gauge", 1e-3).unwrap();
        assert_eq!(t.gauge, 1e-3);
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("gauge", -1.0).is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let t = Tolerances::default();
        for kind in [CheckKind::Reduction, CheckKind::Gauge, CheckKind::Separation] {
            let a = run_check(kind, 6, DEFAULT_FD_STEP, 9, &t).unwrap();
            let b = run_check(kind, 6, DEFAULT_FD_STEP, 9, &t).unwrap();
            assert_eq!(a, b);
            assert!(a.pass, "{:?}", a);
            assert!(a.slope.unwrap() >= 1.8, "{:?}", a);
        }
    }

    #[test]
    fn curvature_report_disagrees_with_closed_form() {
        let r = run_check(CheckKind::Curvature, 3, DEFAULT_FD_STEP, 1, &Tolerances::default()).unwrap();
        assert!(r.slope.unwrap() >= 1.8, "{:?}", r);
        assert!(r.max_rel_err > 0.5);
        assert!(!r.pass);
    }
}
