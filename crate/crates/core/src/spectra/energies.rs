use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Membership, TrianglePoint};
use crate::operators::{PotentialParams, Variant};
use crate::polyops::{int, Rational};

/// `E0 = 12 ω (1 + γ)`.
pub fn ground_energy(params: &PotentialParams) -> Rational {
    &params.omega * int(12) * (int(1) + &params.gamma)
}

/// Energy of the Schrödinger operator for an eigenvalue of the
/// gauge-rotated algebraic operator at the same `N`.
pub fn physical_energy(h_eigenvalue: &Rational, params: &PotentialParams) -> Rational {
    h_eigenvalue + ground_energy(params)
}

pub fn physical_energy_f64(h_eigenvalue: f64, params: &PotentialParams) -> f64 {
    h_eigenvalue + crate::polyops::to_f64(&ground_energy(params))
}

/// One level of the exactly solvable spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsLevel {
    pub n: [u32; 3],
    pub energy: Rational,
}

/// `E = 12 ω (n1 + n2 + n3 + γ + 1)` for every triple with `n1+n2+n3 ≤ n_max`,
/// ordered by total quantum number.
pub fn es_spectrum(params: &PotentialParams, n_max: u32) -> Vec<EsLevel> {
    let mut out = Vec::new();
    for total in 0..=n_max {
        for n1 in (0..=total).rev() {
            for n2 in (0..=total - n1).rev() {
                let n3 = total - n1 - n2;
                let energy = &params.omega * int(12) * (int(total as i64) + &params.gamma + int(1));
                out.push(EsLevel { n: [n1, n2, n3], energy });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateSpec {
    pub params: PotentialParams,
    pub variant: Variant,
}

impl GroundStateSpec {
    pub fn new(params: PotentialParams, variant: Variant) -> Result<Self> {
        if !params.gamma.is_positive() {
            return Err(Error::InvalidInput(format!(
                "the ground state needs gamma > 0, got {}",
                params.gamma
            )));
        }
        Ok(GroundStateSpec { params, variant })
    }

    fn coupling(&self) -> f64 {
        match self.variant {
            Variant::Qes => self.params.as_f64().a,
            Variant::Es => 0.0,
        }
    }
}

/// `Ψ0 = τ1^{1/4} (4τ2 − τ1²)^{γ/2} exp(−ω τ1 − (A/2) τ1²)`, zero on the
/// boundary.
pub fn ground_state_value(spec: &GroundStateSpec, p: &TrianglePoint) -> Result<f64> {
    match p.membership() {
        Membership::Interior => {}
        Membership::Boundary => return Ok(0.0),
        Membership::Exterior => p.require_interior("ground state")?,
    }
    Ok(ground_state_at(&spec.params.as_f64(), spec.coupling(), p.rho()))
}

/// Unchecked evaluation at raw `ρ`, for finite-difference stencils.
pub fn ground_state_at(pf: &crate::operators::ParamsF64, a: f64, rho: [f64; 3]) -> f64 {
    let [x, y, z] = rho;
    let t1 = x + y + z;
    let t2 = x * y + x * z + y * z;
    let gap = 4.0 * t2 - t1 * t1;
    t1.powf(0.25) * gap.powf(pf.gamma / 2.0) * (-pf.omega * t1 - 0.5 * a * t1 * t1).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotentialKind {
    V0,
    VqesN,
    VrelQesN,
    Ves,
    Vharmonic,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 5] = [
        PotentialKind::V0,
        PotentialKind::VqesN,
        PotentialKind::VrelQesN,
        PotentialKind::Ves,
        PotentialKind::Vharmonic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            PotentialKind::V0 => "V0",
            PotentialKind::VqesN => "Vqes_N",
            PotentialKind::VrelQesN => "Vrel_qes_N",
            PotentialKind::Ves => "Ves",
            PotentialKind::Vharmonic => "Vharmonic",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PotentialKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown potential {:?}", s)))
    }
}

/// Evaluate one of the closed-form potentials at `p`.
///
/// `V0` and `Vqes_N` live in the distance picture (with the `9/(8τ1)` term);
/// `Vrel_qes_N` is the relative-motion picture, where that term is absorbed
/// and the singular coefficient becomes `(γ − 1/2)²`. `Vharmonic` is
/// `6ω²τ1`.
pub fn potential(kind: PotentialKind, params: &PotentialParams, p: &TrianglePoint) -> Result<f64> {
    let pf = params.as_f64();
    let (omega, gamma) = (pf.omega, pf.gamma);
    let [t1, t2, _] = p.tau();
    let gap = 4.0 * t2 - t1 * t1;
    let membership = p.membership();
    if membership == Membership::Exterior {
        p.require_interior("potential")?;
    }
    let singular_coeff = match kind {
        PotentialKind::V0 | PotentialKind::VqesN | PotentialKind::Ves => gamma * (gamma - 1.0),
        PotentialKind::VrelQesN => (gamma - 0.5).powi(2),
        PotentialKind::Vharmonic => 0.0,
    };
    let has_centrifugal = matches!(kind, PotentialKind::V0 | PotentialKind::VqesN | PotentialKind::Ves);
    if membership == Membership::Boundary && (singular_coeff != 0.0 || has_centrifugal) {
        return Err(Error::DivergentPotential(format!(
            "{} is singular on the boundary at {:?}",
            kind,
            p.rho()
        )));
    }
    let (a, n) = match kind {
        PotentialKind::V0 => (pf.a, 0.0),
        PotentialKind::VqesN | PotentialKind::VrelQesN => (pf.a, pf.n),
        PotentialKind::Ves | PotentialKind::Vharmonic => (0.0, 0.0),
    };
    let harmonic = 6.0 * omega * omega * t1;
    if kind == PotentialKind::Vharmonic {
        return Ok(harmonic);
    }
    let centrifugal = if has_centrifugal { 9.0 / (8.0 * t1) } else { 0.0 };
    let singular = if singular_coeff == 0.0 { 0.0 } else { singular_coeff * 2.0 * t1 / gap };
    let quartic = 6.0 * a * t1 * (2.0 * omega * t1 - 2.0 * gamma - 2.0 * n - 3.0) + 6.0 * a * a * t1.powi(3);
    Ok(centrifugal + singular + harmonic + quartic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::rat;

    fn pt(a: f64, b: f64, c: f64) -> TrianglePoint {
        TrianglePoint::from_rho([a, b, c]).unwrap()
    }

    #[test]
    fn es_ground_level_and_spacing() {
        let p = PotentialParams::ints(0, 1, 1, 0).unwrap();
        let levels = es_spectrum(&p, 3);
        assert_eq!(levels[0].energy, int(24));
        assert_eq!(levels[0].energy, ground_energy(&p));
        for n in 0..=3u32 {
            let count = levels.iter().filter(|l| l.n.iter().sum::<u32>() == n).count();
            assert_eq!(count as u32, (n + 1) * (n + 2) / 2);
        }
        let q = PotentialParams::new(0, rat(3, 2), rat(1, 4), int(0)).unwrap();
        let lv = es_spectrum(&q, 2);
        assert_eq!(&lv[1].energy - &lv[0].energy, int(18));
    }

    #[test]
    fn ground_state_examples() {
        let spec = GroundStateSpec::new(PotentialParams::ints(0, 1, 1, 0).unwrap(), Variant::Es).unwrap();
        let v = ground_state_value(&spec, &pt(1.0, 1.0, 1.0)).unwrap();
        let expected = 3f64.powf(0.25) * 3f64.sqrt() * (-3f64).exp();
        assert!((v - expected).abs() < 1e-15);
        assert_eq!(ground_state_value(&spec, &pt(1.0, 1.0, 4.0)).unwrap(), 0.0);
        assert!(ground_state_value(&spec, &pt(1.0, 1.0, 9.0)).is_err());
        assert!(GroundStateSpec::new(PotentialParams::ints(0, 1, 0, 0).unwrap(), Variant::Es).is_err());
    }

    #[test]
    fn potential_examples() {
        let p = PotentialParams::ints(0, 1, 1, 0).unwrap();
        let v0 = potential(PotentialKind::V0, &p, &pt(1.0, 1.0, 1.0)).unwrap();
        assert!((v0 - 18.375).abs() < 1e-13);
        let q = PotentialParams::new(3, rat(7, 5), rat(3, 2), rat(1, 2)).unwrap();
        let x = pt(0.9, 1.2, 1.4);
        let d = potential(PotentialKind::VqesN, &q, &x).unwrap() - potential(PotentialKind::V0, &q, &x).unwrap();
        assert!((d + 12.0 * 0.5 * 3.0 * 3.5).abs() < 1e-12);
        let q0 = q.with_level(int(0));
        assert_eq!(
            potential(PotentialKind::VqesN, &q0, &x).unwrap(),
            potential(PotentialKind::V0, &q0, &x).unwrap()
        );
        let es = q.exactly_solvable();
        assert!(
            (potential(PotentialKind::Ves, &q, &x).unwrap() - potential(PotentialKind::VqesN, &es, &x).unwrap()).abs()
                < 1e-12
        );
        let half = PotentialParams::new(0, int(1), rat(1, 2), int(0)).unwrap();
        let rel = potential(PotentialKind::VrelQesN, &half, &x).unwrap();
        let harm = potential(PotentialKind::Vharmonic, &half, &x).unwrap();
        assert!((rel - harm).abs() < 1e-13);
        assert!(potential(PotentialKind::VrelQesN, &half, &pt(1.0, 1.0, 4.0)).is_ok());
        assert!(matches!(
            potential(PotentialKind::V0, &half, &pt(1.0, 1.0, 4.0)),
            Err(Error::DivergentPotential(_))
        ));
    }

    #[test]
    fn harmonic_pictures() {
        let x = pt(0.8, 1.1, 1.3);
        let t1 = 3.2;
        for g in [0, 1] {
            let p = PotentialParams::ints(0, 2, g, 0).unwrap();
            let ves = potential(PotentialKind::Ves, &p, &x).unwrap();
            let harm = potential(PotentialKind::Vharmonic, &p, &x).unwrap();
            assert!((ves - harm - 9.0 / (8.0 * t1)).abs() < 1e-12);
        }
    }
}
