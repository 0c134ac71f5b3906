use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyops::{int, to_f64, Rational};

/// Model constants: frequency `omega`, singular coupling `gamma`, quartic
/// coupling `a_coupling` and the level `n_level` of the invariant space.
///
/// `n_level` is kept rational so that a non-integer level can be
/// substituted formally; every physical use asks for [`Self::n_integer`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PotentialParams {
    pub omega: Rational,
    pub gamma: Rational,
    pub a_coupling: Rational,
    pub n_level: Rational,
}

impl PotentialParams {
    pub fn new(n_level: u32, omega: Rational, gamma: Rational, a_coupling: Rational) -> Result<Self> {
        Self::with_formal_level(Rational::from_integer(n_level.into()), omega, gamma, a_coupling)
    }

    /// Same as [`Self::new`] but the level may be any non-negative rational.
    pub fn with_formal_level(
        n_level: Rational,
        omega: Rational,
        gamma: Rational,
        a_coupling: Rational,
    ) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::InvalidInput(format!("omega must be positive, got {}", omega)));
        }
        if a_coupling.is_negative() {
            return Err(Error::InvalidInput(format!("A must be non-negative, got {}", a_coupling)));
        }
        if n_level.is_negative() {
            return Err(Error::InvalidInput(format!("N must be non-negative, got {}", n_level)));
        }
        Ok(PotentialParams {
            omega,
            gamma,
            a_coupling,
            n_level,
        })
    }

    /// Small-integer convenience constructor.
    pub fn ints(n: u32, omega: i64, gamma: i64, a: i64) -> Result<Self> {
        Self::new(n, int(omega), int(gamma), int(a))
    }

    pub fn n_integer(&self) -> Option<u32> {
        if self.n_level.is_integer() {
            self.n_level.to_integer().to_u32()
        } else {
            None
        }
    }

    /// Copy with the quartic coupling switched off.
    pub fn exactly_solvable(&self) -> Self {
        PotentialParams {
            a_coupling: Rational::zero(),
            ..self.clone()
        }
    }

    pub fn with_level(&self, n_level: Rational) -> Self {
        PotentialParams {
            n_level,
            ..self.clone()
        }
    }

    pub fn as_f64(&self) -> ParamsF64 {
        let f = |r: &Rational| to_f64(r);
        ParamsF64 {
            omega: f(&self.omega),
            gamma: f(&self.gamma),
            a: f(&self.a_coupling),
            n: f(&self.n_level),
        }
    }
}

impl Default for PotentialParams {
    fn default() -> Self {
        PotentialParams {
            omega: int(1),
            gamma: int(1),
            a_coupling: int(1),
            n_level: int(2),
        }
    }
}

impl fmt::Display for PotentialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} omega={} gamma={} A={}",
            self.n_level, self.omega, self.gamma, self.a_coupling
        )
    }
}

/// Floating-point view of the parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsF64 {
    pub omega: f64,
    pub gamma: f64,
    pub a: f64,
    pub n: f64,
}

/// Particle masses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MassTriple {
    pub m1: Rational,
    pub m2: Rational,
    pub m3: Rational,
}

impl MassTriple {
    pub fn new(m1: Rational, m2: Rational, m3: Rational) -> Result<Self> {
        for m in [&m1, &m2, &m3] {
            if !m.is_positive() {
                return Err(Error::InvalidInput(format!("masses must be positive, got {}", m)));
            }
        }
        Ok(MassTriple { m1, m2, m3 })
    }

    pub fn equal() -> Self {
        MassTriple {
            m1: int(1),
            m2: int(1),
            m3: int(1),
        }
    }

    pub fn as_array(&self) -> [&Rational; 3] {
        [&self.m1, &self.m2, &self.m3]
    }

    pub fn total(&self) -> Rational {
        &self.m1 + &self.m2 + &self.m3
    }

    /// `1/μ_ij = (m_i + m_j)/(m_i m_j)` for the pairs (12, 13, 23).
    pub fn inverse_reduced(&self) -> [Rational; 3] {
        let pair = |a: &Rational, b: &Rational| (a + b) / (a * b);
        [
            pair(&self.m1, &self.m2),
            pair(&self.m1, &self.m3),
            pair(&self.m2, &self.m3),
        ]
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [
            to_f64(&self.m1),
            to_f64(&self.m2),
            to_f64(&self.m3),
        ]
    }
}

impl fmt::Display for MassTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.m1, self.m2, self.m3)
    }
}

/// Parse `"3"`, `"-2/5"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {:?}", s));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", ip, fp);
    let mut value = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - fp.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    for _ in 0..shift.unsigned_abs() {
        if shift > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::rat;

    #[test]
    fn validation() {
        assert!(PotentialParams::ints(1, 0, 1, 0).is_err());
        assert!(PotentialParams::ints(1, 1, 1, -1).is_err());
        assert!(PotentialParams::ints(1, 1, -3, 0).is_ok());
        assert!(MassTriple::new(int(1), int(0), int(2)).is_err());
    }

    #[test]
    fn formal_level() {
        let p = PotentialParams::with_formal_level(rat(1, 2), int(1), int(1), int(1)).unwrap();
        assert_eq!(p.n_integer(), None);
        assert_eq!(PotentialParams::ints(3, 1, 1, 1).unwrap().n_integer(), Some(3));
    }

    #[test]
    fn reduced_masses() {
        let m = MassTriple::new(int(1), int(2), int(3)).unwrap();
        assert_eq!(m.inverse_reduced(), [rat(3, 2), rat(4, 3), rat(5, 6)]);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/6").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("2e-1").unwrap(), rat(1, 5));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
