use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Chart, MultiIndex, Rational};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Quotient of two polynomials over the same chart.
///
/// Normalization cancels the common monomial factor, strips rational content
/// into the numerator, collapses exact divisions and makes the denominator's
/// leading coefficient positive. Equality is decided by cross-multiplication
/// so it does not depend on how far the cancellation got.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.chart() != den.chart() {
            return Err(Error::ChartMismatch {
                expected: num.chart(),
                found: den.chart(),
            });
        }
        if den.is_zero() {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let chart = p.chart();
        RationalFunction {
            num: p,
            den: Polynomial::one(chart),
        }
    }

    pub fn constant(chart: Chart, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(chart, c))
    }

    pub fn zero(chart: Chart) -> Self {
        Self::from_poly(Polynomial::zero(chart))
    }

    pub fn one(chart: Chart) -> Self {
        Self::from_poly(Polynomial::one(chart))
    }

    fn normalized(mut num: Polynomial, mut den: Polynomial) -> Self {
        let chart = num.chart();
        if num.is_zero() {
            return Self::zero(chart);
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&(Rational::one() / c)));
        }
        let common = num.monomial_content().meet(&den.monomial_content());
        if common != MultiIndex::ZERO {
            num = num.unshift(&common);
            den = den.unshift(&common);
        }
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            return Self::from_poly(q);
        }
        let (q, r) = den.div_rem(&num);
        if r.is_zero() {
            num = Polynomial::one(chart);
            den = q;
        }
        let c = den.content() * Rational::from_integer(den.leading_sign().into());
        let inv = Rational::one() / &c;
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn chart(&self) -> Chart {
        self.num.chart()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&(Rational::one() / c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn derivative(&self, i: usize) -> Self {
        if self.is_polynomial() {
            return Self::normalized(self.num.derivative(i), self.den.clone());
        }
        let num = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            for _ in 0..alpha.0[i] {
                out = out.derivative(i);
            }
        }
        out
    }

    /// Which variables occur in the denominator.
    pub fn denominator_variables(&self) -> [bool; 3] {
        self.den.variables_used()
    }

    pub fn variables_used(&self) -> [bool; 3] {
        let a = self.num.variables_used();
        let b = self.den.variables_used();
        [a[0] || b[0], a[1] || b[1], a[2] || b[2]]
    }

    pub fn eval_f64(&self, x: &[f64; 3]) -> Result<f64> {
        let d = self.den.eval_f64(x);
        let scale = self.den.abs_eval_f64(x);
        if d == 0.0 || d.abs() <= 1e-14 * scale {
            return Err(Error::SingularPoint(format!(
                "denominator {} vanishes at {:?}",
                self.den, x
            )));
        }
        Ok(self.num.eval_f64(x) / d)
    }

    pub fn eval_rational(&self, x: &[Rational; 3]) -> Result<Rational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::SingularPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        Ok(self.num.eval_rational(x) / d)
    }

    /// Substitute polynomials for the variables of numerator and denominator.
    pub fn substitute(&self, images: &[Polynomial; 3]) -> Result<Self> {
        Self::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn with_chart(self, chart: Chart) -> Self {
        RationalFunction {
            num: self.num.with_chart(chart),
            den: self.den.with_chart(chart),
        }
    }

}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.chart() != other.chart() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_polynomial() {
            return write!(f, "{}", p);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}
