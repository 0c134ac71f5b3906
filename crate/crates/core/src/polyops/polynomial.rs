use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{falling, Chart, MultiIndex, Rational};

/// Sparse polynomial in the three variables of a chart with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(chart: Chart) -> Self {
        Polynomial {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(chart: Chart) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: Chart, c: Rational) -> Self {
        Self::monomial(chart, MultiIndex::ZERO, c)
    }

    pub fn monomial(chart: Chart, exps: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The i-th coordinate function of the chart.
    pub fn var(chart: Chart, i: usize) -> Self {
        Self::monomial(chart, MultiIndex::unit(i), Rational::one())
    }

    pub fn from_terms<I>(chart: Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == MultiIndex::ZERO)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&MultiIndex::ZERO))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Which variables actually occur.
    pub fn variables_used(&self) -> [bool; 3] {
        let mut used = [false; 3];
        for m in self.terms.keys() {
            for (i, u) in used.iter_mut().enumerate() {
                *u |= m.0[i] > 0;
            }
        }
        used
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.chart);
        }
        Polynomial {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: &MultiIndex) -> Self {
        Polynomial {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, v)| (m.add(shift), v.clone())).collect(),
        }
    }

    /// Divide every term by `x^shift`; the caller guarantees divisibility.
    pub(crate) fn unshift(&self, shift: &MultiIndex) -> Self {
        Polynomial {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.checked_sub(shift).expect("monomial divisibility"), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.chart);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        self.derivative_multi(&MultiIndex::unit(i))
    }

    /// Mixed partial derivative of order `alpha`.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, c) in &self.terms {
            if let Some(rest) = m.checked_sub(alpha) {
                let f: BigInt = (0..3).map(|i| falling(m.0[i], alpha.0[i])).product();
                out.terms.insert(rest, c * Rational::from_integer(f));
            }
        }
        out
    }

    /// Greatest monomial dividing every term (zero for the zero polynomial).
    pub fn monomial_content(&self) -> MultiIndex {
        let mut it = self.terms.keys();
        match it.next() {
            None => MultiIndex::ZERO,
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Multivariate division by `divisor` under graded-lex order. Returns
    /// `(quotient, remainder)` with no term of the remainder divisible by the
    /// leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.chart, divisor.chart, "chart mismatch in division");
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let (lm, lc) = (*lm, lc.clone());
        let mut quotient = Self::zero(self.chart);
        let mut remainder = Self::zero(self.chart);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if let Some(q) = m.checked_sub(&lm) {
                let factor = &c / &lc;
                quotient.add_term(q, factor.clone());
                for (dm, dc) in &divisor.terms {
                    work.add_term(dm.add(&q), -(dc * &factor));
                }
            } else {
                work.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        (quotient, remainder)
    }

    pub fn eval_f64(&self, x: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * monomial_f64(m, x))
            .sum()
    }

    /// Sum of |c_k x^k|, the scale used for cancellation-aware tests.
    pub fn abs_eval_f64(&self, x: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| (rational_to_f64(c) * monomial_f64(m, x)).abs())
            .sum()
    }

    pub fn eval_rational(&self, x: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `images[i]` for the i-th variable; the result lives in the
    /// chart of the images.
    pub fn substitute(&self, images: &[Polynomial; 3]) -> Polynomial {
        let target = images[0].chart;
        let mut powers: [Vec<Polynomial>; 3] = [
            vec![Polynomial::one(target)],
            vec![Polynomial::one(target)],
            vec![Polynomial::one(target)],
        ];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for i in 0..3 {
                let k = m.0[i] as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
            }
            out = &out + &t;
        }
        out
    }

    /// Sign of the leading coefficient.
    pub fn leading_sign(&self) -> i32 {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn monomial_f64(m: &MultiIndex, x: &[f64; 3]) -> f64 {
    x[0].powi(m.0[0] as i32) * x[1].powi(m.0[1] as i32) * x[2].powi(m.0[2] as i32)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in multiplication");
        let mut out = Polynomial::zero(self.chart);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.chart.variables();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let is_one = a.is_one();
            if !is_one || *m == MultiIndex::ZERO {
                write!(f, "{}", a)?;
            }
            let mut first = is_one;
            for i in 0..3 {
                if m.0[i] == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(vars[i])?;
                if m.0[i] > 1 {
                    write!(f, "^{}", m.0[i])?;
                }
            }
        }
        Ok(())
    }
}
