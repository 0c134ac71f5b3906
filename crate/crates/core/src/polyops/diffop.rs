use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::monomial::{Chart, MultiIndex, Rational};
use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Linear differential operator `Σ c_α(x) ∂^α` over one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    chart: Chart,
    terms: BTreeMap<MultiIndex, RationalFunction>,
}

impl DiffOperator {
    pub fn zero(chart: Chart) -> Self {
        DiffOperator {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(chart: Chart) -> Self {
        Self::multiplication(Polynomial::one(chart))
    }

    /// Multiplication by a polynomial, an order-zero operator.
    pub fn multiplication(p: Polynomial) -> Self {
        let chart = p.chart();
        Self::zero(chart).with_term(MultiIndex::ZERO, p.into())
    }

    /// The pure derivative `∂^alpha`.
    pub fn derivative(chart: Chart, alpha: MultiIndex) -> Self {
        Self::zero(chart).with_term(alpha, RationalFunction::one(chart))
    }

    /// `∂_i`.
    pub fn partial(chart: Chart, i: usize) -> Self {
        Self::derivative(chart, MultiIndex::unit(i))
    }

    pub fn from_terms<I>(chart: Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, RationalFunction)>,
    {
        let mut op = Self::zero(chart);
        for (a, c) in terms {
            op.add_term(a, c);
        }
        op
    }

    /// Builder form of `add_term`.
    pub fn with_term(mut self, alpha: MultiIndex, c: RationalFunction) -> Self {
        self.add_term(alpha, c);
        self
    }

    pub fn with_poly_term(self, alpha: MultiIndex, p: Polynomial) -> Self {
        self.with_term(alpha, p.into())
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: RationalFunction) {
        assert_eq!(c.chart(), self.chart, "coefficient chart mismatch");
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&alpha) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(alpha, sum);
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> RationalFunction {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.chart))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RationalFunction::is_polynomial)
    }

    /// Keep only the terms whose derivative order lies in `orders`.
    pub fn restrict_orders(&self, orders: std::ops::RangeInclusive<u32>) -> Self {
        DiffOperator {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| orders.contains(&a.degree()))
                .map(|(a, c)| (*a, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.chart, self.terms.iter().map(|(a, v)| (*a, v.scale(c))))
    }

    /// Left multiplication by a polynomial.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::from_terms(self.chart, self.terms.iter().map(|(a, v)| (*a, v.mul_poly(p))))
    }

    pub fn with_chart(self, chart: Chart) -> Self {
        DiffOperator {
            chart,
            terms: self
                .terms
                .into_iter()
                .map(|(a, c)| (a, c.with_chart(chart)))
                .collect(),
        }
    }

    fn check_chart(&self, found: Chart) -> Result<()> {
        if self.chart != found {
            return Err(Error::ChartMismatch {
                expected: self.chart,
                found,
            });
        }
        Ok(())
    }

    pub fn apply(&self, f: &Polynomial) -> Result<RationalFunction> {
        self.check_chart(f.chart())?;
        let mut acc = RationalFunction::zero(self.chart);
        for (alpha, c) in &self.terms {
            let d = f.derivative_multi(alpha);
            if !d.is_zero() {
                acc = &acc + &c.mul_poly(&d);
            }
        }
        Ok(acc)
    }

    /// Apply and insist on a polynomial result.
    pub fn apply_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        let r = self.apply(f)?;
        r.as_polynomial()
            .ok_or_else(|| Error::InvalidInput(format!("image {} is not a polynomial", r)))
    }

    /// Apply to a rational function.
    pub fn apply_rational(&self, f: &RationalFunction) -> Result<RationalFunction> {
        self.check_chart(f.chart())?;
        let mut acc = RationalFunction::zero(self.chart);
        for (alpha, c) in &self.terms {
            acc = &acc + &(c * &f.derivative_multi(alpha));
        }
        Ok(acc)
    }

    /// Operator product `self ∘ other`, expanded by the Leibniz rule.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.check_chart(other.chart)?;
        if !self.is_polynomial() {
            let mut blocked = [false; 3];
            for c in self.terms.values() {
                let v = c.denominator_variables();
                for i in 0..3 {
                    blocked[i] |= v[i];
                }
            }
            for c in other.terms.values() {
                let v = c.variables_used();
                if (0..3).any(|i| blocked[i] && v[i]) {
                    return Err(Error::CompositionOutsidePolynomialSubring(format!(
                        "left factor has denominators in variables {:?} and the right factor's coefficient {} depends on them",
                        self.chart
                            .variables()
                            .iter()
                            .zip(blocked)
                            .filter(|(_, b)| *b)
                            .map(|(n, _)| *n)
                            .collect::<Vec<_>>(),
                        c
                    )));
                }
            }
        }
        let mut out = DiffOperator::zero(self.chart);
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for gamma in alpha.sub_indices() {
                    let db = b.derivative_multi(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let binom = Rational::from_integer(alpha.binomial(&gamma));
                    let rest = alpha.checked_sub(&gamma).unwrap().add(beta);
                    out.add_term(rest, (a * &db).scale(&binom));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &DiffOperator) -> Result<DiffOperator> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    /// `self ∘ self ∘ ... ∘ self`, `k` factors.
    pub fn power(&self, k: u32) -> Result<DiffOperator> {
        let mut acc = DiffOperator::identity(self.chart);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Substitute polynomials in the coefficients only.
    pub fn map_coefficients<F>(&self, mut f: F) -> Result<DiffOperator>
    where
        F: FnMut(&RationalFunction) -> Result<RationalFunction>,
    {
        let mut out = DiffOperator::zero(self.chart);
        for (a, c) in &self.terms {
            out.add_term(*a, f(c)?);
        }
        Ok(out)
    }
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in operator sum");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(*a, c.clone());
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &(-rhs)
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        DiffOperator {
            chart: self.chart,
            terms: self.terms.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: DiffOperator) -> DiffOperator {
        &self + &rhs
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        &self - &rhs
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        -&self
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.chart.variables();
        for (k, (alpha, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let one = c.as_polynomial().is_some_and(|p| p == Polynomial::one(self.chart));
            if !one || *alpha == MultiIndex::ZERO {
                write!(f, "({})", c)?;
            }
            for i in 0..3 {
                match alpha.0[i] {
                    0 => {}
                    1 => write!(f, "d[{}]", vars[i])?,
                    n => write!(f, "d[{}]^{}", vars[i], n)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
fn term(alpha: MultiIndex, coeff: Polynomial) -> DiffOperator {
    DiffOperator::zero(coeff.chart()).with_poly_term(alpha, coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::monomial::int;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(Chart::Rho, i)
    }

    #[test]
    fn heisenberg_relation() {
        let d1 = DiffOperator::partial(Chart::Rho, 0);
        let m = DiffOperator::multiplication(x(0));
        let prod = d1.compose(&m).unwrap();
        let expected = &DiffOperator::zero(Chart::Rho).with_poly_term(MultiIndex::unit(0), x(0))
            + &DiffOperator::identity(Chart::Rho);
        assert_eq!(prod, expected);
        assert_eq!(d1.commutator(&m).unwrap(), DiffOperator::identity(Chart::Rho));
    }

    #[test]
    fn partials_commute() {
        let a = DiffOperator::partial(Chart::Rho, 0);
        let b = DiffOperator::partial(Chart::Rho, 1);
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn euler_times_derivative() {
        let e = term(MultiIndex::unit(0), x(0));
        let d = DiffOperator::partial(Chart::Rho, 0);
        let prod = e.compose(&d).unwrap();
        assert_eq!(prod, term(MultiIndex::new(2, 0, 0), x(0)));
        assert_eq!(prod.order(), 2);
    }

    #[test]
    fn apply_linear_form() {
        let s = &(&x(0) + &x(1)) + &x(2);
        let d = DiffOperator::partial(Chart::Rho, 0);
        assert_eq!(d.apply_poly(&s).unwrap(), Polynomial::one(Chart::Rho));
    }

    #[test]
    fn chart_mismatch_rejected() {
        let d = DiffOperator::partial(Chart::Tau, 0);
        assert!(matches!(d.apply(&x(0)), Err(Error::ChartMismatch { .. })));
    }

    #[test]
    fn rational_left_factor_guard() {
        let inv = RationalFunction::new(Polynomial::one(Chart::Rho), x(0)).unwrap();
        let a = DiffOperator::zero(Chart::Rho).with_term(MultiIndex::unit(0), inv);
        let free = term(MultiIndex::unit(1), x(1));
        assert!(a.compose(&free).is_ok());
        let bad = term(MultiIndex::unit(1), x(0));
        assert!(matches!(
            a.compose(&bad),
            Err(Error::CompositionOutsidePolynomialSubring(_))
        ));
    }

    #[test]
    fn scaling_and_negation() {
        let d = DiffOperator::partial(Chart::Rho, 2);
        assert!((&d.scale(&int(2)) - &(&d + &d)).is_zero());
        assert!((&d + &(-&d)).is_zero());
    }
}
