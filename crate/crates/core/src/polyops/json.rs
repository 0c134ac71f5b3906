//! Canonical JSON form of polynomials and operators.
//!
//! A polynomial is `{"chart": "rho", "terms": [{"d": [a,b,c], "num": "3",
//! "den": "2"}, ...]}` with decimal big integers. An operator uses the same
//! envelope, but each term's `num` and `den` hold the polynomial term lists
//! of its coefficient. Terms are listed in ascending graded-lex order.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::diffop::DiffOperator;
use super::monomial::{Chart, MultiIndex, Rational};
use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarTerm {
    pub d: [u32; 3],
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub chart: String,
    pub terms: Vec<ScalarTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub d: [u32; 3],
    pub num: Vec<ScalarTerm>,
    pub den: Vec<ScalarTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub chart: String,
    pub terms: Vec<OperatorTerm>,
}

fn scalar_terms(p: &Polynomial) -> Vec<ScalarTerm> {
    p.terms()
        .iter()
        .map(|(m, c)| ScalarTerm {
            d: m.0,
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn parse_chart(tag: &str) -> Result<Chart> {
    Chart::from_tag(tag).ok_or_else(|| Error::InvalidInput(format!("unknown chart tag {:?}", tag)))
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::InvalidInput(format!("not a decimal integer: {:?}", s)))
}

fn polynomial_from_terms(chart: Chart, terms: &[ScalarTerm]) -> Result<Polynomial> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let den = parse_int(&t.den)?;
        if den == BigInt::from(0) {
            return Err(Error::InvalidInput("zero denominator in coefficient".into()));
        }
        out.push((MultiIndex(t.d), Rational::new(parse_int(&t.num)?, den)));
    }
    Ok(Polynomial::from_terms(chart, out))
}

impl Polynomial {
    pub fn to_json_value(&self) -> PolynomialJson {
        PolynomialJson {
            chart: self.chart().tag().to_string(),
            terms: scalar_terms(self),
        }
    }

    pub fn from_json_value(v: &PolynomialJson) -> Result<Self> {
        polynomial_from_terms(parse_chart(&v.chart)?, &v.terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

impl DiffOperator {
    pub fn to_json_value(&self) -> OperatorJson {
        OperatorJson {
            chart: self.chart().tag().to_string(),
            terms: self
                .terms()
                .iter()
                .map(|(a, c)| OperatorTerm {
                    d: a.0,
                    num: scalar_terms(c.numerator()),
                    den: scalar_terms(c.denominator()),
                })
                .collect(),
        }
    }

    pub fn from_json_value(v: &OperatorJson) -> Result<Self> {
        let chart = parse_chart(&v.chart)?;
        let mut terms = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            let num = polynomial_from_terms(chart, &t.num)?;
            let den = polynomial_from_terms(chart, &t.den)?;
            terms.push((MultiIndex(t.d), RationalFunction::new(num, den)?));
        }
        Ok(DiffOperator::from_terms(chart, terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("operator serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}
