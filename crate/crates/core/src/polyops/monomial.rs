use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Exact scalar coefficient. `BigRational` keeps itself in lowest terms with
/// a positive denominator, and zero is stored as 0/1.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Coordinate chart of a three-variable expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    /// Relative distances (r12, r13, r23).
    R,
    /// Squared relative distances (rho12, rho13, rho23).
    Rho,
    /// Elementary symmetric polynomials (tau1, tau2, tau3) of the rho's.
    Tau,
    /// Separating coordinates (w1, w2, w3).
    W,
}

impl Chart {
    pub fn variables(self) -> [&'static str; 3] {
        match self {
            Chart::R => ["r12", "r13", "r23"],
            Chart::Rho => ["rho12", "rho13", "rho23"],
            Chart::Tau => ["tau1", "tau2", "tau3"],
            Chart::W => ["w1", "w2", "w3"],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Chart::R => "r",
            Chart::Rho => "rho",
            Chart::Tau => "tau",
            Chart::W => "w",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Chart> {
        match tag {
            "r" => Some(Chart::R),
            "rho" => Some(Chart::Rho),
            "tau" => Some(Chart::Tau),
            "w" => Some(Chart::W),
            _ => None,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Exponent (or derivative-order) triple, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(pub [u32; 3]);

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        MultiIndex([a, b, c])
    }

    pub fn unit(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// p1 + 2 p2 + 3 p3, the grading of the tau chart.
    pub fn weighted_degree(&self) -> u32 {
        self.0[0] + 2 * self.0[1] + 3 * self.0[2]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        Some(MultiIndex([
            self.0[0].checked_sub(other.0[0])?,
            self.0[1].checked_sub(other.0[1])?,
            self.0[2].checked_sub(other.0[2])?,
        ]))
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    pub fn meet(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }

    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    /// Product of componentwise binomials C(self, sub).
    pub fn binomial(&self, sub: &MultiIndex) -> BigInt {
        (0..3).map(|i| binomial(self.0[i], sub.0[i])).product()
    }

    /// Every multi-index componentwise below `self`, including both ends.
    pub fn sub_indices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        let [a, b, c] = self.0;
        (0..=a).flat_map(move |i| (0..=b).flat_map(move |j| (0..=c).map(move |k| MultiIndex([i, j, k]))))
    }

    /// Lexicographic comparison, first variable most significant.
    pub fn lex_cmp(&self, other: &MultiIndex) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial n (n-1) ... (n-k+1).
pub(crate) fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = MultiIndex::new(0, 0, 2);
        let b = MultiIndex::new(1, 0, 0);
        let c = MultiIndex::new(1, 1, 0);
        let d = MultiIndex::new(2, 0, 0);
        assert!(b < a);
        assert!(a < c);
        assert!(c < d);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(MultiIndex::new(2, 1, 3).factorial(), BigInt::from(12));
    }

    #[test]
    fn sub_indices_count() {
        assert_eq!(MultiIndex::new(1, 2, 0).sub_indices().count(), 6);
    }
}
