use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::HamiltonianChart;
use crate::polyops::{Chart, MultiIndex, Polynomial};

/// The four polynomial spaces: all of degree ≤ N in ρ, and the weighted
/// τ-spaces `p1 + 2p2 + 3p3 ≤ N`, `p1 + 2p2 ≤ N`, `p1 ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    P3,
    P123,
    P12,
    P1,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::P3, Space::P123, Space::P12, Space::P1];

    pub fn tag(self) -> &'static str {
        match self {
            Space::P3 => "p3",
            Space::P123 => "p123",
            Space::P12 => "p12",
            Space::P1 => "p1",
        }
    }

    pub fn chart(self) -> Chart {
        match self {
            Space::P3 => Chart::Rho,
            _ => Chart::Tau,
        }
    }

    /// The Hamiltonian chart whose operator acts on this space.
    pub fn hamiltonian_chart(self) -> HamiltonianChart {
        match self {
            Space::P3 => HamiltonianChart::Rho,
            Space::P123 => HamiltonianChart::Tau,
            Space::P12 => HamiltonianChart::Tau12,
            Space::P1 => HamiltonianChart::Tau1,
        }
    }

    /// Grade of a monomial: total degree in ρ, weighted degree in τ.
    pub fn grade(self, alpha: &MultiIndex) -> u32 {
        match self {
            Space::P3 => alpha.degree(),
            _ => alpha.weighted_degree(),
        }
    }

    fn admits(self, alpha: &MultiIndex) -> bool {
        match self {
            Space::P3 | Space::P123 => true,
            Space::P12 => alpha.0[2] == 0,
            Space::P1 => alpha.0[1] == 0 && alpha.0[2] == 0,
        }
    }

    /// Closed-form dimension at level `n`.
    pub fn dimension(self, n: u32) -> usize {
        let n = n as usize;
        match self {
            Space::P3 => (n + 1) * (n + 2) * (n + 3) / 6,
            Space::P123 => (0..=n / 3).map(|p3| {
                let m = n - 3 * p3;
                (0..=m / 2).map(|p2| m - 2 * p2 + 1).sum::<usize>()
            }).sum(),
            Space::P12 => (0..=n / 2).map(|p2| n - 2 * p2 + 1).sum(),
            Space::P1 => n + 1,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Space::ALL
            .into_iter()
            .find(|sp| sp.tag() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidInput(format!("unknown space {:?}", s)))
    }
}

/// An ordered monomial basis: ascending grade, then graded-lex within a
/// grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    pub space: Space,
    pub n_level: u32,
    pub monomials: Vec<MultiIndex>,
}

impl BasisSpec {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn chart(&self) -> Chart {
        self.space.chart()
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.monomials.iter().position(|m| m == alpha)
    }

    pub fn polynomial(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.chart(), self.monomials[i], crate::polyops::int(1))
    }

    pub fn grades(&self) -> Vec<u32> {
        self.monomials.iter().map(|m| self.space.grade(m)).collect()
    }
}

pub fn enumerate_basis(space: Space, n: u32) -> BasisSpec {
    let mut monomials = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for c in 0..=n {
                let alpha = MultiIndex::new(a, b, c);
                if space.admits(&alpha) && space.grade(&alpha) <= n {
                    monomials.push(alpha);
                }
            }
        }
    }
    monomials.sort_by(|x, y| space.grade(x).cmp(&space.grade(y)).then(x.cmp(y)));
    BasisSpec {
        space,
        n_level: n,
        monomials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(enumerate_basis(Space::P3, 2).len(), 10);
        assert_eq!(enumerate_basis(Space::P1, 0).monomials, vec![MultiIndex::ZERO]);
        let p123 = enumerate_basis(Space::P123, 3);
        assert_eq!(p123.len(), 7);
        let expected = [
            MultiIndex::new(0, 0, 0),
            MultiIndex::new(1, 0, 0),
            MultiIndex::new(2, 0, 0),
            MultiIndex::new(3, 0, 0),
            MultiIndex::new(0, 1, 0),
            MultiIndex::new(1, 1, 0),
            MultiIndex::new(0, 0, 1),
        ];
        for m in expected {
            assert!(p123.position(&m).is_some(), "{:?}", m);
        }
        for space in Space::ALL {
            for n in 0..9 {
                assert_eq!(enumerate_basis(space, n).len(), space.dimension(n), "{} {}", space, n);
            }
        }
    }

    #[test]
    fn ordering_is_by_grade() {
        let b = enumerate_basis(Space::P123, 5);
        let g = b.grades();
        assert!(g.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(b.monomials[0], MultiIndex::ZERO);
    }
}
