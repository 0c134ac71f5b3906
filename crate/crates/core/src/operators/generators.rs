use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyops::{int, Chart, DiffOperator, MultiIndex, Polynomial, Rational};

use super::laplacian::{mi, x};

/// Hidden algebras whose generators are realized as differential operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// Affine subalgebra of sl(4,R) acting on the rho chart.
    Sl4,
    /// The h(3) algebra acting on the tau chart.
    H3,
    /// gl(2,R) ⊕ R³ acting on polynomials in (τ1, τ2).
    Gl2R3,
    /// sl(2,R) acting on polynomials in τ1.
    Sl2,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::Sl4, Algebra::H3, Algebra::Gl2R3, Algebra::Sl2];

    pub fn tag(self) -> &'static str {
        match self {
            Algebra::Sl4 => "sl4",
            Algebra::H3 => "h3",
            Algebra::Gl2R3 => "gl2r3",
            Algebra::Sl2 => "sl2",
        }
    }

    pub fn chart(self) -> Chart {
        match self {
            Algebra::Sl4 => Chart::Rho,
            _ => Chart::Tau,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algebra::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algebra {:?}", s)))
    }
}

/// Named differential-operator realization of an algebra at level `n_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub algebra: Algebra,
    pub members: BTreeMap<String, DiffOperator>,
    pub n_level: Rational,
}

impl GeneratorSet {
    pub fn get(&self, id: &str) -> Result<&DiffOperator> {
        self.members
            .get(id)
            .ok_or_else(|| Error::InvalidInput(format!("{} has no generator {:?}", self.algebra, id)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Ids of the h(3) generators that preserve every space of the flag.
pub const H3_FIRST_CLASS: [&str; 22] = [
    "T0^(1)", "T0^(2)", "T0^(3)", "T1^(1)", "T2^(2)", "T3^(3)", "T1^(3)", "T11^(3)", "T111^(3)",
    "T1^(2)", "T11^(2)", "T2^(3)", "T12^(3)", "T2^(11)", "T22^(13)", "T222^(33)", "T3^(12)",
    "T3^(22)", "T13^(22)", "T3^(111)", "T33^(222)", "T0",
];

/// Ids of the h(3) raising generators.
pub const H3_SECOND_CLASS: [&str; 8] = [
    "T+_1", "T+_{2,-1}", "T+_{3,-2}", "T+_{22,-3}", "T+_2", "T+_{3,-11}", "T+_{3,-1}", "T+_3",
];

fn scalar(c: Chart, r: &Rational) -> DiffOperator {
    DiffOperator::multiplication(Polynomial::constant(c, r.clone()))
}

fn mono(c: Chart, exps: [u32; 3]) -> Polynomial {
    Polynomial::monomial(c, MultiIndex(exps), int(1))
}

fn t(c: Chart, coeff: [u32; 3], deriv: [u32; 3]) -> DiffOperator {
    DiffOperator::zero(c).with_poly_term(MultiIndex(deriv), mono(c, coeff))
}

fn sl4(n: &Rational) -> BTreeMap<String, DiffOperator> {
    let c = Chart::Rho;
    let mut m = BTreeMap::new();
    let mut euler = DiffOperator::zero(c);
    for i in 0..3 {
        m.insert(format!("J-_{}", i + 1), DiffOperator::partial(c, i));
        for j in 0..3 {
            m.insert(
                format!("J0_{}{}", i + 1, j + 1),
                DiffOperator::zero(c).with_poly_term(MultiIndex::unit(j), x(c, i)),
            );
        }
        euler = euler.with_poly_term(MultiIndex::unit(i), x(c, i));
    }
    let j0 = &euler - &scalar(c, n);
    for i in 0..3 {
        m.insert(format!("J+_{}", i + 1), j0.mul_poly(&x(c, i)));
    }
    m.insert("J0".to_string(), j0);
    m
}

fn h3(n: &Rational) -> Result<BTreeMap<String, DiffOperator>> {
    let c = Chart::Tau;
    let mut m = BTreeMap::new();
    let first: [(&str, [u32; 3], [u32; 3]); 21] = [
        ("T0^(1)", [0, 0, 0], [1, 0, 0]),
        ("T0^(2)", [0, 0, 0], [0, 1, 0]),
        ("T0^(3)", [0, 0, 0], [0, 0, 1]),
        ("T1^(1)", [1, 0, 0], [1, 0, 0]),
        ("T2^(2)", [0, 1, 0], [0, 1, 0]),
        ("T3^(3)", [0, 0, 1], [0, 0, 1]),
        ("T1^(3)", [1, 0, 0], [0, 0, 1]),
        ("T11^(3)", [2, 0, 0], [0, 0, 1]),
        ("T111^(3)", [3, 0, 0], [0, 0, 1]),
        ("T1^(2)", [1, 0, 0], [0, 1, 0]),
        ("T11^(2)", [2, 0, 0], [0, 1, 0]),
        ("T2^(3)", [0, 1, 0], [0, 0, 1]),
        ("T12^(3)", [1, 1, 0], [0, 0, 1]),
        ("T2^(11)", [0, 1, 0], [2, 0, 0]),
        ("T22^(13)", [0, 2, 0], [1, 0, 1]),
        ("T222^(33)", [0, 3, 0], [0, 0, 2]),
        ("T3^(12)", [0, 0, 1], [1, 1, 0]),
        ("T3^(22)", [0, 0, 1], [0, 2, 0]),
        ("T13^(22)", [1, 0, 1], [0, 2, 0]),
        ("T3^(111)", [0, 0, 1], [3, 0, 0]),
        ("T33^(222)", [0, 0, 2], [0, 3, 0]),
    ];
    for (id, coeff, deriv) in first {
        m.insert(id.to_string(), t(c, coeff, deriv));
    }
    let grading = DiffOperator::zero(c)
        .with_poly_term(mi(1, 0, 0), x(c, 0))
        .with_poly_term(mi(0, 1, 0), x(c, 1).scale(&int(2)))
        .with_poly_term(mi(0, 0, 1), x(c, 2).scale(&int(3)));
    let t0 = &grading - &scalar(c, n);
    let id = DiffOperator::identity(c);
    let t0p1 = &t0 + &id;
    let t0p2 = &t0p1 + &id;
    let t0_t0p1 = t0.compose(&t0p1)?;
    let cubic = t0_t0p1.compose(&t0p2)?;

    let second = [
        ("T+_1", t0.mul_poly(&x(c, 0))),
        ("T+_{2,-1}", t(c, [0, 1, 0], [1, 0, 0]).compose(&t0)?),
        ("T+_{3,-2}", t(c, [0, 0, 1], [0, 1, 0]).compose(&t0)?),
        ("T+_{22,-3}", t(c, [0, 2, 0], [0, 0, 1]).compose(&t0)?),
        ("T+_2", t0_t0p1.mul_poly(&x(c, 1))),
        ("T+_{3,-11}", t(c, [0, 0, 1], [2, 0, 0]).compose(&t0)?),
        ("T+_{3,-1}", t(c, [0, 0, 1], [1, 0, 0]).compose(&t0_t0p1)?),
        ("T+_3", cubic.mul_poly(&x(c, 2))),
    ];
    for (id, op) in second {
        m.insert(id.to_string(), op);
    }
    m.insert("T0".to_string(), t0);
    Ok(m)
}

fn gl2r3(n: &Rational) -> BTreeMap<String, DiffOperator> {
    let c = Chart::Tau;
    let third = n / int(3);
    let mut m = BTreeMap::new();
    m.insert("t1".to_string(), DiffOperator::partial(c, 0));
    m.insert("t2".to_string(), &t(c, [1, 0, 0], [1, 0, 0]) - &scalar(c, &third));
    m.insert(
        "t3".to_string(),
        &t(c, [0, 1, 0], [0, 1, 0]).scale(&int(2)) - &scalar(c, &third),
    );
    let t4 = &(&t(c, [2, 0, 0], [1, 0, 0]) + &t(c, [1, 1, 0], [0, 1, 0]).scale(&int(2)))
        - &DiffOperator::multiplication(x(c, 0).scale(n));
    m.insert("t4".to_string(), t4);
    for i in 0..3u32 {
        m.insert(format!("r{}", i), t(c, [i, 0, 0], [0, 1, 0]));
    }
    m
}

fn sl2(n: &Rational) -> BTreeMap<String, DiffOperator> {
    let c = Chart::Tau;
    let mut m = BTreeMap::new();
    m.insert(
        "J+".to_string(),
        &t(c, [2, 0, 0], [1, 0, 0]) - &DiffOperator::multiplication(x(c, 0).scale(n)),
    );
    m.insert(
        "J0".to_string(),
        &t(c, [1, 0, 0], [1, 0, 0]).scale(&int(2)) - &scalar(c, n),
    );
    m.insert("J-".to_string(), DiffOperator::partial(c, 0));
    m
}

/// Build every named generator of `algebra` at level `n_level`.
pub fn build_generators(algebra: Algebra, n_level: &Rational) -> Result<GeneratorSet> {
    if n_level < &int(0) {
        return Err(Error::InvalidInput(format!("level must be non-negative, got {}", n_level)));
    }
    let members = match algebra {
        Algebra::Sl4 => sl4(n_level),
        Algebra::H3 => h3(n_level)?,
        Algebra::Gl2R3 => gl2r3(n_level),
        Algebra::Sl2 => sl2(n_level),
    };
    Ok(GeneratorSet {
        algebra,
        members,
        n_level: n_level.clone(),
    })
}
