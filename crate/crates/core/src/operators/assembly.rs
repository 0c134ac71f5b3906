use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyops::{int, Chart, DiffOperator, Polynomial, Rational};

use super::generators::{build_generators, Algebra, GeneratorSet};
use super::hamiltonian::{build_h_es, build_h_qes, delta_v, HamiltonianChart};
use super::params::PotentialParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Qes,
    Es,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Qes => "qes",
            Variant::Es => "es",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qes" => Ok(Variant::Qes),
            "es" => Ok(Variant::Es),
            _ => Err(Error::InvalidInput(format!("unknown variant {:?}", s))),
        }
    }
}

fn scalar(c: Chart, r: Rational) -> DiffOperator {
    DiffOperator::multiplication(Polynomial::constant(c, r))
}

struct Gens<'a>(&'a GeneratorSet);

impl Gens<'_> {
    fn g(&self, id: &str) -> Result<&DiffOperator> {
        self.0.get(id)
    }

    fn prod(&self, a: &str, b: &str) -> Result<DiffOperator> {
        self.g(a)?.compose(self.g(b)?)
    }
}

/// Radial Laplacian written through the sl(4) generators.
pub fn delta_r_from_sl4(gens: &GeneratorSet) -> Result<DiffOperator> {
    let g = Gens(gens);
    let mut op = DiffOperator::zero(Chart::Rho);
    for i in 1..=3 {
        op = &op + &g.prod(&format!("J0_{i}{i}"), &format!("J-_{i}"))?.scale(&int(4));
        op = &op + &g.g(&format!("J-_{i}"))?.scale(&int(6));
    }
    let mut cross = DiffOperator::zero(Chart::Rho);
    for (diag, lowers) in [("J0_11", ["J-_2", "J-_3"]), ("J0_22", ["J-_1", "J-_3"]), ("J0_33", ["J-_1", "J-_2"])] {
        for l in lowers {
            cross = &cross + &g.prod(diag, l)?;
        }
    }
    for (a, b) in [("J0_31", "J-_2"), ("J0_23", "J-_1"), ("J0_12", "J-_3")] {
        cross = &cross - &g.prod(a, b)?;
    }
    Ok(&op + &cross.scale(&int(2)))
}

/// The symmetry operator written through the sl(4) generators.
pub fn l1_from_sl4(gens: &GeneratorSet) -> Result<DiffOperator> {
    let g = Gens(gens);
    let mut op = DiffOperator::zero(Chart::Rho);
    for (plus, minus) in [("J0_21", "J0_31"), ("J0_32", "J0_12"), ("J0_13", "J0_23")] {
        op = &op + &(g.g(plus)? - g.g(minus)?);
    }
    Ok(op)
}

fn sl4_hamiltonian(p: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    let gens = build_generators(Algebra::Sl4, &p.n_level)?;
    let g = Gens(&gens);
    let one_minus_2g = int(1) - &p.gamma * int(2);
    let mut op = -delta_r_from_sl4(&gens)?;
    for i in 1..=3 {
        op = &op + &g.g(&format!("J-_{i}"))?.scale(&(&one_minus_2g * int(2)));
        op = &op + &g.g(&format!("J0_{i}{i}"))?.scale(&(&p.omega * int(12)));
        if variant == Variant::Qes {
            op = &op + &g.g(&format!("J+_{i}"))?.scale(&(&p.a_coupling * int(12)));
        }
    }
    Ok(op)
}

fn h3_hamiltonian(p: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    let level = match variant {
        Variant::Qes => p.n_level.clone(),
        Variant::Es => int(0),
    };
    let gens = build_generators(Algebra::H3, &level)?;
    let g = Gens(&gens);
    let c = Chart::Tau;
    let lin = |pairs: &[(i64, &str)]| -> Result<DiffOperator> {
        let mut acc = DiffOperator::zero(c);
        for (k, id) in pairs {
            acc = &acc + &g.g(id)?.scale(&int(*k));
        }
        Ok(acc)
    };
    let mut bracket = g.prod("T1^(1)", "T0^(1)")?.scale(&int(6));
    bracket = &bracket + &lin(&[(7, "T2^(2)"), (-1, "T11^(2)")])?.compose(g.g("T1^(2)")?)?.scale(&int(2));
    bracket = &bracket + &g.g("T3^(3)")?.compose(&lin(&[(6, "T2^(3)"), (-1, "T11^(3)")])?)?.scale(&int(2));
    bracket = &bracket + &g.g("T0^(1)")?.compose(&lin(&[(24, "T2^(2)"), (36, "T3^(3)")])?)?;
    let mixed = &(&g.prod("T2^(3)", "T2^(2)")?.scale(&int(4)) + &g.prod("T1^(2)", "T3^(3)")?.scale(&int(9)))
        - &g.prod("T11^(3)", "T2^(2)")?;
    bracket = &bracket + &mixed.scale(&int(2));
    bracket = &bracket + &lin(&[(9, "T0^(1)"), (7, "T1^(2)")])?.scale(&int(2));
    bracket = &bracket + &lin(&[(7, "T2^(3)"), (-1, "T11^(3)")])?.scale(&int(2));

    let one_minus_2g = int(1) - &p.gamma * int(2);
    let mut op = -bracket;
    op = &op + &lin(&[(1, "T2^(3)"), (2, "T1^(2)"), (3, "T0^(1)")])?.scale(&(one_minus_2g * int(2)));
    let grading = g.g("T0")? + &scalar(c, level.clone());
    op = &op + &grading.scale(&(&p.omega * int(12)));
    if variant == Variant::Qes {
        op = &op + &g.g("T+_1")?.scale(&(&p.a_coupling * int(12)));
    }
    Ok(op)
}

fn gl2r3_hamiltonian(p: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    let gens = build_generators(Algebra::Gl2R3, &p.n_level)?;
    let g = Gens(&gens);
    let c = Chart::Tau;
    let third = &p.n_level / int(3);
    let t2s = g.g("t2")? + &scalar(c, third.clone());
    let t3s = g.g("t3")? + &scalar(c, third.clone());
    let (t1, r1) = (g.g("t1")?, g.g("r1")?);
    let mut op = t2s.compose(t1)?.scale(&int(-6));
    op = &op - &t3s.compose(r1)?.scale(&int(7));
    op = &op + &g.prod("r2", "r1")?.scale(&int(2));
    op = &op - &t1.compose(&t3s)?.scale(&int(12));
    op = &op - &t1.scale(&((&p.gamma + int(1)) * int(12)));
    op = &op - &r1.scale(&((&p.gamma * int(4) + int(5)) * int(2)));
    let grading = &(g.g("t2")? + g.g("t3")?) + &scalar(c, &third * int(2));
    op = &op + &grading.scale(&(&p.omega * int(12)));
    if variant == Variant::Qes {
        op = &op + &g.g("t4")?.scale(&(&p.a_coupling * int(12)));
    }
    Ok(op)
}

fn sl2_hamiltonian(p: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    let gens = build_generators(Algebra::Sl2, &p.n_level)?;
    let g = Gens(&gens);
    let c = Chart::Tau;
    let shifted = g.g("J0")? + &scalar(c, p.n_level.clone());
    let jm = g.g("J-")?;
    let mut op = shifted.compose(jm)?.scale(&int(-3));
    op = &op - &jm.scale(&((&p.gamma + int(1)) * int(12)));
    op = &op + &shifted.scale(&(&p.omega * int(6)));
    if variant == Variant::Qes {
        op = &op + &g.g("J+")?.scale(&(&p.a_coupling * int(12)));
    }
    Ok(op)
}

/// The Hamiltonian each assembly must reproduce.
pub fn direct_counterpart(algebra: Algebra, params: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    let chart = match algebra {
        Algebra::Sl4 => HamiltonianChart::Rho,
        Algebra::H3 => HamiltonianChart::Tau,
        Algebra::Gl2R3 => HamiltonianChart::Tau12,
        Algebra::Sl2 => HamiltonianChart::Tau1,
    };
    match variant {
        Variant::Qes => build_h_qes(chart, params),
        Variant::Es => build_h_es(chart, params),
    }
}

/// Rebuild the Hamiltonian from generator products only, and check it
/// against the direct constructor.
///
/// With `add_delta_v` the multiplication operator `12 A N τ1` is added after
/// the check; it is only meaningful for the rho and tau charts.
pub fn assemble_hamiltonian(
    algebra: Algebra,
    params: &PotentialParams,
    variant: Variant,
    add_delta_v: bool,
) -> Result<DiffOperator> {
    let assembled = assemble_unchecked(algebra, params, variant)?;
    let direct = direct_counterpart(algebra, params, variant)?;
    let difference = &assembled - &direct;
    if !difference.is_zero() {
        return Err(Error::AssemblyIdentityViolation {
            algebra: algebra.tag().to_string(),
            difference: difference.to_string(),
        });
    }
    if add_delta_v {
        let p = match variant {
            Variant::Qes => params.clone(),
            Variant::Es => params.exactly_solvable(),
        };
        return Ok(&assembled + &delta_v(algebra.chart(), &p)?);
    }
    Ok(assembled)
}

/// Generator-product assembly without comparing to the direct form.
pub fn assemble_unchecked(algebra: Algebra, params: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    match algebra {
        Algebra::Sl4 => sl4_hamiltonian(params, variant),
        Algebra::H3 => h3_hamiltonian(params, variant),
        Algebra::Gl2R3 => gl2r3_hamiltonian(params, variant),
        Algebra::Sl2 => sl2_hamiltonian(params, variant),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_delta_r, build_l1};

    #[test]
    fn sl4_rewrites_laplacian_and_symmetry() {
        let g = build_generators(Algebra::Sl4, &int(2)).unwrap();
        assert_eq!(delta_r_from_sl4(&g).unwrap(), build_delta_r(Chart::Rho).unwrap());
        assert_eq!(l1_from_sl4(&g).unwrap(), build_l1(Chart::Rho, false).unwrap());
    }

    #[test]
    fn all_assemblies_match() {
        let p = PotentialParams::ints(1, 1, 2, 1).unwrap();
        for algebra in Algebra::ALL {
            for variant in [Variant::Qes, Variant::Es] {
                assemble_hamiltonian(algebra, &p, variant, false)
                    .unwrap_or_else(|e| panic!("{} {}: {}", algebra, variant, e));
            }
        }
    }

    #[test]
    fn delta_v_flag_adds_level_shift() {
        let p = PotentialParams::ints(2, 1, 1, 3).unwrap();
        let plain = assemble_hamiltonian(Algebra::Sl4, &p, Variant::Qes, false).unwrap();
        let shifted = assemble_hamiltonian(Algebra::Sl4, &p, Variant::Qes, true).unwrap();
        let diff = &shifted - &plain;
        let tau1 = crate::operators::laplacian::rho_sum();
        assert_eq!(diff, DiffOperator::multiplication(tau1.scale(&int(72))));
    }
}
