use num_traits::ToPrimitive;

use crate::error::Result;
use crate::operators::{build_h_es, build_h_qes, PotentialParams, Variant};
use crate::polyops::{to_f64, DiffOperator, MultiIndex};

use super::basis::{enumerate_basis, BasisSpec, Space};
use super::eigen::{eigen_solve, EigenResult};
use super::energies::{ground_energy, physical_energy};
use super::matrix::{operator_matrix, OperatorMatrix};

/// The algebraic Hamiltonian acting on `space`.
pub fn hamiltonian_for(space: Space, params: &PotentialParams, variant: Variant) -> Result<DiffOperator> {
    match variant {
        Variant::Qes => build_h_qes(space.hamiltonian_chart(), params),
        Variant::Es => build_h_es(space.hamiltonian_chart(), params),
    }
}

/// Basis level for `params`: `N` itself, or its floor when `N` is a formal
/// non-integer level.
pub fn basis_level(params: &PotentialParams) -> u32 {
    params.n_integer().unwrap_or_else(|| params.n_level.floor().to_integer().to_u32().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub matrix: OperatorMatrix,
    pub eigen: EigenResult,
    /// `λ + E0` per eigenvalue (real part).
    pub physical_energies: Vec<f64>,
}

/// Matrix, eigenvalues and physical energies of the Hamiltonian on
/// `space` at the level `N` carried by `params`.
pub fn solve_space(space: Space, params: &PotentialParams, variant: Variant) -> Result<Spectrum> {
    let op = hamiltonian_for(space, params, variant)?;
    let basis = enumerate_basis(space, basis_level(params));
    let matrix = operator_matrix(&op, &basis)?;
    let eigen = eigen_solve(&matrix)?;
    let physical_energies = match &eigen.exact {
        Some(exact) => exact.iter().map(|v| to_f64(&physical_energy(v, params))).collect(),
        None => {
            let e0 = to_f64(&ground_energy(params));
            eigen.eigenvalues.iter().map(|z| z.re + e0).collect()
        }
    };
    Ok(Spectrum {
        matrix,
        eigen,
        physical_energies,
    })
}

fn sub_monomials(basis: &BasisSpec, keep: impl Fn(&MultiIndex) -> bool) -> Vec<MultiIndex> {
    basis.monomials.iter().copied().filter(|m| keep(m)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducibilityReport {
    pub n_level: u32,
    pub dims: [usize; 3],
    pub preserves_p12: bool,
    pub preserves_p1: bool,
}

impl ReducibilityReport {
    pub fn passed(&self) -> bool {
        self.preserves_p12 && self.preserves_p1
    }
}

/// Whether the τ-chart Hamiltonian on `P123_N` keeps the `(τ1, τ2)` and the
/// `τ1` polynomials inside themselves.
pub fn reducibility_chain(params: &PotentialParams, variant: Variant) -> Result<ReducibilityReport> {
    let op = hamiltonian_for(Space::P123, params, variant)?;
    let n = basis_level(params);
    let basis = enumerate_basis(Space::P123, n);
    let m = operator_matrix(&op, &basis)?;
    let p12 = sub_monomials(&basis, |a| a.0[2] == 0);
    let p1 = sub_monomials(&basis, |a| a.0[1] == 0 && a.0[2] == 0);
    Ok(ReducibilityReport {
        n_level: n,
        dims: [basis.len(), p12.len(), p1.len()],
        preserves_p12: m.preserves(&p12),
        preserves_p1: m.preserves(&p1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::{int, rat};

    #[test]
    fn chain_holds_for_small_levels() {
        for n in 0..=4 {
            let p = PotentialParams::new(n, rat(2, 3), rat(5, 4), rat(1, 3)).unwrap();
            let r = reducibility_chain(&p, Variant::Qes).unwrap();
            assert!(r.passed(), "N = {}", n);
            assert_eq!(r.dims[0], Space::P123.dimension(n));
            assert_eq!(r.dims[1], Space::P12.dimension(n));
            assert_eq!(r.dims[2], n as usize + 1);
        }
    }

    #[test]
    fn es_physical_energies() {
        let p = PotentialParams::ints(3, 1, 1, 0).unwrap();
        let s = solve_space(Space::P1, &p, Variant::Es).unwrap();
        assert_eq!(s.physical_energies, vec![24.0, 36.0, 48.0, 60.0]);
    }

    #[test]
    fn formal_level_is_rejected() {
        let p = PotentialParams::with_formal_level(rat(5, 2), int(1), int(1), int(2)).unwrap();
        assert_eq!(basis_level(&p), 2);
        assert!(solve_space(Space::P1, &p, Variant::Qes).is_err());
    }
}
