use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyops::{to_f64, DiffOperator, MultiIndex, Polynomial, Rational};

use super::basis::BasisSpec;

/// Exact matrix of an operator on a monomial basis. Column `j` holds the
/// image of monomial `j`; `entries[i][j]` is its coefficient on monomial `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub basis: BasisSpec,
    pub entries: Vec<Vec<Rational>>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| to_f64(&self.entries[i][j]))
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries
            .iter()
            .map(|row| row.iter().map(|v| to_f64(v).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// Upper or lower triangular, exactly.
    pub fn is_triangular(&self) -> bool {
        let n = self.dim();
        let upper = (0..n).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| self.entries[i][j].is_zero()));
        upper || lower
    }

    /// Whether the span of the basis monomials in `sub` is mapped into
    /// itself.
    pub fn preserves(&self, sub: &[MultiIndex]) -> bool {
        let inside: Vec<bool> = self
            .basis
            .monomials
            .iter()
            .map(|m| sub.contains(m))
            .collect();
        (0..self.dim()).filter(|&j| inside[j]).all(|j| {
            (0..self.dim()).all(|i| inside[i] || self.entries[i][j].is_zero())
        })
    }

    /// Exact kernel of `M − λ I`, one basis vector per free column.
    pub fn eigenspace(&self, lambda: &Rational) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self.entries.clone();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = &row[i] - lambda;
        }
        kernel(a, n)
    }

    /// The polynomial whose coefficients on the basis are `v`.
    pub fn polynomial(&self, v: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            self.basis.chart(),
            self.basis.monomials.iter().copied().zip(v.iter().cloned()),
        )
    }
}

fn kernel(mut a: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let t = &a[r][k] * &f;
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Exact matrix of `op` on `basis`; fails if some image leaves the span.
pub fn operator_matrix(op: &DiffOperator, basis: &BasisSpec) -> Result<OperatorMatrix> {
    if op.chart() != basis.chart() {
        return Err(Error::ChartMismatch {
            expected: basis.chart(),
            found: op.chart(),
        });
    }
    let n = basis.len();
    let mut entries = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let source = basis.polynomial(j);
        let image = op.apply_poly(&source)?;
        let mut stray = Polynomial::zero(basis.chart());
        for (alpha, c) in image.terms() {
            match basis.position(alpha) {
                Some(i) => entries[i][j] = c.clone(),
                None => stray.add_term(*alpha, c.clone()),
            }
        }
        if !stray.is_zero() {
            return Err(Error::InvarianceViolation {
                monomial: source.to_string(),
                stray: stray.to_string(),
            });
        }
    }
    Ok(OperatorMatrix {
        basis: basis.clone(),
        entries,
    })
}

/// Scale `v` so its last nonzero entry with largest index is 1.
pub fn normalize_exact(v: &[Rational]) -> Vec<Rational> {
    match v.iter().rev().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_h_es, build_h_qes, build_l1, HamiltonianChart, PotentialParams};
    use crate::polyops::{int, rat, Chart};
    use crate::spectra::basis::{enumerate_basis, Space};

    #[test]
    fn two_level_qes_matrix() {
        let p = PotentialParams::ints(1, 2, 3, 5).unwrap();
        let h = build_h_qes(HamiltonianChart::Tau1, &p).unwrap();
        let m = operator_matrix(&h, &enumerate_basis(Space::P1, 1)).unwrap();
        assert_eq!(m.entries, vec![vec![int(0), int(-48)], vec![int(-60), int(24)]]);
    }

    #[test]
    fn symmetry_on_linear_forms() {
        let l1 = build_l1(Chart::Rho, false).unwrap();
        let m = operator_matrix(&l1, &enumerate_basis(Space::P3, 1)).unwrap();
        assert!(m.entries[0].iter().all(|v| v.is_zero()));
        assert!(m.entries.iter().all(|row| row[0].is_zero()));
        let b = &m.basis;
        let col = |a: [u32; 3]| b.position(&MultiIndex(a)).unwrap();
        let (x12, x13, x23) = (col([1, 0, 0]), col([0, 1, 0]), col([0, 0, 1]));
        // L1 ρ12 = ρ13 − ρ23
        assert_eq!(m.entries[x13][x12], int(1));
        assert_eq!(m.entries[x23][x12], int(-1));
        assert_eq!(m.entries[x12][x12], int(0));
        assert_eq!(m.entries[x12][x13], int(-1));
        assert_eq!(m.entries[x23][x13], int(1));
    }

    #[test]
    fn formal_level_breaks_invariance() {
        let p = PotentialParams::with_formal_level(rat(3, 2), int(1), int(1), int(1)).unwrap();
        let h = build_h_qes(HamiltonianChart::Tau, &p).unwrap();
        let err = operator_matrix(&h, &enumerate_basis(Space::P123, 1)).unwrap_err();
        assert!(matches!(err, Error::InvarianceViolation { .. }), "{}", err);
    }

    #[test]
    fn es_matrix_is_triangular_with_graded_diagonal() {
        let p = PotentialParams::new(4, rat(3, 2), rat(1, 3), int(0)).unwrap();
        let h = build_h_es(HamiltonianChart::Tau, &p).unwrap();
        let basis = enumerate_basis(Space::P123, 4);
        let m = operator_matrix(&h, &basis).unwrap();
        assert!(m.is_triangular());
        for (i, g) in basis.grades().into_iter().enumerate() {
            assert_eq!(m.entries[i][i], int(18) * int(g as i64));
        }
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let entries = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        let basis = enumerate_basis(Space::P1, 1);
        let m = OperatorMatrix { basis, entries };
        let ker = m.eigenspace(&int(0));
        assert_eq!(ker, vec![vec![int(-2), int(1)]]);
        assert_eq!(m.eigenspace(&int(5)).len(), 1);
        assert!(m.eigenspace(&int(1)).is_empty());
    }
}
