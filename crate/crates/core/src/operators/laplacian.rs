use crate::error::{Error, Result};
use crate::polyops::{int, Chart, DiffOperator, MultiIndex, Polynomial, RationalFunction};

use super::params::MassTriple;

pub(crate) fn x(chart: Chart, i: usize) -> Polynomial {
    Polynomial::var(chart, i)
}

pub(crate) fn k(chart: Chart, c: i64) -> Polynomial {
    Polynomial::constant(chart, int(c))
}

pub(crate) fn mi(a: u32, b: u32, c: u32) -> MultiIndex {
    MultiIndex::new(a, b, c)
}

/// Pairs of variable slots for the mixed second derivatives, with the slot
/// of the third variable: (12,13 | 23), (12,23 | 13), (13,23 | 12).
pub(crate) const MIXED: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];

pub(crate) fn pair_index(i: usize, j: usize) -> MultiIndex {
    MultiIndex::unit(i).add(&MultiIndex::unit(j))
}

/// `τ1 = ρ12 + ρ13 + ρ23` in the rho chart.
pub(crate) fn rho_sum() -> Polynomial {
    &(&x(Chart::Rho, 0) + &x(Chart::Rho, 1)) + &x(Chart::Rho, 2)
}

/// Euler operator `Σ ρ_i ∂_i`.
pub(crate) fn rho_euler() -> DiffOperator {
    (0..3).fold(DiffOperator::zero(Chart::Rho), |acc, i| {
        acc.with_poly_term(MultiIndex::unit(i), x(Chart::Rho, i))
    })
}

/// `Σ ∂_i` in the rho chart.
pub(crate) fn rho_gradient_sum() -> DiffOperator {
    (0..3).fold(DiffOperator::zero(Chart::Rho), |acc, i| {
        acc.with_poly_term(MultiIndex::unit(i), k(Chart::Rho, 1))
    })
}

fn delta_r_rho() -> DiffOperator {
    let c = Chart::Rho;
    let mut op = DiffOperator::zero(c);
    for i in 0..3 {
        op = op
            .with_poly_term(MultiIndex::unit(i).add(&MultiIndex::unit(i)), x(c, i).scale(&int(4)))
            .with_poly_term(MultiIndex::unit(i), k(c, 6));
    }
    for (i, j, l) in MIXED {
        let coeff = &(&x(c, i) + &x(c, j)) - &x(c, l);
        op = op.with_poly_term(pair_index(i, j), coeff.scale(&int(2)));
    }
    op
}

fn delta_r_r() -> Result<DiffOperator> {
    let c = Chart::R;
    let mut op = DiffOperator::zero(c);
    for i in 0..3 {
        op = op
            .with_poly_term(MultiIndex::unit(i).add(&MultiIndex::unit(i)), k(c, 1))
            .with_term(MultiIndex::unit(i), RationalFunction::new(k(c, 2), x(c, i))?);
    }
    for (i, j, l) in MIXED {
        let num = &(&x(c, i).pow(2) + &x(c, j).pow(2)) - &x(c, l).pow(2);
        let den = (&x(c, i) * &x(c, j)).scale(&int(2));
        op = op.with_term(pair_index(i, j), RationalFunction::new(num, den)?);
    }
    Ok(op)
}

/// The radial Laplacian on functions of the relative distances, in the `R`
/// (distances) or `Rho` (squared distances) chart.
pub fn build_delta_r(chart: Chart) -> Result<DiffOperator> {
    match chart {
        Chart::Rho => Ok(delta_r_rho()),
        Chart::R => delta_r_r(),
        other => Err(Error::InvalidInput(format!(
            "radial Laplacian is built in the r or rho chart, not {}",
            other
        ))),
    }
}

/// The same Laplacian in the separating chart `(w1, w2, w3)`.
pub fn build_delta_r_w() -> Result<DiffOperator> {
    let c = Chart::W;
    let (w1, w2) = (x(c, 0), x(c, 1));
    Ok(DiffOperator::zero(c)
        .with_poly_term(mi(2, 0, 0), w1.scale(&int(6)))
        .with_poly_term(mi(0, 2, 0), w1.scale(&int(6)))
        .with_term(mi(0, 0, 2), RationalFunction::new(w1.scale(&int(2)), w2.pow(2))?)
        .with_poly_term(mi(1, 1, 0), w2.scale(&int(12)))
        .with_poly_term(mi(1, 0, 0), k(c, 18))
        .with_term(mi(0, 1, 0), RationalFunction::new(w1.scale(&int(6)), w2)?))
}

/// The first-order symmetry `(ρ13−ρ23)∂12 + (ρ23−ρ12)∂13 + (ρ12−ρ13)∂23` in
/// the rho chart, or with `squared` the tau-chart form of `−L1²`.
pub fn build_l1(chart: Chart, squared: bool) -> Result<DiffOperator> {
    match (chart, squared) {
        (Chart::Rho, false) => {
            let c = Chart::Rho;
            Ok(DiffOperator::zero(c)
                .with_poly_term(MultiIndex::unit(0), &x(c, 1) - &x(c, 2))
                .with_poly_term(MultiIndex::unit(1), &x(c, 2) - &x(c, 0))
                .with_poly_term(MultiIndex::unit(2), &x(c, 0) - &x(c, 1)))
        }
        (Chart::Tau, true) => {
            let c = Chart::Tau;
            let (t1, t2, t3) = (x(c, 0), x(c, 1), x(c, 2));
            let second = Polynomial::from_terms(
                c,
                [
                    (mi(0, 0, 2), int(27)),
                    (mi(3, 0, 1), int(4)),
                    (mi(1, 1, 1), int(-18)),
                    (mi(2, 2, 0), int(-1)),
                    (mi(0, 3, 0), int(4)),
                ],
            );
            let first = &(&t3.scale(&int(27)) + &t1.pow(3).scale(&int(2))) - &(&t1 * &t2).scale(&int(9));
            Ok(DiffOperator::zero(c)
                .with_poly_term(mi(0, 0, 2), second)
                .with_poly_term(mi(0, 0, 1), first))
        }
        (Chart::Rho, true) => Err(Error::InvalidInput(
            "the rho-chart square of L1 is obtained by composing L1 with itself".into(),
        )),
        (other, _) => Err(Error::InvalidInput(format!(
            "L1 is built in the rho chart (or squared in the tau chart), not {}",
            other
        ))),
    }
}

/// Laplace-Beltrami operator of the contravariant metric of the radial
/// Laplacian, in the rho chart.
pub fn build_delta_lb() -> Result<DiffOperator> {
    let c = Chart::Rho;
    let mut op = delta_r_rho().restrict_orders(2..=2);
    let tau1 = rho_sum();
    for i in 0..3 {
        let num = &tau1.scale(&int(4)) - &x(c, i).scale(&int(3));
        op = op.with_term(MultiIndex::unit(i), RationalFunction::new(num, tau1.clone())?);
    }
    Ok(op)
}

/// Radial Laplacian for unequal masses, rho chart.
pub fn build_delta_r_masses(masses: &MassTriple) -> DiffOperator {
    let c = Chart::Rho;
    let inv_mu = masses.inverse_reduced();
    let mut op = DiffOperator::zero(c);
    for i in 0..3 {
        op = op
            .with_poly_term(
                MultiIndex::unit(i).add(&MultiIndex::unit(i)),
                x(c, i).scale(&(&inv_mu[i] * int(2))),
            )
            .with_poly_term(
                MultiIndex::unit(i),
                Polynomial::constant(c, &inv_mu[i] * int(3)),
            );
    }
    // The pair (12,13) shares particle 1, (12,23) particle 2, (13,23) particle 3.
    let shared = [&masses.m1, &masses.m2, &masses.m3];
    for (slot, (i, j, l)) in MIXED.into_iter().enumerate() {
        let coeff = &(&x(c, i) + &x(c, j)) - &x(c, l);
        let w = int(2) / shared[slot];
        op = op.with_poly_term(pair_index(i, j), coeff.scale(&w));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::rat;

    #[test]
    fn rho_laplacian_cross_coefficient() {
        let op = build_delta_r(Chart::Rho).unwrap();
        let c = Chart::Rho;
        let expected = (&(&x(c, 0) + &x(c, 1)) - &x(c, 2)).scale(&int(2));
        assert_eq!(op.coefficient(&mi(1, 1, 0)), expected.into());
        assert!(op.apply(&k(c, 1)).unwrap().is_zero());
        assert_eq!(op.apply_poly(&rho_sum()).unwrap(), k(c, 18));
    }

    #[test]
    fn distance_chart_first_order_coefficient() {
        let op = build_delta_r(Chart::R).unwrap();
        let expected = RationalFunction::new(k(Chart::R, 2), x(Chart::R, 0)).unwrap();
        assert_eq!(op.coefficient(&mi(1, 0, 0)), expected);
    }

    #[test]
    fn distance_chart_agrees_with_rho_chart() {
        let squares = [
            x(Chart::R, 0).pow(2),
            x(Chart::R, 1).pow(2),
            x(Chart::R, 2).pow(2),
        ];
        let rho_op = build_delta_r(Chart::Rho).unwrap();
        let r_op = build_delta_r(Chart::R).unwrap();
        let c = Chart::Rho;
        let samples = [
            &(&x(c, 0) * &x(c, 1).pow(2)) - &x(c, 2),
            (&x(c, 0) * &x(c, 2)).pow(2),
            &rho_sum().pow(3) + &x(c, 1),
        ];
        for f in samples {
            let lhs = r_op.apply(&f.substitute(&squares)).unwrap();
            let rhs = rho_op.apply(&f).unwrap().substitute(&squares).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn l1_on_linear_forms() {
        let l1 = build_l1(Chart::Rho, false).unwrap();
        let c = Chart::Rho;
        assert!(l1.apply(&rho_sum()).unwrap().is_zero());
        assert_eq!(l1.apply_poly(&x(c, 0)).unwrap(), &x(c, 1) - &x(c, 2));
        assert!(build_l1(Chart::Rho, true).is_err());
    }

    #[test]
    fn laplace_beltrami_first_order() {
        let lb = build_delta_lb().unwrap();
        let expected = RationalFunction::new(
            &rho_sum().scale(&int(4)) - &x(Chart::Rho, 0).scale(&int(3)),
            rho_sum(),
        )
        .unwrap();
        assert_eq!(lb.coefficient(&mi(1, 0, 0)), expected);
        assert!(lb.apply(&k(Chart::Rho, 1)).unwrap().is_zero());
        assert_eq!(
            lb.restrict_orders(2..=2),
            build_delta_r(Chart::Rho).unwrap().restrict_orders(2..=2)
        );
    }

    #[test]
    fn mass_laplacian() {
        assert_eq!(build_delta_r_masses(&MassTriple::equal()), build_delta_r(Chart::Rho).unwrap());
        let m = MassTriple::new(int(1), int(2), int(3)).unwrap();
        let op = build_delta_r_masses(&m);
        assert_eq!(op.coefficient(&mi(2, 0, 0)), x(Chart::Rho, 0).scale(&int(3)).into());
        let c = Chart::Rho;
        let cross = (&(&x(c, 0) + &x(c, 1)) - &x(c, 2)).scale(&int(2));
        assert_eq!(op.coefficient(&mi(1, 1, 0)), cross.into());
        let cross23 = (&(&x(c, 1) + &x(c, 2)) - &x(c, 0)).scale(&rat(2, 3));
        assert_eq!(op.coefficient(&mi(0, 1, 1)), cross23.into());
    }
}
