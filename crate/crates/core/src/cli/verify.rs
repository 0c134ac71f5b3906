use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{det_masses, mass_metric, sample_interior};
use crate::operators::{
    assemble_unchecked, build_delta_r, build_delta_r_masses, build_h_es, build_h_qes, build_l1, direct_counterpart,
    Algebra, HamiltonianChart, MassTriple, PotentialParams, Variant,
};
use crate::oracle::{ground_state_residual, run_check, sample_well_inside, CheckKind};
use crate::polyops::{change_of_variables_rho_to_tau, int, Chart, DiffOperator, MultiIndex, RationalFunction};
use crate::spectra::{
    basis_level, eigen_solve, enumerate_basis, laguerre_check, operator_matrix, reducibility_chain, GroundStateSpec,
    Space,
};

use super::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    /// The check could not be completed numerically.
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKindTag {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: CheckKindTag,
    pub status: CheckStatus,
    /// The difference operator of an exact check (`0` when it vanishes), or
    /// the largest error of a numeric one.
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub fd_step: f64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failed(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed().next().is_some() {
            super::EXIT_FAILURE
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Error) {
            super::EXIT_NUMERICAL
        } else {
            super::EXIT_PASS
        }
    }
}

fn exact(name: &str, tag: &str, difference: Result<DiffOperator>) -> CheckRecord {
    let (status, witness) = match difference {
        Ok(d) if d.is_zero() => (CheckStatus::Pass, "0".to_string()),
        Ok(d) => (CheckStatus::Fail, d.to_string()),
        Err(e) => (CheckStatus::Fail, e.to_string()),
    };
    CheckRecord {
        name: name.into(),
        kind: CheckKindTag::Exact,
        status,
        witness,
        tolerance: None,
        tag: tag.into(),
    }
}

fn exact_flag(name: &str, tag: &str, outcome: Result<Option<String>>) -> CheckRecord {
    let (status, witness) = match outcome {
        Ok(None) => (CheckStatus::Pass, "0".to_string()),
        Ok(Some(w)) => (CheckStatus::Fail, w),
        Err(e) => (CheckStatus::Fail, e.to_string()),
    };
    CheckRecord {
        name: name.into(),
        kind: CheckKindTag::Exact,
        status,
        witness,
        tolerance: None,
        tag: tag.into(),
    }
}

fn skipped(name: &str, kind: CheckKindTag, tag: &str, why: &str) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        kind,
        status: CheckStatus::Skipped,
        witness: why.into(),
        tolerance: None,
        tag: tag.into(),
    }
}

fn numeric(name: &str, tag: &str, tolerance: f64, outcome: Result<(f64, bool)>) -> CheckRecord {
    let (status, witness) = match outcome {
        Ok((err, pass)) => (
            if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            format!("{:e}", err),
        ),
        Err(e @ (Error::NumericalFailure { .. } | Error::Conditioning(_))) => (CheckStatus::Error, e.to_string()),
        Err(e) => (CheckStatus::Fail, e.to_string()),
    };
    CheckRecord {
        name: name.into(),
        kind: CheckKindTag::Numeric,
        status,
        witness,
        tolerance: Some(tolerance),
        tag: tag.into(),
    }
}

/// The radial Laplacian with 1 added to its `∂12²` coefficient.
fn perturbed_laplacian() -> Result<DiffOperator> {
    let mut op = build_delta_r(Chart::Rho)?;
    op.add_term(MultiIndex::new(2, 0, 0), RationalFunction::constant(Chart::Rho, int(1)));
    Ok(op)
}

fn exact_suite(params: &PotentialParams, perturb: bool, masses: Option<&MassTriple>) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let lap = if perturb { perturbed_laplacian() } else { build_delta_r(Chart::Rho) };
    out.push(exact(
        "commutator[delta_R(rho), L1]",
        "Eq. (integral)",
        lap.and_then(|d| d.commutator(&build_l1(Chart::Rho, false)?)),
    ));
    for variant in [Variant::Qes, Variant::Es] {
        let build = |chart| match variant {
            Variant::Qes => build_h_qes(chart, params),
            Variant::Es => build_h_es(chart, params),
        };
        out.push(exact(
            &format!("commutator[h_{}(rho), L1]", variant),
            "Eq. (integral)",
            build(HamiltonianChart::Rho).and_then(|h| h.commutator(&build_l1(Chart::Rho, false)?)),
        ));
        out.push(exact(
            &format!("commutator[h_{}(tau), -L1^2(tau)]", variant),
            "Eq. (integral), tau chart",
            build(HamiltonianChart::Tau).and_then(|h| h.commutator(&build_l1(Chart::Tau, true)?)),
        ));
        out.push(exact(
            &format!("chart_change[h_{}(rho) -> tau]", variant),
            "Eq. (hQES-N-tau)",
            build(HamiltonianChart::Rho)
                .and_then(|h| change_of_variables_rho_to_tau(&h))
                .and_then(|t| Ok(&t - &build(HamiltonianChart::Tau)?)),
        ));
    }
    out.push(exact(
        "chart_change[L1^2(rho) -> tau]",
        "Eq. (integral), tau chart",
        build_l1(Chart::Rho, false)
            .and_then(|l| l.compose(&l))
            .and_then(|sq| change_of_variables_rho_to_tau(&sq))
            .and_then(|t| Ok(&t + &build_l1(Chart::Tau, true)?)),
    ));
    let assembly_tags = [
        (Algebra::Sl4, "Eq. (hQES-N-Lie)"),
        (Algebra::H3, "Eq. (hj)"),
        (Algebra::Gl2R3, "Eq. (gr)"),
        (Algebra::Sl2, "Eq. (sl2)"),
    ];
    for (algebra, tag) in assembly_tags {
        for variant in [Variant::Qes, Variant::Es] {
            out.push(exact(
                &format!("assembly[{}, {}]", algebra, variant),
                tag,
                assemble_unchecked(algebra, params, variant)
                    .and_then(|a| Ok(&a - &direct_counterpart(algebra, params, variant)?)),
            ));
        }
    }
    for space in Space::ALL {
        let outcome = (|| -> Result<Option<String>> {
            let op = crate::spectra::hamiltonian_for(space, params, Variant::Qes)?;
            let n = params.n_integer().ok_or_else(|| Error::InvarianceViolation {
                monomial: "-".into(),
                stray: format!("N = {} is not a non-negative integer", params.n_level),
            })?;
            operator_matrix(&op, &enumerate_basis(space, n))?;
            Ok(None)
        })();
        out.push(exact_flag(&format!("invariance[{}]", space), "Eq. (hQES-N-tau)", outcome));
    }
    out.push(exact_flag(
        "reducibility[p123 > p12 > p1]",
        "Eq. (hQES-N-tau-2)",
        reducibility_chain(params, Variant::Qes).map(|r| {
            (!r.passed()).then(|| format!("p12 preserved: {}, p1 preserved: {}", r.preserves_p12, r.preserves_p1))
        }),
    ));
    let es_level = basis_level(params).min(4);
    out.push(exact_flag(
        &format!("es_spectrum[p3, N={}]", es_level),
        "Eq. (EQES-0)",
        (|| -> Result<Option<String>> {
            let es = params.with_level(int(es_level as i64)).exactly_solvable();
            let m = operator_matrix(
                &build_h_es(HamiltonianChart::Rho, &es)?,
                &enumerate_basis(Space::P3, es_level),
            )?;
            let r = eigen_solve(&m)?;
            let mut expected: Vec<_> = m.basis.grades().iter().map(|&d| &es.omega * int(12 * d as i64)).collect();
            expected.sort();
            Ok((r.exact.as_ref() != Some(&expected)).then(|| format!("{:?}", r.eigenvalues)))
        })(),
    ));
    if params.gamma > int(0) {
        out.push(exact_flag(
            "laguerre[p1, N=5]",
            "Eq. (hES-N-tau-1)",
            laguerre_check(params, 5).map(|r| r.first_failure.map(|n| format!("first mismatch at n = {}", n))),
        ));
    } else {
        out.push(skipped("laguerre[p1, N=5]", CheckKindTag::Exact, "Eq. (hES-N-tau-1)", "needs gamma > 0"));
    }
    match masses {
        None => out.push(exact(
            "mass_reduction[delta_R'(1,1,1) = delta_R]",
            "Eq. (addition3-3r-M)",
            build_delta_r(Chart::Rho).map(|d| &build_delta_r_masses(&MassTriple::equal()) - &d),
        )),
        Some(_) => out.push(skipped(
            "mass_reduction[delta_R'(1,1,1) = delta_R]",
            CheckKindTag::Exact,
            "Eq. (addition3-3r-M)",
            "explicit masses given",
        )),
    }
    out
}

fn numeric_suite(params: &PotentialParams, masses: Option<&MassTriple>, cfg: &RunConfig) -> Vec<CheckRecord> {
    let tol = &cfg.tolerances;
    let mut out = Vec::new();
    let tags = [
        (CheckKind::Reduction, "Eq. (addition)", tol.reduction),
        (CheckKind::Gauge, "Eq. (HLB3)", tol.gauge),
        (CheckKind::Separation, "Eq. (eq-psi)", tol.separation),
        (CheckKind::Curvature, "Ricci scalar", tol.curvature),
    ];
    for (kind, tag, tolerance) in tags {
        out.push(numeric(
            &format!("oracle[{}]", kind),
            tag,
            tolerance,
            run_check(kind, cfg.samples, cfg.fd_step, cfg.seed, tol).map(|r| (r.max_rel_err, r.pass)),
        ));
    }
    if params.gamma > int(0) {
        let outcome = (|| -> Result<(f64, bool)> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let points = sample_well_inside(&mut rng, cfg.samples, 0.05);
            let mut worst = 0.0f64;
            for variant in [Variant::Qes, Variant::Es] {
                let spec = GroundStateSpec::new(params.clone(), variant)?;
                for p in &points {
                    worst = worst.max(ground_state_residual(&spec, p, cfg.fd_step)?);
                }
            }
            Ok((worst, worst <= tol.ground_state))
        })();
        out.push(numeric("ground_state_residual", "Eq. (VQES-0)", tol.ground_state, outcome));
    } else {
        out.push(skipped(
            "ground_state_residual",
            CheckKindTag::Numeric,
            "Eq. (VQES-0)",
            "needs gamma > 0",
        ));
    }
    if let Some(m) = masses {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut worst = 0.0f64;
        for p in sample_interior(&mut rng, cfg.samples) {
            let direct = mass_metric(&p, m).determinant();
            worst = worst.max((det_masses(&p, m) - direct).abs() / direct.abs());
        }
        out.push(numeric("mass_determinant", "Eq. (addition3-3r-M)", 1e-12, Ok((worst, worst <= 1e-12))));
    }
    out
}

/// Exact identities first, then the sampled numeric checks.
pub fn run_verify(params: &PotentialParams, perturb: bool, masses: Option<&MassTriple>, cfg: &RunConfig) -> VerificationReport {
    let mut checks = exact_suite(params, perturb, masses);
    checks.extend(numeric_suite(params, masses, cfg));
    let pass = checks.iter().all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped));
    VerificationReport {
        seed: cfg.seed,
        samples: cfg.samples,
        fd_step: cfg.fd_step,
        checks,
        pass,
    }
}
