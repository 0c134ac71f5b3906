use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyops::{change_of_variables_rho_to_tau, Chart, DiffOperator, OperatorJson};

use super::assembly::Variant;
use super::generators::{build_generators, Algebra};
use super::hamiltonian::{build_h_es, build_h_qes, HamiltonianChart};
use super::laplacian::{build_delta_lb, build_delta_r, build_delta_r_masses, build_delta_r_w, build_l1};
use super::params::{MassTriple, PotentialParams};
use super::assembly::assemble_hamiltonian;

/// One named operator with its source tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub tag: String,
    pub operator: OperatorJson,
}

/// One generator set, each member in canonical JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub algebra: String,
    pub tag: String,
    pub n_level: String,
    pub members: Vec<(String, OperatorJson)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub operators: Vec<CatalogEntry>,
    pub generator_sets: Vec<GeneratorEntry>,
}

impl Catalog {
    pub fn find(&self, name: &str) -> Option<&CatalogEntry> {
        self.operators.iter().find(|e| e.name == name)
    }
}

fn entry(name: &str, tag: &str, op: &DiffOperator) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        tag: tag.to_string(),
        operator: op.to_json_value(),
    }
}

/// Every named operator and generator set, built with `params` and `masses`.
pub fn build_catalog(params: &PotentialParams, masses: &MassTriple) -> Result<Catalog> {
    let rho_lap = build_delta_r(Chart::Rho)?;
    let l1 = build_l1(Chart::Rho, false)?;
    let mut ops = vec![
        entry("delta_R(r)", "Eq. (addition3-3r)", &build_delta_r(Chart::R)?),
        entry("delta_R(rho)", "Eq. (addition3-3rho)", &rho_lap),
        entry("delta_R(tau)", "Eq. (addition3-3rho), tau chart", &change_of_variables_rho_to_tau(&rho_lap)?),
        entry("delta_R(w)", "Eq. (eq-psi)", &build_delta_r_w()?),
        entry("L1(rho)", "Eq. (integral)", &l1),
        entry("-L1^2(tau)", "Eq. (integral), tau chart", &build_l1(Chart::Tau, true)?),
        entry("delta_LB(rho)", "Eq. (LB3)", &build_delta_lb()?),
    ];
    let h_tags = [
        (HamiltonianChart::Rho, "Eq. (hQES-N-alg)", "Eq. (hES-rho)"),
        (HamiltonianChart::Tau, "Eq. (hQES-N-tau)", "Eq. (hES-N-tau)"),
        (HamiltonianChart::Tau12, "Eq. (hQES-N-tau-2)", "Eq. (hES-N-tau-2)"),
        (HamiltonianChart::Tau1, "Eq. (hQES-N-tau-1)", "Eq. (hES-N-tau-1)"),
    ];
    for (chart, qes_tag, es_tag) in h_tags {
        ops.push(entry(&format!("h_qes({})", chart), qes_tag, &build_h_qes(chart, params)?));
        ops.push(entry(&format!("h_es({})", chart), es_tag, &build_h_es(chart, params)?));
    }
    ops.push(entry(
        "h_qes(J)+delta_V",
        "Eq. (HQES-0-Lie)",
        &assemble_hamiltonian(Algebra::Sl4, params, Variant::Qes, true)?,
    ));
    ops.push(entry(
        "delta_R'(rho)",
        "Eq. (addition3-3r-M)",
        &build_delta_r_masses(masses),
    ));

    let gen_tags = [
        (Algebra::Sl4, "Eq. (sl4R)"),
        (Algebra::H3, "Eqs. (ops_1)-(R3), (jo)"),
        (Algebra::Gl2R3, "Eq. (gr)"),
        (Algebra::Sl2, "Eq. (sl2)"),
    ];
    let mut sets = Vec::new();
    for (algebra, tag) in gen_tags {
        let g = build_generators(algebra, &params.n_level)?;
        sets.push(GeneratorEntry {
            algebra: algebra.tag().to_string(),
            tag: tag.to_string(),
            n_level: g.n_level.to_string(),
            members: g
                .members
                .iter()
                .map(|(k, v)| (k.clone(), v.to_json_value()))
                .collect(),
        });
    }
    Ok(Catalog {
        operators: ops,
        generator_sets: sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_round_trips() {
        let cat = build_catalog(&PotentialParams::default(), &MassTriple::equal()).unwrap();
        assert!(cat.operators.len() >= 14);
        assert_eq!(cat.generator_sets.len(), 4);
        assert_eq!(cat.find("L1(rho)").unwrap().tag, "Eq. (integral)");
        for e in &cat.operators {
            let op = DiffOperator::from_json_value(&e.operator).unwrap();
            assert_eq!(op.to_json_value(), e.operator, "{}", e.name);
        }
    }
}
