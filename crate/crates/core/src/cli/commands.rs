use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{
    det_masses, effective_potential, effective_potential_masses, heron_area_sq, mass_metric, metric_upper,
    ricci_scalar, w1, w2, w_coords, Membership, TrianglePoint,
};
use crate::operators::{build_catalog, MassTriple};
use crate::oracle::{curvature_oracle, run_check};
use crate::spectra::{ground_energy, solve_space, Space};

use super::output::{csv_float, csv_row, envelope, masses_json, params_json, rational_string, render};
use super::verify::run_verify;
use super::{
    CatalogArgs, GeometryArgs, OracleArgs, Outcome, RunConfig, SpectrumArgs, VerifyArgs, EXIT_FAILURE, EXIT_PASS,
};

fn emit(code: i32, body: Value) -> Outcome {
    Outcome {
        code,
        stdout: render(&body),
        stderr: String::new(),
    }
}

pub fn verify(args: &VerifyArgs, env_seed: Option<&str>) -> Result<Outcome> {
    let params = args.params.params()?;
    let cfg = RunConfig::from_args(&args.sampling, env_seed)?;
    let report = run_verify(&params, args.perturb, args.masses.as_ref(), &cfg);
    let mut body = envelope("verify", &report);
    body["params"] = params_json(&params);
    if let Some(m) = &args.masses {
        body["masses"] = masses_json(m);
    }
    let stderr = report
        .failed()
        .map(|c| format!("FAIL {}: {}\n", c.name, c.witness))
        .collect();
    Ok(Outcome {
        code: report.exit_code(),
        stdout: render(&body),
        stderr,
    })
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome> {
    let params = args.params.params()?;
    let cap = args.max_n.unwrap_or(if args.space == Space::P3 { 8 } else { 24 });
    if let Some(n) = params.n_integer() {
        if n > cap {
            return Err(Error::InvalidInput(format!(
                "N = {} exceeds the cap {} for {} (raise it with --max-n)",
                n, cap, args.space
            )));
        }
    }
    let s = solve_space(args.space, &params, args.variant)?;
    let e0 = ground_energy(&params);
    let exact: Option<Vec<String>> = s.eigen.exact.as_ref().map(|v| v.iter().map(rational_string).collect());
    let exact_energies: Option<Vec<String>> = s
        .eigen
        .exact
        .as_ref()
        .map(|v| v.iter().map(|l| rational_string(&(l + &e0))).collect());

    if args.csv {
        let mut out = csv_row(&["index", "re", "im", "residual", "exact", "physical_energy", "physical_energy_exact"]);
        for (i, z) in s.eigen.eigenvalues.iter().enumerate() {
            let ex = exact.as_ref().map(|v| v[i].clone()).unwrap_or_default();
            let pe = exact_energies.as_ref().map(|v| v[i].clone()).unwrap_or_default();
            out.push_str(&csv_row(&[
                i.to_string(),
                csv_float(z.re),
                csv_float(z.im),
                csv_float(s.eigen.residuals[i]),
                ex,
                csv_float(s.physical_energies[i]),
                pe,
            ]));
        }
        return Ok(Outcome {
            code: EXIT_PASS,
            stdout: out,
            stderr: String::new(),
        });
    }

    let eigenvalues: Vec<Value> = s
        .eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let mut v = json!({ "re": z.re, "im": z.im, "residual": s.eigen.residuals[i] });
            if let Some(ex) = &exact {
                v["exact"] = Value::String(ex[i].clone());
            }
            v
        })
        .collect();
    let mut body = json!({
        "schema": super::SCHEMA,
        "command": "spectrum",
        "space": args.space.tag(),
        "variant": args.variant.tag(),
        "params": params_json(&params),
        "dimension": s.matrix.dim(),
        "E0": rational_string(&e0),
        "eigenvalues": eigenvalues,
        "physical_energies": s.physical_energies,
    });
    if let Some(pe) = exact_energies {
        body["physical_energies_exact"] = json!(pe);
    }
    Ok(emit(EXIT_PASS, body))
}

fn or_null(v: Result<f64>, notes: &mut Vec<String>, what: &str) -> Value {
    match v {
        Ok(x) => json!(x),
        Err(e) => {
            notes.push(format!("{}: {}", what, e));
            Value::Null
        }
    }
}

fn matrix_json(m: &nalgebra::Matrix3<f64>) -> Value {
    json!((0..3).map(|i| (0..3).map(|j| m[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn geometry(args: &GeometryArgs) -> Result<Outcome> {
    let p = match (args.rho, args.r) {
        (Some(rho), None) => TrianglePoint::from_rho(rho)?,
        (None, Some(r)) => TrianglePoint::from_r(r)?,
        _ => return Err(Error::InvalidInput("give exactly one of --rho and --r".into())),
    };
    let membership = p.membership();
    if membership == Membership::Exterior {
        return Err(Error::SingularConfiguration(format!(
            "{:?} violates the triangle inequality",
            p.rho()
        )));
    }
    let mut notes = Vec::new();
    let g = metric_upper(&p);
    let tau = p.tau();
    let w = match w_coords(&p) {
        Ok(w) => json!({ "w1": w.w1, "w2": w.w2, "w3": w.w3 }),
        Err(e) => {
            notes.push(format!("w3: {}", e));
            json!({ "w1": w1(&p), "w2": w2(&p), "w3": Value::Null })
        }
    };
    let v_eff = or_null(effective_potential(&p), &mut notes, "V_eff");
    let ricci = or_null(ricci_scalar(&p), &mut notes, "ricci");
    let ricci_fd = or_null(curvature_oracle(&p, args.fd_step.max(1e-4)), &mut notes, "ricci_fd");
    let mut body = json!({
        "schema": super::SCHEMA,
        "command": "geometry",
        "rho": p.rho(),
        "r": p.r(),
        "membership": membership.to_string(),
        "g_upper": matrix_json(&g),
        "det": g.determinant(),
        "det_factorized": 6.0 * tau[0] * p.gap(),
        "tau": tau,
        "area_sq": heron_area_sq(&p),
        "w": w,
        "V_eff": v_eff,
        "ricci": ricci,
        "ricci_fd": ricci_fd,
    });
    if let Some(m) = &args.masses {
        let gm = mass_metric(&p, m);
        let v_m = or_null(effective_potential_masses(&p, m), &mut notes, "masses.V_eff");
        body["masses"] = json!({
            "m": masses_json(m),
            "g_upper": matrix_json(&gm),
            "det": gm.determinant(),
            "det_factorized": det_masses(&p, m),
            "V_eff": v_m,
        });
    }
    body["notes"] = json!(notes);
    Ok(emit(EXIT_PASS, body))
}

pub fn oracle(args: &OracleArgs, env_seed: Option<&str>) -> Result<Outcome> {
    let cfg = RunConfig::from_args(&args.sampling, env_seed)?;
    let report = run_check(args.check, cfg.samples, cfg.fd_step, cfg.seed, &cfg.tolerances)?;
    let code = if report.pass { EXIT_PASS } else { EXIT_FAILURE };
    Ok(emit(code, envelope("oracle", &report)))
}

pub fn catalog(args: &CatalogArgs) -> Result<Outcome> {
    let params = args.params.params()?;
    let masses = args.masses.clone().unwrap_or_else(MassTriple::equal);
    let cat = build_catalog(&params, &masses)?;
    let mut body = if args.list_operators {
        json!({
            "schema": super::SCHEMA,
            "command": "catalog",
            "operators": cat.operators.iter().map(|e| json!({ "name": e.name, "tag": e.tag })).collect::<Vec<_>>(),
            "generator_sets": cat.generator_sets.iter().map(|g| json!({
                "algebra": g.algebra,
                "tag": g.tag,
                "members": g.members.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    } else {
        envelope("catalog", &cat)
    };
    body["params"] = params_json(&params);
    body["masses"] = masses_json(&masses);
    Ok(emit(EXIT_PASS, body))
}
