use qgp_core::catalog::{self, expected_table, oracle_comparison, Check, OracleComparison, Params};
use qgp_core::groups::{four_points_identity, icosahedral_identity};
use qgp_core::oracle::OracleSettings;
use qgp_core::quasigalois::CensusSummary;
use qgp_core::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const IDENTITIES: &str = "identities";
pub const SMOOTHNESS_GATE: &str = "smoothness_gate";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub oracle: Vec<OracleComparison>,
    pub warnings: Vec<String>,
    pub summary: Option<CensusSummary>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub strict: bool,
    pub seed: u64,
    pub starts: usize,
    pub cases: Vec<CaseReport>,
}

/// Sorted case names.
pub fn case_names() -> Result<Vec<String>> {
    let mut names: Vec<String> = expected_table()?.iter().map(|e| e.label()).collect();
    names.push(IDENTITIES.into());
    names.push(SMOOTHNESS_GATE.into());
    names.sort();
    Ok(names)
}

/// Resolves `--case` arguments (labels or family names); `None` on an unknown name.
pub fn select(requested: &[String]) -> Result<std::result::Result<Vec<String>, String>> {
    let all = case_names()?;
    if requested.is_empty() {
        return Ok(Ok(all));
    }
    let mut out = Vec::new();
    for r in requested {
        let hits: Vec<&String> = all
            .iter()
            .filter(|n| *n == r || n.split('[').next() == Some(r.as_str()))
            .collect();
        if hits.is_empty() {
            return Ok(Err(r.clone()));
        }
        out.extend(hits.into_iter().cloned());
    }
    out.sort();
    out.dedup();
    Ok(Ok(out))
}

fn passed(name: &str, ok: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed: ok,
        detail,
    }
}

fn identities() -> Vec<Check> {
    let mut out = Vec::new();
    match four_points_identity() {
        Ok(i) => out.push(passed(
            "four_points",
            i.holds(),
            format!(
                "alpha^2 = {}, product square {}",
                i.alpha_square, i.product_square
            ),
        )),
        Err(e) => out.push(passed("four_points", false, e.to_string())),
    }
    match icosahedral_identity(None) {
        Ok(i) => out.push(passed(
            "icosahedral",
            i.holds(),
            format!(
                "diagonal {}, ratio {}, projective order {:?}",
                i.is_diagonal, i.ratio, i.projective_order
            ),
        )),
        Err(e) => out.push(passed("icosahedral", false, e.to_string())),
    }
    out
}

fn smoothness_gate() -> Result<Vec<Check>> {
    let p = |k: &str, v: &str| -> Params { [(k.to_string(), v.to_string())].into_iter().collect() };
    let mut out = Vec::new();
    for (family, a) in [
        ("quartic_xy", "2"),
        ("quartic_xy", "-2"),
        ("quartic_symmetric", "-1"),
    ] {
        let r = catalog::make(family, &p("a", a));
        out.push(passed(
            &format!("{family}[a={a}] rejected"),
            matches!(r, Err(Error::NotSmooth)),
            match r {
                Ok(_) => "accepted".into(),
                Err(e) => e.to_string(),
            },
        ));
    }
    let accepted = expected_table().map(|t| t.len());
    out.push(passed(
        "catalog entries accepted",
        accepted.is_ok(),
        match accepted {
            Ok(n) => format!("{n} entries"),
            Err(e) => e.to_string(),
        },
    ));
    Ok(out)
}

fn run_entry(label: &str, settings: Option<&OracleSettings>, strict: bool) -> Result<CaseReport> {
    let entry = expected_table()?
        .into_iter()
        .find(|e| e.label() == label)
        .expect("label comes from the table");
    let (report, checks) = match catalog::verify(&entry) {
        Ok(v) => v,
        Err(e) => {
            return Ok(CaseReport {
                case: label.into(),
                passed: false,
                checks: vec![passed("census", false, e.to_string())],
                oracle: vec![],
                warnings: vec![],
                summary: None,
            })
        }
    };
    let exact_ok = checks.iter().all(|c| c.passed);
    let oracle = settings
        .map(|s| oracle_comparison(&entry, &report, s))
        .unwrap_or_default();
    let warnings: Vec<String> = oracle
        .iter()
        .filter(|o| !o.agrees())
        .map(|o| format!("oracle n={}: exact {} numeric {}", o.n, o.exact, o.numeric))
        .collect();
    let mut summary = report.summary();
    summary.curve_id = label.into();
    Ok(CaseReport {
        case: label.into(),
        passed: exact_ok && (!strict || warnings.is_empty()),
        checks,
        oracle,
        warnings,
        summary: Some(summary),
    })
}

pub fn run_case(name: &str, settings: Option<&OracleSettings>, strict: bool) -> Result<CaseReport> {
    let checks = match name {
        IDENTITIES => identities(),
        SMOOTHNESS_GATE => smoothness_gate()?,
        label => return run_entry(label, settings, strict),
    };
    Ok(CaseReport {
        case: name.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        oracle: vec![],
        warnings: vec![],
        summary: None,
    })
}

/// Cases run in parallel; within a case the oracle stage follows the exact checks.
pub fn run_suite(
    names: &[String],
    settings: Option<&OracleSettings>,
    strict: bool,
) -> Result<Vec<CaseReport>> {
    names
        .par_iter()
        .map(|n| run_case(n, settings, strict))
        .collect()
}
