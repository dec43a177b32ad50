//! Browser bindings: three interactive operations over the core library,
//! each taking and returning JSON strings so the page stays plain JS.

use wasm_bindgen::prelude::wasm_bindgen;

use esfkit::algebra::{parse_poly, rat};
use esfkit::castelnuovo::SchemeSpec;
use esfkit::criteria::{self, CurveSummary};
use esfkit::resolution::{invariants_from_tree, resolve};
use esfkit::zariski::classify;

fn err(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Resolve a germ at the origin and report its invariant record and the
/// tree of infinitely near points.
#[wasm_bindgen]
pub fn analyze_germ(text: &str) -> String {
    let f = match parse_poly(text) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    let origin = (rat(0), rat(0));
    let tree = match resolve(&f, &origin) {
        Ok(t) => t,
        Err(e) => return err(e),
    };
    let record = match invariants_from_tree(&tree) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let label = classify(&tree, &record);
    serde_json::json!({
        "germ": f.to_string(),
        "label": label,
        "record": record,
        "tree": tree.to_json(),
    })
    .to_string()
}

/// Castelnuovo function of a scheme given in the piece-list JSON schema.
#[wasm_bindgen]
pub fn castelnuovo_profile(spec: &str) -> String {
    let value: serde_json::Value = match serde_json::from_str(spec) {
        Ok(v) => v,
        Err(e) => return err(e),
    };
    let scheme = match SchemeSpec::from_json(&value) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let profile = match scheme.profile() {
        Ok(p) => p,
        Err(e) => return err(e),
    };
    serde_json::json!({
        "degree": scheme.degree(),
        "profile": profile,
    })
    .to_string()
}

/// Evaluate the numerical criteria for a degree and a comma-separated
/// list of singularity types like `A2:6,ord3:2`.
#[wasm_bindgen]
pub fn check_criteria(d: u32, types: &str) -> String {
    let mut list: Vec<(&str, u64)> = Vec::new();
    for part in types.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.rsplit_once(':') {
            Some((name, count)) if count.parse::<u64>().is_ok() => {
                list.push((name, count.parse().unwrap()));
            }
            _ => list.push((part, 1)),
        }
    }
    let summary = match CurveSummary::from_types(d, &list) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let report = criteria::check_all(&summary);
    serde_json::json!({
        "d": d,
        "results": report.results,
        "expected_dimension": {
            "topological": criteria::expected_dimension(&summary, criteria::SchemeKind::Es),
            "fixed_position": criteria::expected_dimension(&summary, criteria::SchemeKind::EsFix),
        },
    })
    .to_string()
}
