//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON string;
//! the `*_json` functions hold the logic and run natively in tests.

use dynatomic::arith::{fmt_rational_short, parse_rational};
use dynatomic::classify::{catalog, classify_with, family_density_bound, ClassifyOptions, FamilyId};
use dynatomic::Error;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn family(s: &str) -> Result<FamilyId, Error> {
    s.parse()
}

fn render(v: Value) -> String {
    serde_json::to_string(&v).expect("serializable")
}

/// The `n`-th dynatomic polynomial of a family, generic when `v` is empty.
pub fn dynatomic_json(family_name: &str, n: usize, v: &str) -> Result<String, Error> {
    let fam = family(family_name)?;
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(format!("the demo computes periods 1 to 4, got {n}")));
    }
    if v.trim().is_empty() {
        let phi = fam.generic_dynatomic(n)?;
        return Ok(render(json!({
            "family": fam, "n": n, "degree_x": phi.degree_x(), "polynomial": phi.to_string(),
        })));
    }
    let v = parse_rational(v)?;
    let phi = fam.dynatomic_at(n, &v)?;
    Ok(render(json!({
        "family": fam, "n": n, "v": fmt_rational_short(&v), "degree": phi.deg(), "polynomial": phi.to_string(),
    })))
}

/// Classification of the third or fourth dynatomic Galois group at `v`.
pub fn classify_json(family_name: &str, n: usize, v: &str, prime_budget: usize) -> Result<String, Error> {
    let fam = family(family_name)?;
    let v = parse_rational(v)?;
    let opts = ClassifyOptions { prime_budget: prime_budget.clamp(20, 1000), ..ClassifyOptions::default() };
    let r = classify_with(fam, n, &v, &opts)?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

/// Summaries of the candidate groups together with the family's no-root
/// density bound.
pub fn groups_json(family_name: &str, n: usize) -> Result<String, Error> {
    let fam = family(family_name)?;
    let cat = catalog(fam, n)?;
    let groups: Vec<_> = cat.set("P").iter().map(|&c| cat.summary(c)).collect();
    let bound = family_density_bound(fam, n)?;
    Ok(render(json!({
        "family": fam, "n": n, "ambient_classes": cat.lattice().len(),
        "no_root_bound": fmt_rational_short(&bound.no_root_density), "groups": groups,
    })))
}

fn to_js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&render(json!({ "error": e.kind(), "message": e.to_string() }))))
}

#[wasm_bindgen(js_name = dynatomicPolynomial)]
pub fn dynatomic_polynomial(family: &str, n: usize, v: &str) -> Result<String, JsError> {
    to_js(dynatomic_json(family, n, v))
}

#[wasm_bindgen]
pub fn classify(family: &str, n: usize, v: &str, prime_budget: usize) -> Result<String, JsError> {
    to_js(classify_json(family, n, v, prime_budget))
}

#[wasm_bindgen(js_name = candidateGroups)]
pub fn candidate_groups(family: &str, n: usize) -> Result<String, JsError> {
    to_js(groups_json(family, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn polynomial_generic_and_specialized() {
        let g = parse(dynatomic_json("auto", 3, "").unwrap());
        assert_eq!(g["degree_x"], 6);
        let s = parse(dynatomic_json("no-auto", 3, "9/2").unwrap());
        assert_eq!(s["degree"], 6);
        assert!(dynatomic_json("no-auto", 7, "").is_err());
    }

    #[test]
    fn classification_round_trip() {
        let r = parse(classify_json("no-auto", 3, "9/2", 60).unwrap());
        assert_eq!(r["status"], "certified");
        assert_eq!(r["groups"][0]["label"], "C");
        assert_eq!(classify_json("auto", 3, "4", 60).unwrap_err().kind(), "ExcludedParameter");
    }

    #[test]
    fn group_table() {
        let r = parse(groups_json("no-auto", 3).unwrap());
        assert_eq!(r["no_root_bound"], "13/18");
        assert_eq!(r["groups"].as_array().unwrap().len(), 3);
    }
}
