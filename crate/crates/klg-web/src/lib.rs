//! Browser bindings. Every function takes plain strings and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use klg::klideal::verify_main_theorem;
use klg::polyring::OrderKind;
use klg::symcell::Factorization;
use klg::weyl::CnElement;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: klg::Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn element(text: &str) -> klg::Result<CnElement> {
    let len = if text.contains(',') { text.split(',').count() } else { text.trim().len() };
    CnElement::parse(len / 2, text)
}

/// Type A and type C essential sets of `w` as `[p, q, rank]` triples.
#[wasm_bindgen]
pub fn essential_sets(w: &str) -> String {
    respond(element(w).map(|w| {
        let triples = |bs: Vec<klg::weyl::EssentialBox>| bs.iter().map(|b| [b.p, b.q, b.rank]).collect::<Vec<_>>();
        json!({ "E_A": triples(w.essential_set_a()), "E_C": triples(w.essential_set_c()) })
    }))
}

/// The generic matrix of the patch of `v`, rendered as text.
#[wasm_bindgen]
pub fn patch_matrix(v: &str) -> String {
    respond(element(v).and_then(|v| Factorization::new(&v)).map(|f| {
        json!({
            "ascii": f.generic_matrix().render_ascii(),
            "variables": f.variables().iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        })
    }))
}

/// Gröbner check of the essential minors of `(v, w)` in lex order.
#[wasm_bindgen]
pub fn verify_pair(v: &str, w: &str) -> String {
    respond((|| {
        let f = Factorization::new(&element(v)?)?;
        let report = verify_main_theorem(&f, &element(w)?, OrderKind::Lex, Some(200_000))?;
        Ok(report.to_json())
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calls() {
        assert_eq!(essential_sets("465213"), r#"{"E_A":[[5,1,0],[3,5,3]],"E_C":[[5,1,0]]}"#);
        assert!(patch_matrix("642531").contains("z_33"));
        assert!(patch_matrix("231645").contains("error"));
        let r: Value = serde_json::from_str(&verify_pair("321654", "635241")).unwrap();
        assert_eq!(r["is_gb"], json!(true));
        assert_eq!(r["matches_sr"], json!(true));
    }
}
