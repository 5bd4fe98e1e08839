//! Browser bindings: a bounds explorer, an editable witness strip checked
//! live against its problem, and the difference edge coloring of a strip.
//!
//! Every export takes and returns JSON strings so the page needs no glue
//! beyond `JSON.parse`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use schur_core::bounds::best_bounds;
use schur_core::constructions::{case1_coloring, case2_coloring, difference_edge_coloring};
use schur_core::{find_mono_solution, Coloring, ProblemSpec};

/// Plain-Rust implementations, usable (and tested) off the browser.
pub mod api {
    use super::*;

    fn spec(ks: &str) -> Result<ProblemSpec, String> {
        ks.parse::<ProblemSpec>().map_err(|e| e.to_string())
    }

    /// Bound report for `"k0,k1,..."`, colors sorted into canonical order.
    pub fn bounds(ks: &str) -> Result<String, String> {
        let report = best_bounds(&spec(ks)?.canonical(), None).map_err(|e| e.to_string())?;
        Ok(report.to_json())
    }

    /// Built-in witness for `case` ("case1" or "case2") and its problem.
    pub fn witness(case: &str, u: usize) -> Result<String, String> {
        let (coloring, ks) = match case {
            "case1" => (case1_coloring(u), vec![3, 3, u]),
            "case2" => (case2_coloring(u), vec![3, 4, u]),
            other => return Err(format!("unknown construction {other:?}")),
        };
        let coloring = coloring.map_err(|e| e.to_string())?;
        let spec = ProblemSpec::new(ks).map_err(|e| e.to_string())?;
        Ok(json!({ "spec": spec, "coloring": coloring }).to_string())
    }

    /// `{"valid": bool, "solution": null | {"color", "xs"}}`.
    pub fn verify(coloring: &str, ks: &str) -> Result<String, String> {
        let coloring = Coloring::from_json(coloring).map_err(|e| e.to_string())?;
        let found = find_mono_solution(&coloring, &spec(ks)?).map_err(|e| e.to_string())?;
        Ok(json!({ "valid": found.is_none(), "solution": found }).to_string())
    }

    /// Edge colors of `K_(n+1)` as `{"m", "colors"}` (upper triangle, row major).
    pub fn difference_matrix(coloring: &str) -> Result<String, String> {
        let coloring = Coloring::from_json(coloring).map_err(|e| e.to_string())?;
        Ok(difference_edge_coloring(&coloring).to_json())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bounds(ks: &str) -> Result<String, JsError> {
    js(api::bounds(ks))
}

#[wasm_bindgen]
pub fn witness(case: &str, u: usize) -> Result<String, JsError> {
    js(api::witness(case, u))
}

#[wasm_bindgen]
pub fn verify(coloring: &str, ks: &str) -> Result<String, JsError> {
    js(api::verify(coloring, ks))
}

#[wasm_bindgen]
pub fn difference_matrix(coloring: &str) -> Result<String, JsError> {
    js(api::difference_matrix(coloring))
}
