//! Structured verification outcomes.
//!
//! A report passes exactly when its residual carries no terms; there are no
//! tolerances anywhere. Everything except the wall-time field is
//! deterministic for identical inputs (parameters and residual terms are
//! ordered maps/vectors), so report streams are reproducible byte-for-byte
//! modulo `ms`.

use crate::tensorcalc::TensorElem;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

const MAX_RENDERED_TERMS: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub residual_terms: Vec<String>,
    pub ms: u128,
}

impl Report {
    /// Build a report from a tensor residual expected to be exactly zero.
    pub fn from_residual(
        check: &str,
        params: BTreeMap<String, String>,
        residual: &TensorElem,
        started: Instant,
    ) -> Report {
        Report {
            check: check.to_string(),
            params,
            pass: residual.is_zero(),
            residual_terms: render_tensor_terms(residual),
            ms: started.elapsed().as_millis(),
        }
    }

    /// Build a report from a list of rendered failures (empty means pass).
    pub fn from_failures(
        check: &str,
        params: BTreeMap<String, String>,
        failures: Vec<String>,
        started: Instant,
    ) -> Report {
        let mut residual_terms = failures;
        if residual_terms.len() > MAX_RENDERED_TERMS {
            let extra = residual_terms.len() - MAX_RENDERED_TERMS;
            residual_terms.truncate(MAX_RENDERED_TERMS);
            residual_terms.push(format!("... ({extra} more)"));
        }
        Report {
            check: check.to_string(),
            params,
            pass: residual_terms.is_empty(),
            residual_terms,
            ms: started.elapsed().as_millis(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Render the terms of a tensor element as individual strings, capped.
pub fn render_tensor_terms(e: &TensorElem) -> Vec<String> {
    let mut out = Vec::new();
    for (key, s) in e.terms() {
        if out.len() == MAX_RENDERED_TERMS {
            out.push(format!("... ({} more)", e.num_terms() - MAX_RENDERED_TERMS));
            break;
        }
        let legs = key
            .iter()
            .map(|m| m.fmt_with(e.ctx()))
            .collect::<Vec<_>>()
            .join(" ⊗ ");
        out.push(format!("({s}) {legs}"));
    }
    out
}

/// Convenience constructor for parameter maps.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
