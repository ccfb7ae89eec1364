//! Serializable run reports with JSON and Markdown renderers.
//!
//! JSON output is byte-identical for identical inputs: it carries no
//! timings or worker counts (those go to stderr), and all maps are
//! emitted in fixed field order.

use crate::audit::{AuditReport, AuditWitness};
use crate::ideal::Ideal;
use crate::predicates::{Verdict, Witness};
use crate::ring::FiniteRing;
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One predicate verdict over one ideal. Witness elements are printed
/// as display labels alongside their raw indices.
#[derive(Debug, Clone, Serialize)]
pub struct PredicateRow {
    pub ring: String,
    pub ideal: String,
    pub predicate: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    pub mode: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOut {
    pub elements: Vec<String>,
    pub indices: Vec<u32>,
}

impl WitnessOut {
    pub fn from_witness(ring: &FiniteRing, w: &Witness) -> Self {
        let ids = match w {
            Witness::Pair(a, b) => vec![*a, *b],
            Witness::Single(a) => vec![*a],
        };
        WitnessOut {
            elements: ids.iter().map(|&e| ring.label(e).to_string()).collect(),
            indices: ids.iter().map(|e| e.0).collect(),
        }
    }
}

pub fn predicate_row(ideal: &Ideal, predicate: &str, v: &Verdict) -> PredicateRow {
    let ring = ideal.ring();
    PredicateRow {
        ring: ring.name().to_string(),
        ideal: ideal.describe(),
        predicate: predicate.to_string(),
        holds: v.holds,
        witness: v.witness.as_ref().map(|w| WitnessOut::from_witness(ring, w)),
        mode: v.mode.as_str().to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimRow {
    pub tag: String,
    pub status: String,
    pub instances: u64,
    pub nonvacuous: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AuditWitness>,
    pub notes: String,
}

impl From<&AuditReport> for ClaimRow {
    fn from(r: &AuditReport) -> Self {
        ClaimRow {
            tag: r.claim.as_str().to_string(),
            status: r.status.as_str().to_string(),
            instances: r.instances_checked,
            nonvacuous: r.nonvacuous_instances,
            witness: r.witness.clone(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOut {
    pub predicate: String,
    pub lo: u64,
    pub hi: u64,
    pub matches: Vec<u64>,
}

/// Membership breakdown for one candidate counterexample pair.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessCheck {
    pub ring: String,
    pub ideal: String,
    pub a: String,
    pub b: String,
    pub cube_diff_in_ideal: bool,
    pub diff_in_ideal: bool,
    pub quad_in_ideal: bool,
    pub valid_counterexample: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<PredicateRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<ClaimRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_check: Option<WitnessCheck>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            version: TOOL_VERSION.to_string(),
            results: Vec::new(),
            claims: Vec::new(),
            search: None,
            witness_check: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# ringlab {} — `{}`\n", self.version, self.command));
        if !self.results.is_empty() {
            out.push_str("\n| ring | ideal | predicate | holds | witness | mode |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in &self.results {
                let w = match &r.witness {
                    Some(w) => {
                        let pairs: Vec<String> = w
                            .elements
                            .iter()
                            .zip(&w.indices)
                            .map(|(l, i)| format!("{l} [#{i}]"))
                            .collect();
                        pairs.join(", ")
                    }
                    None => "-".to_string(),
                };
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.ring, r.ideal, r.predicate, r.holds, w, r.mode
                ));
            }
        }
        if !self.claims.is_empty() {
            out.push_str("\n| tag | status | instances | nonvacuous | notes |\n");
            out.push_str("|---|---|---|---|---|\n");
            for c in &self.claims {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    c.tag, c.status, c.instances, c.nonvacuous, c.notes
                ));
                if let Some(w) = &c.witness {
                    out.push_str(&format!(
                        "| | witness | {} | {} | {} ({}) |\n",
                        w.ring,
                        w.ideal,
                        w.elements.join(", "),
                        w.detail
                    ));
                }
            }
        }
        if let Some(s) = &self.search {
            out.push_str(&format!(
                "\n{} over {}..={}: {}\n",
                s.predicate,
                s.lo,
                s.hi,
                s.matches
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        if let Some(w) = &self.witness_check {
            out.push_str(&format!(
                "\nring {} ideal {}: a={}, b={}\n\n\
                 - a^3 - b^3 in I: {}\n\
                 - a - b in I: {}\n\
                 - a^2 + ab + b^2 in I: {}\n\
                 - valid counterexample: {}\n",
                w.ring,
                w.ideal,
                w.a,
                w.b,
                w.cube_diff_in_ideal,
                w.diff_in_ideal,
                w.quad_in_ideal,
                w.valid_counterexample
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::zero_ideal;
    use crate::predicates::{is_cdf, Mode};
    use crate::ring::make_zn;

    #[test]
    fn json_shape_and_determinism() {
        let z8 = make_zn(8).unwrap();
        let i = zero_ideal(&z8);
        let v = is_cdf(&i, Mode::AllPairs, 1).unwrap();
        let mut rep = Report::new("classify Z8 --ideal zero".to_string());
        rep.results.push(predicate_row(&i, "cdf", &v));
        let j1 = rep.to_json();
        let j2 = rep.to_json();
        assert_eq!(j1, j2);
        let parsed: serde_json::Value = serde_json::from_str(&j1).unwrap();
        let row = &parsed["results"][0];
        assert_eq!(row["ring"], "Z8");
        assert_eq!(row["ideal"], "zero");
        assert_eq!(row["predicate"], "cdf");
        assert_eq!(row["holds"], false);
        assert_eq!(row["mode"], "all-pairs");
        assert_eq!(row["witness"]["indices"][1], 2);
        assert!(rep.to_markdown().contains("| Z8 | zero | cdf | false |"));
    }
}
