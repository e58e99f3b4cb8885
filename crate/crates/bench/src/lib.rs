//! Shared inputs for the benchmarks.

use std::sync::Arc;

use redcx::{GradedModule, QuotientRing};

pub fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> Arc<QuotientRing> {
    QuotientRing::parse(p, vars, rels, d).expect("valid ring")
}

/// Residue fields over a hypersurface, a complete intersection and a Golod ring.
pub fn residue_fields() -> Vec<(&'static str, GradedModule, usize)> {
    vec![
        ("hypersurface", GradedModule::residue_field(ring(2, &["x"], &["x^2"], 22), 0), 20),
        ("ci", GradedModule::residue_field(ring(2, &["x", "y"], &["x^2", "y^2"], 17), 0), 15),
        ("golod", GradedModule::residue_field(ring(2, &["x", "y"], &["x^2", "x*y", "y^2"], 11), 0), 10),
    ]
}
