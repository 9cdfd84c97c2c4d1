//! Exhaustive search for the label offsets of the rule table.

use serde::Serialize;

use super::{bare_pentagon, subdivide_unchecked, RuleTable};
use crate::complex::PentComplex;
use crate::label::ALLOWED_DEGREE3;

#[derive(Debug, Clone, Serialize)]
pub struct RuleSolveReport {
    /// Tables whose first two levels have only allowed interior decorations.
    pub locally_valid: Vec<RuleTable>,
    /// Of those, tables whose central child corners read the seed list in label order.
    pub seed_matching: Vec<RuleTable>,
    /// Of those, tables still valid one level further down.
    pub stable: Vec<RuleTable>,
    /// Of those, tables where every old corner keeps its label, so an edge half-decoration `12`
    /// becomes `1212`.
    pub label_preserving: Vec<RuleTable>,
    pub chosen: Option<RuleTable>,
}

fn interior_ok(c: &PentComplex) -> bool {
    c.validate().is_ok()
}

fn seed_list_matches(k1: &PentComplex) -> bool {
    // Face 0 is the central child; corner labelled l must carry the l-th seed decoration.
    k1.face_corners(0).all(|(v, l)| {
        k1.vertex_decoration(v)
            .map(|d| d.labels() == ALLOWED_DEGREE3[(l - 1) as usize])
            .unwrap_or(false)
    })
}

/// Tries all 5^6 offset assignments and filters them step by step.
pub fn solve_rule_tables() -> RuleSolveReport {
    let p = bare_pentagon();
    let mut locally_valid = Vec::new();
    let mut seed_matching = Vec::new();
    let mut stable = Vec::new();
    let mut label_preserving = Vec::new();
    for code in 0..5u32.pow(6) {
        let mut offsets = [0u8; 6];
        let mut x = code;
        // Slot 0 is the most significant digit so that codes enumerate tables lexicographically.
        for s in (0..6).rev() {
            offsets[s] = (x % 5) as u8;
            x /= 5;
        }
        let t = RuleTable {
            offsets,
            mirror: false,
        };
        let k1 = subdivide_unchecked(&p, &t);
        if !interior_ok(&k1) {
            continue;
        }
        let k2 = subdivide_unchecked(&k1, &t);
        if !interior_ok(&k2) {
            continue;
        }
        locally_valid.push(t);
        if !seed_list_matches(&k1) {
            continue;
        }
        seed_matching.push(t);
        let k3 = subdivide_unchecked(&k2, &t);
        if !interior_ok(&k3) {
            continue;
        }
        stable.push(t);
        if (1..=5).all(|i| t.label(i, 0) as usize == i) {
            label_preserving.push(t);
        }
    }
    let chosen = label_preserving.first().copied();
    RuleSolveReport {
        locally_valid,
        seed_matching,
        stable,
        label_preserving,
        chosen,
    }
}
