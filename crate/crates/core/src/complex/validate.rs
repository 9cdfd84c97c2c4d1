use std::fmt;

use serde::Serialize;

use super::{twin, EdgeId, FaceId, HalfEdge, PentComplex, VertexId, NONE};
use crate::label::{shift_raw, EdgeDecoration, VertexDecoration};

/// One broken invariant found by [`PentComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotPentagon { face: FaceId, corners: usize },
    LabelsNotFiveCycle { face: FaceId, labels: Vec<u8> },
    BadDegree { vertex: VertexId, degree: usize },
    IllegalVertexDecoration { vertex: VertexId, decoration: String },
    IllegalEdgeDecoration { edge: EdgeId, decoration: String },
    NonPlanar { detail: String },
}

impl Violation {
    /// Structural problems make the complex unusable for subdivision; decoration problems do not.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Violation::NotPentagon { .. } | Violation::LabelsNotFiveCycle { .. } | Violation::NonPlanar { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPentagon { face, corners } => {
                write!(f, "face {face}: not a pentagon ({corners} corners)")
            }
            Violation::LabelsNotFiveCycle { face, labels } => {
                write!(f, "face {face}: labels not a 5-cycle {labels:?}")
            }
            Violation::BadDegree { vertex, degree } => {
                write!(f, "vertex {vertex}: degree ∉ {{3,4}} (degree {degree})")
            }
            Violation::IllegalVertexDecoration { vertex, decoration } => {
                write!(f, "vertex {vertex}: illegal decoration {decoration}")
            }
            Violation::IllegalEdgeDecoration { edge, decoration } => {
                write!(f, "edge {edge}: illegal decoration {decoration}")
            }
            Violation::NonPlanar { detail } => write!(f, "non-planar rotation: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_structurally_ok(&self) -> bool {
        !self.violations.iter().any(Violation::is_structural)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl PentComplex {
    /// Checks face shape, label cycles, degrees, decorations and planarity.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        for f in self.faces() {
            let labels: Vec<u8> = self.face_corners(f).map(|(_, l)| l).collect();
            if labels.len() != 5 {
                out.push(Violation::NotPentagon {
                    face: f,
                    corners: labels.len(),
                });
                continue;
            }
            if (0..5).any(|k| labels[(k + 1) % 5] != shift_raw(labels[k], 1)) {
                out.push(Violation::LabelsNotFiveCycle { face: f, labels });
            }
        }
        for v in self.vertices() {
            if self.is_boundary_vertex(v) {
                if let Some(m) = self.mark(v) {
                    if !m.decoration.is_allowed() || m.decoration.degree() != m.degree as usize {
                        out.push(Violation::IllegalVertexDecoration {
                            vertex: v,
                            decoration: m.decoration.to_string(),
                        });
                    }
                }
                continue;
            }
            let d = self.degree(v);
            if d != 3 && d != 4 {
                out.push(Violation::BadDegree { vertex: v, degree: d });
                continue;
            }
            let seq: Vec<u8> = self.rotation(v).iter().map(|&h| self.he_label[h as usize]).collect();
            let dec = VertexDecoration::from_cyclic(&seq);
            if !dec.is_allowed() {
                out.push(Violation::IllegalVertexDecoration {
                    vertex: v,
                    decoration: dec.to_string(),
                });
            }
        }
        for e in self.edges() {
            let h = 2 * e;
            let (a, b) = (self.he_label[h as usize], self.he_label[h as usize + 1]);
            if a == 0 || b == 0 {
                continue;
            }
            let dec = EdgeDecoration::new((a, shift_raw(a, 1)), (b, shift_raw(b, 1)));
            if !dec.is_allowed() || !self.edge_rule_holds(h) {
                out.push(Violation::IllegalEdgeDecoration {
                    edge: e,
                    decoration: dec.to_string(),
                });
            }
        }
        if let Some(detail) = self.planarity_problem() {
            out.push(Violation::NonPlanar { detail });
        }
        ValidationReport { violations: out }
    }

    /// Splits pinched rim vertices into one copy per fan and checks that every face-connected
    /// component is a disk with holes (genus 0, nonempty rim).
    fn planarity_problem(&self) -> Option<String> {
        let nf = self.face_count();
        if nf == 0 {
            return None;
        }
        let mut parent: Vec<u32> = (0..nf as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for e in self.edges() {
            let (f, g) = (self.he_face[2 * e as usize], self.he_face[2 * e as usize + 1]);
            if f != NONE && g != NONE {
                let (a, b) = (find(&mut parent, f), find(&mut parent, g));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        let comp_of_he = |p: &mut Vec<u32>, h: HalfEdge| -> u32 {
            let f = if self.he_face[h as usize] != NONE {
                self.he_face[h as usize]
            } else {
                self.he_face[twin(h) as usize]
            };
            find(p, f)
        };
        // chi and rim-cycle counts per component root.
        let mut chi = vec![0i64; nf];
        let mut cycles = vec![0i64; nf];
        let mut is_root = vec![false; nf];
        for f in self.faces() {
            let r = find(&mut parent, f) as usize;
            is_root[r] = true;
            chi[r] += 1;
        }
        for e in self.edges() {
            let r = comp_of_he(&mut parent, 2 * e) as usize;
            chi[r] -= 1;
        }
        for v in self.vertices() {
            let r = self.rotation(v);
            if r.is_empty() {
                continue;
            }
            let starts: Vec<HalfEdge> = r
                .iter()
                .copied()
                .filter(|&h| self.he_face[twin(h) as usize] == NONE)
                .collect();
            // Each fan becomes its own vertex of the split surface.
            if starts.is_empty() {
                let root = comp_of_he(&mut parent, r[0]) as usize;
                chi[root] += 1;
            }
            for h in starts {
                let root = comp_of_he(&mut parent, h) as usize;
                chi[root] += 1;
            }
        }
        // Rim cycles: from rim half-edge b, continue with the last half-edge of the fan starting at twin(b).
        let nh = self.he_origin.len();
        let mut fan_end = vec![NONE; nh];
        for v in self.vertices() {
            let r = self.rotation(v);
            let mut start = NONE;
            for &h in r {
                if self.he_face[twin(h) as usize] == NONE {
                    start = h;
                }
                if self.he_face[h as usize] == NONE && start != NONE {
                    fan_end[start as usize] = h;
                }
            }
        }
        let mut seen = vec![false; nh];
        for b in 0..nh as u32 {
            if self.he_face[b as usize] != NONE || seen[b as usize] {
                continue;
            }
            let root = comp_of_he(&mut parent, b) as usize;
            cycles[root] += 1;
            let mut cur = b;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                let nxt = fan_end[twin(cur) as usize];
                if nxt == NONE {
                    return Some(format!("rim walk breaks at half-edge {cur}"));
                }
                cur = nxt;
            }
        }
        for r in 0..nf {
            if !is_root[r] {
                continue;
            }
            if cycles[r] == 0 {
                return Some(format!("component of face {r} is closed"));
            }
            let twice_genus = 2 - cycles[r] - chi[r];
            if twice_genus != 0 {
                return Some(format!(
                    "component of face {r} has genus {} (chi {}, {} rim cycles)",
                    twice_genus as f64 / 2.0,
                    chi[r],
                    cycles[r]
                ));
            }
        }
        None
    }
}
