use serde::{Deserialize, Serialize};

use super::{ComplexBuilder, ComplexError, PentComplex, VertexMark};
use crate::label::VertexDecoration;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    /// Outgoing edge ends `2 * edge + end` in positive rotation order.
    pub rot: Vec<u32>,
    pub boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark_degree: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark_decoration: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: u32,
    pub v: [u32; 2],
    pub faces: Vec<u32>,
    /// For rim edges: the outside face's label at the end where it enters the edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghost_label: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerJson {
    pub v: u32,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: u32,
    pub corners: Vec<CornerJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
}

impl PentComplex {
    pub fn to_json_value(&self) -> ComplexJson {
        let vertices = self
            .vertices()
            .map(|v| {
                let m = self.mark(v);
                VertexJson {
                    id: v,
                    rot: self.rotation(v).to_vec(),
                    boundary: self.is_boundary_vertex(v),
                    mark_degree: m.map(|m| m.degree),
                    mark_decoration: m.map(|m| m.decoration.labels().to_vec()),
                }
            })
            .collect();
        let edges = self
            .edges()
            .map(|e| {
                let faces = [2 * e, 2 * e + 1].iter().filter_map(|&h| self.face_of(h)).collect();
                let ghost_label = [2 * e, 2 * e + 1]
                    .iter()
                    .find(|&&h| self.is_rim_half_edge(h) && self.corner_label(h) != 0)
                    .map(|&h| self.corner_label(h));
                EdgeJson {
                    id: e,
                    v: self.edge_endpoints(e),
                    faces,
                    ghost_label,
                }
            })
            .collect();
        let faces = self
            .faces()
            .map(|f| FaceJson {
                id: f,
                corners: self.face_corners(f).map(|(v, label)| CornerJson { v, label }).collect(),
            })
            .collect();
        ComplexJson {
            vertices,
            edges,
            faces,
        }
    }

    /// Compact JSON with all arrays sorted by id; identical complexes give identical bytes.
    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(&self.to_json_value()).expect("complex serializes");
        out.push(b'\n');
        out
    }

    pub fn from_json(bytes: &[u8]) -> Result<PentComplex, ComplexError> {
        let doc: ComplexJson = serde_json::from_slice(bytes).map_err(|e| ComplexError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        PentComplex::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &ComplexJson) -> Result<PentComplex, ComplexError> {
        let bad = |m: String| Err(ComplexError::Build(m));
        for (i, v) in doc.vertices.iter().enumerate() {
            if v.id as usize != i {
                return bad(format!("vertex ids must be 0..n in order; found {} at {i}", v.id));
            }
        }
        for (i, e) in doc.edges.iter().enumerate() {
            if e.id as usize != i {
                return bad(format!("edge ids must be 0..n in order; found {} at {i}", e.id));
            }
        }
        for (i, f) in doc.faces.iter().enumerate() {
            if f.id as usize != i {
                return bad(format!("face ids must be 0..n in order; found {} at {i}", f.id));
            }
        }
        let mut b = ComplexBuilder::with_capacity(doc.vertices.len(), doc.faces.len());
        for e in &doc.edges {
            b.edge(e.v[0], e.v[1]);
        }
        let mut corners = Vec::with_capacity(5);
        for f in &doc.faces {
            corners.clear();
            corners.extend(f.corners.iter().map(|c| (c.v, c.label)));
            b.face(&corners);
        }
        for e in &doc.edges {
            let Some(l) = e.ghost_label else { continue };
            let [a, z] = e.v;
            let Some(&f) = e.faces.first() else {
                return bad(format!("edge {} has no faces", e.id));
            };
            let Some(face) = doc.faces.get(f as usize) else {
                return bad(format!("edge {} names unknown face {f}", e.id));
            };
            let n = face.corners.len();
            let forward = (0..n).any(|k| face.corners[k].v == a && face.corners[(k + 1) % n].v == z);
            if forward {
                b.ghost(z, a, l);
            } else {
                b.ghost(a, z, l);
            }
        }
        for v in &doc.vertices {
            match (v.mark_degree, &v.mark_decoration) {
                (Some(d), Some(dec)) => {
                    b.mark(
                        v.id,
                        VertexMark {
                            degree: d,
                            decoration: VertexDecoration::from_cyclic(dec),
                        },
                    );
                }
                (None, None) => {}
                _ => return bad(format!("vertex {} has a partial mark", v.id)),
            }
        }
        let c = b.build()?;
        for e in &doc.edges {
            let mut faces: Vec<u32> =
                [2 * e.id, 2 * e.id + 1].iter().filter_map(|&h| c.face_of(h)).collect();
            let mut given = e.faces.clone();
            faces.sort_unstable();
            given.sort_unstable();
            if faces != given {
                return bad(format!("edge {} lists faces {:?}, corners give {:?}", e.id, e.faces, faces));
            }
        }
        for v in &doc.vertices {
            let mut derived = c.rotation(v.id).to_vec();
            let mut given = v.rot.clone();
            derived.sort_unstable();
            given.sort_unstable();
            if derived != given {
                return bad(format!("vertex {} rotation disagrees with the faces", v.id));
            }
            if v.boundary != c.is_boundary_vertex(v.id) {
                return bad(format!("vertex {} boundary flag disagrees with the faces", v.id));
            }
            // A hand-written rotation may start anywhere, but must be the same cyclic order.
            if !c.is_boundary_vertex(v.id) && !same_cycle(c.rotation(v.id), &v.rot) {
                return bad(format!("vertex {} rotation is not in positive order", v.id));
            }
        }
        Ok(c)
    }
}

fn same_cycle(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(s) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|k| a[k] == b[(s + k) % b.len()])
}
