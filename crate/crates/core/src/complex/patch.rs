use std::collections::HashMap;

use super::{twin, ComplexBuilder, ComplexError, FaceId, PentComplex, VertexId, VertexMark};

/// A set of faces of a parent complex together with the edges and vertices they touch.
#[derive(Debug, Clone)]
pub struct Patch<'a> {
    complex: &'a PentComplex,
    faces: Vec<FaceId>,
    whole: bool,
}

/// Result of cutting a patch out into a standalone complex.
#[derive(Debug, Clone)]
pub struct Extracted {
    pub complex: PentComplex,
    /// Parent vertex id of each new vertex.
    pub vertex_origin: Vec<VertexId>,
    /// Parent face id of each new face.
    pub face_origin: Vec<FaceId>,
}

impl Extracted {
    /// New id of parent vertex `v`, if the patch contains it.
    pub fn vertex_id(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_origin.binary_search(&v).ok().map(|i| i as VertexId)
    }
}

impl<'a> Patch<'a> {
    pub fn new(complex: &'a PentComplex, mut faces: Vec<FaceId>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        let whole = faces.len() == complex.face_count();
        Patch {
            complex,
            faces,
            whole,
        }
    }

    pub fn whole(complex: &'a PentComplex) -> Self {
        Patch {
            complex,
            faces: complex.faces().collect(),
            whole: true,
        }
    }

    pub fn complex(&self) -> &'a PentComplex {
        self.complex
    }

    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: FaceId) -> bool {
        if self.whole {
            return (f as usize) < self.complex.face_count();
        }
        self.faces.binary_search(&f).is_ok()
    }

    /// Sorted vertex ids of the closure.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .faces
            .iter()
            .flat_map(|&f| self.complex.face_corners(f).map(|(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn edge_count(&self) -> usize {
        let c = self.complex;
        let mut n = 0;
        for &f in &self.faces {
            for h in c.face_half_edges(f) {
                // Count each edge once: from the lower face id, or from the only face inside.
                match c.face_of(twin(h)) {
                    Some(g) if self.contains(g) => n += (f < g) as usize,
                    _ => n += 1,
                }
            }
        }
        n
    }

    /// `V - E + F` of the closed subcomplex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Whether the faces are connected through shared edges.
    pub fn is_chain_connected(&self) -> bool {
        if self.faces.is_empty() {
            return true;
        }
        let c = self.complex;
        let mut seen = vec![false; self.faces.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for h in c.face_half_edges(self.faces[i]) {
                if let Some(g) = c.face_of(twin(h)) {
                    if let Ok(j) = self.faces.binary_search(&g) {
                        if !seen[j] {
                            seen[j] = true;
                            count += 1;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        count == self.faces.len()
    }

    /// Cuts the patch out as its own complex. Rim cells keep their ambient degree, decoration and
    /// outside labels, as far as the parent knows them.
    pub fn extract(&self) -> Result<Extracted, ComplexError> {
        let c = self.complex;
        let vertex_origin = self.vertices();
        let index: HashMap<VertexId, VertexId> = vertex_origin
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexId))
            .collect();
        let mut b = ComplexBuilder::with_capacity(vertex_origin.len(), self.faces.len());
        let mut corners = Vec::with_capacity(5);
        for &f in &self.faces {
            corners.clear();
            corners.extend(c.face_corners(f).map(|(v, l)| (index[&v], l)));
            b.face(&corners);
        }
        let mut rim_vertices = Vec::new();
        for &f in &self.faces {
            for h in c.face_half_edges(f) {
                let t = twin(h);
                let outside = match c.face_of(t) {
                    Some(g) => !self.contains(g),
                    None => true,
                };
                if outside {
                    let (a, z) = (c.origin(t), c.dest(t));
                    let l = c.corner_label(t);
                    if l != 0 {
                        b.ghost(index[&a], index[&z], l);
                    }
                    rim_vertices.push(a);
                    rim_vertices.push(z);
                }
            }
        }
        rim_vertices.sort_unstable();
        rim_vertices.dedup();
        for v in rim_vertices {
            if let (Some(d), Ok(dec)) = (c.ambient_degree(v), c.vertex_decoration(v)) {
                b.mark(
                    index[&v],
                    VertexMark {
                        degree: d as u8,
                        decoration: dec,
                    },
                );
            }
        }
        Ok(Extracted {
            complex: b.build()?,
            vertex_origin,
            face_origin: self.faces.clone(),
        })
    }
}
