use std::collections::HashMap;
use std::sync::OnceLock;

use super::{twin, ComplexError, HalfEdge, PentComplex, VertexId, VertexMark, NONE};

/// Assembles a [`PentComplex`] from face corner loops.
///
/// Edge ids are assigned in order of first use (after any explicitly declared edges), so the same
/// input always yields the same ids.
#[derive(Debug, Clone, Default)]
pub struct ComplexBuilder {
    n_vertices: usize,
    corners: Vec<(VertexId, u8)>,
    face_off: Vec<u32>,
    declared_edges: Vec<[VertexId; 2]>,
    ghosts: Vec<(VertexId, VertexId, u8)>,
    marks: Vec<(VertexId, VertexMark)>,
}

fn key(a: VertexId, b: VertexId) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    ((lo as u64) << 32) | hi as u64
}

impl ComplexBuilder {
    pub fn new(n_vertices: usize) -> Self {
        ComplexBuilder {
            n_vertices,
            face_off: vec![0],
            ..Default::default()
        }
    }

    pub fn with_capacity(n_vertices: usize, n_faces: usize) -> Self {
        let mut b = Self::new(n_vertices);
        b.corners.reserve(5 * n_faces);
        b.face_off.reserve(n_faces);
        b
    }

    /// Adds a face given its corners in positive order.
    pub fn face(&mut self, corners: &[(VertexId, u8)]) -> &mut Self {
        self.corners.extend_from_slice(corners);
        self.face_off.push(self.corners.len() as u32);
        self
    }

    /// Declares edge `a -> b` ahead of the faces, fixing its id and direction.
    pub fn edge(&mut self, a: VertexId, b: VertexId) -> &mut Self {
        self.declared_edges.push([a, b]);
        self
    }

    /// Records the label the missing face left of rim half-edge `a -> b` carries at `a`.
    pub fn ghost(&mut self, a: VertexId, b: VertexId, label: u8) -> &mut Self {
        self.ghosts.push((a, b, label));
        self
    }

    pub fn mark(&mut self, v: VertexId, mark: VertexMark) -> &mut Self {
        self.marks.push((v, mark));
        self
    }

    pub fn build(&self) -> Result<PentComplex, ComplexError> {
        let err = |m: String| Err(ComplexError::Build(m));
        let nv = self.n_vertices;
        let nf = self.face_off.len() - 1;
        let mut edge_ids: HashMap<u64, u32> = HashMap::with_capacity(self.corners.len() / 2 + 16);
        let mut he_origin: Vec<VertexId> = Vec::with_capacity(self.corners.len() + 16);

        for &[a, b] in &self.declared_edges {
            if a as usize >= nv || b as usize >= nv || a == b {
                return err(format!("bad declared edge {a}-{b}"));
            }
            let e = (he_origin.len() / 2) as u32;
            if edge_ids.insert(key(a, b), e).is_some() {
                return err(format!("edge {a}-{b} declared twice"));
            }
            he_origin.push(a);
            he_origin.push(b);
        }

        // Half-edge of each corner, in corner order.
        let mut corner_he: Vec<HalfEdge> = Vec::with_capacity(self.corners.len());
        for f in 0..nf {
            let (s, t) = (self.face_off[f] as usize, self.face_off[f + 1] as usize);
            if t - s < 3 {
                return err(format!("face {f} has {} corners", t - s));
            }
            for k in s..t {
                let a = self.corners[k].0;
                let b = self.corners[if k + 1 == t { s } else { k + 1 }].0;
                let l = self.corners[k].1;
                if a as usize >= nv || b as usize >= nv {
                    return err(format!("face {f} uses unknown vertex"));
                }
                if a == b {
                    return err(format!("face {f} repeats vertex {a} consecutively"));
                }
                if !(1..=5).contains(&l) {
                    return err(format!("face {f} has label {l} outside 1..=5"));
                }
                let e = *edge_ids.entry(key(a, b)).or_insert_with(|| {
                    let e = (he_origin.len() / 2) as u32;
                    he_origin.push(a);
                    he_origin.push(b);
                    e
                });
                let h = if he_origin[2 * e as usize] == a { 2 * e } else { 2 * e + 1 };
                corner_he.push(h);
            }
        }

        let nh = he_origin.len();
        let mut he_face = vec![NONE; nh];
        let mut he_label = vec![0u8; nh];
        let mut he_next = vec![NONE; nh];
        let mut he_prev = vec![NONE; nh];
        let mut face_he = Vec::with_capacity(nf);
        let mut face_len = Vec::with_capacity(nf);
        for f in 0..nf {
            let (s, t) = (self.face_off[f] as usize, self.face_off[f + 1] as usize);
            let mut best = s;
            for k in s..t {
                let h = corner_he[k] as usize;
                if he_face[h] != NONE {
                    let (a, b) = (he_origin[h], he_origin[h ^ 1]);
                    return err(format!(
                        "half-edge {a}->{b} bounds two faces (orientation clash or non-manifold edge)"
                    ));
                }
                he_face[h] = f as u32;
                he_label[h] = self.corners[k].1;
                let kn = if k + 1 == t { s } else { k + 1 };
                he_next[h] = corner_he[kn];
                he_prev[corner_he[kn] as usize] = h as u32;
                if self.corners[k].1 < self.corners[best].1 {
                    best = k;
                }
            }
            face_he.push(corner_he[best]);
            face_len.push((t - s) as u8);
        }

        for e in 0..nh / 2 {
            if he_face[2 * e] == NONE && he_face[2 * e + 1] == NONE {
                return err(format!("edge {e} bounds no face"));
            }
        }

        for &(a, b, l) in &self.ghosts {
            let Some(&e) = edge_ids.get(&key(a, b)) else {
                return err(format!("ghost label on missing edge {a}-{b}"));
            };
            let h = if he_origin[2 * e as usize] == a { 2 * e } else { 2 * e + 1 } as usize;
            if he_face[h] != NONE {
                return err(format!("ghost label on inner half-edge {a}->{b}"));
            }
            if l > 5 {
                return err(format!("ghost label {l} outside 0..=5"));
            }
            he_label[h] = l;
        }

        // Rotation system, CSR by vertex.
        let mut rot_off = vec![0u32; nv + 1];
        for &v in &he_origin {
            rot_off[v as usize + 1] += 1;
        }
        for i in 0..nv {
            rot_off[i + 1] += rot_off[i];
        }
        let mut fill = rot_off.clone();
        let mut out = vec![0u32; nh];
        for (h, &v) in he_origin.iter().enumerate() {
            out[fill[v as usize] as usize] = h as u32;
            fill[v as usize] += 1;
        }
        let mut rot = Vec::with_capacity(nh);
        let mut starts = Vec::new();
        for v in 0..nv {
            let list = &out[rot_off[v] as usize..rot_off[v + 1] as usize];
            let before = rot.len();
            starts.clear();
            starts.extend(list.iter().copied().filter(|&h| he_face[twin(h) as usize] == NONE));
            starts.sort_unstable();
            if starts.is_empty() {
                if let Some(&s) = list.iter().min() {
                    let mut cur = s;
                    loop {
                        rot.push(cur);
                        cur = twin(he_prev[cur as usize]);
                        if cur == s || rot.len() - before > list.len() {
                            break;
                        }
                    }
                }
            } else {
                for &s in &starts {
                    let mut cur = s;
                    loop {
                        rot.push(cur);
                        if he_face[cur as usize] == NONE || rot.len() - before > list.len() {
                            break;
                        }
                        cur = twin(he_prev[cur as usize]);
                    }
                }
            }
            if rot.len() - before != list.len() {
                return err(format!("vertex {v} is not a manifold point"));
            }
        }

        let mut marks: Vec<Option<VertexMark>> = vec![None; nv];
        let mut c = PentComplex {
            he_origin,
            he_next,
            he_prev,
            he_face,
            he_label,
            face_he,
            face_len,
            rot_off,
            rot,
            marks: Vec::new(),
            rim: OnceLock::new(),
        };
        for (v, m) in &self.marks {
            if *v as usize >= nv {
                return err(format!("mark on unknown vertex {v}"));
            }
            if c.is_boundary_vertex(*v) {
                marks[*v as usize] = Some(m.clone());
            }
        }
        c.marks = marks;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> PentComplex {
        let mut b = ComplexBuilder::new(5);
        b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        b.build().unwrap()
    }

    #[test]
    fn single_pentagon_counts() {
        let c = pentagon();
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (5, 5, 1));
        assert_eq!(c.euler_characteristic(), 1);
        assert!(c.vertices().all(|v| c.is_boundary_vertex(v) && c.degree(v) == 2));
        let labels: Vec<u8> = c.face_corners(0).map(|(_, l)| l).collect();
        assert_eq!(labels, [1, 2, 3, 4, 5]);
    }

    #[test]
    fn face_start_is_smallest_label() {
        let mut b = ComplexBuilder::new(5);
        b.face(&[(0, 3), (1, 4), (2, 5), (3, 1), (4, 2)]);
        let c = b.build().unwrap();
        assert_eq!(c.face_corners(0).next(), Some((3, 1)));
    }

    #[test]
    fn orientation_clash_is_rejected() {
        let mut b = ComplexBuilder::new(8);
        b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        b.face(&[(0, 1), (1, 2), (5, 3), (6, 4), (7, 5)]);
        assert!(b.build().is_err());
    }

    #[test]
    fn two_pentagons_share_an_edge() {
        let mut b = ComplexBuilder::new(8);
        b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        b.face(&[(1, 1), (0, 2), (5, 3), (6, 4), (7, 5)]);
        let c = b.build().unwrap();
        assert_eq!(c.edge_count(), 9);
        assert_eq!(c.degree(0), 3);
        let r = c.rotation(0);
        // Fan starts after the gap: the first outgoing edge has no face on its right.
        assert!(c.is_rim_half_edge(twin(r[0])));
        assert!(c.is_rim_half_edge(r[r.len() - 1]));
    }
}
