//! The oriented, decorated pentagonal complex.
//!
//! Storage is half-edge based. Edge `e` owns half-edges `2e` (from `v[0]` to `v[1]`) and `2e + 1`.
//! Every half-edge remembers the face on its left and the label that face puts on the half-edge's
//! origin. A half-edge with no face on its left lies on the truncation rim; its label slot then holds
//! the label the missing ambient face would carry there (0 when unknown).

mod builder;
mod classify;
mod json;
mod patch;
mod validate;

use std::sync::OnceLock;

use thiserror::Error;

use crate::label::{diff_raw, EdgeDecoration, VertexDecoration};

pub use builder::ComplexBuilder;
pub use classify::{PrototileClass, PrototileTable, UndecoratedClass};
pub use json::{ComplexJson, CornerJson, EdgeJson, FaceJson, VertexJson};
pub use patch::{Extracted, Patch};
pub use validate::{ValidationReport, Violation};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type FaceId = u32;
pub type HalfEdge = u32;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {0} is on the rim and its ambient data is unknown")]
    BoundaryVertex(VertexId),
    #[error("edge {0} is on the rim and its ambient data is unknown")]
    BoundaryEdge(EdgeId),
    #[error("corner degree unknown at vertex {vertex} of face {face}")]
    UnknownDegree { face: FaceId, vertex: VertexId },
    #[error("face {face} has {count} corners of degree 4")]
    InvalidFace { face: FaceId, count: usize },
    #[error("no face with id {0}")]
    UnknownFace(FaceId),
    #[error("no vertex with id {0}")]
    UnknownVertex(VertexId),
    #[error("malformed complex: {0}")]
    Build(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Degree and decoration a rim vertex has in the ambient complex it was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMark {
    pub degree: u8,
    pub decoration: VertexDecoration,
}

/// A finite oriented pentagonal complex with per-corner labels and rim marks.
///
/// Immutable after construction; use [`ComplexBuilder`] to make one.
#[derive(Debug)]
pub struct PentComplex {
    pub(crate) he_origin: Vec<VertexId>,
    pub(crate) he_next: Vec<HalfEdge>,
    pub(crate) he_prev: Vec<HalfEdge>,
    pub(crate) he_face: Vec<FaceId>,
    pub(crate) he_label: Vec<u8>,
    pub(crate) face_he: Vec<HalfEdge>,
    pub(crate) face_len: Vec<u8>,
    pub(crate) rot_off: Vec<u32>,
    pub(crate) rot: Vec<HalfEdge>,
    pub(crate) marks: Vec<Option<VertexMark>>,
    pub(crate) rim: OnceLock<Vec<u32>>,
}

impl Clone for PentComplex {
    fn clone(&self) -> Self {
        PentComplex {
            he_origin: self.he_origin.clone(),
            he_next: self.he_next.clone(),
            he_prev: self.he_prev.clone(),
            he_face: self.he_face.clone(),
            he_label: self.he_label.clone(),
            face_he: self.face_he.clone(),
            face_len: self.face_len.clone(),
            rot_off: self.rot_off.clone(),
            rot: self.rot.clone(),
            marks: self.marks.clone(),
            rim: OnceLock::new(),
        }
    }
}

#[inline]
pub fn twin(h: HalfEdge) -> HalfEdge {
    h ^ 1
}

#[inline]
pub fn edge_of(h: HalfEdge) -> EdgeId {
    h >> 1
}

impl PentComplex {
    pub fn vertex_count(&self) -> usize {
        self.rot_off.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.he_origin.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_he.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as u32
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edge_count() as u32
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> {
        0..self.face_count() as u32
    }

    pub fn origin(&self, h: HalfEdge) -> VertexId {
        self.he_origin[h as usize]
    }

    pub fn dest(&self, h: HalfEdge) -> VertexId {
        self.he_origin[twin(h) as usize]
    }

    /// Face on the left of `h`, if present.
    pub fn face_of(&self, h: HalfEdge) -> Option<FaceId> {
        let f = self.he_face[h as usize];
        (f != NONE).then_some(f)
    }

    /// Next half-edge around the left face. Only meaningful when `face_of(h)` is some.
    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        self.he_next[h as usize]
    }

    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        self.he_prev[h as usize]
    }

    /// Label of the left face's corner at `origin(h)`; for rim half-edges the ghost label (0 if unknown).
    pub fn corner_label(&self, h: HalfEdge) -> u8 {
        self.he_label[h as usize]
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        [self.he_origin[2 * e as usize], self.he_origin[2 * e as usize + 1]]
    }

    /// Outgoing half-edges of `v` in positive rotation order. At rim vertices each fan starts right
    /// after a gap.
    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rot[self.rot_off[v as usize] as usize..self.rot_off[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation(v).iter().map(move |&h| self.dest(h))
    }

    /// First half-edge of the face, leaving its smallest-label corner.
    pub fn face_start(&self, f: FaceId) -> HalfEdge {
        self.face_he[f as usize]
    }

    pub fn face_size(&self, f: FaceId) -> usize {
        self.face_len[f as usize] as usize
    }

    /// Half-edges of face `f` in positive order, starting at its smallest-label corner.
    pub fn face_half_edges(&self, f: FaceId) -> FaceWalk<'_> {
        let start = self.face_he[f as usize];
        FaceWalk {
            c: self,
            cur: start,
            left: self.face_len[f as usize] as usize,
        }
    }

    /// `(vertex, label)` corners of `f` in positive order.
    pub fn face_corners(&self, f: FaceId) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.face_half_edges(f)
            .map(move |h| (self.he_origin[h as usize], self.he_label[h as usize]))
    }

    /// The half-edge of `f` leaving the corner labelled `label`.
    pub fn half_edge_at_label(&self, f: FaceId, label: u8) -> Option<HalfEdge> {
        self.face_half_edges(f).find(|&h| self.he_label[h as usize] == label)
    }

    pub fn is_rim_half_edge(&self, h: HalfEdge) -> bool {
        self.he_face[h as usize] == NONE
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.is_rim_half_edge(2 * e) || self.is_rim_half_edge(2 * e + 1)
    }

    /// True when some incident face of `v` is missing.
    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        let r = self.rotation(v);
        r.is_empty() || r.iter().any(|&h| self.is_rim_half_edge(h))
    }

    pub fn mark(&self, v: VertexId) -> Option<&VertexMark> {
        self.marks[v as usize].as_ref()
    }

    /// Incident faces of `v` in positive rotation order (gaps skipped).
    pub fn vertex_faces(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        self.rotation(v).iter().filter_map(move |&h| self.face_of(h))
    }

    /// Degree of `v` in the ambient complex: the actual degree inside, the mark on the rim.
    pub fn ambient_degree(&self, v: VertexId) -> Option<usize> {
        if self.is_boundary_vertex(v) {
            self.mark(v).map(|m| m.degree as usize)
        } else {
            Some(self.degree(v))
        }
    }

    /// Canonical cyclic label sequence around `v`, from the faces or the rim mark.
    pub fn vertex_decoration(&self, v: VertexId) -> Result<VertexDecoration, ComplexError> {
        if (v as usize) >= self.vertex_count() {
            return Err(ComplexError::UnknownVertex(v));
        }
        if self.is_boundary_vertex(v) {
            return self
                .mark(v)
                .map(|m| m.decoration.clone())
                .ok_or(ComplexError::BoundaryVertex(v));
        }
        let seq: Vec<u8> = self.rotation(v).iter().map(|&h| self.he_label[h as usize]).collect();
        Ok(VertexDecoration::from_cyclic(&seq))
    }

    /// Label pairs on `e` from its two sides. Rim edges use the ghost label when known.
    pub fn edge_decoration(&self, e: EdgeId) -> Result<EdgeDecoration, ComplexError> {
        if (e as usize) >= self.edge_count() {
            return Err(ComplexError::BoundaryEdge(e));
        }
        let h = 2 * e;
        let (a, b) = (self.he_label[h as usize], self.he_label[twin(h) as usize]);
        if a == 0 || b == 0 {
            return Err(ComplexError::BoundaryEdge(e));
        }
        Ok(EdgeDecoration::new(
            (a, crate::label::shift_raw(a, 1)),
            (b, crate::label::shift_raw(b, 1)),
        ))
    }

    /// Whether the two sides of `h` satisfy `L_left(v) - L_right(v) in {1, 2}` at `v = origin(h)`.
    /// Unknown ghost labels pass.
    pub(crate) fn edge_rule_holds(&self, h: HalfEdge) -> bool {
        let left = self.he_label[h as usize];
        // twin(h) starts at dest(h), so the right face's label at origin(h) is one more.
        let t = self.he_label[twin(h) as usize];
        if left == 0 || t == 0 {
            return true;
        }
        matches!(diff_raw(left, crate::label::shift_raw(t, 1)), 1 | 2)
    }

    /// Distance from every vertex to the nearest rim vertex (`u32::MAX` when there is no rim).
    pub fn rim_distances(&self) -> &[u32] {
        self.rim.get_or_init(|| {
            let n = self.vertex_count();
            let mut dist = vec![u32::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            for v in self.vertices() {
                if self.is_boundary_vertex(v) {
                    dist[v as usize] = 0;
                    queue.push_back(v);
                }
            }
            while let Some(v) = queue.pop_front() {
                let d = dist[v as usize] + 1;
                for w in self.neighbors(v) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = d;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
    }

    pub fn rim_distance(&self, v: VertexId) -> u32 {
        self.rim_distances()[v as usize]
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Number of connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

pub struct FaceWalk<'a> {
    c: &'a PentComplex,
    cur: HalfEdge,
    left: usize,
}

impl Iterator for FaceWalk<'_> {
    type Item = HalfEdge;
    fn next(&mut self) -> Option<HalfEdge> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        let h = self.cur;
        self.cur = self.c.he_next[h as usize];
        Some(h)
    }
}
