use std::fmt;

use base64::Engine;
use serde::{Serialize, Serializer};

use crate::complex::{twin, FaceId, Patch, PentComplex, VertexId};

/// Byte encoding of an anchored patch; equal exactly when the patches are anchored-isomorphic
/// (rim data included).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    /// Form shared by all empty patches.
    pub fn empty() -> Self {
        CanonicalForm(vec![FORMAT, 0])
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_base64(&self) -> String {
        base64::engine::general_purpose::STANDARD.encode(&self.0)
    }

    pub fn from_base64(s: &str) -> Option<Self> {
        base64::engine::general_purpose::STANDARD.decode(s).ok().map(CanonicalForm)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_base64())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_base64())
    }
}

const FORMAT: u8 = 1;
const UNSET: u32 = u32::MAX;

/// Index tables reused across many encodings on the same complex.
#[derive(Debug, Clone, Default)]
pub struct CanonScratch {
    vidx: Vec<u32>,
    vstamp: Vec<u32>,
    fidx: Vec<u32>,
    fstamp: Vec<u32>,
    generation: u32,
    verts: Vec<VertexId>,
    faces: Vec<FaceId>,
    buf: Vec<u8>,
}

fn put(out: &mut Vec<u8>, mut x: u32) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

impl CanonScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn prepare(&mut self, c: &PentComplex) {
        if self.vstamp.len() < c.vertex_count() {
            self.vstamp.resize(c.vertex_count(), 0);
            self.vidx.resize(c.vertex_count(), UNSET);
        }
        if self.fstamp.len() < c.face_count() {
            self.fstamp.resize(c.face_count(), 0);
            self.fidx.resize(c.face_count(), UNSET);
        }
    }

    fn bump(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.vstamp.iter_mut().for_each(|s| *s = 0);
            self.fstamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }

    /// Canonical form of the face set `member` anchored at `v`. The face set must be face-connected.
    pub fn form(&mut self, c: &PentComplex, member: impl Fn(FaceId) -> bool, v: VertexId) -> CanonicalForm {
        self.prepare(c);
        let starts: Vec<(u8, FaceId)> = c
            .rotation(v)
            .iter()
            .filter_map(|&h| c.face_of(h).filter(|&f| member(f)).map(|f| (c.corner_label(h), f)))
            .collect();
        let Some(&(min_label, _)) = starts.iter().min() else {
            return CanonicalForm::empty();
        };
        let mut best: Option<Vec<u8>> = None;
        for &(l, f0) in &starts {
            if l != min_label {
                continue;
            }
            self.encode(c, &member, v, f0);
            if best.as_ref().is_none_or(|b| self.buf < *b) {
                best = Some(self.buf.clone());
            }
        }
        CanonicalForm(best.unwrap())
    }

    fn encode(&mut self, c: &PentComplex, member: &impl Fn(FaceId) -> bool, v: VertexId, f0: FaceId) {
        let g = self.bump();
        self.verts.clear();
        self.faces.clear();
        self.buf.clear();
        self.buf.push(FORMAT);
        self.buf.push(1);
        self.vstamp[v as usize] = g;
        self.vidx[v as usize] = 0;
        self.verts.push(v);
        self.fstamp[f0 as usize] = g;
        self.fidx[f0 as usize] = 0;
        self.faces.push(f0);
        let mut head = 0;
        while head < self.faces.len() {
            let f = self.faces[head];
            head += 1;
            put(&mut self.buf, c.face_size(f) as u32);
            for h in c.face_half_edges(f) {
                let x = c.origin(h);
                if self.vstamp[x as usize] != g {
                    self.vstamp[x as usize] = g;
                    self.vidx[x as usize] = self.verts.len() as u32;
                    self.verts.push(x);
                }
                put(&mut self.buf, self.vidx[x as usize]);
                self.buf.push(c.corner_label(h));
                let t = twin(h);
                match c.face_of(t).filter(|&y| member(y)) {
                    Some(y) => {
                        if self.fstamp[y as usize] != g {
                            self.fstamp[y as usize] = g;
                            self.fidx[y as usize] = self.faces.len() as u32;
                            self.faces.push(y);
                        }
                        put(&mut self.buf, self.fidx[y as usize] + 1);
                    }
                    None => {
                        put(&mut self.buf, 0);
                        self.buf.push(c.corner_label(t));
                    }
                }
            }
        }
        // Ambient data of the vertices on the patch's rim; interior vertices are fixed by the faces.
        put(&mut self.buf, self.faces.len() as u32);
        for i in 0..self.verts.len() {
            let x = self.verts[i];
            let rim = c.rotation(x).iter().any(|&h| !c.face_of(h).is_some_and(member));
            if !rim {
                self.buf.push(0);
                continue;
            }
            self.buf.push(1);
            put(&mut self.buf, c.ambient_degree(x).unwrap_or(0) as u32);
            match c.vertex_decoration(x) {
                Ok(d) => {
                    put(&mut self.buf, d.labels().len() as u32);
                    self.buf.extend_from_slice(d.labels());
                }
                Err(_) => self.buf.push(0),
            }
        }
    }
}

/// Canonical form of patch `p` anchored at `v`.
pub fn canonical_form(p: &Patch, v: VertexId) -> CanonicalForm {
    let mut s = CanonScratch::new();
    s.form(p.complex(), |f| p.contains(f), v)
}
