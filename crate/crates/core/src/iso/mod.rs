//! Anchored isomorphism of decorated patches, canonical forms, occurrence search and ball census.
//!
//! Corner labels are distinct within every face, so once one face at the anchor is matched the rest
//! of a chain-connected patch is forced. Matching therefore propagates face by face and never
//! backtracks, apart from choosing the first face at the anchor.

mod canonical;
mod census;

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{twin, FaceId, Patch, PentComplex, VertexId};

pub use canonical::{canonical_form, CanonScratch, CanonicalForm};
pub use census::{ball_census, ball_census_keys, is_locally_isomorphic, BallCensus, CensusEntryJson, CensusJson};

/// How rim data (ambient degrees, decorations and outside labels) takes part in matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarkPolicy {
    /// Rim data must agree; balls "agree" only when their boundaries carry the same ambient data.
    Strict,
    /// Only the faces and their labels are compared.
    IgnoreMarks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Bijection between the two patches.
    Iso,
    /// Injective, incidence-preserving map of the first patch into the second.
    Embed,
}

/// Cell map between two patches fixing an anchor pair; edges follow from the face map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchoredIso {
    pub anchor: (VertexId, VertexId),
    /// Sorted by source vertex.
    pub vertex_map: Vec<(VertexId, VertexId)>,
    /// Sorted by source face.
    pub face_map: Vec<(FaceId, FaceId)>,
}

impl AnchoredIso {
    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().all(|(a, b)| a == b) && self.face_map.iter().all(|(a, b)| a == b)
    }

    pub fn map_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_map
            .binary_search_by_key(&v, |p| p.0)
            .ok()
            .map(|i| self.vertex_map[i].1)
    }
}

/// Scratch state for repeated matching.
#[derive(Debug, Default, Clone)]
pub struct Matcher {
    fmap: HashMap<FaceId, FaceId>,
    frev: HashMap<FaceId, FaceId>,
    vmap: HashMap<VertexId, VertexId>,
    vrev: HashMap<VertexId, VertexId>,
    queue: Vec<(FaceId, FaceId)>,
}

/// Whether `x` touches a face outside the patch (or the complex's rim).
fn on_patch_rim(c: &PentComplex, member: &impl Fn(FaceId) -> bool, x: VertexId) -> bool {
    c.rotation(x)
        .iter()
        .any(|&h| !c.face_of(h).is_some_and(member))
}

impl Matcher {
    pub fn new() -> Self {
        Self::default()
    }

    fn clear(&mut self) {
        self.fmap.clear();
        self.frev.clear();
        self.vmap.clear();
        self.vrev.clear();
        self.queue.clear();
    }

    fn bind_vertex(&mut self, x: VertexId, y: VertexId) -> bool {
        match (self.vmap.get(&x), self.vrev.get(&y)) {
            (Some(&y0), _) if y0 != y => false,
            (_, Some(&x0)) if x0 != x => false,
            (Some(_), Some(_)) => true,
            _ => {
                self.vmap.insert(x, y);
                self.vrev.insert(y, x);
                true
            }
        }
    }

    /// Returns `Some(true)` when newly bound, `Some(false)` when already bound consistently.
    fn bind_face(&mut self, f: FaceId, g: FaceId) -> Option<bool> {
        match (self.fmap.get(&f), self.frev.get(&g)) {
            (Some(&g0), _) if g0 != g => None,
            (_, Some(&f0)) if f0 != f => None,
            (Some(_), Some(_)) => Some(false),
            _ => {
                self.fmap.insert(f, g);
                self.frev.insert(g, f);
                Some(true)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn propagate(
        &mut self,
        a: &PentComplex,
        in_p: &impl Fn(FaceId) -> bool,
        b: &PentComplex,
        in_q: &impl Fn(FaceId) -> bool,
        f0: FaceId,
        g0: FaceId,
        mode: Mode,
        policy: MarkPolicy,
    ) -> bool {
        self.clear();
        self.bind_face(f0, g0);
        self.queue.push((f0, g0));
        while let Some((f, g)) = self.queue.pop() {
            if a.face_size(f) != b.face_size(g) {
                return false;
            }
            for (h, k) in a.face_half_edges(f).zip(b.face_half_edges(g)) {
                if a.corner_label(h) != b.corner_label(k) {
                    return false;
                }
                if !self.bind_vertex(a.origin(h), b.origin(k)) {
                    return false;
                }
                let (th, tk) = (twin(h), twin(k));
                let across_a = a.face_of(th).filter(|&x| in_p(x));
                let across_b = b.face_of(tk).filter(|&x| in_q(x));
                let (la, lb) = (a.corner_label(th), b.corner_label(tk));
                match (across_a, across_b) {
                    (Some(f2), Some(g2)) => {
                        if la != lb {
                            return false;
                        }
                        match self.bind_face(f2, g2) {
                            None => return false,
                            Some(true) => self.queue.push((f2, g2)),
                            Some(false) => {}
                        }
                    }
                    (Some(_), None) => return false,
                    (None, Some(_)) if mode == Mode::Iso => return false,
                    (None, _) => {
                        if policy == MarkPolicy::Strict {
                            let ok = match mode {
                                Mode::Iso => la == lb,
                                Mode::Embed => la == 0 || la == lb,
                            };
                            if !ok {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        if policy == MarkPolicy::Strict {
            for (&x, &y) in &self.vmap {
                if !on_patch_rim(a, in_p, x) {
                    continue;
                }
                let da = (a.ambient_degree(x), a.vertex_decoration(x).ok());
                let db = (b.ambient_degree(y), b.vertex_decoration(y).ok());
                let ok = match mode {
                    Mode::Iso => da == db,
                    Mode::Embed => da.0.is_none() || da == db,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Core matcher. `p_len`/`q_len` are the face counts of the two patches.
    #[allow(clippy::too_many_arguments)]
    fn run(
        &mut self,
        a: &PentComplex,
        in_p: &impl Fn(FaceId) -> bool,
        p_len: usize,
        v: VertexId,
        b: &PentComplex,
        in_q: &impl Fn(FaceId) -> bool,
        q_len: usize,
        w: VertexId,
        mode: Mode,
        policy: MarkPolicy,
    ) -> bool {
        if mode == Mode::Iso && p_len != q_len {
            return false;
        }
        let start = a
            .rotation(v)
            .iter()
            .find_map(|&h| a.face_of(h).filter(|&f| in_p(f)).map(|f| (f, a.corner_label(h))));
        let Some((f0, l0)) = start else {
            self.clear();
            return p_len == 0;
        };
        for &k in b.rotation(w) {
            let Some(g0) = b.face_of(k).filter(|&g| in_q(g)) else {
                continue;
            };
            if b.corner_label(k) != l0 {
                continue;
            }
            if !self.propagate(a, in_p, b, in_q, f0, g0, mode, policy) {
                continue;
            }
            if self.vmap.get(&v) != Some(&w) || self.fmap.len() != p_len {
                continue;
            }
            return true;
        }
        false
    }

    fn result(&self, v: VertexId, w: VertexId) -> AnchoredIso {
        let mut vertex_map: Vec<_> = self.vmap.iter().map(|(&a, &b)| (a, b)).collect();
        let mut face_map: Vec<_> = self.fmap.iter().map(|(&a, &b)| (a, b)).collect();
        vertex_map.sort_unstable();
        face_map.sort_unstable();
        AnchoredIso {
            anchor: (v, w),
            vertex_map,
            face_map,
        }
    }
}

/// The unique anchored isomorphism `(P, v) -> (Q, w)`, if any.
pub fn anchored_isomorphic(p: &Patch, v: VertexId, q: &Patch, w: VertexId) -> Option<AnchoredIso> {
    anchored_isomorphic_with(p, v, q, w, MarkPolicy::Strict)
}

pub fn anchored_isomorphic_with(
    p: &Patch,
    v: VertexId,
    q: &Patch,
    w: VertexId,
    policy: MarkPolicy,
) -> Option<AnchoredIso> {
    let mut m = Matcher::new();
    let (in_p, in_q) = (|f| p.contains(f), |f| q.contains(f));
    m.run(
        p.complex(),
        &in_p,
        p.faces().len(),
        v,
        q.complex(),
        &in_q,
        q.faces().len(),
        w,
        Mode::Iso,
        policy,
    )
    .then(|| m.result(v, w))
}

/// Embeds `(P, v)` into the whole of `haystack` with `v -> w`, if possible.
pub fn anchored_embedding(
    p: &Patch,
    v: VertexId,
    haystack: &PentComplex,
    w: VertexId,
    policy: MarkPolicy,
) -> Option<AnchoredIso> {
    let mut m = Matcher::new();
    let in_p = |f| p.contains(f);
    let all = |_f| true;
    m.run(
        p.complex(),
        &in_p,
        p.faces().len(),
        v,
        haystack,
        &all,
        haystack.face_count(),
        w,
        Mode::Embed,
        policy,
    )
    .then(|| m.result(v, w))
}

/// Every vertex `w` of `haystack` where `(needle, anchor)` embeds, sorted.
pub fn find_occurrences(needle: &Patch, anchor: VertexId, haystack: &PentComplex, policy: MarkPolicy) -> Vec<VertexId> {
    let mut m = Matcher::new();
    let in_p = |f| needle.contains(f);
    let all = |_f| true;
    let a = needle.complex();
    let anchor_degree = a.degree(anchor);
    haystack
        .vertices()
        .filter(|&w| {
            haystack.degree(w) >= anchor_degree
                && m.run(
                    a,
                    &in_p,
                    needle.faces().len(),
                    anchor,
                    haystack,
                    &all,
                    haystack.face_count(),
                    w,
                    Mode::Embed,
                    policy,
                )
        })
        .collect()
}

/// Face-connected components of a patch, each sorted.
pub fn chain_components(p: &Patch) -> Vec<Vec<FaceId>> {
    let c = p.complex();
    let faces = p.faces();
    let mut comp = vec![usize::MAX; faces.len()];
    let mut out: Vec<Vec<FaceId>> = Vec::new();
    for s in 0..faces.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![faces[s]];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let f = members[i];
            i += 1;
            for h in c.face_half_edges(f) {
                if let Some(g) = c.face_of(twin(h)) {
                    if let Ok(j) = faces.binary_search(&g) {
                        if comp[j] == usize::MAX {
                            comp[j] = id;
                            members.push(g);
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// All decoration-preserving automorphisms of `P`, identity first.
///
/// Each face-connected component is matched against every component by trying all anchor images;
/// automorphisms are the combinations that permute components bijectively (at most `limit`).
pub fn automorphisms(p: &Patch, limit: usize) -> Vec<AnchoredIso> {
    let c = p.complex();
    let comps = chain_components(p);
    if comps.is_empty() {
        return vec![AnchoredIso {
            anchor: (0, 0),
            vertex_map: Vec::new(),
            face_map: Vec::new(),
        }];
    }
    let sub: Vec<Patch> = comps.iter().map(|fs| Patch::new(c, fs.clone())).collect();
    let anchors: Vec<VertexId> = sub.iter().map(|s| s.vertices()[0]).collect();
    // options[i] = list of (j, iso) with component i mapped onto component j.
    let mut options: Vec<Vec<(usize, AnchoredIso)>> = Vec::with_capacity(sub.len());
    for i in 0..sub.len() {
        let mut opts = Vec::new();
        for j in 0..sub.len() {
            if sub[i].faces().len() != sub[j].faces().len() {
                continue;
            }
            for w in sub[j].vertices() {
                if let Some(iso) = anchored_isomorphic(&sub[i], anchors[i], &sub[j], w) {
                    opts.push((j, iso));
                }
            }
        }
        options.push(opts);
    }
    let mut out = Vec::new();
    let mut used = vec![false; sub.len()];
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        i: usize,
        options: &[Vec<(usize, AnchoredIso)>],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<AnchoredIso>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == options.len() {
            let mut vertex_map = Vec::new();
            let mut face_map = Vec::new();
            for (k, &o) in chosen.iter().enumerate() {
                vertex_map.extend_from_slice(&options[k][o].1.vertex_map);
                face_map.extend_from_slice(&options[k][o].1.face_map);
            }
            vertex_map.sort_unstable();
            face_map.sort_unstable();
            // Components may share a vertex; the combined map must still be a bijection.
            let mut v2 = vertex_map.clone();
            v2.dedup();
            let consistent = v2.windows(2).all(|w| w[0].0 != w[1].0);
            let mut targets: Vec<VertexId> = v2.iter().map(|p| p.1).collect();
            targets.sort_unstable();
            targets.dedup();
            if consistent && targets.len() == v2.len() {
                let anchor = v2.first().copied().unwrap_or((0, 0));
                out.push(AnchoredIso {
                    anchor,
                    vertex_map: v2,
                    face_map,
                });
            }
            return;
        }
        for (o, (j, _)) in options[i].iter().enumerate() {
            if used[*j] {
                continue;
            }
            used[*j] = true;
            chosen.push(o);
            rec(i + 1, options, used, chosen, out, limit);
            chosen.pop();
            used[*j] = false;
        }
    }
    rec(0, &options, &mut used, &mut chosen, &mut out, limit);
    out.sort_by_key(|iso| !iso.is_identity());
    out
}
