//! Distances on the 1-skeleton, combinatorial balls and the quantitative ball lemmas.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{twin, EdgeId, FaceId, Patch, PentComplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("ball of radius {radius} at vertex {center} needs rim distance {needed}, have {have}")]
    RimTooClose {
        center: VertexId,
        radius: u32,
        needed: u32,
        have: u32,
    },
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(VertexId, VertexId),
    #[error("no vertex with id {0}")]
    UnknownVertex(VertexId),
}

/// Reusable breadth-first search state. Stamps avoid clearing between runs.
#[derive(Debug, Clone)]
pub struct Bfs {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    parent: Vec<VertexId>,
    generation: u32,
    order: Vec<VertexId>,
    face_stamp: Vec<u32>,
    face_generation: u32,
}

impl Bfs {
    pub fn new(c: &PentComplex) -> Self {
        Bfs {
            stamp: vec![0; c.vertex_count()],
            dist: vec![0; c.vertex_count()],
            parent: vec![0; c.vertex_count()],
            generation: 0,
            order: Vec::new(),
            face_stamp: vec![0; c.face_count()],
            face_generation: 0,
        }
    }

    /// Explores from `src` up to distance `max_depth`. Neighbours are scanned in increasing id order,
    /// so parents (and hence shortest paths) are deterministic.
    pub fn run(&mut self, c: &PentComplex, src: VertexId, max_depth: u32) -> &[VertexId] {
        if self.stamp.len() != c.vertex_count() {
            *self = Bfs::new(c);
        }
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let g = self.generation;
        self.order.clear();
        self.order.push(src);
        self.stamp[src as usize] = g;
        self.dist[src as usize] = 0;
        self.parent[src as usize] = src;
        let mut head = 0;
        let mut nbrs: Vec<VertexId> = Vec::with_capacity(8);
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let d = self.dist[v as usize];
            if d == max_depth {
                continue;
            }
            nbrs.clear();
            nbrs.extend(c.neighbors(v));
            nbrs.sort_unstable();
            for &w in &nbrs {
                if self.stamp[w as usize] != g {
                    self.stamp[w as usize] = g;
                    self.dist[w as usize] = d + 1;
                    self.parent[w as usize] = v;
                    self.order.push(w);
                }
            }
        }
        &self.order
    }

    /// Distance found by the last run, if `v` was reached.
    pub fn dist(&self, v: VertexId) -> Option<u32> {
        (self.stamp[v as usize] == self.generation).then(|| self.dist[v as usize])
    }

    /// Vertices reached by the last run, in BFS order.
    pub fn reached(&self) -> &[VertexId] {
        &self.order
    }

    /// Path from the last source to `v`, source first.
    pub fn path_to(&self, v: VertexId) -> Option<Vec<VertexId>> {
        self.dist(v)?;
        let mut path = vec![v];
        let mut cur = v;
        while self.parent[cur as usize] != cur {
            cur = self.parent[cur as usize];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Faces of `c` whose corners were all reached within `n` by the last run (which must have used
    /// depth at least `n`). Sorted by id.
    pub fn ball_faces(&mut self, c: &PentComplex, n: u32) -> Vec<FaceId> {
        self.face_generation = self.face_generation.wrapping_add(1);
        if self.face_generation == 0 {
            self.face_stamp.iter_mut().for_each(|s| *s = 0);
            self.face_generation = 1;
        }
        let fg = self.face_generation;
        let mut faces = Vec::new();
        for i in 0..self.order.len() {
            let v = self.order[i];
            if self.dist[v as usize] > n {
                break;
            }
            for f in c.vertex_faces(v) {
                if self.face_stamp[f as usize] == fg {
                    continue;
                }
                self.face_stamp[f as usize] = fg;
                if c.face_corners(f).all(|(x, _)| self.dist(x).is_some_and(|d| d <= n)) {
                    faces.push(f);
                }
            }
        }
        faces.sort_unstable();
        faces
    }
}

/// Shortest-path distance with a flag telling whether a shortcut outside the truncation is possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Distance {
    pub dist: u32,
    /// Set when `dist > rim(u) + rim(v)`: a path through the missing ambient complex might be shorter.
    pub rim_limited: bool,
}

pub fn vertex_distance(c: &PentComplex, u: VertexId, v: VertexId) -> Result<Distance, MetricError> {
    for x in [u, v] {
        if x as usize >= c.vertex_count() {
            return Err(MetricError::UnknownVertex(x));
        }
    }
    let mut bfs = Bfs::new(c);
    bfs.run(c, u, u32::MAX);
    let dist = bfs.dist(v).ok_or(MetricError::Disconnected(u, v))?;
    let (ru, rv) = (c.rim_distance(u), c.rim_distance(v));
    Ok(Distance {
        dist,
        rim_limited: (dist as u64) > ru as u64 + rv as u64,
    })
}

/// Combinatorial ball: the faces all of whose corners lie within `radius` of `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ball {
    pub center: VertexId,
    pub radius: u32,
    /// Sorted face ids.
    pub faces: Vec<FaceId>,
    /// Edges with a ball face on exactly one side, sorted.
    pub boundary_edges: Vec<EdgeId>,
    /// `(vertex, distance from center)` for the endpoints of boundary edges, sorted by vertex.
    pub boundary_vertices: Vec<(VertexId, u32)>,
}

impl Ball {
    pub fn patch<'a>(&self, c: &'a PentComplex) -> Patch<'a> {
        Patch::new(c, self.faces.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Minimum rim distance that certifies a ball of radius `n` as identical to the ambient one.
pub fn certification_margin(n: u32) -> u32 {
    n + 2
}

/// The certified ball `B(v, n)`. Fails when the center is closer than `n + 2` to the rim.
pub fn ball(c: &PentComplex, v: VertexId, n: u32) -> Result<Ball, MetricError> {
    let mut bfs = Bfs::new(c);
    ball_with(c, v, n, &mut bfs)
}

pub fn ball_with(c: &PentComplex, v: VertexId, n: u32, bfs: &mut Bfs) -> Result<Ball, MetricError> {
    if v as usize >= c.vertex_count() {
        return Err(MetricError::UnknownVertex(v));
    }
    let have = c.rim_distance(v);
    if have < certification_margin(n) {
        return Err(MetricError::RimTooClose {
            center: v,
            radius: n,
            needed: certification_margin(n),
            have,
        });
    }
    Ok(ball_uncertified(c, v, n, bfs))
}

/// `B(v, n)` computed inside `c` without asking whether `c` reaches far enough.
pub fn ball_uncertified(c: &PentComplex, v: VertexId, n: u32, bfs: &mut Bfs) -> Ball {
    bfs.run(c, v, n);
    let faces = bfs.ball_faces(c, n);
    let patch = Patch::new(c, faces);
    let mut boundary_edges = Vec::new();
    let mut boundary_vertices = Vec::new();
    for &f in patch.faces() {
        for h in c.face_half_edges(f) {
            let inside = c.face_of(twin(h)).is_some_and(|g| patch.contains(g));
            if !inside {
                boundary_edges.push(h >> 1);
                for x in [c.origin(h), c.dest(h)] {
                    boundary_vertices.push((x, bfs.dist(x).expect("ball vertex reached")));
                }
            }
        }
    }
    boundary_edges.sort_unstable();
    boundary_edges.dedup();
    boundary_vertices.sort_unstable();
    boundary_vertices.dedup();
    Ball {
        center: v,
        radius: n,
        faces: patch.faces().to_vec(),
        boundary_edges,
        boundary_vertices,
    }
}

/// Distances of the ball's boundary vertices from its center, sorted.
pub fn boundary_profile(b: &Ball) -> Vec<u32> {
    let mut p: Vec<u32> = b.boundary_vertices.iter().map(|&(_, d)| d).collect();
    p.sort_unstable();
    p
}

/// `1 - chi` of the ball's closed subcomplex.
pub fn hole_count(c: &PentComplex, b: &Ball) -> i64 {
    if b.faces.is_empty() {
        return 0;
    }
    1 - b.patch(c).euler_characteristic()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Growth {
    /// Boundary edges of `B(v, n)`.
    pub m: usize,
    /// Boundary edges of `B(v, n + 1)`.
    pub m_next: usize,
    /// Faces of `B(v, n)`.
    pub faces: usize,
}

impl Growth {
    /// Both growth bounds: `m' <= 10 m` and fewer than `10^(n-1)` faces.
    pub fn within_bounds(&self, n: u32) -> bool {
        let faces_ok = (self.faces as f64) < 10f64.powi(n as i32 - 1);
        self.m_next <= 10 * self.m && faces_ok
    }
}

pub fn boundary_growth(c: &PentComplex, v: VertexId, n: u32) -> Result<Growth, MetricError> {
    let mut bfs = Bfs::new(c);
    let b1 = ball_with(c, v, n + 1, &mut bfs)?;
    let b0 = ball_uncertified(c, v, n, &mut bfs);
    Ok(Growth {
        m: b0.boundary_edges.len(),
        m_next: b1.boundary_edges.len(),
        faces: b0.faces.len(),
    })
}

/// Checks `B(v, 2n-2, sub) ⊆ children(B(v, n, c)) ⊆ B(v, 2n+2, sub)` where `sub` is the subdivision of
/// `c`, so that face `f` of `c` has children `6f..6f+6` and `v` keeps its id.
pub fn sandwich_check(c: &PentComplex, sub: &PentComplex, v: VertexId, n: u32) -> Result<bool, MetricError> {
    let inner_r = (2 * n).saturating_sub(2);
    let outer_r = 2 * n + 2;
    let base = ball(c, v, n)?;
    let inner = ball(sub, v, inner_r)?;
    let outer = ball(sub, v, outer_r)?;
    let mut children: Vec<FaceId> = base.faces.iter().flat_map(|&f| (0..6).map(move |s| 6 * f + s)).collect();
    children.sort_unstable();
    let sorted_subset = |a: &[FaceId], b: &[FaceId]| a.iter().all(|f| b.binary_search(f).is_ok());
    Ok(sorted_subset(&inner.faces, &children) && sorted_subset(&children, &outer.faces))
}

/// Largest distance between two vertices of the ball, measured along edges of the ball itself.
pub fn ball_diameter(c: &PentComplex, b: &Ball) -> u32 {
    let patch = b.patch(c);
    let verts = patch.vertices();
    let idx = |v: VertexId| verts.binary_search(&v).unwrap();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for &f in patch.faces() {
        for h in c.face_half_edges(f) {
            let (a, z) = (idx(c.origin(h)), idx(c.dest(h)));
            adj[a].push(z);
            adj[z].push(a);
        }
    }
    let mut best = 0;
    let mut dist = vec![u32::MAX; verts.len()];
    let mut q = VecDeque::new();
    for s in 0..verts.len() {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s] = 0;
        q.push_back(s);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    best = best.max(dist[y]);
                    q.push_back(y);
                }
            }
        }
    }
    best
}

/// Number of distinct faces having at least one edge of the path.
pub fn path_face_count(c: &PentComplex, path: &[VertexId]) -> usize {
    let mut faces = Vec::new();
    for w in path.windows(2) {
        if let Some(&h) = c.rotation(w[0]).iter().find(|&&h| c.dest(h) == w[1]) {
            faces.extend(c.face_of(h));
            faces.extend(c.face_of(twin(h)));
        }
    }
    faces.sort_unstable();
    faces.dedup();
    faces.len()
}
