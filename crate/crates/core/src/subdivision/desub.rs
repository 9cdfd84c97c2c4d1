//! Recognizing a subdivided complex and undoing the subdivision.

use std::collections::HashMap;

use super::RuleTable;
use crate::complex::{twin, ComplexBuilder, FaceId, HalfEdge, PentComplex, VertexId, VertexMark};
use crate::label::VertexDecoration;

const UNCLAIMED: u32 = u32::MAX;

struct FlowerParts {
    u: [VertexId; 5],
    m: [VertexId; 5],
    /// Half-edge `m_{i-1} -> u_i` of petal `i`; its twin sees the face across the parent edge at `u_i`.
    into_u: [HalfEdge; 5],
}

/// Inverse of the rule on a (possibly truncated) pointed complex.
///
/// Faces whose corners all have ambient degree 3 are taken as central children and grouped with
/// their five neighbours into flowers. Flowers cut by the rim are dropped, together with petals whose
/// central child lies outside. Returns `None` when the faces do not partition into flowers consistent
/// with `rule`, or when the anchor is not an old vertex of a complete flower.
///
/// The anchor's flowers reach distance 4 from it, so at least that much context is needed.
pub fn try_desubdivide(
    x: &PentComplex,
    anchor: VertexId,
    rule: &RuleTable,
) -> Option<(PentComplex, VertexId)> {
    let nf = x.face_count();
    let deg = |v: VertexId| x.ambient_degree(v);
    let is_central: Vec<bool> = x
        .faces()
        .map(|f| x.face_size(f) == 5 && x.face_corners(f).all(|(v, _)| deg(v) == Some(3)))
        .collect();

    // Inverse of the old-corner relabelling l -> rule.label(l, 0).
    let mut parent_label = [0u8; 6];
    for l in 1..=5usize {
        parent_label[rule.label(l, 0) as usize] = l as u8;
    }
    if parent_label[1..].contains(&0) {
        return None;
    }

    let mut claimed = vec![UNCLAIMED; nf];
    let mut flowers: Vec<FlowerParts> = Vec::new();
    for f in x.faces() {
        if !is_central[f as usize] {
            continue;
        }
        claimed[f as usize] = f;
        // c_{k+1} is the central corner labelled rule.label(0, k); hc[k] leaves it towards c_{k+2}.
        let mut hc = [0 as HalfEdge; 5];
        for k in 0..5 {
            hc[k] = x.half_edge_at_label(f, rule.label(0, k))?;
        }
        let mut petals: [Option<FaceId>; 5] = [None; 5];
        for k in 0..5 {
            if x.next(hc[k]) != hc[(k + 1) % 5] {
                return None;
            }
            match x.face_of(twin(hc[k])) {
                Some(p) if is_central[p as usize] => return None,
                Some(p) => petals[k] = Some(p),
                None => {}
            }
        }
        for p in petals.iter().flatten() {
            if claimed[*p as usize] != UNCLAIMED {
                return None;
            }
            claimed[*p as usize] = f;
        }
        if petals.iter().any(Option::is_none) {
            continue;
        }
        // Petal i lies across c_i -> c_{i+1}; walking its loop from c_{i+1} gives positions 2, 3, 4, 0, 1.
        let mut parts = FlowerParts {
            u: [0; 5],
            m: [0; 5],
            into_u: [0; 5],
        };
        let mut m_prev = [0u32; 5];
        for k in 0..5 {
            let i = k + 1;
            let mut h = twin(hc[k]);
            for pos in [2, 3, 4, 0, 1] {
                if x.corner_label(h) != rule.label(i, pos) {
                    return None;
                }
                match pos {
                    4 => {
                        m_prev[k] = x.origin(h);
                        parts.into_u[k] = h;
                    }
                    0 => parts.u[k] = x.origin(h),
                    1 => parts.m[k] = x.origin(h),
                    _ => {}
                }
                h = x.next(h);
            }
            if h != twin(hc[k]) {
                return None;
            }
        }
        for k in 0..5 {
            if m_prev[(k + 1) % 5] != parts.m[k] {
                return None;
            }
            if let Some(d) = deg(parts.m[k]) {
                if d != 4 {
                    return None;
                }
            }
        }
        flowers.push(parts);
    }

    // Every face left over must be a petal whose central child was cut off by the rim.
    for g in x.faces() {
        if claimed[g as usize] != UNCLAIMED {
            continue;
        }
        let corners: Vec<(VertexId, u8)> = x.face_corners(g).collect();
        if corners.len() != 5 {
            return None;
        }
        let degs: Vec<Option<usize>> = corners.iter().map(|&(v, _)| deg(v)).collect();
        if degs.iter().any(Option::is_none) {
            continue;
        }
        let hs: Vec<HalfEdge> = x.face_half_edges(g).collect();
        let central_edge = (0..5).find(|&k| {
            degs[k] == Some(3)
                && degs[(k + 1) % 5] == Some(3)
                && degs[(k + 2) % 5] == Some(4)
                && degs[(k + 4) % 5] == Some(4)
        });
        match central_edge {
            Some(k) if x.is_rim_half_edge(twin(hs[k])) => {}
            _ => return None,
        }
    }

    let key = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
    let mut midpoint: HashMap<(VertexId, VertexId), (VertexId, u8)> = HashMap::new();
    for fl in &flowers {
        for k in 0..5 {
            let e = midpoint.entry(key(fl.u[k], fl.u[(k + 1) % 5])).or_insert((fl.m[k], 0));
            if e.0 != fl.m[k] {
                return None;
            }
            e.1 += 1;
        }
    }

    let mut old: Vec<VertexId> = flowers.iter().flat_map(|fl| fl.u).collect();
    old.sort_unstable();
    old.dedup();
    let id = |v: VertexId| old.binary_search(&v).ok().map(|i| i as VertexId);
    let w = id(anchor)?;

    let mut b = ComplexBuilder::with_capacity(old.len(), flowers.len());
    for fl in &flowers {
        let face: Vec<(VertexId, u8)> = (0..5).map(|k| (id(fl.u[k]).unwrap(), (k + 1) as u8)).collect();
        b.face(&face);
    }
    // Parent rim half-edge u_{i+1} -> u_i: the outside parent's label at u_{i+1} is read off the x-face
    // across m_i -> u_{i+1}.
    for fl in &flowers {
        for k in 0..5 {
            let i1 = (k + 1) % 5;
            if midpoint[&key(fl.u[k], fl.u[i1])].1 != 1 {
                continue;
            }
            let across = twin(fl.into_u[i1]);
            let l = x.corner_label(across);
            if l != 0 {
                b.ghost(id(fl.u[i1]).unwrap(), id(fl.u[k]).unwrap(), parent_label[l as usize]);
            }
        }
    }
    for &v in &old {
        if let (Some(d), Ok(dec)) = (x.ambient_degree(v), x.vertex_decoration(v)) {
            let seq: Vec<u8> = dec.labels().iter().map(|&l| parent_label[l as usize]).collect();
            b.mark(
                id(v).unwrap(),
                VertexMark {
                    degree: d as u8,
                    decoration: VertexDecoration::from_cyclic(&seq),
                },
            );
        }
    }
    let y = b.build().ok()?;
    for &v in &old {
        let nv = id(v).unwrap();
        if !y.is_boundary_vertex(nv) && Some(y.degree(nv)) != x.ambient_degree(v) {
            return None;
        }
    }
    if !y.validate().is_ok() {
        return None;
    }
    Some((y, w))
}
