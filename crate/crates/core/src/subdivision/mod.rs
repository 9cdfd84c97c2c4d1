//! The decorated subdivision rule, supertiles, flowers, de-subdivision and the alternative rules.

mod desub;
mod solver;
mod supertiles;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    edge_of, twin, ComplexBuilder, ComplexError, FaceId, PentComplex, Patch, ValidationReport,
    VertexId, VertexMark,
};
use crate::label::{EdgeDecoration, Label, VertexDecoration};

pub use desub::try_desubdivide;
pub use solver::{solve_rule_tables, RuleSolveReport};
pub use supertiles::{build_supertile, SupertileCache, DEFAULT_MAX_LEVEL};

#[derive(Debug, Error)]
pub enum SubdivisionError {
    #[error("input complex is invalid:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("requested level {requested} exceeds the configured maximum {max}")]
    LimitExceeded { requested: u32, max: u32 },
    #[error("unknown rule variant {0}; expected 0..=4")]
    InvalidVariant(u8),
    #[error("no face with id {0}")]
    UnknownFace(FaceId),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Children of a parent face, in the fixed order central, petal 1..5.
///
/// Central child corners are `(c_1, ..., c_5)`; petal `i` is `(u_i, m_i, c_{i+1}, c_i, m_{i-1})`,
/// where `u_i` is the parent corner labelled `i` and `m_i` the midpoint of `u_i u_{i+1}`.
/// `offsets[s]` is the position (0-based) in child `s`'s corner list that receives label 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RuleTable {
    pub offsets: [u8; 6],
    /// Set for the orientation-reversed presentation of the rule.
    pub mirror: bool,
}

impl RuleTable {
    /// The decorated rule.
    pub const OMEGA: RuleTable = RuleTable {
        offsets: [1, 0, 4, 3, 2, 1],
        mirror: false,
    };

    /// Variant 0 is the decorated rule, 1..=3 rotate the central child's labels by 1..=3 steps
    /// (keeping the petals), 4 is the mirror image of the decorated rule.
    pub fn variant(v: u8) -> Result<RuleTable, SubdivisionError> {
        let central = match v {
            0 => return Ok(Self::OMEGA),
            1 => 4,
            2 => 3,
            3 => 2,
            4 => {
                return Ok(RuleTable {
                    offsets: [0, 0, 4, 3, 2, 1],
                    mirror: true,
                })
            }
            _ => return Err(SubdivisionError::InvalidVariant(v)),
        };
        let mut offsets = Self::OMEGA.offsets;
        offsets[0] = central;
        Ok(RuleTable {
            offsets,
            mirror: false,
        })
    }

    /// Label at corner position `pos` of child `slot` (0 central, `i` petal `i`).
    #[inline]
    pub fn label(&self, slot: usize, pos: usize) -> u8 {
        ((pos + 5 - self.offsets[slot] as usize) % 5) as u8 + 1
    }
}

/// The six children of one parent face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flower {
    pub central: FaceId,
    pub petals: [FaceId; 5],
}

/// The unmarked labelled pentagon: vertices `0..5`, corner `k` labelled `k + 1`.
pub fn bare_pentagon() -> PentComplex {
    let mut b = ComplexBuilder::new(5);
    b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    b.build().expect("pentagon builds")
}

/// `K_0`: one pentagon whose rim carries the ambient data it has as the central child of a flower.
pub fn seed_pentagon() -> PentComplex {
    let k1 = subdivide_unchecked(&bare_pentagon(), &RuleTable::OMEGA);
    // Face 0 of the subdivided pentagon is its central child; renumber its corner labelled l as l - 1.
    let corners: Vec<(VertexId, u8)> = k1.face_corners(0).collect();
    let new_id = |v: VertexId| corners.iter().position(|c| c.0 == v).map(|i| corners[i].1 as u32 - 1);
    let mut b = ComplexBuilder::new(5);
    let face: Vec<(VertexId, u8)> = corners.iter().map(|&(v, l)| (new_id(v).unwrap(), l)).collect();
    b.face(&face);
    for h in k1.face_half_edges(0) {
        let t = twin(h);
        b.ghost(
            new_id(k1.origin(t)).unwrap(),
            new_id(k1.dest(t)).unwrap(),
            k1.corner_label(t),
        );
    }
    for &(v, _) in &corners {
        b.mark(
            new_id(v).unwrap(),
            VertexMark {
                degree: k1.degree(v) as u8,
                decoration: k1.vertex_decoration(v).expect("central corners are interior"),
            },
        );
    }
    b.build().expect("seed builds")
}

/// Applies the decorated rule. The input must pass [`PentComplex::validate`].
pub fn subdivide(c: &PentComplex) -> Result<PentComplex, SubdivisionError> {
    let report = c.validate();
    if !report.is_ok() {
        return Err(SubdivisionError::InvalidInput(report));
    }
    Ok(subdivide_unchecked(c, &RuleTable::OMEGA))
}

/// Applies rule variant `variant` (see [`RuleTable::variant`]). Only structural validity is required,
/// since variants 1..=3 produce decorations outside the allowed sets.
pub fn alt_subdivide(c: &PentComplex, variant: u8) -> Result<PentComplex, SubdivisionError> {
    let table = RuleTable::variant(variant)?;
    subdivide_with(c, &table)
}

/// Applies an arbitrary rule table to a structurally valid complex.
pub fn subdivide_with(c: &PentComplex, table: &RuleTable) -> Result<PentComplex, SubdivisionError> {
    let report = c.validate();
    if !report.is_structurally_ok() {
        return Err(SubdivisionError::InvalidInput(report));
    }
    Ok(subdivide_unchecked(c, table))
}

/// Subdivision without validation. Every face must be a pentagon labelled 1..5 in positive order.
///
/// Ids: old vertices keep theirs, the midpoint of edge `e` is `V + e`, central vertex `c_i` of face
/// `f` is `V + E + 5f + i - 1`, and child `s` of face `f` is face `6f + s`.
pub(crate) fn subdivide_unchecked(c: &PentComplex, t: &RuleTable) -> PentComplex {
    let nv = c.vertex_count() as u32;
    let ne = c.edge_count() as u32;
    let nf = c.face_count();
    let lab = |s: usize, k: usize| t.label(s, k);

    let flowers: Vec<[(VertexId, u8); 30]> = (0..nf as u32)
        .into_par_iter()
        .map(|f| {
            let mut hs = [0u32; 5];
            for h in c.face_half_edges(f) {
                hs[(c.corner_label(h) - 1) as usize] = h;
            }
            let u = |i: usize| c.origin(hs[(i + 4) % 5]);
            let m = |i: usize| nv + edge_of(hs[(i + 4) % 5]);
            let cv = |i: usize| nv + ne + 5 * f + ((i + 4) % 5) as u32;
            let mut out = [(0u32, 0u8); 30];
            for k in 0..5 {
                out[k] = (cv(k + 1), lab(0, k));
            }
            for i in 1..=5 {
                let corners = [u(i), m(i), cv(i + 1), cv(i), m(i + 4)];
                for (k, &v) in corners.iter().enumerate() {
                    out[5 * i + k] = (v, lab(i, k));
                }
            }
            out
        })
        .collect();

    let total = (nv + ne) as usize + 5 * nf;
    let mut b = ComplexBuilder::with_capacity(total, 6 * nf);
    for fl in &flowers {
        for s in 0..6 {
            b.face(&fl[5 * s..5 * s + 5]);
        }
    }
    // Rim: split ghost labels and carry marks over.
    for e in c.edges() {
        for h in [2 * e, 2 * e + 1] {
            if !c.is_rim_half_edge(h) {
                continue;
            }
            let (a, z) = (c.origin(h), c.dest(h));
            let m = nv + e;
            let g = c.corner_label(h);
            if g != 0 {
                b.ghost(a, m, lab(g as usize, 0));
                b.ghost(m, z, lab(Label::new(g).unwrap().shift(1).get() as usize, 4));
                // Inner face F runs z -> a; its label at z is i.
                let i = c.corner_label(twin(h));
                if i != 0 && !c.is_rim_half_edge(twin(h)) {
                    let i1 = Label::new(i).unwrap().shift(1).get() as usize;
                    let g1 = Label::new(g).unwrap().shift(1).get() as usize;
                    let seq = [lab(i1, 4), lab(i as usize, 1), lab(g1, 4), lab(g as usize, 1)];
                    b.mark(
                        m,
                        VertexMark {
                            degree: 4,
                            decoration: VertexDecoration::from_cyclic(&seq),
                        },
                    );
                }
            }
        }
    }
    for v in c.vertices() {
        if let Some(mark) = c.mark(v) {
            if c.is_boundary_vertex(v) {
                let seq: Vec<u8> = mark.decoration.labels().iter().map(|&l| lab(l as usize, 0)).collect();
                b.mark(
                    v,
                    VertexMark {
                        degree: mark.degree,
                        decoration: VertexDecoration::from_cyclic(&seq),
                    },
                );
            }
        }
    }
    b.build().expect("subdivision of a structurally valid complex builds")
}

/// Orientation reversal: every face's corner order is reversed and labels map `l -> 6 - l`.
pub fn mirror(c: &PentComplex) -> PentComplex {
    let mut b = ComplexBuilder::with_capacity(c.vertex_count(), c.face_count());
    let mut corners = Vec::with_capacity(5);
    for f in c.faces() {
        corners.clear();
        corners.extend(c.face_corners(f).map(|(v, l)| (v, 6 - l)));
        corners.reverse();
        b.face(&corners);
    }
    for h in 0..2 * c.edge_count() as u32 {
        if c.is_rim_half_edge(h) && c.corner_label(h) != 0 {
            let l = Label::new(c.corner_label(h)).unwrap().shift(1).mirrored();
            b.ghost(c.dest(h), c.origin(h), l.get());
        }
    }
    for v in c.vertices() {
        if let Some(m) = c.mark(v) {
            let mut seq: Vec<u8> = m.decoration.labels().iter().map(|&l| 6 - l).collect();
            seq.reverse();
            b.mark(
                v,
                VertexMark {
                    degree: m.degree,
                    decoration: VertexDecoration::from_cyclic(&seq),
                },
            );
        }
    }
    b.build().expect("mirror of a valid complex builds")
}

/// The six children of `parent_face` inside `c_sub = subdivide(c)`.
pub fn flower_of(c_sub: &PentComplex, parent_face: FaceId) -> Result<Flower, SubdivisionError> {
    let base = 6 * parent_face as u64;
    if !c_sub.face_count().is_multiple_of(6) || base + 5 >= c_sub.face_count() as u64 {
        return Err(SubdivisionError::UnknownFace(parent_face));
    }
    let base = base as FaceId;
    Ok(Flower {
        central: base,
        petals: [base + 1, base + 2, base + 3, base + 4, base + 5],
    })
}

/// The sub-supertile `K_n^i` of `k_next = K_{n+1}`: the faces descending from child `i` of the
/// seed (0 central, 1..=5 petals).
pub fn supertile_petal(k_next: &PentComplex, n: u32, i: usize) -> Result<Patch<'_>, SubdivisionError> {
    let size = 6u64.pow(n);
    if i > 5 || k_next.face_count() as u64 != 6 * size {
        return Err(SubdivisionError::UnknownFace(i as FaceId));
    }
    let lo = i as u64 * size;
    Ok(Patch::new(k_next, (lo as FaceId..(lo + size) as FaceId).collect()))
}

/// Cells whose decoration is preserved by some nontrivial rotation or reflection.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryAudit {
    pub variant: u8,
    pub depth: u32,
    pub vertices: Vec<(VertexId, String)>,
    pub edges: Vec<(u32, String)>,
}

impl SymmetryAudit {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

/// Whether the cyclic sequence is fixed by a nontrivial rotation or a reflection.
pub fn cyclic_sequence_is_symmetric(seq: &[u8]) -> bool {
    let n = seq.len();
    let rotation = (1..n).any(|k| (0..n).all(|j| seq[j] == seq[(j + k) % n]));
    let reflection = (0..n).any(|k| (0..n).all(|j| seq[j] == seq[(k + n - j) % n]));
    rotation || reflection
}

/// Builds `depth` levels of variant `variant` from the bare pentagon and lists interior cells whose
/// decorations admit a symmetry. An edge is symmetric when the half-turn about its midpoint, which
/// swaps both its ends and its faces, preserves labels: that is, both sides read the same pair.
pub fn symmetry_audit(variant: u8, depth: u32) -> Result<SymmetryAudit, SubdivisionError> {
    let table = RuleTable::variant(variant)?;
    if depth > DEFAULT_MAX_LEVEL {
        return Err(SubdivisionError::LimitExceeded {
            requested: depth,
            max: DEFAULT_MAX_LEVEL,
        });
    }
    let mut c = bare_pentagon();
    for _ in 0..depth {
        c = subdivide_unchecked(&c, &table);
    }
    let mut audit = SymmetryAudit {
        variant,
        depth,
        ..Default::default()
    };
    for v in c.vertices() {
        if c.is_boundary_vertex(v) {
            continue;
        }
        let seq: Vec<u8> = c.rotation(v).iter().map(|&h| c.corner_label(h)).collect();
        if cyclic_sequence_is_symmetric(&seq) {
            audit
                .vertices
                .push((v, VertexDecoration::from_cyclic(&seq).to_string()));
        }
    }
    for e in c.edges() {
        if c.is_boundary_edge(e) {
            continue;
        }
        let (a, b) = (c.corner_label(2 * e), c.corner_label(2 * e + 1));
        if a == b {
            let d = EdgeDecoration::new((a, Label::new(a).unwrap().shift(1).get()), (b, Label::new(b).unwrap().shift(1).get()));
            audit.edges.push((e, d.to_string()));
        }
    }
    Ok(audit)
}
