//! Truncated points of the discrete hull, the ultrametric `d'` and the subdivision dynamics on them.
//!
//! A point of certified radius `R` stores the ball `B(v, R + 2)` cut out of a source complex whose rim
//! is at least `R + 4` away from `v`. Every ball of radius `n <= R` computed inside the stored
//! realization then coincides with the ambient ball, rim data included.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, ComplexJson, PentComplex, VertexId};
use crate::iso::{CanonScratch, CanonicalForm};
use crate::metric::{ball_uncertified, Bfs};
use crate::subdivision::{subdivide, try_desubdivide, RuleTable, SubdivisionError, SupertileCache};

#[derive(Debug, Error)]
pub enum HullError {
    #[error("radius {radius} cannot be certified here (at most {available})")]
    UncertifiedRadius { radius: u32, available: u32 },
    #[error("d' is only a lower bound for one of the pairs")]
    InexactInputs,
    #[error("vertex {0} is not in the source complex")]
    UnknownVertex(VertexId),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Recipe of a hull point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// `(K, v)` with `v` a vertex id of the supertile `K_level`.
    Supertile { level: u32, vertex: VertexId },
    /// Limit of repeated subdivision of the star of a degree-3 vertex.
    FixedPointDeg3,
    /// Same with a degree-4 vertex.
    FixedPointDeg4,
    /// A pointed complex supplied from outside.
    Explicit,
    /// Image of a point under the subdivision map.
    Omega { of: Box<Generator> },
}

impl Generator {
    /// Whether two points with these recipes are the same hull element by construction.
    fn same_point(&self, other: &Generator) -> bool {
        !self.mentions_explicit() && self == other
    }

    fn mentions_explicit(&self) -> bool {
        match self {
            Generator::Explicit => true,
            Generator::Omega { of } => of.mentions_explicit(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HullPoint {
    pub generator: Generator,
    /// Certified radius.
    pub radius: u32,
    /// `B(anchor, radius + 2)` as a standalone complex.
    pub realization: PentComplex,
    pub anchor: VertexId,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HullPointJson {
    pub generator: Generator,
    pub radius: u32,
    pub anchor: VertexId,
    pub realization: ComplexJson,
}

/// Cuts `B(v, radius + 2)` out of `source`, which must reach at least `radius + 4` beyond `v`.
fn realize(source: &PentComplex, v: VertexId, radius: u32) -> Result<(PentComplex, VertexId), HullError> {
    if v as usize >= source.vertex_count() {
        return Err(HullError::UnknownVertex(v));
    }
    let have = source.rim_distance(v);
    if radius < 2 || have < radius + 4 {
        return Err(HullError::UncertifiedRadius {
            radius,
            available: have.saturating_sub(4),
        });
    }
    Ok(cut(source, v, radius + 2)?)
}

fn cut(source: &PentComplex, v: VertexId, r: u32) -> Result<(PentComplex, VertexId), ComplexError> {
    let mut bfs = Bfs::new(source);
    let b = ball_uncertified(source, v, r, &mut bfs);
    let ex = b.patch(source).extract()?;
    let anchor = ex.vertex_id(v).expect("center lies in its ball");
    Ok((ex.complex, anchor))
}

impl HullPoint {
    /// Wraps a pointed complex; the certified radius is what its rim allows.
    pub fn explicit(c: &PentComplex, anchor: VertexId) -> Result<Self, HullError> {
        let r = c.rim_distance(anchor).min(1 << 20).saturating_sub(4);
        let (realization, anchor) = realize(c, anchor, r)?;
        Ok(HullPoint {
            generator: Generator::Explicit,
            radius: r,
            realization,
            anchor,
        })
    }

    /// The same point with a smaller certified radius.
    pub fn crop(&self, radius: u32) -> Result<Self, HullError> {
        if radius > self.radius || radius < 2 {
            return Err(HullError::UncertifiedRadius {
                radius,
                available: self.radius,
            });
        }
        let (realization, anchor) = cut(&self.realization, self.anchor, radius + 2)?;
        Ok(HullPoint {
            generator: self.generator.clone(),
            radius,
            realization,
            anchor,
        })
    }

    pub fn anchor_degree(&self) -> usize {
        self.realization.degree(self.anchor)
    }

    /// Canonical form of the radius-`n` ball around the anchor. `n` must not exceed the radius.
    pub fn ball_form(&self, n: u32, scratch: &mut CanonScratch) -> CanonicalForm {
        assert!(n <= self.radius, "radius {n} beyond certification {}", self.radius);
        let c = &self.realization;
        let mut bfs = Bfs::new(c);
        bfs.run(c, self.anchor, n);
        let faces = bfs.ball_faces(c, n);
        scratch.form(c, |f| faces.binary_search(&f).is_ok(), self.anchor)
    }

    pub fn to_json_value(&self) -> HullPointJson {
        HullPointJson {
            generator: self.generator.clone(),
            radius: self.radius,
            anchor: self.anchor,
            realization: self.realization.to_json_value(),
        }
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(&self.to_json_value()).expect("hull point serializes");
        out.push(b'\n');
        out
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, HullError> {
        let j: HullPointJson = serde_json::from_slice(bytes).map_err(|e| ComplexError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let realization = PentComplex::from_json_value(&j.realization)?;
        if j.anchor as usize >= realization.vertex_count() {
            return Err(HullError::UnknownVertex(j.anchor));
        }
        Ok(HullPoint {
            generator: j.generator,
            radius: j.radius,
            realization,
            anchor: j.anchor,
        })
    }
}

/// Vertex of `K_2` whose star seeds a fixed point: the lowest-id interior vertex of the given degree.
pub fn fixed_point_seed(k2: &PentComplex, degree: usize) -> Option<VertexId> {
    k2.vertices()
        .find(|&v| !k2.is_boundary_vertex(v) && k2.degree(v) == degree)
}

/// Largest number of subdivisions spent on a fixed-point seed.
const MAX_FIXED_POINT_STEPS: u32 = 9;

fn fixed_point(cache: &SupertileCache, degree: usize, radius: u32) -> Result<HullPoint, HullError> {
    let k2 = cache.get(2)?;
    let v = fixed_point_seed(&k2, degree).expect("K_2 has interior vertices of both degrees");
    // The star is B(v, 2). Subdivision keeps old vertex ids and, at old vertices, corner labels, so
    // the star sits inside its own subdivision and the iterates are nested around `v`.
    let star = crate::complex::Patch::new(&k2, k2.vertex_faces(v).collect()).extract()?;
    let mut anchor = star.vertex_id(v).expect("star contains its center");
    let mut c = star.complex;
    let mut steps = 0;
    while c.rim_distance(anchor) < radius + 4 {
        if steps == MAX_FIXED_POINT_STEPS {
            return Err(SubdivisionError::LimitExceeded {
                requested: steps + 1,
                max: MAX_FIXED_POINT_STEPS,
            }
            .into());
        }
        c = subdivide(&c)?;
        steps += 1;
        // Keep the part that can still matter; distances at most double per step.
        let keep = radius + 6;
        if c.rim_distance(anchor) > keep + 2 {
            let (cropped, a) = cut(&c, anchor, keep)?;
            c = cropped;
            anchor = a;
        }
    }
    let (realization, anchor) = realize(&c, anchor, radius)?;
    Ok(HullPoint {
        generator: if degree == 3 {
            Generator::FixedPointDeg3
        } else {
            Generator::FixedPointDeg4
        },
        radius,
        realization,
        anchor,
    })
}

/// Realizes `generator` with certified radius `radius`.
pub fn make_point(cache: &SupertileCache, generator: &Generator, radius: u32) -> Result<HullPoint, HullError> {
    match generator {
        Generator::Supertile { level, vertex } => {
            let k = cache.get(*level)?;
            let (realization, anchor) = realize(&k, *vertex, radius)?;
            Ok(HullPoint {
                generator: generator.clone(),
                radius,
                realization,
                anchor,
            })
        }
        Generator::FixedPointDeg3 => fixed_point(cache, 3, radius),
        Generator::FixedPointDeg4 => fixed_point(cache, 4, radius),
        Generator::Explicit => Err(HullError::UncertifiedRadius { radius, available: 0 }),
        Generator::Omega { of } => {
            let inner = make_point(cache, of, (radius + 3) / 2)?;
            omega_point(&inner)?.crop(radius)
        }
    }
}

/// `omega(L, v) = (omega(L), v)`, certified at radius `2R - 2`.
pub fn omega_point(x: &HullPoint) -> Result<HullPoint, HullError> {
    omega_point_with_radius(x, 2 * x.radius - 2)
}

/// Like [`omega_point`] with an explicit radius, at most `2R`.
pub fn omega_point_with_radius(x: &HullPoint, radius: u32) -> Result<HullPoint, HullError> {
    if radius > 2 * x.radius {
        return Err(HullError::UncertifiedRadius {
            radius,
            available: 2 * x.radius,
        });
    }
    // The realization holds B(v, R + 2); its subdivision holds B(v, 2R + 2) of the image.
    let sub = subdivide(&x.realization)?;
    let (realization, anchor) = cut(&sub, x.anchor, radius + 2)?;
    Ok(HullPoint {
        generator: Generator::Omega {
            of: Box::new(x.generator.clone()),
        },
        radius,
        realization,
        anchor,
    })
}

/// `d' = min(1/n, 1)` for the largest agreement radius `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DPrime {
    Zero,
    Recip(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DPrimeValue {
    pub value: DPrime,
    /// False when the balls agreed up to the smaller certified radius, so only `d' <= value` is known.
    pub exact: bool,
}

impl DPrimeValue {
    pub fn as_f64(&self) -> f64 {
        match self.value {
            DPrime::Zero => 0.0,
            DPrime::Recip(n) => 1.0 / n.max(1) as f64,
        }
    }

    /// Agreement radius, if the value is nonzero.
    pub fn agreement(&self) -> Option<u32> {
        match self.value {
            DPrime::Zero => None,
            DPrime::Recip(n) => Some(n),
        }
    }
}

/// Largest `n <= min(Rx, Ry)` at which the anchored balls agree, by bisection on the monotone
/// agreement predicate.
pub fn agreement_radius(x: &HullPoint, y: &HullPoint) -> (u32, bool) {
    let top = x.radius.min(y.radius);
    let mut sx = CanonScratch::new();
    let mut sy = CanonScratch::new();
    let mut agree = |n: u32| x.ball_form(n, &mut sx) == y.ball_form(n, &mut sy);
    if agree(top) {
        return (top, false);
    }
    // Radius-1 balls are empty, hence always equal.
    let (mut lo, mut hi) = (1, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if agree(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, true)
}

pub fn d_prime(x: &HullPoint, y: &HullPoint) -> DPrimeValue {
    if x.generator.same_point(&y.generator) {
        return DPrimeValue {
            value: DPrime::Zero,
            exact: true,
        };
    }
    let (n, exact) = agreement_radius(x, y);
    DPrimeValue {
        value: DPrime::Recip(n.max(1)),
        exact,
    }
}

/// Strong triangle inequality in all three arrangements.
pub fn ultrametric_check(x: &HullPoint, y: &HullPoint, z: &HullPoint) -> Result<bool, HullError> {
    let (xy, yz, xz) = (d_prime(x, y), d_prime(y, z), d_prime(x, z));
    if !(xy.exact && yz.exact && xz.exact) {
        return Err(HullError::InexactInputs);
    }
    let (a, b, c) = (xy.as_f64(), yz.as_f64(), xz.as_f64());
    Ok(c <= a.max(b) && a <= b.max(c) && b <= a.max(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuityReport {
    /// Agreement radius of the inputs.
    pub n: u32,
    /// Agreement radius of the images (a lower bound when `image_exact` is false).
    pub image_n: u32,
    pub image_exact: bool,
    /// `d'(wx, wy) <= 1/(2n - 2)`.
    pub within_modulus: bool,
    /// `d'(wx, wy) <= 0.55 d'(x, y)`; only asserted for `n >= 11`.
    pub contracts: Option<bool>,
}

impl ContinuityReport {
    pub fn holds(&self) -> bool {
        self.within_modulus && self.contracts.unwrap_or(true)
    }
}

pub fn continuity_check(x: &HullPoint, y: &HullPoint) -> Result<ContinuityReport, HullError> {
    let d = d_prime(x, y);
    let n = match (d.exact, d.value) {
        (true, DPrime::Recip(n)) if n >= 2 => n,
        _ => return Err(HullError::InexactInputs),
    };
    let (wx, wy) = (omega_point(x)?, omega_point(y)?);
    let (m, image_exact) = agreement_radius(&wx, &wy);
    // An inexact image value still bounds d' from above, which is the direction needed.
    let within_modulus = m >= 2 * n - 2;
    let contracts = (n >= 11).then_some(20 * n <= 11 * m);
    Ok(ContinuityReport {
        n,
        image_n: m,
        image_exact,
        within_modulus,
        contracts,
    })
}

/// Checks that the image of `x` is recognized as an image, and that undoing the subdivision gives
/// back `x` on the radius both sides certify. Returns the radius compared, or `None` on failure.
pub fn injectivity_check(x: &HullPoint) -> Result<Option<u32>, HullError> {
    let y = omega_point(x)?;
    let Some((z, w)) = try_desubdivide(&y.realization, y.anchor, &RuleTable::OMEGA) else {
        return Ok(None);
    };
    let r = x.radius.min(z.rim_distance(w).saturating_sub(2));
    if r < 2 {
        return Ok(None);
    }
    let mut s = CanonScratch::new();
    let mut bfs = Bfs::new(&z);
    bfs.run(&z, w, r);
    let faces = bfs.ball_faces(&z, r);
    let back = s.form(&z, |f| faces.binary_search(&f).is_ok(), w);
    Ok((back == x.ball_form(r, &mut s)).then_some(r))
}

/// Groups point indices by the type of their radius-`n` ball; groups ordered by type.
pub fn bucket_sequence(points: &[HullPoint], n: u32) -> Result<Vec<Vec<usize>>, HullError> {
    let mut buckets: BTreeMap<CanonicalForm, Vec<usize>> = BTreeMap::new();
    let mut s = CanonScratch::new();
    for (i, p) in points.iter().enumerate() {
        if p.radius < n {
            return Err(HullError::UncertifiedRadius {
                radius: n,
                available: p.radius,
            });
        }
        buckets.entry(p.ball_form(n, &mut s)).or_default().push(i);
    }
    Ok(buckets.into_values().collect())
}

/// First candidate at exact distance `0 < d' <= 1/n` from `x`.
pub fn nearby_distinct_point(x: &HullPoint, candidates: &[HullPoint], n: u32) -> Option<(usize, DPrimeValue)> {
    let mut s = CanonScratch::new();
    let key = x.ball_form(n, &mut s);
    candidates.iter().enumerate().find_map(|(i, y)| {
        if y.radius < n || y.ball_form(n, &mut s) != key {
            return None;
        }
        let d = d_prime(x, y);
        (d.exact && d.value != DPrime::Zero).then_some((i, d))
    })
}

/// The vertex playing the role of `v` in superpetal `j`, for `v` in superpetal `i` of `K_{n+1}`.
/// Superpetals are the blocks of `6^n` consecutive faces and share their internal structure.
pub fn corresponding_vertex(k_next: &PentComplex, n: u32, v: VertexId, i: usize, j: usize) -> Option<VertexId> {
    let block = 6u32.checked_pow(n)?;
    let (lo, hi) = (i as u32 * block, (i as u32 + 1) * block);
    let (f, h) = k_next
        .rotation(v)
        .iter()
        .filter_map(|&h| k_next.face_of(h).map(|f| (f, h)))
        .find(|&(f, _)| (lo..hi).contains(&f))?;
    let g = j as u32 * block + (f - lo);
    if g as usize >= k_next.face_count() {
        return None;
    }
    let k = k_next.half_edge_at_label(g, k_next.corner_label(h))?;
    Some(k_next.origin(k))
}

/// A pointed ball that is not the image of anything under subdivision.
#[derive(Debug, Clone)]
pub struct NonImageWitness {
    pub point: HullPoint,
    /// Vertex id of the anchor in the supertile it was found in.
    pub source_vertex: VertexId,
}

/// Searches `K_level` for a vertex inserted by the last subdivision around which recognition of a
/// flower partition fails.
pub fn non_surjectivity_witness(
    cache: &SupertileCache,
    level: u32,
    radius: u32,
) -> Result<Option<NonImageWitness>, HullError> {
    if level == 0 {
        return Ok(None);
    }
    let prev = cache.get(level - 1)?;
    let k = cache.get(level)?;
    for v in prev.vertex_count() as VertexId..k.vertex_count() as VertexId {
        if k.rim_distance(v) < radius + 4 {
            continue;
        }
        let point = make_point(cache, &Generator::Supertile { level, vertex: v }, radius)?;
        if try_desubdivide(&point.realization, point.anchor, &RuleTable::OMEGA).is_none() {
            return Ok(Some(NonImageWitness {
                point,
                source_vertex: v,
            }));
        }
    }
    Ok(None)
}

/// Vertices of `K_level` that certify `radius`, in id order.
pub fn certified_anchors(k: &PentComplex, radius: u32) -> Vec<VertexId> {
    k.vertices().filter(|&v| k.rim_distance(v) >= radius + 4).collect()
}
