//! Property suites over supertiles and hull points. Each suite returns a [`SuiteReport`] with the
//! number of checks, the violations found and whatever it measured along the way.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{FaceId, Patch, PentComplex, VertexId};
use crate::hull::{
    continuity_check, corresponding_vertex, d_prime, injectivity_check, make_point, non_surjectivity_witness,
    omega_point, ultrametric_check, DPrime, Generator, HullError, HullPoint,
};
use crate::iso::{anchored_isomorphic, automorphisms, ball_census, CanonScratch};
use crate::label::{ALLOWED_DEGREE3, ALLOWED_DEGREE4};
use crate::metric::{
    ball_diameter, ball_uncertified, boundary_growth, boundary_profile, hole_count, path_face_count, sandwich_check,
    Bfs,
};
use crate::subdivision::{
    seed_pentagon, solve_rule_tables, subdivide_with, symmetry_audit, try_desubdivide, RuleTable, SubdivisionError,
    SupertileCache,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub property: String,
    pub checked: u64,
    pub violation_count: u64,
    /// The first few violations, described.
    pub violations: Vec<String>,
    pub findings: BTreeMap<String, Value>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: &str, property: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            property: property.to_string(),
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            findings: BTreeMap::new(),
            passed: false,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED {
                self.violations.push(describe());
            }
        }
    }

    fn note(&mut self, key: &str, value: impl Serialize) {
        self.findings
            .insert(key.to_string(), serde_json::to_value(value).expect("finding serializes"));
    }

    /// Passes when nothing was violated and `extra` holds.
    fn finish(mut self, extra: bool) -> Self {
        self.passed = self.violation_count == 0 && self.checked > 0 && extra;
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} violations",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.checked,
            self.violation_count
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Hull(#[from] HullError),
}

pub const SUITES: &[&str] = &[
    "decorations",
    "prototiles",
    "rule-table",
    "ball-lemmas",
    "holes",
    "rigidity",
    "sandwich",
    "desubdivision",
    "hull-metric",
    "fixed-points",
    "census",
    "isolated-points",
    "symmetry",
];

/// Parameters shared by the suites; each suite reads the ones it needs.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub level: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            level: None,
            samples: None,
            seed: DEFAULT_SEED,
        }
    }
}

pub fn run_suite(cache: &SupertileCache, name: &str, o: SuiteOptions) -> Result<SuiteReport, VerifyError> {
    let s = o.samples;
    Ok(match name {
        "decorations" => decorations(cache, o.level.unwrap_or(7))?,
        "prototiles" => prototiles(cache, o.level.unwrap_or(7))?,
        "rule-table" => rule_table(),
        "ball-lemmas" => ball_lemmas(cache, o.level.unwrap_or(7), s.unwrap_or(500), 12, o.seed)?,
        "holes" => holes(cache, o.level.unwrap_or(7), 33)?,
        "rigidity" => rigidity(cache, o.level.unwrap_or(6), s.unwrap_or(200), o.seed)?,
        "sandwich" => sandwich(cache, s.unwrap_or(500), o.seed)?,
        "desubdivision" => desubdivision(cache)?,
        "hull-metric" => hull_metric(cache, s.unwrap_or(200), 100, o.seed)?,
        "ultrametric" => hull_metric(cache, s.unwrap_or(200), 0, o.seed)?,
        "continuity" => hull_metric(cache, 0, s.unwrap_or(100), o.seed)?,
        "fixed-points" | "fixedpoint" => fixed_points(cache, &[8, 16, 32])?,
        "injectivity" => desubdivision(cache)?,
        "census" => census(cache, 4, o.level.unwrap_or(7))?,
        "isolated-points" => isolated_points(cache, s.unwrap_or(20), 4, o.seed)?,
        "symmetry" => symmetry(3)?,
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    })
}

/// Vertex and edge decorations over the interior of `K_n`.
pub fn decorations(cache: &SupertileCache, n: u32) -> Result<SuiteReport, VerifyError> {
    let k = cache.get(n)?;
    let mut r = SuiteReport::new(
        "decorations",
        "interior vertex and edge decorations lie in the five allowed triples, quadruples and pairs",
    );
    let mut vertex_classes = BTreeSet::new();
    let mut edge_classes = BTreeSet::new();
    for v in k.vertices().filter(|&v| !k.is_boundary_vertex(v)) {
        let d = k.vertex_decoration(v).expect("interior vertex");
        r.check(d.is_allowed(), || format!("vertex {v}: {d}"));
        vertex_classes.insert(d.to_string());
    }
    for e in k.edges().filter(|&e| !k.is_boundary_edge(e)) {
        let d = k.edge_decoration(e).expect("interior edge");
        r.check(d.is_allowed(), || format!("edge {e}: {d}"));
        edge_classes.insert(d.to_string());
    }
    let deg3 = vertex_classes.iter().filter(|s| s.len() == 3).count();
    let deg4 = vertex_classes.iter().filter(|s| s.len() == 4).count();
    r.note("vertex_classes", &vertex_classes);
    r.note("edge_classes", &edge_classes);
    r.note("supertile", n);
    Ok(r.finish(deg3 == ALLOWED_DEGREE3.len() && deg4 == ALLOWED_DEGREE4.len() && edge_classes.len() == 5))
}

/// Undecorated and decorated prototile classes over faces of `K_n` away from the rim.
pub fn prototiles(cache: &SupertileCache, n: u32) -> Result<SuiteReport, VerifyError> {
    let k = cache.get(n)?;
    let mut r = SuiteReport::new("prototiles", "interior faces realize 3 undecorated and 11 decorated classes");
    let mut undecorated = BTreeMap::new();
    let mut decorated = BTreeMap::new();
    for f in k.faces() {
        if k.face_corners(f).any(|(v, _)| k.is_boundary_vertex(v)) {
            continue;
        }
        match k.classify_face(f) {
            Ok(class) => {
                r.check(true, String::new);
                *undecorated.entry(class.undecorated.to_string()).or_insert(0u64) += 1;
                *decorated.entry(class.decorated).or_insert(0u64) += 1;
            }
            Err(e) => r.check(false, || format!("face {f}: {e}")),
        }
    }
    let ok = undecorated.len() == 3 && decorated.len() == 11;
    r.note("undecorated", &undecorated);
    r.note("decorated", &decorated);
    Ok(r.finish(ok))
}

/// The label-offset search and the stability of its choice.
pub fn rule_table() -> SuiteReport {
    let mut r = SuiteReport::new(
        "rule-table",
        "the offset search recovers the seed decorations 135,124,235,134,245 and a stable table",
    );
    let report = solve_rule_tables();
    r.note(
        "multiplicities",
        json!({
            "locally_valid": report.locally_valid.len(),
            "seed_matching": report.seed_matching.len(),
            "stable": report.stable.len(),
            "label_preserving": report.label_preserving.len(),
        }),
    );
    r.note("chosen", report.chosen);
    r.check(report.chosen == Some(RuleTable::OMEGA), || {
        format!("chosen table {:?} differs from the built-in one", report.chosen)
    });
    let seed = seed_pentagon();
    let decs: Vec<String> = seed
        .vertices()
        .map(|v| seed.vertex_decoration(v).map(|d| d.to_string()).unwrap_or_default())
        .collect();
    r.check(decs == ["135", "124", "235", "134", "245"], || format!("seed decorations {decs:?}"));
    r.note("seed_decorations", &decs);
    if let Some(t) = report.chosen {
        let mut c = seed;
        for depth in 1..=4 {
            c = match subdivide_with(&c, &t) {
                Ok(next) => next,
                Err(e) => {
                    r.check(false, || format!("depth {depth}: {e}"));
                    break;
                }
            };
            r.check(c.validate().is_ok(), || format!("depth {depth} invalid"));
        }
    }
    r.finish(true)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The quantitative ball lemmas on random certified (center, radius) pairs.
pub fn ball_lemmas(
    cache: &SupertileCache,
    level: u32,
    samples: usize,
    max_n: u32,
    seed: u64,
) -> Result<SuiteReport, VerifyError> {
    let k = cache.get(level)?;
    let mut r = SuiteReport::new(
        "ball-lemmas",
        "boundary distances in {n-1,n}; (n-1)-close vertices inside; diameter <= 2n; chain-connected; growth <= 10x and < 10^(n-1) faces; minimal paths cross n/2..2n faces",
    );
    let mut g = rng(seed);
    let mut bfs = Bfs::new(&k);
    let mut max_ratio = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < samples && attempts < samples * 100 {
        attempts += 1;
        let v = g.gen_range(0..k.vertex_count() as VertexId);
        let n = g.gen_range(2..=max_n);
        if k.rim_distance(v) < n + 3 {
            continue;
        }
        done += 1;
        let b = ball_uncertified(&k, v, n, &mut bfs);
        let profile = boundary_profile(&b);
        r.check(profile.iter().all(|&d| d + 1 == n || d == n), || {
            format!("center {v} radius {n}: boundary distances {:?}", profile.iter().collect::<BTreeSet<_>>())
        });
        let patch = b.patch(&k);
        let inside = patch.vertices();
        let missing = bfs
            .reached()
            .iter()
            .filter(|&&x| bfs.dist(x).unwrap() < n && inside.binary_search(&x).is_err())
            .count();
        r.check(missing == 0, || format!("center {v} radius {n}: {missing} close vertices outside"));
        let diam = ball_diameter(&k, &b);
        r.check(diam <= 2 * n, || format!("center {v} radius {n}: diameter {diam}"));
        r.check(patch.is_chain_connected(), || format!("center {v} radius {n}: not chain-connected"));
        // Every reached vertex but the center has a neighbor one step closer.
        let ok = bfs.reached().iter().all(|&x| {
            let d = bfs.dist(x).unwrap();
            d == 0 || k.neighbors(x).any(|y| bfs.dist(y) == Some(d - 1))
        });
        r.check(ok, || format!("center {v}: distance field without predecessor"));
        if let Some(&(far, _)) = b.boundary_vertices.iter().find(|&&(_, d)| d == n) {
            let path = bfs.path_to(far).expect("reached");
            let faces = path_face_count(&k, &path);
            let ok = 2 * faces >= n as usize && faces <= 2 * n as usize;
            r.check(ok, || format!("center {v} radius {n}: path crosses {faces} faces"));
        }
        let growth = boundary_growth(&k, v, n).expect("certified by the rim check");
        r.check(growth.within_bounds(n), || format!("center {v} radius {n}: {growth:?}"));
        if growth.m > 0 {
            max_ratio = max_ratio.max(growth.m_next as f64 / growth.m as f64);
        }
    }
    r.note("pairs", done);
    r.note("max_growth_ratio", max_ratio);
    Ok(r.finish(done >= samples))
}

/// Scans certified centers of `K_level` in id order for a radius-`radius` ball with a hole.
pub fn holes(cache: &SupertileCache, level: u32, radius: u32) -> Result<SuiteReport, VerifyError> {
    let k = cache.get(level)?;
    let mut r = SuiteReport::new("holes", "some certified ball of the given radius has a hole");
    let mut bfs = Bfs::new(&k);
    let mut scanned = 0u64;
    let mut found = None;
    for v in k.vertices() {
        if k.rim_distance(v) < radius + 2 {
            continue;
        }
        scanned += 1;
        let b = ball_uncertified(&k, v, radius, &mut bfs);
        let h = hole_count(&k, &b);
        if h >= 1 {
            found = Some((v, h, b.faces.len()));
            break;
        }
    }
    r.checked = scanned;
    r.note("scanned", scanned);
    r.note("radius", radius);
    if let Some((v, h, faces)) = found {
        r.note("center", v);
        r.note("holes", h);
        r.note("faces", faces);
        let first = (2..=radius).find(|&n| hole_count(&k, &ball_uncertified(&k, v, n, &mut bfs)) > 0);
        r.note("smallest_radius_with_holes_at_center", first);
        // Vertices in the holes are farther than the radius yet enclosed by the ball.
        let ball = ball_uncertified(&k, v, radius, &mut bfs);
        let inside = ball.patch(&k).vertices();
        let enclosed = k
            .vertices()
            .filter(|&x| inside.binary_search(&x).is_err())
            .filter(|&x| bfs.dist(x).is_some_and(|d| d <= radius))
            .count();
        r.note("enclosed_vertices_within_radius", enclosed);
    }
    Ok(r.finish(found.is_some()))
}

/// Grows a random chain-connected face set of `size` faces from a random face.
fn random_patch(k: &PentComplex, g: &mut ChaCha8Rng, size: usize) -> Vec<FaceId> {
    let start = g.gen_range(0..k.face_count() as FaceId);
    let mut faces = vec![start];
    let mut frontier = Vec::new();
    let push_neighbors = |f: FaceId, frontier: &mut Vec<FaceId>| {
        for h in k.face_half_edges(f) {
            if let Some(n) = k.face_of(crate::complex::twin(h)) {
                frontier.push(n);
            }
        }
    };
    push_neighbors(start, &mut frontier);
    while faces.len() < size && !frontier.is_empty() {
        let i = g.gen_range(0..frontier.len());
        let f = frontier.swap_remove(i);
        if faces.contains(&f) {
            continue;
        }
        faces.push(f);
        push_neighbors(f, &mut frontier);
    }
    faces
}

/// Anchored self-isomorphisms of random simply-connected patches are trivial.
pub fn rigidity(cache: &SupertileCache, level: u32, samples: usize, seed: u64) -> Result<SuiteReport, VerifyError> {
    let k = cache.get(level)?;
    let mut r = SuiteReport::new(
        "rigidity",
        "every anchored self-isomorphism of a simply-connected patch is the identity",
    );
    let mut g = rng(seed);
    let mut patches = 0;
    let mut anchors = 0u64;
    while patches < samples {
        let size = g.gen_range(1..=60);
        let p = Patch::new(&k, random_patch(&k, &mut g, size));
        if !p.is_chain_connected() || p.euler_characteristic() != 1 {
            continue;
        }
        patches += 1;
        for v in p.vertices() {
            anchors += 1;
            let ok = anchored_isomorphic(&p, v, &p, v).is_some_and(|iso| iso.is_identity());
            r.check(ok, || format!("patch of {} faces, anchor {v}", p.faces().len()));
        }
        let auts = automorphisms(&p, 4);
        r.check(auts.len() == 1 && auts[0].is_identity(), || {
            format!("patch of {} faces has {} automorphisms", p.faces().len(), auts.len())
        });
    }
    r.note("patches", patches);
    r.note("anchors", anchors);
    Ok(r.finish(true))
}

/// The sandwich inclusions for every vertex of `K_4` and the doubling of distances under subdivision.
pub fn sandwich(cache: &SupertileCache, pairs: usize, seed: u64) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new(
        "sandwich",
        "B(v,2n-2) ⊆ children of B(v,n) ⊆ B(v,2n+2), and subdivision doubles distances",
    );
    // K_4 sits in the middle of K_6; its vertices there are far enough from the rim for n <= 8.
    let (k6, k7) = (cache.get(6)?, cache.get(7)?);
    let k4 = cache.get(4)?;
    let mut uncertified = 0;
    for v in k4.vertices() {
        let w = cache.include(5, cache.include(4, v)?)?;
        for n in 3..=8 {
            match sandwich_check(&k6, &k7, w, n) {
                Ok(ok) => r.check(ok, || format!("K_4 vertex {v} (id {w} in K_6), n = {n}")),
                Err(_) => uncertified += 1,
            }
        }
    }
    r.note("uncertified", uncertified);
    let mut g = rng(seed);
    let mut b6 = Bfs::new(&k6);
    let mut b7 = Bfs::new(&k7);
    let mut done = 0;
    let mut max_dist = 0;
    while done < pairs {
        let u = g.gen_range(0..k6.vertex_count() as VertexId);
        if k6.rim_distance(u) < 24 {
            continue;
        }
        let reach = b6.run(&k6, u, 20).to_vec();
        let v = *reach.choose(&mut g).expect("nonempty");
        let d = b6.dist(v).unwrap();
        if d > k6.rim_distance(u) + k6.rim_distance(v) {
            continue;
        }
        done += 1;
        max_dist = max_dist.max(d);
        b7.run(&k7, u, 2 * d + 1);
        let d7 = b7.dist(v);
        r.check(d7 == Some(2 * d), || format!("{u}-{v}: {d} became {d7:?}"));
    }
    r.note("doubling_pairs", done);
    r.note("max_pair_distance", max_dist);
    Ok(r.finish(uncertified == 0))
}

/// Undoing the subdivision on pointed complexes, and a pointed ball that is not an image.
pub fn desubdivision(cache: &SupertileCache) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new(
        "desubdivision",
        "recognition inverts the subdivision at every anchor; some pointed ball is not an image",
    );
    let (k3, k4) = (cache.get(3)?, cache.get(4)?);
    let whole3 = Patch::whole(&k3);
    for v in k3.vertices() {
        let ok = try_desubdivide(&k4, v, &RuleTable::OMEGA).is_some_and(|(z, w)| {
            anchored_isomorphic(&Patch::whole(&z), w, &whole3, v).is_some()
        });
        r.check(ok, || format!("K_3 vertex {v}"));
    }
    for gen in [Generator::FixedPointDeg3, Generator::FixedPointDeg4] {
        let x = make_point(cache, &gen, 16)?;
        let compared = injectivity_check(&x)?;
        r.check(compared.is_some(), || format!("{gen:?}"));
        r.note(&format!("{gen:?}_compared_radius"), compared);
    }
    let witness = non_surjectivity_witness(cache, 4, 4)?;
    r.check(witness.is_some(), || "no ball without a flower partition found".to_string());
    if let Some(w) = witness {
        r.note("non_image_witness_vertex_in_K4", w.source_vertex);
        r.note("non_image_witness_radius", w.point.radius);
    }
    Ok(r.finish(true))
}

/// Random hull points anchored in `K_level` with certified radius `radius`.
pub fn sample_points(
    cache: &SupertileCache,
    level: u32,
    radius: u32,
    count: usize,
    g: &mut ChaCha8Rng,
) -> Result<Vec<HullPoint>, VerifyError> {
    let k = cache.get(level)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = g.gen_range(0..k.vertex_count() as VertexId);
        if k.rim_distance(v) < radius + 4 {
            continue;
        }
        out.push(make_point(cache, &Generator::Supertile { level, vertex: v }, radius)?);
    }
    Ok(out)
}

/// Picks from `pool` a point whose radius-`n` ball matches that of `x`, other than `x` itself.
fn bucket_mate(
    pool: &[HullPoint],
    forms: &[crate::iso::CanonicalForm],
    i: usize,
    g: &mut ChaCha8Rng,
) -> Option<usize> {
    let mates: Vec<usize> = (0..pool.len()).filter(|&j| j != i && forms[j] == forms[i]).collect();
    mates.choose(g).copied()
}

/// Ultrametric axioms on exact triples and the continuity modulus of the subdivision map.
pub fn hull_metric(
    cache: &SupertileCache,
    triples: usize,
    pairs: usize,
    seed: u64,
) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new(
        "hull-metric",
        "d' is symmetric, vanishes on the diagonal, satisfies the strong triangle inequality, and d'(wx,wy) <= 1/(2n-2), <= 0.55 d'(x,y) for n >= 11",
    );
    let mut g = rng(seed);
    let pool = sample_points(cache, 6, 10, 400, &mut g)?;
    let mut s = CanonScratch::new();
    let forms3: Vec<_> = pool.iter().map(|p| p.ball_form(3, &mut s)).collect();
    // Triples mixing near and far points, so that all three distances are not just 1.
    let mut done = 0;
    let mut inexact = 0;
    let mut values = BTreeMap::new();
    while done < triples {
        let i = g.gen_range(0..pool.len());
        let j = bucket_mate(&pool, &forms3, i, &mut g).unwrap_or_else(|| g.gen_range(0..pool.len()));
        let l = if g.gen_bool(0.5) {
            bucket_mate(&pool, &forms3, j, &mut g).unwrap_or(i)
        } else {
            g.gen_range(0..pool.len())
        };
        let (x, y, z) = (&pool[i], &pool[j], &pool[l]);
        match ultrametric_check(x, y, z) {
            Ok(ok) => {
                done += 1;
                r.check(ok, || format!("triple ({i}, {j}, {l})"));
                let (a, b) = (d_prime(x, y), d_prime(y, x));
                r.check(a == b, || format!("asymmetric pair ({i}, {j})"));
                *values.entry(format!("{:?}", a.value)).or_insert(0u64) += 1;
            }
            Err(_) => inexact += 1,
        }
    }
    if triples > 0 {
        r.note("triple_value_histogram", &values);
        r.note("inexact_triples_skipped", inexact);
        for (i, x) in pool.iter().enumerate().take(20) {
            let d = d_prime(x, x);
            r.check(d.value == DPrime::Zero && d.exact, || format!("d'(x,x) for point {i}: {d:?}"));
        }
        // Anchors of different degree differ at radius 2.
        let (a3, a4) = (
            pool.iter().find(|p| p.anchor_degree() == 3),
            pool.iter().find(|p| p.anchor_degree() == 4),
        );
        if let (Some(a), Some(b)) = (a3, a4) {
            let d = d_prime(a, b);
            r.check(d.value == DPrime::Recip(1) && d.exact, || format!("different degrees: {d:?}"));
        }
    }
    if pairs > 0 {
        let mut done = 0;
        let mut by_n = BTreeMap::new();
        let mut attempts = 0;
        while done < pairs && attempts < 50 * pairs {
            attempts += 1;
            let i = g.gen_range(0..pool.len());
            let Some(j) = bucket_mate(&pool, &forms3, i, &mut g) else {
                continue;
            };
            match continuity_check(&pool[i], &pool[j]) {
                Ok(rep) => {
                    done += 1;
                    *by_n.entry(rep.n).or_insert(0u64) += 1;
                    r.check(rep.holds(), || format!("pair ({i}, {j}): {rep:?}"));
                }
                Err(HullError::InexactInputs) => {}
                Err(e) => return Err(e.into()),
            }
        }
        r.note("continuity_pairs_by_n", &by_n);
        let long = long_agreement_pairs(cache, 8, &mut g)?;
        let mut ratios = Vec::new();
        for (x, y) in &long {
            let rep = continuity_check(x, y)?;
            r.check(rep.holds() && rep.contracts == Some(true), || format!("long pair: {rep:?}"));
            ratios.push((rep.n, rep.image_n));
        }
        r.note("long_pairs_n_and_image_n", &ratios);
        r.check(long.len() == 8, || format!("only {} pairs with n >= 11 found", long.len()));
        r.note("continuity_pairs", done + long.len());
        return Ok(r.finish(done >= pairs));
    }
    Ok(r.finish(true))
}

/// Exact pairs with agreement radius at least 11: matching vertices in two superpetals of `K_7`.
pub fn long_agreement_pairs(
    cache: &SupertileCache,
    count: usize,
    g: &mut ChaCha8Rng,
) -> Result<Vec<(HullPoint, HullPoint)>, VerifyError> {
    let radius = 24;
    let k7 = cache.get(7)?;
    let block = 6u32.pow(6);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 5000 {
        attempts += 1;
        let f = block + g.gen_range(0..block);
        let v = k7.face_corners(f).next().unwrap().0;
        let Some(w) = corresponding_vertex(&k7, 6, v, 1, 2) else {
            continue;
        };
        if k7.rim_distance(v) < radius + 4 || k7.rim_distance(w) < radius + 4 {
            continue;
        }
        let x = make_point(cache, &Generator::Supertile { level: 7, vertex: v }, radius)?;
        let y = make_point(cache, &Generator::Supertile { level: 7, vertex: w }, radius)?;
        let d = d_prime(&x, &y);
        if d.exact && d.agreement().is_some_and(|n| n >= 11) {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Both fixed points come back to themselves under subdivision at every tested radius.
pub fn fixed_points(cache: &SupertileCache, radii: &[u32]) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new("fixed-points", "d'(w x, x) <= 1/R for both fixed-point tilings");
    for gen in [Generator::FixedPointDeg3, Generator::FixedPointDeg4] {
        for &radius in radii {
            let x = make_point(cache, &gen, radius)?;
            let wx = omega_point(&x)?;
            let d = d_prime(&wx, &x);
            r.check(d.as_f64() <= 1.0 / radius as f64, || format!("{gen:?} R={radius}: {d:?}"));
            let want = if gen == Generator::FixedPointDeg3 { 3 } else { 4 };
            r.check(x.anchor_degree() == want, || format!("{gen:?}: anchor degree {}", x.anchor_degree()));
        }
    }
    r.note("radii", radii);
    Ok(r.finish(true))
}

/// Census key sets for radii up to `max_n` over `K_m`, `m <= max_level`: monotone and stabilizing.
pub fn census(cache: &SupertileCache, max_n: u32, max_level: u32) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new(
        "census",
        "ball types of each radius grow monotonically with the supertile and stop changing",
    );
    let mut table = BTreeMap::new();
    let mut stabilization = BTreeMap::new();
    for n in 1..=max_n {
        let mut prev: Option<BTreeSet<_>> = None;
        let mut stable_from = None;
        for m in 1..=max_level {
            let k = cache.get(m)?;
            let c = ball_census(&k, n, m);
            if c.centers() == 0 {
                continue;
            }
            let keys = c.keys();
            table.insert(
                format!("n{n}_m{m}"),
                json!({"types": c.type_count(), "centers": c.centers(), "digest": c.digest()}),
            );
            if let Some(p) = &prev {
                r.check(p.is_subset(&keys), || format!("radius {n}: types lost from K_{} to K_{m}", m - 1));
                if *p == keys {
                    stable_from.get_or_insert(m - 1);
                } else {
                    stable_from = None;
                }
            }
            prev = Some(keys);
        }
        r.check(stable_from.is_some(), || format!("radius {n}: still growing at K_{max_level}"));
        stabilization.insert(n, stable_from);
    }
    r.note("table", &table);
    r.note("stable_from_level", &stabilization);
    Ok(r.finish(true))
}

/// Each sampled point has a different point within `1/n`.
pub fn isolated_points(cache: &SupertileCache, samples: usize, n: u32, seed: u64) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new("isolated-points", "every sampled point has a distinct point within 1/n");
    let mut g = rng(seed);
    let radius = 10;
    let points = sample_points(cache, 6, radius, samples, &mut g)?;
    let mut found = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let hit = distinct_neighbor(cache, x, n, &[6, 7])?;
        r.check(hit.is_some(), || format!("point {i} ({:?})", x.generator));
        if let Some((y, d)) = hit {
            found.push(json!({"x": x.generator, "y": y.generator, "d": d.as_f64()}));
        }
    }
    r.note("pairs", &found);
    Ok(r.finish(true))
}

/// Scans the certified anchors of the given supertiles for a point `y` with exact `0 < d'(x, y) <= 1/n`.
/// Candidates are first filtered by their radius-`n` ball, computed in place.
pub fn distinct_neighbor(
    cache: &SupertileCache,
    x: &HullPoint,
    n: u32,
    levels: &[u32],
) -> Result<Option<(HullPoint, crate::hull::DPrimeValue)>, VerifyError> {
    let mut s = CanonScratch::new();
    let key = x.ball_form(n, &mut s);
    for &level in levels {
        let k = cache.get(level)?;
        let mut bfs = Bfs::new(&k);
        for v in k.vertices() {
            if k.rim_distance(v) < x.radius + 4 {
                continue;
            }
            bfs.run(&k, v, n);
            let faces = bfs.ball_faces(&k, n);
            if s.form(&k, |f| faces.binary_search(&f).is_ok(), v) != key {
                continue;
            }
            let y = make_point(cache, &Generator::Supertile { level, vertex: v }, x.radius)?;
            let d = d_prime(x, &y);
            if d.exact && d.value != DPrime::Zero {
                return Ok(Some((y, d)));
            }
        }
    }
    Ok(None)
}

/// Which variants leave a symmetric decoration somewhere.
pub fn symmetry(depth: u32) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new(
        "symmetry",
        "the rule and its mirror destroy all symmetry; the three rotated variants do not",
    );
    let mut sizes = BTreeMap::new();
    for variant in 0..=4u8 {
        let a = symmetry_audit(variant, depth)?;
        let expect_empty = variant == 0 || variant == 4;
        r.check(a.is_empty() == expect_empty, || {
            format!("variant {variant}: {} vertices, {} edges", a.vertices.len(), a.edges.len())
        });
        sizes.insert(variant, (a.vertices.len(), a.edges.len()));
    }
    r.note("symmetric_vertices_and_edges", &sizes);
    Ok(r.finish(true))
}
