use std::collections::BTreeSet;

use pentahull::complex::{Patch, PentComplex};
use pentahull::hull::{d_prime, make_point, Generator};
use pentahull::iso::{anchored_isomorphic, canonical_form};
use pentahull::metric::{ball_uncertified, Bfs};
use pentahull::subdivision::{mirror, subdivide, SupertileCache};
use proptest::prelude::*;

fn k4() -> std::sync::Arc<PentComplex> {
    SupertileCache::shared().get(4).unwrap()
}

/// Chain-connected face set grown from `start`, taking neighbours in the order `picks` dictates.
fn grow(c: &PentComplex, start: u32, picks: &[u16]) -> Vec<u32> {
    let mut faces = vec![start];
    let mut seen: BTreeSet<u32> = faces.iter().copied().collect();
    for &p in picks {
        let frontier: Vec<u32> = faces
            .iter()
            .flat_map(|&f| c.face_half_edges(f).filter_map(|h| c.face_of(h ^ 1)))
            .filter(|g| !seen.contains(g))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let g = frontier[p as usize % frontier.len()];
        seen.insert(g);
        faces.push(g);
    }
    faces
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extracted_patches_round_trip(start in 0u32..1296, picks in prop::collection::vec(any::<u16>(), 0..40)) {
        let k = k4();
        let faces = grow(&k, start, &picks);
        let ex = Patch::new(&k, faces.clone()).extract().unwrap();
        let bytes = ex.complex.to_json();
        let back = PentComplex::from_json(&bytes).unwrap();
        prop_assert_eq!(back.to_json(), bytes);
        prop_assert_eq!(ex.complex.face_count(), faces.len());
        prop_assert!(ex.complex.validate().is_structurally_ok());
    }

    #[test]
    fn canonical_form_ignores_vertex_ids(start in 0u32..1296, picks in prop::collection::vec(any::<u16>(), 0..30), corner in 0usize..5) {
        let k = k4();
        let faces = grow(&k, start, &picks);
        let p = Patch::new(&k, faces);
        let v = k.face_corners(start).nth(corner).unwrap().0;
        let ex = p.extract().unwrap();
        let w = ex.vertex_id(v).unwrap();
        prop_assert_eq!(canonical_form(&p, v), canonical_form(&Patch::whole(&ex.complex), w));
        prop_assert!(anchored_isomorphic(&p, v, &Patch::whole(&ex.complex), w).is_some());
    }

    #[test]
    fn patches_have_no_nontrivial_anchored_self_maps(start in 0u32..1296, picks in prop::collection::vec(any::<u16>(), 0..25)) {
        let k = k4();
        let p = Patch::new(&k, grow(&k, start, &picks));
        let v = k.face_corners(start).next().unwrap().0;
        for w in p.vertices() {
            if let Some(iso) = anchored_isomorphic(&p, v, &p, w) {
                prop_assert_eq!(w, v);
                prop_assert!(iso.is_identity());
            }
        }
    }

    #[test]
    fn subdividing_a_patch_keeps_it_valid(start in 0u32..1296, picks in prop::collection::vec(any::<u16>(), 0..12)) {
        let k = k4();
        let ex = Patch::new(&k, grow(&k, start, &picks)).extract().unwrap();
        let sub = subdivide(&ex.complex).unwrap();
        prop_assert_eq!(sub.face_count(), 6 * ex.complex.face_count());
        prop_assert!(sub.validate().is_ok());
        prop_assert_eq!(sub.euler_characteristic(), ex.complex.euler_characteristic());
    }

    #[test]
    fn balls_are_nested(v in 0u32..1985, n in 1u32..8) {
        let k = k4();
        let mut bfs = Bfs::new(&k);
        let small = ball_uncertified(&k, v, n, &mut bfs).faces;
        let big = ball_uncertified(&k, v, n + 1, &mut bfs).faces;
        prop_assert!(small.iter().all(|f| big.binary_search(f).is_ok()));
    }

    #[test]
    fn graph_distance_is_a_metric(a in 0u32..1985, b in 0u32..1985, c in 0u32..1985) {
        let k = k4();
        let mut bfs = Bfs::new(&k);
        bfs.run(&k, a, u32::MAX);
        let (ab, ac) = (bfs.dist(b).unwrap(), bfs.dist(c).unwrap());
        bfs.run(&k, b, u32::MAX);
        let (ba, bc) = (bfs.dist(a).unwrap(), bfs.dist(c).unwrap());
        prop_assert_eq!(ab, ba);
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!(ab == 0, a == b);
    }

    #[test]
    fn mirror_twice_restores_faces(start in 0u32..1296, picks in prop::collection::vec(any::<u16>(), 0..20)) {
        let k = k4();
        let ex = Patch::new(&k, grow(&k, start, &picks)).extract().unwrap();
        let back = mirror(&mirror(&ex.complex));
        for f in ex.complex.faces() {
            let a: BTreeSet<(u32, u8)> = ex.complex.face_corners(f).collect();
            let b: BTreeSet<(u32, u8)> = back.face_corners(f).collect();
            prop_assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dprime_is_symmetric_and_bounded(i in 0usize..400, j in 0usize..400) {
        let k5 = SupertileCache::shared().get(5).unwrap();
        let anchors = pentahull::hull::certified_anchors(&k5, 6);
        let (v, w) = (anchors[i * 7 % anchors.len()], anchors[j * 11 % anchors.len()]);
        let make = |vertex| make_point(SupertileCache::shared(), &Generator::Supertile { level: 5, vertex }, 6).unwrap();
        let (x, y) = (make(v), make(w));
        let (a, b) = (d_prime(&x, &y), d_prime(&y, &x));
        prop_assert_eq!(a, b);
        prop_assert!(a.as_f64() <= 1.0);
        prop_assert_eq!(a.as_f64() == 0.0, v == w);
    }
}
