mod common;

use std::collections::BTreeMap;

use pentahull::complex::{ComplexBuilder, Patch, PentComplex};
use pentahull::iso::{
    anchored_isomorphic, automorphisms, ball_census, canonical_form, find_occurrences, is_locally_isomorphic,
    BallCensus, CanonScratch, CensusJson, MarkPolicy,
};
use pentahull::metric::{ball, ball_uncertified, Bfs};
use pentahull::subdivision::{build_supertile, mirror, SupertileCache};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ball_patch<'a>(k: &'a PentComplex, v: u32, n: u32) -> Patch<'a> {
    ball(k, v, n).unwrap().patch(k)
}

#[test]
fn two_k6_vertices_agree_to_radius_five_only() {
    let k6 = SupertileCache::shared().get(6).unwrap();
    let mut s = CanonScratch::new();
    let mut bfs = Bfs::new(&k6);
    let mut buckets: BTreeMap<_, Vec<u32>> = BTreeMap::new();
    for v in k6.vertices().filter(|&v| k6.rim_distance(v) >= 8).step_by(3).take(6000) {
        let b = ball_uncertified(&k6, v, 5, &mut bfs);
        let form = s.form(&k6, |f| b.faces.binary_search(&f).is_ok(), v);
        buckets.entry(form).or_default().push(v);
    }
    let mut found = None;
    'search: for group in buckets.values() {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                if anchored_isomorphic(&ball_patch(&k6, a, 6), a, &ball_patch(&k6, b, 6), b).is_none() {
                    found = Some((a, b));
                    break 'search;
                }
            }
        }
    }
    let (a, b) = found.expect("some pair separates at radius 6");
    assert!(anchored_isomorphic(&ball_patch(&k6, a, 5), a, &ball_patch(&k6, b, 5), b).is_some());
}

#[test]
fn seed_corners_are_told_apart_by_radius_six() {
    let cache = SupertileCache::shared();
    let k6 = cache.get(6).unwrap();
    let ids: Vec<u32> = (0..5)
        .map(|v| (0..6).try_fold(v, |x, n| cache.include(n, x)).unwrap())
        .collect();
    for (i, &a) in ids.iter().enumerate() {
        assert!(k6.rim_distance(a) >= 8);
        for &b in &ids[i + 1..] {
            assert!(anchored_isomorphic(&ball_patch(&k6, a, 6), a, &ball_patch(&k6, b, 6), b).is_none());
        }
    }
}

#[test]
fn two_disjoint_pentagons_can_be_swapped() {
    let mut b = ComplexBuilder::new(10);
    b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    b.face(&[(5, 1), (6, 2), (7, 3), (8, 4), (9, 5)]);
    let c = b.build().unwrap();
    let auts = automorphisms(&Patch::whole(&c), 10);
    assert_eq!(auts.len(), 2);
    assert!(auts[0].is_identity());
    assert_eq!(auts[1].map_vertex(0), Some(5));
}

#[test]
fn supertiles_have_only_the_identity() {
    for n in 1..=3 {
        let k = build_supertile(n).unwrap();
        let auts = automorphisms(&Patch::whole(&k), 10);
        assert_eq!(auts.len(), 1, "K_{n}");
        assert!(auts[0].is_identity());
    }
}

#[test]
fn self_maps_of_balls_fix_everything() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    for v in k5.vertices().filter(|&v| k5.rim_distance(v) >= 6).step_by(401) {
        let p = ball_patch(&k5, v, 4);
        for w in p.vertices() {
            if let Some(iso) = anchored_isomorphic(&p, v, &p, w) {
                assert_eq!(w, v);
                assert!(iso.is_identity());
            }
        }
    }
}

#[test]
fn canonical_forms_agree_with_the_matcher() {
    // Half the pairs are drawn from the same form bucket so both outcomes are exercised.
    let k5 = SupertileCache::shared().get(5).unwrap();
    let mut g = ChaCha8Rng::seed_from_u64(7);
    let pool: Vec<u32> = k5.vertices().filter(|&v| k5.rim_distance(v) >= 6).collect();
    let mut s = CanonScratch::new();
    let mut bfs = Bfs::new(&k5);
    let mut form = |v: u32, n: u32| {
        let b = ball_uncertified(&k5, v, n, &mut bfs);
        s.form(&k5, |f| b.faces.binary_search(&f).is_ok(), v)
    };
    let mut by_form: BTreeMap<_, Vec<u32>> = BTreeMap::new();
    for &v in &pool {
        by_form.entry(form(v, 3)).or_default().push(v);
    }
    let crowded: Vec<&Vec<u32>> = by_form.values().filter(|g| g.len() > 1).collect();
    let (mut same, mut different) = (0, 0);
    for i in 0..1000 {
        let n = if i % 2 == 0 { 3 } else { g.gen_range(1..=4) };
        let (a, b) = if i % 2 == 0 {
            let grp = crowded[g.gen_range(0..crowded.len())];
            (grp[g.gen_range(0..grp.len())], grp[g.gen_range(0..grp.len())])
        } else {
            (pool[g.gen_range(0..pool.len())], pool[g.gen_range(0..pool.len())])
        };
        let iso = anchored_isomorphic(&ball_patch(&k5, a, n), a, &ball_patch(&k5, b, n), b).is_some();
        assert_eq!(form(a, n) == form(b, n), iso, "{a} {b} radius {n}");
        if iso {
            same += 1;
        } else {
            different += 1;
        }
    }
    assert!(same > 100 && different > 100);
}

#[test]
fn canonical_form_round_trips_through_base64() {
    let k3 = build_supertile(3).unwrap();
    let f = canonical_form(&Patch::whole(&k3), 20);
    assert_eq!(pentahull::iso::CanonicalForm::from_base64(&f.to_base64()), Some(f));
}

#[test]
fn census_of_radius_two_on_k5_is_frozen() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    let c = ball_census(&k5, 2, 5);
    let want = &common::load_json("derived.json")["census_r2_k5"];
    assert_eq!(c.type_count() as u64, want["types"].as_u64().unwrap());
    assert_eq!(c.centers(), want["centers"].as_u64().unwrap());
    common::assert_fixture("census_r2_k5.json", &c.to_json());
    let doc: CensusJson = serde_json::from_slice(&std::fs::read(common::fixture_path("census_r2_k5.json")).unwrap()).unwrap();
    assert_eq!(BallCensus::from_json_value(&doc), Some(c));
}

#[test]
fn census_classes_match_pairwise_isomorphism() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    let mut reps: Vec<(u32, u64)> = Vec::new();
    for v in k5.vertices().filter(|&v| k5.rim_distance(v) >= 4) {
        let p = ball_patch(&k5, v, 2);
        match reps.iter_mut().find(|(r, _)| anchored_isomorphic(&ball_patch(&k5, *r, 2), *r, &p, v).is_some()) {
            Some(slot) => slot.1 += 1,
            None => reps.push((v, 1)),
        }
    }
    let c = ball_census(&k5, 2, 5);
    assert_eq!(reps.len(), c.type_count());
    let mut a: Vec<u64> = reps.iter().map(|r| r.1).collect();
    let mut b: Vec<u64> = c.types.values().copied().collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn census_digests_are_frozen_and_monotone() {
    let cache = SupertileCache::shared();
    let mut table = BTreeMap::new();
    for n in 1..=3 {
        let mut prev: Option<BTreeMap<_, _>> = None;
        for m in 2..=6 {
            let c = ball_census(&cache.get(m).unwrap(), n, m);
            if c.centers() == 0 {
                continue;
            }
            if let Some(p) = &prev {
                assert!(p.keys().all(|k| c.types.contains_key(k)), "radius {n} K_{m}");
            }
            table.insert(format!("n{n}_m{m}"), (c.type_count(), c.digest()));
            prev = Some(c.types);
        }
    }
    let mut bytes = serde_json::to_vec_pretty(&table).unwrap();
    bytes.push(b'\n');
    common::assert_fixture("census_digests.json", &bytes);
}

#[test]
fn census_json_is_byte_stable() {
    let k4 = SupertileCache::shared().get(4).unwrap();
    let a = ball_census(&k4, 2, 4);
    let b = ball_census(&k4, 2, 4);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.digest().len(), 64);
}

#[test]
fn k1_occurs_in_k4() {
    let k1 = build_supertile(1).unwrap();
    let k4 = SupertileCache::shared().get(4).unwrap();
    let want = &common::load_json("derived.json")["k1_in_k4_occurrences"];
    let needle = Patch::whole(&k1);
    let anchor = want["anchor"].as_u64().unwrap() as u32;
    let loose = find_occurrences(&needle, anchor, &k4, MarkPolicy::IgnoreMarks);
    let strict = find_occurrences(&needle, anchor, &k4, MarkPolicy::Strict);
    assert_eq!(loose.len() as u64, want["ignore_marks"].as_u64().unwrap());
    assert_eq!(strict.len() as u64, want["strict"].as_u64().unwrap());
    assert!(strict.iter().all(|v| loose.contains(v)));
}

#[test]
fn local_isomorphism_against_a_census() {
    let cache = SupertileCache::shared();
    let reference = ball_census(&cache.get(5).unwrap(), 2, 5);
    let k3 = cache.get(3).unwrap();
    assert!(is_locally_isomorphic(&k3, 2, &reference));
    assert!(!is_locally_isomorphic(&k3, 3, &reference));
    assert!(!is_locally_isomorphic(&mirror(&k3), 2, &reference));
    let mut b = ComplexBuilder::new(5);
    b.face(&[(0, 1), (1, 1), (2, 3), (3, 4), (4, 5)]);
    assert!(!is_locally_isomorphic(&b.build().unwrap(), 2, &reference));
}
