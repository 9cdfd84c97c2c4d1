mod common;

use pentahull::complex::Patch;
use pentahull::hull::{
    agreement_radius, continuity_check, corresponding_vertex, d_prime, injectivity_check, make_point,
    non_surjectivity_witness, omega_point, omega_point_with_radius, ultrametric_check, DPrime, Generator, HullError,
    HullPoint,
};
use pentahull::iso::{anchored_isomorphic, CanonScratch};
use pentahull::metric::{ball_uncertified, Bfs};
use pentahull::subdivision::SupertileCache;

fn cache() -> &'static SupertileCache {
    SupertileCache::shared()
}

fn at(level: u32, vertex: u32, radius: u32) -> HullPoint {
    make_point(cache(), &Generator::Supertile { level, vertex }, radius).unwrap()
}

/// Largest `n` up to the common radius at which the anchored balls match, by linear scan.
fn oracle_agreement(x: &HullPoint, y: &HullPoint) -> u32 {
    let top = x.radius.min(y.radius);
    let (mut bx, mut by) = (Bfs::new(&x.realization), Bfs::new(&y.realization));
    let mut last = 1;
    for n in 2..=top {
        let a = ball_uncertified(&x.realization, x.anchor, n, &mut bx);
        let b = ball_uncertified(&y.realization, y.anchor, n, &mut by);
        let same = anchored_isomorphic(&a.patch(&x.realization), x.anchor, &b.patch(&y.realization), y.anchor);
        if same.is_none() {
            break;
        }
        last = n;
    }
    last
}

/// Certified anchors of `K_5` whose radius-3 balls match the first one's.
fn near_points(radius: u32, count: usize) -> Vec<HullPoint> {
    let k5 = cache().get(5).unwrap();
    let anchors = pentahull::hull::certified_anchors(&k5, radius);
    let mut s = CanonScratch::new();
    let first = at(5, anchors[0], radius);
    let key = first.ball_form(3, &mut s);
    let mut out = vec![first];
    for &v in &anchors[1..] {
        let p = at(5, v, radius);
        if p.ball_form(3, &mut s) == key {
            out.push(p);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

#[test]
fn distance_to_itself_is_zero() {
    let x = at(5, 2000, 8);
    let d = d_prime(&x, &x);
    assert_eq!(d.value, DPrime::Zero);
    assert!(d.exact);
}

#[test]
fn explicit_copy_agrees_up_to_its_radius() {
    let x = at(5, 2000, 8);
    let copy = HullPoint::explicit(&x.realization, x.anchor).unwrap();
    assert_eq!(copy.radius, x.realization.rim_distance(x.anchor) - 4);
    assert!(copy.radius < x.radius);
    let d = d_prime(&x, &copy);
    assert_eq!((d.value, d.exact), (DPrime::Recip(copy.radius), false));
}

#[test]
fn agreement_matches_the_linear_scan() {
    let pts = near_points(8, 12);
    assert!(pts.len() >= 6);
    for x in &pts {
        for y in &pts {
            if x.generator == y.generator {
                continue;
            }
            let (n, exact) = agreement_radius(x, y);
            let want = oracle_agreement(x, y);
            assert_eq!(n, want);
            assert_eq!(exact, want < 8);
            assert_eq!(d_prime(x, y), d_prime(y, x));
        }
    }
}

#[test]
fn strong_triangle_inequality_on_near_points() {
    let pts = near_points(8, 8);
    let mut checked = 0;
    for x in &pts {
        for y in &pts {
            for z in &pts {
                match ultrametric_check(x, y, z) {
                    Ok(ok) => {
                        assert!(ok);
                        checked += 1;
                    }
                    Err(HullError::InexactInputs) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn anchors_of_different_degree_are_at_distance_one() {
    let want = common::load_json("derived.json")["fixed_point_degrees_dprime"].as_u64().unwrap() as u32;
    let f3 = make_point(cache(), &Generator::FixedPointDeg3, 8).unwrap();
    let f4 = make_point(cache(), &Generator::FixedPointDeg4, 8).unwrap();
    assert_eq!((f3.anchor_degree(), f4.anchor_degree()), (3, 4));
    let d = d_prime(&f3, &f4);
    assert_eq!((d.value, d.exact), (DPrime::Recip(want), true));
    assert_eq!(d.as_f64(), 1.0);
}

#[test]
fn fixed_points_come_back_to_themselves() {
    let want = &common::load_json("derived.json")["fixed_point_agreement"];
    for gen in [Generator::FixedPointDeg3, Generator::FixedPointDeg4] {
        for r in [8u32, 16] {
            let x = make_point(cache(), &gen, r).unwrap();
            let wx = omega_point(&x).unwrap();
            let d = d_prime(&wx, &x);
            assert!(d.as_f64() <= 1.0 / r as f64, "{gen:?} {r}: {d:?}");
            assert_eq!(d.agreement().map(u64::from), want[r.to_string()].as_u64());
            assert_eq!(oracle_agreement(&wx, &x), r);
        }
    }
}

#[test]
fn subdivision_certifies_twice_the_radius_minus_two() {
    let x = at(5, 2000, 8);
    let wx = omega_point(&x).unwrap();
    assert_eq!(wx.radius, 14);
    assert_eq!(wx.anchor_degree(), x.anchor_degree());
    assert!(matches!(
        omega_point_with_radius(&x, 17),
        Err(HullError::UncertifiedRadius { radius: 17, available: 16 })
    ));
    // Same point built through the recipe.
    let via = make_point(cache(), &Generator::Omega { of: Box::new(x.generator.clone()) }, 14).unwrap();
    assert_eq!(d_prime(&via, &wx).value, DPrime::Zero);
    assert_eq!(oracle_agreement(&via, &wx), 14);
}

#[test]
fn subdivision_is_injective_on_fixed_points_and_samples() {
    let want = &common::load_json("derived.json")["injectivity_compared_radius"];
    for r in [8u32, 16] {
        for gen in [Generator::FixedPointDeg3, Generator::FixedPointDeg4] {
            let x = make_point(cache(), &gen, r).unwrap();
            assert_eq!(injectivity_check(&x).unwrap().map(u64::from), want[r.to_string()].as_u64());
        }
    }
    for p in near_points(8, 5) {
        assert!(injectivity_check(&p).unwrap().is_some());
    }
}

#[test]
fn a_fresh_midpoint_is_not_an_image() {
    let want = &common::load_json("derived.json")["non_image_witness"];
    let level = want["supertile"].as_u64().unwrap() as u32;
    let radius = want["radius"].as_u64().unwrap() as u32;
    let w = non_surjectivity_witness(cache(), level, radius).unwrap().unwrap();
    assert_eq!(u64::from(w.source_vertex), want["vertex"].as_u64().unwrap());
    assert!(w.source_vertex as usize >= cache().get(level - 1).unwrap().vertex_count());
    assert!(pentahull::subdivision::try_desubdivide(
        &w.point.realization,
        w.point.anchor,
        &pentahull::subdivision::RuleTable::OMEGA
    )
    .is_none());
}

#[test]
fn continuity_modulus_on_near_pairs() {
    let pts = near_points(10, 6);
    let mut checked = 0;
    for y in &pts[1..] {
        if let Ok(rep) = continuity_check(&pts[0], y) {
            assert!(rep.holds(), "{rep:?}");
            assert!(rep.image_n >= 2 * rep.n - 2);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn long_agreement_pairs_contract() {
    // Matching vertices in two superpetals of K_6 share a large ball.
    let k6 = cache().get(6).unwrap();
    let block = 6u32.pow(5);
    let mut found = 0;
    for f in (block..2 * block).step_by(389) {
        let v = k6.face_corners(f).next().unwrap().0;
        let Some(w) = corresponding_vertex(&k6, 5, v, 1, 2) else { continue };
        if k6.rim_distance(v) < 28 || k6.rim_distance(w) < 28 {
            continue;
        }
        let (x, y) = (at(6, v, 24), at(6, w, 24));
        let d = d_prime(&x, &y);
        if !(d.exact && d.agreement().is_some_and(|n| n >= 11)) {
            continue;
        }
        let rep = continuity_check(&x, &y).unwrap();
        assert_eq!(rep.contracts, Some(true), "{rep:?}");
        assert!(rep.holds());
        found += 1;
        if found == 2 {
            break;
        }
    }
    assert!(found > 0);
}

#[test]
fn hull_point_json_round_trip() {
    let k4 = cache().get(4).unwrap();
    let x = at(4, pentahull::hull::certified_anchors(&k4, 4)[0], 4);
    let back = HullPoint::from_json(&x.to_json()).unwrap();
    assert_eq!(back.generator, x.generator);
    assert_eq!(back.to_json(), x.to_json());
    assert_eq!(d_prime(&x, &back).value, DPrime::Zero);
    let fixed = make_point(cache(), &Generator::FixedPointDeg4, 4).unwrap();
    let text = String::from_utf8(fixed.to_json()).unwrap();
    assert!(text.contains("\"kind\":\"fixed_point_deg4\""));
}

#[test]
fn radius_beyond_the_rim_is_refused() {
    let k3 = cache().get(3).unwrap();
    let v = k3.vertices().max_by_key(|&v| k3.rim_distance(v)).unwrap();
    let have = k3.rim_distance(v);
    let err = make_point(cache(), &Generator::Supertile { level: 3, vertex: v }, have).unwrap_err();
    assert!(matches!(err, HullError::UncertifiedRadius { .. }));
    let x = at(5, 2000, 8);
    assert!(x.crop(9).is_err());
    let small = x.crop(4).unwrap();
    assert_eq!(oracle_agreement(&small, &x), 4);
    assert!(Patch::whole(&small.realization).is_chain_connected());
}
