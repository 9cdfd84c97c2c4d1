mod common;

use std::collections::{BTreeSet, VecDeque};

use pentahull::complex::PentComplex;
use pentahull::metric::{
    ball, ball_diameter, boundary_growth, boundary_profile, hole_count, sandwich_check, vertex_distance, Bfs,
    MetricError,
};
use pentahull::subdivision::{build_supertile, SupertileCache};

/// Plain breadth-first distances over the edge list.
fn oracle_distances(c: &PentComplex, src: u32) -> Vec<Option<u32>> {
    let mut adj = vec![Vec::new(); c.vertex_count()];
    for e in c.edges() {
        let [a, b] = c.edge_endpoints(e);
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut dist = vec![None; c.vertex_count()];
    dist[src as usize] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        let d = dist[x as usize].unwrap();
        for &y in &adj[x as usize] {
            if dist[y as usize].is_none() {
                dist[y as usize] = Some(d + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

fn oracle_ball(c: &PentComplex, dist: &[Option<u32>], n: u32) -> Vec<u32> {
    c.faces()
        .filter(|&f| c.face_corners(f).all(|(v, _)| dist[v as usize].is_some_and(|d| d <= n)))
        .collect()
}

/// V - E + F counted from the faces' corner lists.
fn oracle_euler(c: &PentComplex, faces: &[u32]) -> i64 {
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &f in faces {
        let cs: Vec<u32> = c.face_corners(f).map(|(v, _)| v).collect();
        for i in 0..cs.len() {
            let (a, b) = (cs[i], cs[(i + 1) % cs.len()]);
            verts.insert(a);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    verts.len() as i64 - edges.len() as i64 + faces.len() as i64
}

fn oracle_holes(c: &PentComplex, faces: &[u32]) -> i64 {
    if faces.is_empty() {
        0
    } else {
        1 - oracle_euler(c, faces)
    }
}

fn centers(c: &PentComplex, margin: u32, step: usize) -> impl Iterator<Item = u32> + '_ {
    c.vertices().filter(move |&v| c.rim_distance(v) >= margin).step_by(step)
}

#[test]
fn distances_match_the_oracle() {
    let k4 = build_supertile(4).unwrap();
    let mut bfs = Bfs::new(&k4);
    for src in (0..k4.vertex_count() as u32).step_by(97) {
        let want = oracle_distances(&k4, src);
        bfs.run(&k4, src, u32::MAX);
        for v in k4.vertices() {
            assert_eq!(bfs.dist(v), want[v as usize]);
        }
        let far = (0..k4.vertex_count() as u32).max_by_key(|&v| want[v as usize]).unwrap();
        let path = bfs.path_to(far).unwrap();
        assert_eq!(path.len() as u32, want[far as usize].unwrap() + 1);
        assert!(path.windows(2).all(|w| k4.neighbors(w[0]).any(|x| x == w[1])));
    }
}

#[test]
fn corners_of_k2_are_four_apart_through_the_truncation() {
    let k2 = build_supertile(2).unwrap();
    let d = vertex_distance(&k2, 0, 1).unwrap();
    assert_eq!(d.dist, 4);
    assert!(d.rim_limited);
    assert_eq!(vertex_distance(&k2, 0, 999), Err(MetricError::UnknownVertex(999)));
}

#[test]
fn balls_match_the_oracle() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    for v in centers(&k5, 10, 211) {
        let dist = oracle_distances(&k5, v);
        for n in 1..=8 {
            let b = ball(&k5, v, n).unwrap();
            assert_eq!(b.faces, oracle_ball(&k5, &dist, n), "center {v} radius {n}");
            assert_eq!(oracle_holes(&k5, &b.faces), hole_count(&k5, &b), "center {v} radius {n}");
        }
    }
}

#[test]
fn uncertified_ball_is_refused() {
    let k3 = build_supertile(3).unwrap();
    let v = k3.vertices().find(|&v| k3.rim_distance(v) == 3).unwrap();
    match ball(&k3, v, 2) {
        Err(MetricError::RimTooClose { needed: 4, have: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn radius_two_ball_at_a_degree_three_vertex_is_its_star() {
    let k4 = SupertileCache::shared().get(4).unwrap();
    let mut seen = 0;
    for v in k4.vertices().filter(|&v| k4.rim_distance(v) >= 4 && k4.degree(v) == 3) {
        let b = ball(&k4, v, 2).unwrap();
        let star: BTreeSet<u32> = k4.vertex_faces(v).collect();
        assert_eq!(b.faces.iter().copied().collect::<BTreeSet<_>>(), star, "vertex {v}");
        seen += 1;
    }
    assert_eq!(seen, common::load_json("derived.json")["star_balls_in_k4"].as_u64().unwrap());
}

#[test]
fn ball_shape_lemmas_hold_on_k5() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    for v in centers(&k5, 14, 173) {
        let dist = oracle_distances(&k5, v);
        for n in 2..=12 {
            let b = ball(&k5, v, n).unwrap();
            assert!(boundary_profile(&b).iter().all(|&d| d == n || d + 1 == n));
            let inside: BTreeSet<u32> = b.patch(&k5).vertices().into_iter().collect();
            for x in k5.vertices() {
                if dist[x as usize].is_some_and(|d| d < n) {
                    assert!(inside.contains(&x), "center {v} radius {n} misses {x}");
                }
            }
            assert!(ball_diameter(&k5, &b) <= 2 * n);
            assert!(b.patch(&k5).is_chain_connected());
        }
    }
}

#[test]
fn boundary_growth_stays_within_ten_times() {
    let k5 = SupertileCache::shared().get(5).unwrap();
    let mut max_ratio = 0.0f64;
    for v in centers(&k5, 14, 97) {
        for n in 2..=11 {
            let g = boundary_growth(&k5, v, n).unwrap();
            assert!(g.within_bounds(n), "center {v} radius {n}: {g:?}");
            max_ratio = max_ratio.max(g.m_next as f64 / g.m as f64);
        }
    }
    let frozen = common::load_json("derived.json")["max_boundary_growth_ratio"].as_f64().unwrap();
    assert!(max_ratio <= frozen + 1e-9, "{max_ratio}");
}

#[test]
fn children_of_a_ball_sit_between_balls_of_double_radius() {
    let cache = SupertileCache::shared();
    let (k5, k6) = (cache.get(5).unwrap(), cache.get(6).unwrap());
    let mut checked = 0;
    for v in centers(&k5, 10, 131) {
        for n in 2..=8 {
            if let Ok(ok) = sandwich_check(&k5, &k6, v, n) {
                assert!(ok, "vertex {v} n {n}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn subdivision_doubles_distances() {
    let cache = SupertileCache::shared();
    let (k4, k5) = (cache.get(4).unwrap(), cache.get(5).unwrap());
    for u in centers(&k4, 12, 59) {
        let d4 = oracle_distances(&k4, u);
        let d5 = oracle_distances(&k5, u);
        for v in k4.vertices().step_by(7) {
            let Some(d) = d4[v as usize] else { continue };
            if d <= k4.rim_distance(u) + k4.rim_distance(v) && d <= 10 {
                assert_eq!(d5[v as usize], Some(2 * d), "{u} {v}");
            }
        }
    }
}

#[test]
fn a_radius_33_ball_in_k7_has_holes() {
    let want = &common::load_json("derived.json")["hole"];
    let get = |k: &str| want[k].as_u64().unwrap();
    let k7 = SupertileCache::shared().get(get("supertile") as u32).unwrap();
    let (v, r) = (get("center") as u32, get("radius") as u32);
    assert!(k7.rim_distance(v) >= r + 2);
    let dist = oracle_distances(&k7, v);
    let faces = oracle_ball(&k7, &dist, r);
    assert_eq!(faces.len() as u64, get("faces"));
    assert_eq!(oracle_holes(&k7, &faces) as u64, get("holes"));
    let b = ball(&k7, v, r).unwrap();
    assert_eq!(hole_count(&k7, &b) as u64, get("holes"));
    let first = (1..=r).find(|&n| oracle_holes(&k7, &oracle_ball(&k7, &dist, n)) > 0);
    assert_eq!(first.map(u64::from), Some(get("first_radius")));
    // No earlier center in id order has a holed ball of that radius.
    let mut bfs = Bfs::new(&k7);
    for u in (0..v).filter(|&u| k7.rim_distance(u) >= r + 2) {
        let b = pentahull::metric::ball_uncertified(&k7, u, r, &mut bfs);
        assert_eq!(hole_count(&k7, &b), 0);
    }
}
