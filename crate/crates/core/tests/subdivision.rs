use pentahull::complex::{Patch, PentComplex, Violation};
use pentahull::iso::{anchored_embedding, anchored_isomorphic, anchored_isomorphic_with, MarkPolicy};
use pentahull::subdivision::{
    alt_subdivide, build_supertile, flower_of, mirror, seed_pentagon, subdivide, supertile_petal, symmetry_audit,
    try_desubdivide, RuleTable, SubdivisionError, SupertileCache,
};

fn label_at(c: &PentComplex, f: u32, v: u32) -> u8 {
    c.face_corners(f).find(|&(x, _)| x == v).map(|(_, l)| l).unwrap()
}

#[test]
fn counts_follow_the_flower_recurrence() {
    let mut c = seed_pentagon();
    for _ in 0..4 {
        let next = subdivide(&c).unwrap();
        assert_eq!(next.face_count(), 6 * c.face_count());
        assert_eq!(next.edge_count(), 2 * c.edge_count() + 10 * c.face_count());
        assert_eq!(next.vertex_count(), c.vertex_count() + c.edge_count() + 5 * c.face_count());
        c = next;
    }
    assert_eq!((c.face_count(), c.vertex_count()), (1296, 1985));
}

#[test]
fn old_corners_keep_their_labels() {
    let k2 = build_supertile(2).unwrap();
    let k3 = subdivide(&k2).unwrap();
    for f in k2.faces() {
        let fl = flower_of(&k3, f).unwrap();
        for (v, l) in k2.face_corners(f) {
            let petal = fl.petals.iter().find(|&&p| k3.face_corners(p).any(|(x, _)| x == v)).unwrap();
            assert_eq!(label_at(&k3, *petal, v), l);
        }
    }
}

#[test]
fn superedge_reads_its_pair_twice() {
    // Along a parent edge u -> m -> u' the labels inside the parent face read i, i+1, i, i+1.
    let k1 = build_supertile(1).unwrap();
    let k2 = subdivide(&k1).unwrap();
    let (nv, ne) = (k1.vertex_count() as u32, k1.edge_count() as u32);
    for f in k1.faces() {
        let fl = flower_of(&k2, f).unwrap();
        let children: Vec<u32> = std::iter::once(fl.central).chain(fl.petals).collect();
        for h in k1.face_half_edges(f) {
            let (u, w, m) = (k1.origin(h), k1.dest(h), nv + (h >> 1));
            assert!(m < nv + ne);
            let side = |a: u32, b: u32| {
                let c = children
                    .iter()
                    .find(|&&c| k2.face_half_edges(c).any(|g| k2.origin(g) == a && k2.dest(g) == b))
                    .copied()
                    .unwrap();
                (label_at(&k2, c, a), label_at(&k2, c, b))
            };
            let i = k1.corner_label(h);
            let pair = (i, i % 5 + 1);
            assert_eq!(side(u, m), pair);
            assert_eq!(side(m, w), pair);
        }
    }
}

#[test]
fn seed_corners_stay_degree_two_and_inside_one_face() {
    for n in 1..=4 {
        let k = build_supertile(n).unwrap();
        for v in 0..5 {
            assert_eq!(k.degree(v), 2);
            assert_eq!(k.vertex_faces(v).count(), 1);
        }
    }
}

#[test]
fn every_interior_vertex_degree_survives_subdivision() {
    let k2 = build_supertile(2).unwrap();
    let k3 = subdivide(&k2).unwrap();
    for v in k2.vertices() {
        assert_eq!(k3.degree(v), k2.degree(v), "vertex {v}");
    }
    // Interior midpoints meet two petals on each side; central corners meet three faces.
    let (nv, ne) = (k2.vertex_count() as u32, k2.edge_count() as u32);
    for v in nv..k3.vertex_count() as u32 {
        if !k3.is_boundary_vertex(v) {
            let want = if v < nv + ne { 4 } else { 3 };
            assert_eq!(k3.degree(v), want, "vertex {v}");
        }
    }
}

#[test]
fn flowers_refine_their_parents() {
    let k2 = build_supertile(2).unwrap();
    let k3 = subdivide(&k2).unwrap();
    for f in k2.faces() {
        let fl = flower_of(&k3, f).unwrap();
        let patch = Patch::new(&k3, std::iter::once(fl.central).chain(fl.petals).collect());
        assert_eq!(patch.euler_characteristic(), 1);
        let outer: Vec<u32> = k2.face_corners(f).map(|(v, _)| v).collect();
        for v in outer {
            assert!(patch.vertices().contains(&v));
        }
    }
    assert!(matches!(flower_of(&k3, 216), Err(SubdivisionError::UnknownFace(216))));
}

#[test]
fn supertiles_nest() {
    let cache = SupertileCache::new(5);
    let k3 = cache.get(3).unwrap();
    let k4 = cache.get(4).unwrap();
    let central = supertile_petal(&k4, 3, 0).unwrap();
    let w = cache.include(3, 0).unwrap();
    assert!(anchored_isomorphic(&Patch::whole(&k3), 0, &central, w).is_some());
    assert!(matches!(cache.get(6), Err(SubdivisionError::LimitExceeded { requested: 6, max: 5 })));
}

#[test]
fn sub_supertiles_share_labels_but_not_surroundings() {
    let k1 = build_supertile(1).unwrap();
    let k3 = build_supertile(3).unwrap();
    // Face i of K_1 grows into sub-supertile i of K_3; anchor each at its corner labelled 1.
    let anchors: Vec<u32> = (0..6).map(|f| k1.face_corners(f).find(|c| c.1 == 1).unwrap().0).collect();
    let parts: Vec<Patch> = (0..6).map(|i| supertile_petal(&k3, 2, i).unwrap()).collect();
    for i in 0..6 {
        for j in 0..6 {
            let labels = anchored_isomorphic_with(&parts[i], anchors[i], &parts[j], anchors[j], MarkPolicy::IgnoreMarks);
            assert!(labels.is_some(), "{i} {j}");
            let strict = anchored_isomorphic(&parts[i], anchors[i], &parts[j], anchors[j]);
            assert_eq!(strict.is_some(), i == j, "{i} {j}");
        }
    }
    assert!(supertile_petal(&k3, 2, 6).is_err());
    assert!(supertile_petal(&k3, 1, 0).is_err());
}

#[test]
fn desubdivision_recovers_every_pointed_k2() {
    let k2 = build_supertile(2).unwrap();
    let k3 = subdivide(&k2).unwrap();
    let whole = Patch::whole(&k2);
    for v in k2.vertices() {
        let (z, w) = try_desubdivide(&k3, v, &RuleTable::OMEGA).unwrap_or_else(|| panic!("vertex {v}"));
        assert!(anchored_isomorphic(&Patch::whole(&z), w, &whole, v).is_some(), "vertex {v}");
    }
}

#[test]
fn midpoint_anchor_is_not_an_old_vertex() {
    let k2 = build_supertile(2).unwrap();
    let k3 = subdivide(&k2).unwrap();
    let interior_edge = k2.edges().find(|&e| !k2.is_boundary_edge(e)).unwrap();
    let midpoint = k2.vertex_count() as u32 + interior_edge;
    assert!(try_desubdivide(&k3, midpoint, &RuleTable::OMEGA).is_none());
}

#[test]
fn desubdivision_of_growing_balls_embeds_back() {
    use pentahull::metric::ball;
    let cache = SupertileCache::shared();
    let (k4, k5) = (cache.get(4).unwrap(), cache.get(5).unwrap());
    let v = cache.include(3, cache.include(2, 20).unwrap()).unwrap();
    assert!(k5.rim_distance(v) >= 14);
    // Radius 4 cuts the anchor's own flowers; from 5 on the recovered part only grows.
    let mut last = 0;
    for n in 5..=12 {
        let b = ball(&k5, v, n).unwrap();
        let x = b.patch(&k5).extract().unwrap();
        let anchor = x.vertex_id(v).unwrap();
        let (z, w) = try_desubdivide(&x.complex, anchor, &RuleTable::OMEGA).unwrap();
        // Every recovered face appears in K_4 around the same vertex.
        assert!(anchored_embedding(&Patch::whole(&z), w, &k4, v, MarkPolicy::Strict).is_some(), "n = {n}");
        assert!(z.face_count() >= last.max(1));
        last = z.face_count();
    }
}

#[test]
fn mirrored_rule_is_conjugate_to_the_decorated_rule() {
    let k2 = build_supertile(2).unwrap();
    let direct = alt_subdivide(&k2, 4).unwrap();
    let conj = mirror(&subdivide(&mirror(&k2)).unwrap());
    assert_eq!(direct.face_count(), conj.face_count());
    let a = Patch::whole(&direct);
    let b = Patch::whole(&conj);
    assert!(anchored_isomorphic(&a, 0, &b, 0).is_some());
}

#[test]
fn mirror_is_an_involution() {
    let k2 = build_supertile(2).unwrap();
    let back = mirror(&mirror(&k2));
    for f in k2.faces() {
        let mut a: Vec<(u32, u8)> = k2.face_corners(f).collect();
        let mut b: Vec<(u32, u8)> = back.face_corners(f).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
    assert!(anchored_isomorphic(&Patch::whole(&back), 7, &Patch::whole(&k2), 7).is_some());
}

#[test]
fn rotated_central_rules_break_the_decorations() {
    let k1 = build_supertile(1).unwrap();
    for variant in 1..=3 {
        let mut c = alt_subdivide(&k1, variant).unwrap();
        c = alt_subdivide(&c, variant).unwrap();
        let r = c.validate();
        assert!(r.is_structurally_ok());
        assert!(
            r.violations
                .iter()
                .any(|v| matches!(v, Violation::IllegalVertexDecoration { .. } | Violation::IllegalEdgeDecoration { .. })),
            "variant {variant}"
        );
    }
    assert!(matches!(alt_subdivide(&k1, 5), Err(SubdivisionError::InvalidVariant(5))));
}

#[test]
fn symmetry_audit_is_empty_only_for_the_decorated_rules() {
    for variant in 0..=4 {
        let a = symmetry_audit(variant, 3).unwrap();
        assert_eq!(a.is_empty(), variant == 0 || variant == 4, "variant {variant}");
    }
}

#[test]
fn invalid_input_is_refused() {
    use pentahull::complex::ComplexBuilder;
    let mut b = ComplexBuilder::new(5);
    b.face(&[(0, 1), (1, 2), (2, 2), (3, 4), (4, 5)]);
    let bad = b.build().unwrap();
    assert!(matches!(subdivide(&bad), Err(SubdivisionError::InvalidInput(_))));
}

#[test]
fn supertiles_are_deterministic() {
    assert_eq!(build_supertile(3).unwrap().to_json(), build_supertile(3).unwrap().to_json());
    let cached = SupertileCache::shared().get(3).unwrap();
    assert_eq!(cached.to_json(), build_supertile(3).unwrap().to_json());
}
