use pentahull::export::{to_dot, to_svg, tutte_layout};
use pentahull::subdivision::build_supertile;

#[test]
fn dot_lists_every_cell() {
    let k2 = build_supertile(2).unwrap();
    let dot = to_dot(&k2);
    assert!(dot.starts_with("graph pentahull {") && dot.ends_with("}\n"));
    assert_eq!(dot.matches(" -- ").count(), k2.edge_count());
    assert_eq!(dot.matches("// face ").count(), k2.face_count());
    assert_eq!(dot.matches("boundary=false").count(), k2.vertices().filter(|&v| !k2.is_boundary_vertex(v)).count());
    assert!(dot.contains("decoration=\"(12,34)\"") || dot.contains("decoration=\"(12,45)\""));
}

#[test]
fn svg_draws_faces_and_corner_labels() {
    let k2 = build_supertile(2).unwrap();
    let svg = to_svg(&k2);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polygon").count(), 36);
    assert_eq!(svg.matches("<text").count(), 5 * 36);
}

#[test]
fn tutte_layout_is_barycentric_inside_a_circle() {
    let k2 = build_supertile(2).unwrap();
    let pos = tutte_layout(&k2, 5000);
    for v in k2.vertices() {
        let (x, y) = pos[v as usize];
        let r = (x * x + y * y).sqrt();
        if k2.is_boundary_vertex(v) {
            assert!((r - 1.0).abs() < 1e-9, "rim vertex {v} at radius {r}");
        } else {
            assert!(r < 1.0);
            let d = k2.degree(v) as f64;
            let (sx, sy) = k2.neighbors(v).fold((0.0, 0.0), |a, u| (a.0 + pos[u as usize].0, a.1 + pos[u as usize].1));
            assert!((sx / d - x).abs() < 1e-6 && (sy / d - y).abs() < 1e-6);
        }
    }
}
