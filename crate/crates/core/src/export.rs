//! DOT and SVG renderings of a complex. The SVG layout is Tutte's barycentric embedding with the
//! longest rim cycle pinned to a circle; it is meant for looking at, nothing is measured on it.

use std::collections::HashMap;
use std::fmt::Write;

use crate::complex::{twin, HalfEdge, PentComplex, VertexId};

pub fn to_dot(c: &PentComplex) -> String {
    let mut s = String::from("graph pentahull {\n  node [shape=point];\n");
    for v in c.vertices() {
        let deg = c.ambient_degree(v).map_or("?".to_string(), |d| d.to_string());
        let dec = c.vertex_decoration(v).map_or("?".to_string(), |d| d.to_string());
        let _ = writeln!(
            s,
            "  v{v} [degree=\"{deg}\", decoration=\"{dec}\", boundary={}];",
            c.is_boundary_vertex(v)
        );
    }
    for e in c.edges() {
        let [a, b] = c.edge_endpoints(e);
        let dec = c.edge_decoration(e).map_or("?".to_string(), |d| d.to_string());
        let _ = writeln!(s, "  v{a} -- v{b} [decoration=\"{dec}\"];");
    }
    for f in c.faces() {
        let corners: Vec<String> = c.face_corners(f).map(|(v, l)| format!("v{v}:{l}")).collect();
        let _ = writeln!(s, "  // face {f}: {}", corners.join(" "));
    }
    s.push_str("}\n");
    s
}

/// Rim cycles as vertex lists, longest first.
fn rim_cycles(c: &PentComplex) -> Vec<Vec<VertexId>> {
    let mut by_origin: HashMap<VertexId, Vec<HalfEdge>> = HashMap::new();
    let rim: Vec<HalfEdge> = (0..2 * c.edge_count() as HalfEdge)
        .filter(|&h| c.face_of(h).is_none())
        .collect();
    for &h in &rim {
        by_origin.entry(c.origin(h)).or_default().push(h);
    }
    let mut used = vec![false; 2 * c.edge_count()];
    let mut cycles = Vec::new();
    for &h0 in &rim {
        if used[h0 as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = h0;
        while !used[h as usize] {
            used[h as usize] = true;
            cycle.push(c.origin(h));
            let z = c.dest(h);
            match by_origin[&z].iter().find(|&&k| !used[k as usize] && k != twin(h)) {
                Some(&k) => h = k,
                None => break,
            }
        }
        cycles.push(cycle);
    }
    cycles.sort_by_key(|cy| std::cmp::Reverse(cy.len()));
    cycles
}

/// Barycentric coordinates in the unit disk.
pub fn tutte_layout(c: &PentComplex, iterations: usize) -> Vec<(f64, f64)> {
    let n = c.vertex_count();
    let mut pos = vec![(0.0, 0.0); n];
    let mut pinned = vec![false; n];
    if let Some(outer) = rim_cycles(c).into_iter().next() {
        let k = outer.len() as f64;
        for (i, &v) in outer.iter().enumerate() {
            let t = std::f64::consts::TAU * i as f64 / k;
            pos[v as usize] = (t.cos(), t.sin());
            pinned[v as usize] = true;
        }
    }
    for _ in 0..iterations {
        let mut moved = 0.0f64;
        for v in c.vertices() {
            if pinned[v as usize] || c.degree(v) == 0 {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for u in c.neighbors(v) {
                x += pos[u as usize].0;
                y += pos[u as usize].1;
            }
            let d = c.degree(v) as f64;
            let new = (x / d, y / d);
            moved = moved.max((new.0 - pos[v as usize].0).abs() + (new.1 - pos[v as usize].1).abs());
            pos[v as usize] = new;
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

pub fn to_svg(c: &PentComplex) -> String {
    let pos = tutte_layout(c, 2000);
    let size = 800.0;
    let map = |(x, y): (f64, f64)| (size / 2.0 + x * size * 0.47, size / 2.0 - y * size * 0.47);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for f in c.faces() {
        let pts: Vec<(f64, f64)> = c.face_corners(f).map(|(v, _)| map(pos[v as usize])).collect();
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"#f4efe1\" stroke=\"#333\" stroke-width=\"0.6\"/>",
            path.join(" ")
        );
        let k = pts.len() as f64;
        let (cx, cy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / k, a.1 + p.1 / k));
        // Corner labels sit a third of the way from the corner to the face centroid.
        for ((x, y), (_, l)) in pts.iter().zip(c.face_corners(f)) {
            let (lx, ly) = (x + (cx - x) / 3.0, y + (cy - y) / 3.0);
            let _ = writeln!(
                s,
                "<text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"6\" text-anchor=\"middle\" dominant-baseline=\"middle\">{l}</text>"
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
