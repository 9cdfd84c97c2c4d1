//! Combinatorial balls in K_6: sizes, boundary growth, and the first radius at which a ball
//! around a corner-derived vertex encloses holes.

use pentahull::metric::{ball, ball_diameter, boundary_growth, hole_count, vertex_distance};
use pentahull::subdivision::SupertileCache;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cache = SupertileCache::shared();
    let k = cache.get(6)?;
    let center = (0..k.vertex_count() as u32)
        .max_by_key(|&v| k.rim_distance(v))
        .ok_or("empty supertile")?;
    println!("center {center}, {} steps from the rim", k.rim_distance(center));

    for n in [2, 4, 8, 12, 16] {
        let b = ball(&k, center, n)?;
        let g = boundary_growth(&k, center, n)?;
        println!(
            "B({center}, {n:>2}): {:>5} faces, {:>4} boundary edges, diameter {:>2}, holes {}, next boundary {}",
            b.faces.len(),
            b.boundary_edges.len(),
            ball_diameter(&k, &b),
            hole_count(&k, &b),
            g.m_next
        );
    }

    let d = vertex_distance(&k, center, 0)?;
    println!("distance to vertex 0: {} (could be shorter outside K_6: {})", d.dist, d.rim_limited);

    // Vertex 10 of K_7 is where a radius-33 ball first shows holes.
    let k7 = cache.get(7)?;
    for n in 30..=33 {
        let b = ball(&k7, 10, n)?;
        println!("K_7, B(10, {n}): {} faces, {} holes", b.faces.len(), hole_count(&k7, &b));
    }
    Ok(())
}
