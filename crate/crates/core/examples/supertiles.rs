//! Builds the first supertiles and tallies their decorations and prototile classes.
//!
//!     cargo run --example supertiles -- 5

use std::collections::BTreeMap;

use pentahull::subdivision::SupertileCache;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let top: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let cache = SupertileCache::shared();
    for n in 0..=top {
        let k = cache.get(n)?;
        println!(
            "K_{n}: {} faces, {} edges, {} vertices, euler {}",
            k.face_count(),
            k.edge_count(),
            k.vertex_count(),
            k.euler_characteristic()
        );
    }

    let k = cache.get(top)?;
    let mut vertex_types = BTreeMap::new();
    for v in k.vertices().filter(|&v| !k.is_boundary_vertex(v)) {
        *vertex_types.entry(k.vertex_decoration(v)?.to_string()).or_insert(0) += 1;
    }
    println!("interior vertex decorations of K_{top}: {vertex_types:?}");

    let mut prototiles = BTreeMap::new();
    for f in k.faces() {
        if k.face_corners(f).any(|(v, _)| k.is_boundary_vertex(v)) {
            continue;
        }
        let class = k.classify_face(f)?;
        *prototiles.entry((class.undecorated.to_string(), class.decorated)).or_insert(0) += 1;
    }
    for ((shape, id), count) in prototiles {
        println!("  prototile {id:>2} ({shape}): {count}");
    }
    Ok(())
}
