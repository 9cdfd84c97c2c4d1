//! Anchored isomorphism, pattern occurrences and ball-type censuses.

use pentahull::complex::Patch;
use pentahull::iso::{anchored_isomorphic, automorphisms, ball_census, find_occurrences, MarkPolicy};
use pentahull::metric::ball;
use pentahull::subdivision::SupertileCache;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cache = SupertileCache::shared();
    let (k1, k4, k5) = (cache.get(1)?, cache.get(4)?, cache.get(5)?);

    let auts = automorphisms(&Patch::whole(&k4), 8);
    println!("K_4 has {} automorphism(s)", auts.len());

    let strict = find_occurrences(&Patch::whole(&k1), 10, &k4, MarkPolicy::Strict);
    let loose = find_occurrences(&Patch::whole(&k1), 10, &k4, MarkPolicy::IgnoreMarks);
    println!("K_1 occurs in K_4 {} times by labels, {} times with matching surroundings", loose.len(), strict.len());

    let centers: Vec<u32> = k5.vertices().filter(|&v| k5.rim_distance(v) >= 6).take(2).collect();
    let (a, b) = (centers[0], centers[1]);
    for n in 2..=4 {
        let (pa, pb) = (ball(&k5, a, n)?.patch(&k5), ball(&k5, b, n)?.patch(&k5));
        println!("B({a}, {n}) vs B({b}, {n}): isomorphic {}", anchored_isomorphic(&pa, a, &pb, b).is_some());
    }

    for n in 1..=3 {
        for m in 3..=5 {
            let km = cache.get(m)?;
            let c = ball_census(&km, n, m);
            println!("radius {n} on K_{m}: {:>3} types over {:>5} centers, digest {}", c.type_count(), c.centers(), &c.digest()[..12]);
        }
    }
    Ok(())
}
