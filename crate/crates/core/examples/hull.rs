//! Points of the discrete hull, the ultrametric between them, and the subdivision map acting on
//! them.

use pentahull::hull::{continuity_check, d_prime, injectivity_check, make_point, omega_point, Generator};
use pentahull::iso::CanonScratch;
use pentahull::subdivision::SupertileCache;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cache = SupertileCache::shared();
    let f3 = make_point(cache, &Generator::FixedPointDeg3, 16)?;
    let f4 = make_point(cache, &Generator::FixedPointDeg4, 16)?;
    println!("fixed points: anchor degrees {} and {}, d' = {:?}", f3.anchor_degree(), f4.anchor_degree(), d_prime(&f3, &f4));

    for x in [&f3, &f4] {
        let wx = omega_point(x)?;
        let d = d_prime(&wx, x);
        println!(
            "{:?}: d'(w x, x) <= {} (exact: {}), desubdivision compared up to radius {:?}",
            x.generator,
            d.as_f64(),
            d.exact,
            injectivity_check(x)?
        );
    }

    // Points whose radius-3 balls look alike, so that the distances below are not all 1.
    let k6 = cache.get(6)?;
    let mut scratch = CanonScratch::new();
    let mut points = Vec::new();
    let mut key = None;
    for &vertex in pentahull::hull::certified_anchors(&k6, 10).iter().step_by(7) {
        let p = make_point(cache, &Generator::Supertile { level: 6, vertex }, 10)?;
        let form = p.ball_form(3, &mut scratch);
        if key.get_or_insert_with(|| form.clone()) == &form {
            points.push(p);
        }
        if points.len() == 7 {
            break;
        }
    }
    for (i, x) in points.iter().enumerate() {
        let row: Vec<String> = points.iter().map(|y| format!("{:.3}", d_prime(x, y).as_f64())).collect();
        println!("point {i}: {}", row.join(" "));
    }

    // Pairs that agree far out stay close under subdivision.
    for y in &points[1..] {
        if let Ok(rep) = continuity_check(&points[0], y) {
            println!("agreement {} becomes {} under subdivision", rep.n, rep.image_n);
        }
    }
    Ok(())
}
