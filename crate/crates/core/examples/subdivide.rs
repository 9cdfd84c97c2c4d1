//! Subdivides a hand-built pentagon pair, undoes it again, and shows why the rule's label offsets
//! matter.

use pentahull::complex::{ComplexBuilder, Patch};
use pentahull::iso::anchored_isomorphic;
use pentahull::subdivision::{alt_subdivide, solve_rule_tables, subdivide, symmetry_audit, try_desubdivide, RuleTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two pentagons glued along the edge 1-2, which reads 23 on one side and 45 on the other.
    let mut b = ComplexBuilder::new(8);
    b.face(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    b.face(&[(2, 4), (1, 5), (5, 1), (6, 2), (7, 3)]);
    let pair = b.build()?;
    println!("input: {} faces, report: {}", pair.face_count(), pair.validate());

    let once = subdivide(&pair)?;
    let twice = subdivide(&once)?;
    println!("after two steps: {} faces", twice.face_count());

    // Vertex 1 is an old vertex, so the step can be undone around it.
    let (back, w) = try_desubdivide(&twice, 1, &RuleTable::OMEGA).ok_or("not recognized")?;
    let same = anchored_isomorphic(&Patch::whole(&back), w, &Patch::whole(&once), 1).is_some();
    println!("desubdivided at vertex 1: {} faces, matches the one-step complex: {same}", back.face_count());

    let report = solve_rule_tables();
    println!(
        "offset search: {} locally valid, {} matching the seed, chosen {:?}",
        report.locally_valid.len(),
        report.seed_matching.len(),
        report.chosen.map(|t| t.offsets)
    );

    for variant in 0..=4 {
        let audit = symmetry_audit(variant, 3)?;
        let c = alt_subdivide(&alt_subdivide(&pair, variant)?, variant)?;
        println!(
            "variant {variant}: {} symmetric vertices, {} symmetric edges, decorations valid: {}",
            audit.vertices.len(),
            audit.edges.len(),
            c.validate().is_ok()
        );
    }
    Ok(())
}
