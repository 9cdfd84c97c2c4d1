//! Writes K_2 as DOT, SVG and JSON into the given directory (default: the system temp dir).

use std::path::PathBuf;

use pentahull::export::{to_dot, to_svg};
use pentahull::subdivision::build_supertile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let k2 = build_supertile(2)?;
    for (name, bytes) in [
        ("k2.dot", to_dot(&k2).into_bytes()),
        ("k2.svg", to_svg(&k2).into_bytes()),
        ("k2.json", k2.to_json()),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, bytes)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
