#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Compares `bytes` with the frozen fixture. `PENTAHULL_BLESS=1` rewrites the fixture instead.
pub fn assert_fixture(name: &str, bytes: &[u8]) {
    let path = fixture_path(name);
    if std::env::var_os("PENTAHULL_BLESS").is_some() {
        std::fs::write(&path, bytes).unwrap();
        return;
    }
    let frozen = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(frozen == bytes, "{name} differs from the frozen fixture");
}

pub fn load_json(name: &str) -> serde_json::Value {
    let bytes = std::fs::read(fixture_path(name)).unwrap();
    serde_json::from_slice(&bytes).unwrap()
}
