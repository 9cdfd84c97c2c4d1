use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CanonScratch, CanonicalForm};
use crate::complex::PentComplex;
use crate::metric::{certification_margin, Bfs};

/// Ball types of one radius over all certified centers of a supertile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallCensus {
    pub radius: u32,
    pub supertile: u32,
    pub types: BTreeMap<CanonicalForm, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntryJson {
    pub canon: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub radius: u32,
    pub supertile: u32,
    pub types: Vec<CensusEntryJson>,
}

impl BallCensus {
    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn centers(&self) -> u64 {
        self.types.values().sum()
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.types.contains_key(form)
    }

    pub fn keys(&self) -> BTreeSet<CanonicalForm> {
        self.types.keys().cloned().collect()
    }

    /// Entries sorted by their base64 text.
    pub fn to_json_value(&self) -> CensusJson {
        let mut types: Vec<CensusEntryJson> = self
            .types
            .iter()
            .map(|(k, &count)| CensusEntryJson {
                canon: k.to_base64(),
                count,
            })
            .collect();
        types.sort_by(|a, b| a.canon.cmp(&b.canon));
        CensusJson {
            radius: self.radius,
            supertile: self.supertile,
            types,
        }
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(&self.to_json_value()).expect("census serializes");
        out.push(b'\n');
        out
    }

    /// Hex SHA-256 of [`BallCensus::to_json`].
    pub fn digest(&self) -> String {
        let d = Sha256::digest(self.to_json());
        d.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_json_value(j: &CensusJson) -> Option<Self> {
        let mut types = BTreeMap::new();
        for e in &j.types {
            types.insert(CanonicalForm::from_base64(&e.canon)?, e.count);
        }
        Some(BallCensus {
            radius: j.radius,
            supertile: j.supertile,
            types,
        })
    }
}

/// Counts the radius-`n` ball types at every vertex of `k` at least `n + 2` from the rim.
/// `level` is recorded as the supertile index.
pub fn ball_census(k: &PentComplex, n: u32, level: u32) -> BallCensus {
    let mut types: BTreeMap<CanonicalForm, u64> = BTreeMap::new();
    let mut bfs = Bfs::new(k);
    let mut scratch = CanonScratch::new();
    let rim = k.rim_distances();
    for v in k.vertices() {
        if rim[v as usize] < certification_margin(n) {
            continue;
        }
        bfs.run(k, v, n);
        let faces = bfs.ball_faces(k, n);
        let form = scratch.form(k, |f| faces.binary_search(&f).is_ok(), v);
        *types.entry(form).or_insert(0) += 1;
    }
    BallCensus {
        radius: n,
        supertile: level,
        types,
    }
}

/// Key set only.
pub fn ball_census_keys(k: &PentComplex, n: u32) -> BTreeSet<CanonicalForm> {
    ball_census(k, n, 0).types.into_keys().collect()
}

/// Whether every certified radius-`n` ball of `candidate` has a type listed in `reference`.
/// Complexes that fail validation are rejected outright.
pub fn is_locally_isomorphic(candidate: &PentComplex, n: u32, reference: &BallCensus) -> bool {
    if reference.radius != n || !candidate.validate().is_ok() {
        return false;
    }
    let mut bfs = Bfs::new(candidate);
    let mut scratch = CanonScratch::new();
    let rim = candidate.rim_distances();
    candidate.vertices().all(|v| {
        if rim[v as usize] < certification_margin(n) {
            return true;
        }
        bfs.run(candidate, v, n);
        let faces = bfs.ball_faces(candidate, n);
        reference.contains(&scratch.form(candidate, |f| faces.binary_search(&f).is_ok(), v))
    })
}
