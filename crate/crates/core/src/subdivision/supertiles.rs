use std::sync::{Arc, OnceLock};

use super::{seed_pentagon, subdivide_unchecked, RuleTable, SubdivisionError};
use crate::complex::{FaceId, PentComplex, VertexId};

/// Largest supertile level built unless configured otherwise. `K_8` has 6^8 = 1,679,616 faces.
pub const DEFAULT_MAX_LEVEL: u32 = 8;

/// Lazily built supertiles `K_0, K_1, ...`, each shared once built.
///
/// In every `K_n` face 0 is the image of the seed's central child chain, so `K_n` sits inside
/// `K_{n+1}` as faces `0..6^n` with identical face ids and corner labels.
#[derive(Debug)]
pub struct SupertileCache {
    levels: Vec<OnceLock<Arc<PentComplex>>>,
}

impl Default for SupertileCache {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_LEVEL)
    }
}

impl SupertileCache {
    pub fn new(max_level: u32) -> Self {
        SupertileCache {
            levels: (0..=max_level).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Process-wide cache with the default limit.
    pub fn shared() -> &'static SupertileCache {
        static CACHE: OnceLock<SupertileCache> = OnceLock::new();
        CACHE.get_or_init(SupertileCache::default)
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// `K_n`.
    pub fn get(&self, n: u32) -> Result<Arc<PentComplex>, SubdivisionError> {
        let slot = self.levels.get(n as usize).ok_or(SubdivisionError::LimitExceeded {
            requested: n,
            max: self.max_level(),
        })?;
        if let Some(k) = slot.get() {
            return Ok(k.clone());
        }
        let k = if n == 0 {
            seed_pentagon()
        } else {
            let prev = self.get(n - 1)?;
            subdivide_unchecked(&prev, &RuleTable::OMEGA)
        };
        Ok(slot.get_or_init(|| Arc::new(k)).clone())
    }

    /// The inclusion `K_n -> K_{n+1}` onto the central sub-supertile, on one vertex.
    pub fn include(&self, n: u32, v: VertexId) -> Result<VertexId, SubdivisionError> {
        let k = self.get(n)?;
        let next = self.get(n + 1)?;
        Ok(include_vertex(&k, &next, v))
    }
}

/// Same face, same label: the image of `v` under the inclusion of `k` into `next`.
pub(crate) fn include_vertex(k: &PentComplex, next: &PentComplex, v: VertexId) -> VertexId {
    let h = k.rotation(v).iter().copied().find(|&h| k.face_of(h).is_some()).expect("vertex lies on a face");
    let f: FaceId = k.face_of(h).unwrap();
    let l = k.corner_label(h);
    let g = next.half_edge_at_label(f, l).expect("face has every label");
    next.origin(g)
}

/// Builds `K_n` directly, without caching.
pub fn build_supertile(n: u32) -> Result<PentComplex, SubdivisionError> {
    if n > DEFAULT_MAX_LEVEL {
        return Err(SubdivisionError::LimitExceeded {
            requested: n,
            max: DEFAULT_MAX_LEVEL,
        });
    }
    let mut k = seed_pentagon();
    for _ in 0..n {
        k = subdivide_unchecked(&k, &RuleTable::OMEGA);
    }
    Ok(k)
}
