use std::fmt;

use serde::Serialize;

use super::{ComplexError, FaceId, PentComplex};
use crate::label::shift_raw;

/// Face type by number of degree-4 corners: none, two or three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum UndecoratedClass {
    T1,
    T2,
    T3,
}

impl fmt::Display for UndecoratedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UndecoratedClass::T1 => "t1",
            UndecoratedClass::T2 => "t2",
            UndecoratedClass::T3 => "t3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrototileClass {
    pub undecorated: UndecoratedClass,
    /// Decorated class in `1..=11`.
    pub decorated: u8,
}

/// Corner degrees of the 11 decorated prototiles, indexed by corner label.
///
/// Class 1 has all corners of degree 3. Classes `1 + l` and `6 + l` (`l` in 1..=5) are the faces that
/// sit at a corner labelled `l` of their parent: degree 4 at labels `l + 1` and `l + 4`, degree 3 at
/// `l + 2` and `l + 3`, and at `l` itself degree 3 (classes 2..=6) or 4 (classes 7..=11).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrototileTable {
    /// `degrees[class - 1][label - 1]`.
    pub degrees: [[u8; 5]; 11],
}

impl Default for PrototileTable {
    fn default() -> Self {
        let mut degrees = [[3u8; 5]; 11];
        for l in 1..=5u8 {
            for (class, own) in [(1 + l as usize, 3u8), (6 + l as usize, 4u8)] {
                let row = &mut degrees[class - 1];
                row[(l - 1) as usize] = own;
                row[(shift_raw(l, 1) - 1) as usize] = 4;
                row[(shift_raw(l, 4) - 1) as usize] = 4;
            }
        }
        PrototileTable { degrees }
    }
}

impl PrototileTable {
    pub fn lookup(&self, degrees_by_label: &[u8; 5]) -> Option<u8> {
        self.degrees
            .iter()
            .position(|row| row == degrees_by_label)
            .map(|i| i as u8 + 1)
    }
}

impl PentComplex {
    /// Corner degrees of `f` indexed by label, using rim marks where needed.
    pub fn face_degrees_by_label(&self, f: FaceId) -> Result<[u8; 5], ComplexError> {
        if f as usize >= self.face_count() {
            return Err(ComplexError::UnknownFace(f));
        }
        let mut out = [0u8; 5];
        for (v, l) in self.face_corners(f) {
            let d = self
                .ambient_degree(v)
                .ok_or(ComplexError::UnknownDegree { face: f, vertex: v })?;
            out[(l - 1) as usize] = d as u8;
        }
        Ok(out)
    }

    pub fn classify_face(&self, f: FaceId) -> Result<PrototileClass, ComplexError> {
        let deg = self.face_degrees_by_label(f)?;
        let count = deg.iter().filter(|&&d| d == 4).count();
        let undecorated = match count {
            0 => UndecoratedClass::T1,
            2 => UndecoratedClass::T2,
            3 => UndecoratedClass::T3,
            _ => return Err(ComplexError::InvalidFace { face: f, count }),
        };
        let decorated = PrototileTable::default()
            .lookup(&deg)
            .ok_or(ComplexError::InvalidFace { face: f, count })?;
        Ok(PrototileClass {
            undecorated,
            decorated,
        })
    }
}
