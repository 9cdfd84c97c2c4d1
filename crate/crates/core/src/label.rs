//! Corner labels and the decorations they induce on vertices and edges.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("label {0} is outside 1..=5")]
pub struct LabelOutOfRange(pub i64);

/// A corner label in `1..=5`. Arithmetic wraps with representative in `1..=5`, so `5 + 1 == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Label(u8);

impl Label {
    pub const ALL: [Label; 5] = [Label(1), Label(2), Label(3), Label(4), Label(5)];

    pub fn new(value: u8) -> Result<Self, LabelOutOfRange> {
        if (1..=5).contains(&value) {
            Ok(Label(value))
        } else {
            Err(LabelOutOfRange(value as i64))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// `self + k` on the 5-cycle.
    pub fn shift(self, k: i64) -> Label {
        Label(shift_raw(self.0, k))
    }

    /// The mirror relabelling `l -> 6 - l`.
    pub fn mirrored(self) -> Label {
        Label(6 - self.0)
    }
}

impl TryFrom<u8> for Label {
    type Error = LabelOutOfRange;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Label::new(v)
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `l + k` on raw labels in `1..=5`.
#[inline]
pub(crate) fn shift_raw(l: u8, k: i64) -> u8 {
    ((l as i64 - 1 + k).rem_euclid(5) + 1) as u8
}

/// `(a - b) mod 5` in `0..5`.
#[inline]
pub(crate) fn diff_raw(a: u8, b: u8) -> u8 {
    ((a as i16 - b as i16).rem_euclid(5)) as u8
}

/// Cyclic sequence of corner labels around a vertex, stored as its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexDecoration(Vec<u8>);

impl VertexDecoration {
    /// Canonicalizes a cyclic sequence given in positive rotation order.
    pub fn from_cyclic(seq: &[u8]) -> Self {
        VertexDecoration(least_rotation(seq))
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// True when some label occurs twice, i.e. the decoration no longer breaks every symmetry.
    pub fn has_repeated_label(&self) -> bool {
        let mut seen = [false; 6];
        for &l in &self.0 {
            if seen[l as usize] {
                return true;
            }
            seen[l as usize] = true;
        }
        false
    }

    pub fn is_allowed(&self) -> bool {
        match self.0.len() {
            3 => ALLOWED_DEGREE3.iter().any(|a| a[..] == self.0[..]),
            4 => ALLOWED_DEGREE4.iter().any(|a| a[..] == self.0[..]),
            _ => false,
        }
    }
}

impl fmt::Display for VertexDecoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn least_rotation(seq: &[u8]) -> Vec<u8> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|k| seq[(a + k) % n])
                .cmp((0..n).map(|k| seq[(b + k) % n]))
        })
        .unwrap_or(0);
    (0..n).map(|k| seq[(best + k) % n]).collect()
}

/// The two label pairs an edge sees from its two faces, ordered with the smaller first element first.
///
/// Each pair `(a, a + 1)` lists the face's labels at the edge's endpoints in that face's positive direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeDecoration {
    pub first: (u8, u8),
    pub second: (u8, u8),
}

impl EdgeDecoration {
    pub fn new(a: (u8, u8), b: (u8, u8)) -> Self {
        if a <= b {
            EdgeDecoration { first: a, second: b }
        } else {
            EdgeDecoration { first: b, second: a }
        }
    }

    pub fn has_repeated_label(&self) -> bool {
        let ls = [self.first.0, self.first.1, self.second.0, self.second.1];
        (0..4).any(|i| (i + 1..4).any(|j| ls[i] == ls[j]))
    }

    pub fn is_allowed(&self) -> bool {
        ALLOWED_EDGES.contains(&(self.first.0, self.second.0))
            && self.first.1 == shift_raw(self.first.0, 1)
            && self.second.1 == shift_raw(self.second.0, 1)
    }
}

impl fmt::Display for EdgeDecoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{},{}{})",
            self.first.0, self.first.1, self.second.0, self.second.1
        )
    }
}

/// The five decorations a degree-3 vertex may carry, in the order the seed pentagon's corners 1..5 realize them.
pub const ALLOWED_DEGREE3: [[u8; 3]; 5] = [[1, 3, 5], [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5]];

/// The five decorations a degree-4 vertex may carry.
pub const ALLOWED_DEGREE4: [[u8; 4]; 5] = [
    [1, 2, 3, 4],
    [1, 2, 4, 5],
    [2, 3, 4, 5],
    [1, 2, 3, 5],
    [1, 3, 4, 5],
];

/// First elements `(a, b)` of the five allowed edge decorations `(a a+1, b b+1)`.
pub const ALLOWED_EDGES: [(u8, u8); 5] = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];

pub fn allowed_vertex_decorations() -> Vec<VertexDecoration> {
    ALLOWED_DEGREE3
        .iter()
        .map(|d| VertexDecoration(d.to_vec()))
        .chain(ALLOWED_DEGREE4.iter().map(|d| VertexDecoration(d.to_vec())))
        .collect()
}

pub fn allowed_edge_decorations() -> Vec<EdgeDecoration> {
    ALLOWED_EDGES
        .iter()
        .map(|&(a, b)| EdgeDecoration::new((a, shift_raw(a, 1)), (b, shift_raw(b, 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_wraps() {
        assert_eq!(Label::new(5).unwrap().shift(1).get(), 1);
        assert_eq!(Label::new(1).unwrap().shift(-1).get(), 5);
        assert_eq!(shift_raw(3, 12), 5);
        assert!(Label::new(0).is_err());
        assert!(Label::new(6).is_err());
    }

    #[test]
    fn rotation_is_canonical() {
        let a = VertexDecoration::from_cyclic(&[3, 5, 1]);
        let b = VertexDecoration::from_cyclic(&[5, 1, 3]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "135");
    }

    #[test]
    fn allowed_sets_are_the_x_x1_x3_family() {
        for x in 1..=5u8 {
            let d3 = VertexDecoration::from_cyclic(&[x, shift_raw(x, 1), shift_raw(x, 3)]);
            assert!(d3.is_allowed(), "{d3}");
            let d4 = VertexDecoration::from_cyclic(&[
                x,
                shift_raw(x, 1),
                shift_raw(x, 2),
                shift_raw(x, 3),
            ]);
            assert!(d4.is_allowed(), "{d4}");
        }
        let edges: Vec<String> = allowed_edge_decorations().iter().map(|e| e.to_string()).collect();
        assert_eq!(edges, ["(12,34)", "(12,45)", "(23,45)", "(23,51)", "(34,51)"]);
    }
}
