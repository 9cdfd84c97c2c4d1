//! Decorated combinatorial pentagonal tilings: the subdivision rule, supertiles, combinatorial balls,
//! rigid anchored isomorphism, ball census and truncated points of the discrete hull.

pub mod complex;
pub mod iso;
pub mod label;
pub mod metric;
pub mod subdivision;
pub mod hull;
pub mod export;
pub mod verify;

pub use complex::{ComplexError, Patch, PentComplex};
pub use label::{EdgeDecoration, Label, VertexDecoration};
