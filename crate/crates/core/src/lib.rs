//! Supercharacter tables of the unitriangular groups `U_n(F_q)` as matrices
//! over `Z[q, q^-1]`, indexed by set partitions drawn as arc diagrams.

pub mod arcs;
pub mod chartable;
pub mod error;
pub mod laurent;
pub mod sequences;

pub use arcs::{enumerate_arc_sets, Arc, ArcSet, IntPartitionKey};
pub use chartable::{BasisMatrix, Check, MatrixKind, VerifyReport};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use sequences::Route;
