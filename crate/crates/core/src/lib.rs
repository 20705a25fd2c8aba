//! Tableau insertion algorithms as growth processes over weighted dual
//! graded graphs.
//!
//! An algorithm is a family of [`insdiag::InsertionDiagram`]s, one per shape.
//! [`growth::run_growth`] evaluates a generalized permutation through it and
//! [`growth::invert_growth`] reverses the process. The built-in algorithms
//! live in [`catalog`]; [`oracle`] and [`duality`] check them exhaustively
//! at small sizes.

pub mod catalog;
pub mod duality;
pub mod exec;
pub mod growth;
pub mod insdiag;
pub mod lattice;
pub mod oracle;
pub mod wdgg;

pub use catalog::{list_algorithms, AlgorithmSpec};
pub use growth::{
    extract_p, extract_q, invert_growth, run_growth, ColoredTableau, GeneralizedPermutation,
    GrowthDiagram,
};
pub use insdiag::{Color, ColorPair, Correspondence, InsertionDiagram};
pub use lattice::{Geometry, Point, Shape};
pub use wdgg::{Channel, Instantiation};
