//! Separator and decomposition machinery for graphs of bounded tree
//! independence number, with exact checkers for every produced certificate.

pub mod boosting;
pub mod caps;
pub mod graph;
pub mod layered;
pub mod patterns;
pub mod esd;
pub mod separators;
pub mod treedecomp;

pub use caps::Caps;
pub use graph::{CapExceeded, Graph, GraphError, Induced, Rational, VertexSet, WeightFn, WeightMode};
