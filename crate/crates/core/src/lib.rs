//! Order dimension of tree and unicycle posets.
//!
//! Posets whose cover graph has at most one cycle have dimension at most 3.
//! This crate builds explicit three-word realizers for them, verifies
//! realizers, and computes dimension by exhaustive search for small inputs.

mod bits;
pub mod classify;
pub mod cli;
pub mod crown;
pub mod error;
pub mod format;
pub mod graft;
pub mod oracle;
pub mod poset;
pub mod tree;

pub use classify::{
    classify, decompose, graft, ComponentClass, PosetClass, RootedTree, UnicycleDecomposition,
};
pub use crown::{crown_poset, crown_realizer};
pub use error::{Error, Result};
pub use graft::{realize_any, unicycle_realizer};
pub use oracle::{brute_dimension, Dimension, DimensionResult, ModelKind, RandomModel};
pub use poset::{realizes, ElementId, LinearExtension, Poset, Realizer};
pub use tree::{rooted_realizer, TreeSegments, VertexSegments};
