//! Sorting under explorable uncertainty.
//!
//! Each item is known only up to a closed interval; querying an item reveals its value (or a
//! narrower interval) at a cost. The goal is to output an order that is correct up to a
//! tolerance `delta` while paying as little as possible for queries.

pub mod error;
pub mod graph;
pub mod instance;
pub mod instances;
pub mod interval;
pub mod knowledge;
pub mod offline;
pub mod online;
pub mod permutation;
pub mod scalar;

pub use error::{Error, Result};
pub use instance::{Instance, RefinementScript};
pub use interval::{dependent, is_trivial, singleton_witness_static, singleton_witness_value, UncertainInterval};
pub use knowledge::KnowledgeState;
pub use permutation::{build_permutation, valid_permutation, Permutation};
pub use scalar::Scalar;
