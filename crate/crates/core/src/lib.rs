//! Edit-distance toolkit: exact oracles, alignment recovery from black-box
//! estimators, Hamming embeddings of permutations and low-distance strings,
//! and length-reducing block maps.

pub mod align;
pub mod corpus;
pub mod dimred;
pub mod edit;
pub mod error;
pub mod experiment;
pub mod hashing;
pub mod io;
pub mod lowregime;
pub mod periodic;
pub mod ulam;

pub use edit::{
    apply_script, banded_distance, edit_distance, edit_distance_adaptive, equipartition,
    optimal_alignment, partition_distance, syms, Banded, EditOp, EditScript, Partition, Str, Symbol,
};
pub use error::{Error, Result};
