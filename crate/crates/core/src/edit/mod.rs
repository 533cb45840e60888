//! Strings, edit scripts, partitions and the exact edit-distance oracle.

mod distance;
mod partition;
mod script;
mod types;

pub use distance::{banded_distance, edit_distance, edit_distance_adaptive, optimal_alignment, Banded};
pub(crate) use distance::{banded, levenshtein, prefix_distances};
pub use partition::{equipartition, partition_distance, Partition};
pub use script::{apply_script, EditOp, EditScript};
pub(crate) use types::check_len;
pub use types::{syms, Str, Symbol, DEFAULT_MAX_LEN, DUMMY_BASE};
