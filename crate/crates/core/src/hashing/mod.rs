//! Seeded hash families, Merkle window digests, sliding-window unique
//! minima and range-minimum queries.

mod family;
mod rmq;
mod sliding;
mod window;

pub use family::{Digest, HashFamily, HashStream};
pub use rmq::RmqIndex;
pub use sliding::sliding_unique_min;
pub use window::{window_hashes, WindowHasher};
