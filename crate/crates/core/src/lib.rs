//! Fibonacci chains built three ways and cross-checked in exact arithmetic.
//!
//! * [`substitution`]: deflation `L -> LS, S -> L`, its inverse and index
//!   sequences of segments.
//! * [`cutproject`]: the cut procedure and strip projection through the
//!   square lattice with slope `1/tau`.
//! * [`partition`]: the tower of interval partitions `W_n` of the intercept
//!   space and its bijection with index prefixes.
//! * [`ktheory`]: dimension data, the ordered group `Z + tau Z` and the
//!   equivalence relations on index sequences.
//!
//! All comparisons are exact in [`golden::GoldenRational`]; floats appear
//! only in rendering.

pub mod cutproject;
pub mod golden;
pub mod ktheory;
pub mod partition;
pub mod substitution;

pub use cutproject::{cut_chain, cut_window, strip_chain, CutChain, SingularPolicy};
pub use golden::{golden_power, GoldenRational};
pub use partition::{build_partition, index_from_intercept, locate, Partition};
pub use substitution::{deflate, fixed_word, index_prefix, inflate, IndexPrefix, Letter, Word};
