//! Test cover toolkit: exact and greedy solvers, a parameterized decision
//! pipeline built on kernelization rules, reductions to and from related
//! covering problems, and text formats with a benchmark harness.
//!
//! An *instance* is a set of items `1..=n` plus a collection of distinct
//! nonempty tests (subsets of the items). A test *separates* two items when
//! it contains exactly one of them; a *test cover* is a subcollection that
//! separates every pair. Everything here revolves around finding small
//! covers — [`exact::min_test_cover_exact`] for the baseline optimum,
//! [`greedy::greedy_setcover_approx`] for the classic approximation, and
//! [`fpt::fpt_decide`] for the parameterized question "is there a cover of
//! size at most n − k?".

pub mod bench;
pub mod bitset;
pub mod error;
pub mod exact;
pub mod fpt;
pub mod greedy;
pub mod instance;
pub mod io;
pub mod limits;
pub mod reductions;

pub use bitset::ItemSet;
pub use error::{Error, Result};
pub use instance::{Instance, Partition, TestRef, ValidationReport};
pub use limits::Limits;
