//! Descriptor-based decomposition of mutual information for exact discrete
//! distributions.
//!
//! A *descriptor* of a target `Y` is a chain of ever coarser partitions of its
//! alphabet. Along a descriptor, `I(A; Y)` splits into one term per feature,
//! and taking, feature by feature, the least (or most) information any source
//! of a collection carries gives shared (or union) information. Minimizing
//! shared information over descriptors yields a redundancy measure whose
//! partial-information function is non-negative for two sources.
//!
//! ```
//! use pidc::corpus::{canonical_example, ExampleName};
//! use pidc::pid::decompose_two_sources;
//!
//! let and = canonical_example(ExampleName::And).distribution;
//! let r = decompose_two_sources(&and)?;
//! assert!((r.redundant() - 0.311).abs() < 1e-3);
//! assert!((r.synergy() - 0.5).abs() < 1e-9);
//! # Ok::<(), pidc::Error>(())
//! ```

pub mod corpus;
pub mod descriptor;
pub mod distribution;
pub mod error;
pub mod expansion;
pub mod lattice;
pub mod multiple;
pub mod partition;
pub mod pid;
mod search;

pub use descriptor::{Descriptor, MergeTree};
pub use distribution::{JointDistribution, LoadOptions, Outcome, Record, Selection, SourceSet};
pub use error::{Error, Result};
pub use lattice::{Antichain, RedundancyLattice};
pub use partition::{Block, Partition};
