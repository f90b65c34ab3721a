//! Compiles the code listings of the guide in `book/` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/distributions.md")]
pub mod distributions {}

#[doc = include_str!("../../../book/src/expansion.md")]
pub mod expansion {}

#[doc = include_str!("../../../book/src/shared.md")]
pub mod shared {}

#[doc = include_str!("../../../book/src/lattice.md")]
pub mod lattice {}

#[doc = include_str!("../../../book/src/multiple.md")]
pub mod multiple {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
