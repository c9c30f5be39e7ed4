//! Exact tools for k-dominating independent sets in small graphs.
//!
//! Graphs have at most 64 vertices and store each neighbourhood as a `u64`
//! bitmask. See the guide in `book/` for a tour.

pub mod bounds;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod products;
pub mod search;
pub mod twins;

pub use error::{Error, Result};
pub use graph::{FamilyFilter, Graph, VertexSet};

// mdbook cannot link this crate into its own test runner, so every chapter is
// compiled here as a doc comment and `cargo test --doc` runs its snippets.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/twins.md")]
    mod twins {}
    #[doc = include_str!("../../../book/src/generation.md")]
    mod generation {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
