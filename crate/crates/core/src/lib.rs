//! Induced-bisecting families of bicolorings.
//!
//! A bicoloring of order `d` colors exactly `d` vertices of `[n]` with `+1`
//! or `-1`; it *induced-bisects* a hyperedge `A` when `A` meets both color
//! classes in the same, non-zero, number of vertices. In vector language the
//! bicoloring is a `{-1,0,1}` vector of weight `d` that is orthogonal, but
//! not trivially orthogonal, to the 0/1 point `A` of the Hamming cube.
//!
//! This crate builds families that bisect every non-trivial hyperedge,
//! checks them exhaustively or by sampling, evaluates the known lower and
//! upper bounds on the minimum family size, and finds that minimum exactly
//! on small instances.
//!
//! ```
//! use ibf::{construct::general_family, verify::{verify_full, Mode}};
//!
//! let family = general_family(7, 4).unwrap();
//! assert!(family.len() <= 16);
//! assert!(verify_full(&family, Mode::Exhaustive).unwrap().complete);
//! ```
//!
//! The `book/` directory walks through each piece; its code listings are
//! compiled and run as doctests of this crate.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod construct;
pub mod edge;
pub mod error;
pub mod exact;
pub mod family;
pub mod format;
pub mod verify;

pub use coloring::{induced_bisects, nontrivially_orthogonal, signed_sum, Bicoloring, Sign};
pub use edge::{is_trivial_edge, Edge, Hypergraph};
pub use error::{Error, Result};
pub use family::{Family, Provenance};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/bisection.md")]
    mod bisection {}
    #[doc = include_str!("../../../book/src/cycle.md")]
    mod cycle {}
    #[doc = include_str!("../../../book/src/general.md")]
    mod general {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
