//! Kauffman bracket polynomials and framed (Viro convention) integer Khovanov
//! homology of link diagrams given as planar-diagram codes.
//!
//! The crate is organised bottom-up:
//!
//! * [`diagram`] parses, builds and resolves PD codes,
//! * [`bracket`] holds exact Laurent polynomials and three bracket evaluators,
//! * [`khovanov`] enumerates enhanced states and builds the differentials,
//! * [`homology`] does exact integer linear algebra and assembles homology tables,
//! * [`torus`] has the closed forms for `T(2,n)` and the long exact sequence checks,
//! * [`verify`] bundles the invariant suites used by the command-line tool.

pub mod bracket;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod khovanov;
pub mod render;
pub mod state;
pub mod torus;
pub mod verify;

pub use bracket::{
    bracket_enhanced, bracket_reduced, bracket_skein_oracle, bracket_unreduced, LaurentPolynomial,
};
pub use diagram::{Crossing, Diagram, EdgeId, KinkSign, KinkSite, Resolution};
pub use error::{Error, Result};
pub use homology::{homology_table, AbelianGroup, HomologyTable, IntegerMatrix};
pub use state::{KauffmanState, Marker};

/// Largest crossing count accepted by the state-sum enumerations.
pub const MAX_CROSSINGS: usize = 32;

/// Largest number of circles a single resolution may have (signs are packed in a `u64`).
pub const MAX_CIRCLES: usize = 64;
