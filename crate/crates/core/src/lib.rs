//! Exact Hodge-theoretic invariants of abelian covers branched over
//! hyperplane arrangements.
//!
//! Given branching data (a base `P^n` with a weighted hyperplane
//! arrangement, or a product of projective lines with marked points, a
//! finite abelian group and one monodromy element per branch component)
//! this crate computes
//!
//! * eigenspace Hodge numbers `h^{p,q}_chi` by two independent routes: the
//!   generating-function route ([`hodge::eigen_hodge`]) and a
//!   Chern-character / Hirzebruch–Riemann–Roch route
//!   ([`hodge::hodge_via_hrr`]), plus the Künneth route on `(P^1)^n`;
//! * topological Euler characteristics of covers from the stratification of
//!   the arrangement ([`bounds::euler_cover`]);
//! * rational spans of representations and the resulting upper bound on
//!   Hodge classes ([`chars`], [`bounds::hodge_cycle_bound`]);
//! * local toric models of the cover ([`toric`]).
//!
//! Everything is exact: rationals, cyclotomic numbers and integers. There is
//! no floating point anywhere in the computational core.
//!
//! The runnable programs under `examples/` walk through each capability; the
//! `hodge-covers` binary exposes the same operations on JSON input files.

pub mod algebra;
pub mod arrangement;
pub mod bounds;
pub mod chars;
pub mod cli;
pub mod cover;
pub mod hodge;
pub mod io;
pub mod selftest;
pub mod toric;

use thiserror::Error;

pub use algebra::{BiSeries, Cyclotomic, IntMatrix, Rational};
pub use arrangement::{Arrangement, Hyperplane, IntersectionPoset};
pub use cover::{AbelianGroup, Base, Character, CoverSpec};
pub use hodge::EigenHodgeTable;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid branching data: {0}")]
    InvalidCover(String),

    /// The exact vanishing needed to read off Hodge numbers fails; the
    /// payload carries the topological Euler characteristics per character.
    #[error("exact Hodge computation unavailable ({}); only Euler characteristics returned", .0.reason)]
    HodgeUnavailable(Box<hodge::EulerOnly>),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("scale limit exceeded: {0}")]
    ScaleExceeded(String),

    #[error("character table rejected: {0}")]
    TableRejected(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
