//! Exact arithmetic substrate: rationals, binomials, truncated series,
//! integer matrices and cyclotomic numbers.

pub mod cyclotomic;
pub mod matrix;
pub mod number;
pub mod rational;
pub mod series;

pub use cyclotomic::Cyclotomic;
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use number::{binomial, euler_phi, is_prime};
pub use rational::Rational;
pub use series::{BiSeries, SeriesBase};
