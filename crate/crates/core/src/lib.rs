//! Exact arithmetic for the elliptic curves `y^2 = x^3 + (t^{q^a} - t) x^2 + gamma x`
//! over `F_q(t)`: Gauss and Kloosterman sums at the places of degree dividing `a`,
//! the L-polynomial as a product over those places, an independent point-count
//! oracle, the central value and the order of the Tate-Shafarevich group, and the
//! distribution of Kloosterman angles.

pub mod algebra;
pub mod bsd;
pub mod charsums;
pub mod cli;
pub mod curve;
pub mod cyclotomic;
pub mod distribution;
pub mod error;
pub mod lfunction;

pub use error::{Error, Result};

/// Default cap on the estimated operation count of a single computation.
pub const DEFAULT_BUDGET: f64 = 1e9;
