//! Exact symbolic tensor calculus for almost-contact and Kenmotsu geometry.
//!
//! The crate is organised bottom-up:
//!
//! * [`symkernel`] exact rational functions in chart coordinates,
//! * [`geometry`] metrics, connections, curvature and frames,
//! * [`contact`] almost-contact / Kenmotsu structure checks and ∗-Ricci,
//! * [`soliton`] soliton residuals, the exact (β, μ) solver and fitters,
//! * [`connections`] CL-connections and the Schouten–Van Kampen connection.

pub mod connections;
pub mod contact;
pub mod error;
pub mod geometry;
pub mod soliton;
pub mod symkernel;

pub use error::{Error, Result};
pub use symkernel::{Rational, ScalarExpr};
