//! Exact set-valued convex analysis on polyhedral data.
//!
//! Values of set-valued maps are closed convex upper sets with respect to an
//! ordering cone, support functions use the infimum convention, and every
//! computation is carried out in exact rational arithmetic.

pub mod composition;
pub mod cones;
pub mod dd;
pub mod error;
pub mod generate;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod scalar_fn;
pub mod setvalued_fn;
pub mod upper_sets;
pub mod verify;

pub use error::{Error, Result};
pub use rational::{ExtReal, Vector, Q};
