//! Well-test pressure curves for a matrix/fracture/vug reservoir whose flow
//! equations carry Caputo time-fractional derivatives.
//!
//! The wellbore pressure is solved exactly in Laplace space
//! ([`model`]) and brought back to the time domain with the Gaver-Stehfest
//! formula ([`inversion`]). [`curves`] samples log-spaced time grids, adds
//! the Bourdet derivative and handles CSV/JSON output; [`cli`] wires it all
//! to a TOML-driven command line.

// `!(x > y)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod curves;
pub mod error;
pub mod inversion;
pub mod model;
pub mod roots;
pub mod specfun;

pub use error::{Error, Result};
