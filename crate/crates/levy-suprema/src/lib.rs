//! Command-line tools, file formats and a Monte Carlo oracle for the distribution of the
//! running supremum of symmetric one-dimensional Lévy processes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod cli;
pub mod commands;
pub mod error;
pub mod family;
pub mod montecarlo;
pub mod range;
pub mod table;

pub use error::{AppError, AppResult};
