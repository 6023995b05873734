//! Distribution of the running supremum of one-dimensional symmetric Lévy processes.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is deterministic numerical
//! analysis; simulation, file formats and the command line live in the `levy-suprema`
//! crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod error;
pub mod exponents;
pub mod fluctuation;
pub mod quadrature;
pub mod special;
pub mod suprema;

pub use error::{Error, Result};
pub use exponents::{
    boundary_imag_reciprocal, cbf_eval, logspace, AdmissibilityReport, BernsteinRepresentation,
    BoundaryData, Family, MixtureTerm, StieltjesRepresentation, SymmetricLevyExponent,
};
pub use quadrature::{
    euler_invert, find_root_monotone, gaver_stehfest_invert, integrate_finite,
    integrate_semi_infinite, integrate_semi_infinite_damped, stehfest_weights, EulerParameters,
    QuadratureResult, QuadratureSettings,
};
