//! Exact checks for characteristic polynomials of Frobenius on the middle
//! cohomology of smooth projective varieties over finite fields.
//!
//! The modules follow the workflow: [`exactmath`] is the arithmetic kernel,
//! [`weil`] holds the classical admissibility checks, [`parity`] the
//! square-class tests on `(-2)^N q^e Phi(-1)`, [`compose`] base extension and
//! products, [`reconstruct`] the point-count pipeline, [`pairing_lab`] the
//! randomized lattice verifier, and [`artin_tate`] the surface discriminant
//! layer. [`cli`] wires them to the `weilcheck` binary.

pub mod artin_tate;
pub mod cli;
pub mod compose;
pub mod datasets;
pub mod error;
pub mod exactmath;
pub mod json;
pub mod pairing_lab;
pub mod parity;
pub mod reconstruct;
pub mod report;
pub mod weil;

pub use error::{Error, Result};
