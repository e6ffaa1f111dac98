//! Photon wave function of the hydrogen 2p–1s transition in spacetime.
//!
//! Three coupling treatments are covered: the standard one (negative
//! frequencies included), the dipole approximation and the exact form-factor
//! coupling. Each field cell is split into a causal pole part and a
//! principal-value part that leaks outside the lightcone. An adaptive
//! quadrature oracle cross-checks every closed form.

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod field;
pub mod model;
pub mod numerics;
pub mod oracle;

pub use error::{Error, Result};
