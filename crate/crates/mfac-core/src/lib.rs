//! Deterministic discrete-time toolkit for incremental adaptive control
//! compensated with disturbance.
//!
//! The crate simulates SISO and MIMO plants under an incremental control law
//! derived from an exact dynamic linearization of the plant along its
//! trajectory, with the disturbance increment either known, estimated by a
//! first-order observer, or ignored. A companion z-domain layer builds the
//! frozen-coefficient closed-loop characteristic polynomial, locates its
//! poles, and evaluates disturbance-to-output transfer gains and ramp
//! steady-state errors.
//!
//! Everything here is `no_std` + `alloc`; transcendental functions go through
//! `libm` so that traces are bit-reproducible across platforms. File formats
//! and the command-line front end live in the companion `mfac-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod controller;
pub mod edlm;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod observer;
pub mod plants;
pub mod signals;

pub use error::{Error, Result};
