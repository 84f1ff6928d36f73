//! Polar code construction by Gaussian approximation.
//!
//! The crate is `no_std` (it needs `alloc`) and contains everything that is
//! pure computation:
//!
//! - [`ga`]: the exact check-node kernel `phi`, the piecewise approximations
//!   (Chung, AGA-2/3/4), LLR-mean polarization, Gaussian tails and BI-AWGN
//!   capacity.
//! - [`construction`]: the mean recursion over the code tree, information set
//!   selection, the SC bound and the heuristic BEC construction.
//! - [`diagnostics`]: violation/reversal set boundaries, code-tree censuses
//!   and cumulative-logarithmic-error computations.
//! - [`codec`]: encoder, SC, SCL and adaptive CRC-aided SCL decoders, CRC-16.
//! - [`channel`]: BPSK over BI-AWGN and Rayleigh fading, equivalent AWGN noise.
//! - [`dispersion`]: the finite-blocklength normal approximation.
//!
//! IO, Monte Carlo orchestration and the command line live in the
//! `polar-ga-bench` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod channel;
pub mod codec;
pub mod construction;
pub mod diagnostics;
pub mod dispersion;
pub mod ga;
pub mod numeric;

mod error;

pub use error::{Error, Result};
