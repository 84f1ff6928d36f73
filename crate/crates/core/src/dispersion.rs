//! Normal approximation of the best rate at finite blocklength on BI-AWGN.

use core::f64::consts::LN_2;

use libm::{exp, sqrt};

use crate::ga::{biawgn_capacity, ebn0_to_noise_variance, gaussian_tail_inv, softplus};
use crate::numeric::integrate;
use crate::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// Eb/N0 search window in dB.
pub const SEARCH_RANGE_DB: (f64, f64) = (-10.0, 20.0);

/// Channel dispersion `V` (bits^2) of BPSK over AWGN with noise variance `sigma2`.
pub fn biawgn_dispersion(sigma2: f64) -> Result<f64> {
    if !(sigma2 > 0.0) {
        return Err(Error::domain("biawgn_dispersion", sigma2, "sigma2 > 0"));
    }
    let m = 2.0 / sigma2;
    let s = sqrt(2.0 * m);
    // Information density of the all-zero input in bits.
    let density = |z: f64| 1.0 - softplus(-(m + s * z)) / LN_2;
    let second = integrate(
        |z| density(z) * density(z) * INV_SQRT_2PI * exp(-0.5 * z * z),
        -12.0,
        12.0,
        8,
        1e-12,
        1e-14,
    );
    let c = biawgn_capacity(sigma2)?;
    Ok((second - c * c).max(0.0))
}

/// `C - sqrt(V / N) Q^-1(epsilon)`.
pub fn max_rate(blocklength: usize, epsilon: f64, sigma2: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("max_rate", epsilon, "0 < epsilon < 1"));
    }
    if blocklength == 0 {
        return Err(Error::Config("blocklength must be positive"));
    }
    let c = biawgn_capacity(sigma2)?;
    let v = biawgn_dispersion(sigma2)?;
    Ok(c - sqrt(v / blocklength as f64) * gaussian_tail_inv(epsilon)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionMode {
    /// Evaluate `R_max` at a fixed noise variance.
    Rate { sigma2: f64 },
    /// Find the smallest Eb/N0 whose `R_max` reaches `K / N`.
    MinEbN0,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionQuery {
    pub blocklength: usize,
    pub k: usize,
    pub epsilon: f64,
    pub mode: DispersionMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionOutcome {
    Rate(f64),
    MinEbN0Db(f64),
    /// `K / N` is not reachable anywhere in [`SEARCH_RANGE_DB`].
    NoSolution,
}

pub fn dispersion_limit(query: &DispersionQuery) -> Result<DispersionOutcome> {
    let DispersionQuery {
        blocklength,
        k,
        epsilon,
        mode,
    } = *query;
    if k > blocklength {
        return Err(Error::Config("K exceeds N"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("dispersion_limit", epsilon, "0 < epsilon < 1"));
    }
    match mode {
        DispersionMode::Rate { sigma2 } => max_rate(blocklength, epsilon, sigma2).map(DispersionOutcome::Rate),
        DispersionMode::MinEbN0 => {
            if k == 0 {
                return Err(Error::Config("K must be positive"));
            }
            let rate = k as f64 / blocklength as f64;
            let gap = |db: f64| -> Result<f64> {
                Ok(max_rate(blocklength, epsilon, ebn0_to_noise_variance(db, rate)?)? - rate)
            };
            let (mut lo, mut hi) = SEARCH_RANGE_DB;
            if gap(hi)? < 0.0 {
                return Ok(DispersionOutcome::NoSolution);
            }
            if gap(lo)? >= 0.0 {
                return Ok(DispersionOutcome::MinEbN0Db(lo));
            }
            while hi - lo > 1e-7 {
                let mid = 0.5 * (lo + hi);
                if gap(mid)? >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(DispersionOutcome::MinEbN0Db(hi))
        }
    }
}
