//! BI-AWGN capacity under the consistent-Gaussian LLR model.

use core::f64::consts::LN_2;

use libm::{exp, log, pow, sqrt, tanh};

use crate::numeric::{brent, integrate};
use crate::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

// 1 - h_b(1 / (1 + e^a)) for a = |L| >= 0, in bits.
fn capacity_kernel(a: f64) -> f64 {
    let delta = tanh(0.5 * a);
    if delta < 0.1 {
        let d2 = delta * delta;
        let mut term = d2;
        let mut acc = 0.0;
        for k in 1..=12 {
            let k = k as f64;
            acc += term / (k * (2.0 * k - 1.0));
            term *= d2;
        }
        return acc / (2.0 * LN_2);
    }
    // 1 - delta = 2 / (1 + e^a), kept exact for large a.
    let e = exp(-a);
    let w = 2.0 * e / (1.0 + e);
    let plus = (2.0 - w) * log(2.0 - w);
    let minus = if w > 0.0 { w * log(w) } else { 0.0 };
    (plus + minus) / (2.0 * LN_2)
}

/// Capacity in bits of the channel whose LLR is `N(m, 2m)`.
pub fn capacity_from_mean(m: f64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::domain("capacity_from_mean", m, "m >= 0"));
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    if m == f64::INFINITY {
        return Ok(1.0);
    }
    let s = sqrt(2.0 * m);
    let f = |x: f64| {
        capacity_kernel(libm::fabs(m + s * x)) * INV_SQRT_2PI * exp(-0.5 * x * x)
    };
    // Split at the kink of |L|.
    let kink = (-m / s).max(-10.0);
    let mut total = integrate(f, kink, 10.0, 6, 1e-13, 0.0);
    if kink > -10.0 {
        total += integrate(f, -10.0, kink, 4, 1e-13, 0.0);
    }
    Ok(total.min(1.0))
}

/// `h(sigma2)`: capacity of BPSK over AWGN with noise variance `sigma2`.
pub fn biawgn_capacity(sigma2: f64) -> Result<f64> {
    if !(sigma2 > 0.0) {
        return Err(Error::domain("biawgn_capacity", sigma2, "sigma2 > 0"));
    }
    capacity_from_mean(2.0 / sigma2)
}

/// `h^-1(cap)`: the noise variance whose capacity is `cap`.
pub fn biawgn_capacity_inv(cap: f64) -> Result<f64> {
    if !(cap > 0.0 && cap < 1.0) {
        return Err(Error::domain("biawgn_capacity_inv", cap, "0 < cap < 1"));
    }
    let g = |s: f64| biawgn_capacity(exp(s)).map_or(f64::NAN, |h| h - cap);
    let (mut lo, mut hi) = (-8.0, 8.0);
    while g(lo) < 0.0 {
        lo -= 8.0;
    }
    while g(hi) > 0.0 {
        hi += 8.0;
    }
    brent(g, lo, hi, 1e-15, 0.0).map(exp)
}

/// `sigma2 = 1 / (2 R 10^(EbN0/10))` for BPSK.
pub fn ebn0_to_noise_variance(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::domain("ebn0_to_noise_variance", rate, "0 < rate <= 1"));
    }
    Ok(1.0 / (2.0 * rate * pow(10.0, ebn0_db / 10.0)))
}
