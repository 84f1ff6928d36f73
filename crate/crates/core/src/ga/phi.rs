//! The exact check-node kernel and its inverse.

use core::f64::consts::{LN_2, PI};

use libm::{exp, expm1, log, log1p, sqrt};

use crate::numeric::{brent, integrate};
use crate::{Error, Result};

/// Above this mean the kernel is replaced by its asymptotic expansion.
pub const ASYMPTOTIC_THRESHOLD: f64 = 50.0;

const SERIES_LIMIT: f64 = 1e-6;
// Below this mean `1 - phi` is integrated directly.
const COMPLEMENT_LIMIT: f64 = 1.5;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn std_normal(x: f64) -> f64 {
    INV_SQRT_2PI * exp(-0.5 * x * x)
}

/// `ln(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + log1p(exp(-x))
    } else {
        log1p(exp(x))
    }
}

/// Natural log of the asymptotic form `sqrt(pi/t) e^(-t/4) (1 - 10/(7t))`.
pub fn ln_phi_asymptotic(t: f64) -> f64 {
    0.5 * log(PI / t) - 0.25 * t + log1p(-10.0 / (7.0 * t))
}

// ln phi(T) minus the asymptotic form at T. Applied as an O(1/t) term so
// the exact kernel stays continuous and decreasing across T.
const ASYMPTOTIC_OFFSET: f64 = -0.016_246_699_432_760_35;

fn ln_phi_tail(t: f64) -> f64 {
    ln_phi_asymptotic(t) + ASYMPTOTIC_OFFSET * ASYMPTOTIC_THRESHOLD / t
}

// E[tanh^2(z/2)] for z ~ N(t, 2t), equal to 1 - phi(t) for consistent densities.
fn one_minus_phi(t: f64) -> f64 {
    if t < SERIES_LIMIT {
        return 0.5 * t - 0.25 * t * t;
    }
    let s = sqrt(2.0 * t);
    integrate(
        |x| {
            let th = libm::tanh(0.5 * (t + s * x));
            th * th * std_normal(x)
        },
        -10.0,
        10.0,
        8,
        1e-14,
        0.0,
    )
}

// E[2 / (1 + e^z)], written with e^-z in the upper tail.
fn phi_direct(t: f64) -> f64 {
    let s = sqrt(2.0 * t);
    let lo = -(10.0 + sqrt(0.5 * t));
    integrate(
        |x| {
            let z = t + s * x;
            let w = if z > 0.0 {
                let e = exp(-z);
                2.0 * e / (1.0 + e)
            } else {
                2.0 / (1.0 + exp(z))
            };
            w * std_normal(x)
        },
        lo,
        10.0,
        12,
        1e-14,
        0.0,
    )
}

/// `ln phi(t)`, finite for every finite `t >= 0`.
pub fn ln_phi_exact(t: f64) -> Result<f64> {
    if !(t >= 0.0) || t.is_infinite() {
        return Err(Error::domain("phi_exact", t, "finite t >= 0"));
    }
    Ok(if t == 0.0 {
        0.0
    } else if t > ASYMPTOTIC_THRESHOLD {
        ln_phi_tail(t)
    } else if t < COMPLEMENT_LIMIT {
        log1p(-one_minus_phi(t))
    } else {
        log(phi_direct(t))
    })
}

/// `phi(t) = 1 - E[tanh(z/2)]`, `z ~ N(t, 2t)`.
pub fn phi_exact(t: f64) -> Result<f64> {
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    ln_phi_exact(t).map(exp)
}

/// Inverse of [`ln_phi_exact`]: the `t >= 0` with `ln phi(t) = ell`.
pub fn ln_phi_exact_inv(ell: f64) -> Result<f64> {
    if !(ell <= 0.0) {
        return Err(Error::domain("phi_exact_inv", exp(ell), "0 < y <= 1"));
    }
    if ell == 0.0 {
        return Ok(0.0);
    }
    if ell == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    // -ln phi(t) lies between t/4 and t/2, and g below is close to ln t.
    let target = log(-ell);
    let g = |t: f64| match ln_phi_exact(t) {
        Ok(l) => log(-l) - target,
        Err(_) => f64::NAN,
    };
    let (mut lo, mut hi) = (-1.5 * ell, -4.5 * ell);
    while g(lo) > 0.0 {
        lo *= 0.5;
    }
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    brent(g, lo, hi, 0.0, 1e-15)
}

/// Inverse of [`phi_exact`] on `(0, 1]`.
pub fn phi_exact_inv(y: f64) -> Result<f64> {
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::domain("phi_exact_inv", y, "0 < y <= 1"));
    }
    ln_phi_exact_inv(log(y))
}

/// `ln(1 - (1 - e^ell)^2)`, the check-node target in log domain.
pub(crate) fn ln_check_target(ell: f64) -> f64 {
    if ell >= -LN_2 {
        let d = expm1(ell);
        log1p(-d * d)
    } else {
        ell + log(2.0 - exp(ell))
    }
}
