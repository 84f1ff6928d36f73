//! BPSK transmission over BI-AWGN and flat Rayleigh fading.

use alloc::vec::Vec;

use libm::{log1p, sqrt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::ga::{biawgn_capacity_inv, capacity_from_mean};
use crate::numeric::gauss_legendre;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    BiAwgn,
    /// Unit-power Rayleigh amplitude, known at the receiver.
    Rayleigh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    /// Noise variance per real dimension.
    pub sigma2: f64,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::domain("ChannelModel", sigma2, "0 < sigma2 < inf"));
        }
        Ok(ChannelModel { kind, sigma2 })
    }

    pub fn awgn(sigma2: f64) -> Result<Self> {
        Self::new(ChannelKind::BiAwgn, sigma2)
    }

    pub fn rayleigh(sigma2: f64) -> Result<Self> {
        Self::new(ChannelKind::Rayleigh, sigma2)
    }
}

/// Counter-addressed random stream: the same `(seed, stream)` always yields
/// the same samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Maps bit `b` to `1 - 2b`, adds noise and returns channel LLRs.
///
/// For each symbol the noise sample is drawn first, then (Rayleigh only) the
/// fading amplitude.
pub fn transmit<R: Rng + ?Sized>(model: &ChannelModel, codeword: &[u8], rng: &mut R) -> Vec<f64> {
    let sd = sqrt(model.sigma2);
    codeword
        .iter()
        .map(|&b| {
            let z: f64 = rng.sample(StandardNormal);
            let a = match model.kind {
                ChannelKind::BiAwgn => 1.0,
                ChannelKind::Rayleigh => rayleigh_amplitude(rng),
            };
            symbol_llr(b, a, sd * z, model.sigma2)
        })
        .collect()
}

/// Like [`transmit`] with the fading amplitudes supplied by the caller.
pub fn transmit_with_amplitudes<R: Rng + ?Sized>(
    sigma2: f64,
    codeword: &[u8],
    amplitudes: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    if amplitudes.len() != codeword.len() {
        return Err(Error::Length {
            what: "amplitudes",
            expected: codeword.len(),
            actual: amplitudes.len(),
        });
    }
    let sd = sqrt(sigma2);
    Ok(codeword
        .iter()
        .zip(amplitudes)
        .map(|(&b, &a)| {
            let z: f64 = rng.sample(StandardNormal);
            symbol_llr(b, a, sd * z, sigma2)
        })
        .collect())
}

#[inline]
fn symbol_llr(bit: u8, a: f64, noise: f64, sigma2: f64) -> f64 {
    let s = if bit == 0 { 1.0 } else { -1.0 };
    2.0 * a * (a * s + noise) / sigma2
}

// E[a^2] = 1: a = sqrt(-ln(1 - U)).
fn rayleigh_amplitude<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    sqrt(-log1p(-u))
}

const FADING_NODES: usize = 64;
const FADING_CUTOFF: f64 = 6.0;

/// Ergodic capacity `E_a[h(sigma2 / a^2)]` of the Rayleigh channel.
pub fn rayleigh_capacity(sigma2: f64) -> Result<f64> {
    if !(sigma2 > 0.0) {
        return Err(Error::domain("rayleigh_capacity", sigma2, "sigma2 > 0"));
    }
    let (x, w) = gauss_legendre(FADING_NODES);
    let half = 0.5 * FADING_CUTOFF;
    let mut total = 0.0;
    for (&x, &w) in x.iter().zip(&w) {
        let a = half * (x + 1.0);
        let density = 2.0 * a * libm::exp(-a * a);
        total += w * density * capacity_from_mean(2.0 * a * a / sigma2)?;
    }
    Ok(total * half)
}

/// Noise variance of the BI-AWGN channel with the same capacity as `model`.
pub fn equivalent_awgn_noise(model: &ChannelModel) -> Result<f64> {
    match model.kind {
        ChannelKind::BiAwgn => Ok(model.sigma2),
        ChannelKind::Rayleigh => biawgn_capacity_inv(rayleigh_capacity(model.sigma2)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::biawgn_capacity;

    fn moments(v: &[f64]) -> (f64, f64) {
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var)
    }

    #[test]
    fn awgn_llr_moments() {
        let sigma2 = 1.1915;
        let model = ChannelModel::awgn(sigma2).unwrap();
        let n = 1_000_000;
        let llr = transmit(&model, &alloc::vec![0u8; n], &mut RngStream::new(5, 0).rng());
        let (mean, var) = moments(&llr);
        let (m, v) = (2.0 / sigma2, 4.0 / sigma2);
        assert!((mean - m).abs() < 3.0 * (v / n as f64).sqrt());
        // Var of the sample variance for a Gaussian is 2 v^2 / (n - 1).
        assert!((var - v).abs() < 3.0 * (2.0 * v * v / (n as f64 - 1.0)).sqrt());
        let ones = transmit(&model, &alloc::vec![1u8; n], &mut RngStream::new(5, 1).rng());
        let (mean1, _) = moments(&ones);
        assert!((mean + mean1).abs() < 3.0 * (2.0 * v / n as f64).sqrt());
    }

    #[test]
    fn noiseless_signs() {
        let model = ChannelModel::rayleigh(1e-12).unwrap();
        let x: Vec<u8> = (0..200).map(|i| (i * 7 % 3 == 0) as u8).collect();
        let llr = transmit(&model, &x, &mut RngStream::new(1, 2).rng());
        assert!(x.iter().zip(&llr).all(|(&b, &l)| (l > 0.0) == (b == 0)));
    }

    #[test]
    fn unit_fade_is_awgn() {
        let x: Vec<u8> = (0..64).map(|i| (i % 5 == 1) as u8).collect();
        let a = transmit_with_amplitudes(0.8, &x, &[1.0; 64], &mut RngStream::new(9, 3).rng());
        let b = transmit(&ChannelModel::awgn(0.8).unwrap(), &x, &mut RngStream::new(9, 3).rng());
        assert_eq!(a.unwrap(), b);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let model = ChannelModel::rayleigh(0.5).unwrap();
        let x = [0u8; 32];
        let a = transmit(&model, &x, &mut RngStream::new(3, 7).rng());
        let b = transmit(&model, &x, &mut RngStream::new(3, 7).rng());
        let c = transmit(&model, &x, &mut RngStream::new(3, 8).rng());
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn equivalent_noise() {
        assert_eq!(equivalent_awgn_noise(&ChannelModel::awgn(0.7).unwrap()).unwrap(), 0.7);
        let mut prev = 0.0;
        for &s in &[0.2, 0.5, 1.0, 1.1915, 2.0, 4.0] {
            let eq = equivalent_awgn_noise(&ChannelModel::rayleigh(s).unwrap()).unwrap();
            assert!(eq > s && eq > prev);
            assert!(rayleigh_capacity(s).unwrap() < biawgn_capacity(s).unwrap());
            prev = eq;
        }
    }

    #[test]
    fn fixed_rule_meets_absolute_tolerance() {
        for &s in &[0.1, 1.1915, 5.0] {
            let f = |a: f64| 2.0 * a * (-a * a).exp() * capacity_from_mean(2.0 * a * a / s).unwrap();
            let adaptive = crate::numeric::integrate(f, 0.0, 12.0, 24, 1e-12, 0.0);
            assert!((rayleigh_capacity(s).unwrap() - adaptive).abs() < 1e-6);
        }
    }

    // Monte Carlo oracle: E[1 - log2(1 + e^-L)] over simulated fading LLRs.
    #[test]
    fn rayleigh_capacity_matches_monte_carlo() {
        let sigma2 = 1.1915;
        let model = ChannelModel::rayleigh(sigma2).unwrap();
        let mut rng = RngStream::new(42, 0).rng();
        let n = 10_000_000;
        let mut sum = 0.0;
        let chunk = alloc::vec![0u8; 10_000];
        for _ in 0..n / chunk.len() {
            for l in transmit(&model, &chunk, &mut rng) {
                sum += 1.0 - crate::ga::softplus(-l) / core::f64::consts::LN_2;
            }
        }
        let mc = sum / n as f64;
        assert!((rayleigh_capacity(sigma2).unwrap() - mc).abs() < 1e-3);
    }
}
