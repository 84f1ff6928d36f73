//! Block error rate simulation.

use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use rand::Rng;
use rayon::prelude::*;

use polar_ga::channel::{equivalent_awgn_noise, transmit, ChannelKind, ChannelModel, RngStream};
use polar_ga::codec::{crc16_attach, encode, Decoder, DecoderConfig};
use polar_ga::construction::{compute_reliabilities, construct_code, sc_upper_bound, PolarCode};
use polar_ga::ga::ebn0_to_noise_variance;

use crate::Method;

/// Trials evaluated per parallel batch. Fixed so that the work done is the
/// same for any worker count.
const BATCH: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignSnr {
    /// Construct at the Eb/N0 of each simulated point.
    PerPoint,
    /// Construct once at this Eb/N0 in dB.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub target_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            target_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Polarization level, `N = 2^n`.
    pub n: u32,
    /// Code dimension, CRC bits included.
    pub k: usize,
    pub method: Method,
    pub design: DesignSnr,
    pub decoder: DecoderConfig,
    pub channel: ChannelKind,
    pub ebn0_db: Vec<f64>,
    pub stop: StopRule,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!((1..=24).contains(&self.n), "--n must be in 1..=24");
        ensure!(self.k >= 1 && self.k <= 1usize << self.n, "K must satisfy 1 <= K <= N");
        ensure!(!self.ebn0_db.is_empty(), "at least one Eb/N0 point is required");
        ensure!(self.ebn0_db.iter().all(|x| x.is_finite()), "Eb/N0 values must be finite");
        ensure!(self.stop.max_trials >= 1, "max trials must be at least 1");
        ensure!(self.stop.target_errors >= 1, "target errors must be at least 1");
        ensure!(self.ebn0_db.len() < 1 << 23, "too many Eb/N0 points");
        self.decoder.validate(self.k)?;
        Ok(())
    }

    /// Information bits per block that the user sees.
    pub fn payload_len(&self) -> usize {
        self.decoder.message_len(self.k)
    }

    /// Rate used to convert Eb/N0 into a noise variance.
    pub fn payload_rate(&self) -> f64 {
        self.payload_len() as f64 / (1usize << self.n) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub ebn0_db: f64,
    pub sigma2: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    /// Union bound at the simulated SNR; AWGN with a GA construction only.
    pub sc_bound: Option<f64>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub config: SimConfig,
    pub points: Vec<PointResult>,
}

impl SimResult {
    /// Counts only, for comparisons that must ignore timing.
    pub fn counts(&self) -> Vec<(u64, u64)> {
        self.points.iter().map(|p| (p.trials, p.block_errors)).collect()
    }
}

fn construction_sigma2(channel: ChannelKind, sigma2: f64) -> Result<f64> {
    Ok(equivalent_awgn_noise(&ChannelModel::new(channel, sigma2)?)?)
}

/// Runs the configured simulation. `workers = None` uses the global rayon pool.
pub fn run_bler(config: &SimConfig, workers: Option<usize>) -> Result<SimResult> {
    config.validate()?;
    match workers {
        None => run_points(config),
        Some(w) => {
            ensure!(w >= 1, "--workers must be at least 1");
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .context("building the worker pool")?;
            pool.install(|| run_points(config))
        }
    }
}

fn run_points(config: &SimConfig) -> Result<SimResult> {
    let rate = config.payload_rate();
    let method = config.method.construction();
    let fixed = match config.design {
        DesignSnr::PerPoint => None,
        DesignSnr::Fixed(db) => {
            let s = construction_sigma2(config.channel, ebn0_to_noise_variance(db, rate)?)?;
            Some(construct_code(&method, config.n, config.k, s)?.code)
        }
    };
    let mut points = Vec::with_capacity(config.ebn0_db.len());
    for (index, &db) in config.ebn0_db.iter().enumerate() {
        let start = Instant::now();
        let sigma2 = ebn0_to_noise_variance(db, rate)?;
        let code = match &fixed {
            Some(code) => code.clone(),
            None => {
                let s = construction_sigma2(config.channel, sigma2)?;
                construct_code(&method, config.n, config.k, s)?.code
            }
        };
        let sc_bound = match (config.channel, config.method.scheme()) {
            (ChannelKind::BiAwgn, Some(_)) => {
                let profile = compute_reliabilities(&method, config.n, sigma2)?;
                Some(sc_upper_bound(&profile, code.info_set())?)
            }
            _ => None,
        };
        let model = ChannelModel::new(config.channel, sigma2)?;
        let (trials, block_errors) = count_errors(config, &code, &model, index as u64)?;
        points.push(PointResult {
            ebn0_db: db,
            sigma2,
            trials,
            block_errors,
            bler: block_errors as f64 / trials as f64,
            sc_bound,
            wall_time_s: start.elapsed().as_secs_f64(),
        });
    }
    Ok(SimResult {
        config: config.clone(),
        points,
    })
}

// Trial `t` of point `p` draws from stream `(p << 40) | t`.
fn trial_stream(seed: u64, point: u64, trial: u64) -> RngStream {
    RngStream::new(seed, (point << 40) | trial)
}

fn count_errors(config: &SimConfig, code: &PolarCode, model: &ChannelModel, point: u64) -> Result<(u64, u64)> {
    let decoder = Decoder::new(code, config.decoder)?;
    let payload_len = config.payload_len();
    let crc = config.decoder.crc;
    let StopRule {
        target_errors,
        max_trials,
    } = config.stop;
    if max_trials >= 1 << 40 {
        bail!("max trials must be below 2^40");
    }
    let (mut trials, mut errors) = (0u64, 0u64);
    while trials < max_trials {
        let end = (trials + BATCH).min(max_trials);
        let outcomes: Vec<Result<bool>> = (trials..end)
            .into_par_iter()
            .map_init(
                || decoder.clone(),
                |dec, t| {
                    let mut rng = trial_stream(config.seed, point, t).rng();
                    let payload: Vec<u8> = (0..payload_len).map(|_| rng.random_range(0..2u8)).collect();
                    let info = if crc { crc16_attach(&payload) } else { payload.clone() };
                    let x = encode(code, &info)?;
                    let llr = transmit(model, &x, &mut rng);
                    let decoded = dec.decode(&llr)?;
                    Ok(decoded[..payload_len] != payload[..])
                },
            )
            .collect();
        for outcome in outcomes {
            trials += 1;
            errors += u64::from(outcome?);
            if errors >= target_errors {
                return Ok((trials, errors));
            }
        }
    }
    Ok((trials, errors))
}
