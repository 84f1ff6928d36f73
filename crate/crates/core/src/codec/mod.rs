//! Polar encoder, SC / SCL / adaptive CRC-aided SCL decoders and CRC-16.
//!
//! Bits are `u8` values 0 or 1. Decoders take channel LLRs in codeword
//! order, `ln P(y|0)/P(y|1)`, and return the `K` bits on the information set.

mod crc;
mod encoder;
mod sc;
mod scl;

use alloc::string::String;
use alloc::vec::Vec;

pub use crc::{crc16, crc16_attach, crc16_bytes, crc16_check, CRC_BITS};
pub use encoder::{encode, encode_source, polar_transform, source_block};
pub use sc::{sc_decode, ScDecoder};
pub use scl::{ad_cascl_decode, scl_decode, Candidate, SclDecoder};

use crate::construction::PolarCode;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Sc,
    Scl { list_size: usize },
    /// List sizes 1, 2, 4, ... up to `max_list` until a CRC passes.
    AdCascl { max_list: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoderConfig {
    pub algorithm: Algorithm,
    /// The last 16 information bits carry a CRC of the others.
    pub crc: bool,
}

impl DecoderConfig {
    pub fn sc() -> Self {
        DecoderConfig {
            algorithm: Algorithm::Sc,
            crc: false,
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        match self.algorithm {
            Algorithm::Sc => {}
            Algorithm::Scl { list_size: l } | Algorithm::AdCascl { max_list: l } => {
                if l == 0 || !l.is_power_of_two() {
                    return Err(Error::Config("list size must be a power of two"));
                }
            }
        }
        if matches!(self.algorithm, Algorithm::AdCascl { .. }) && !self.crc {
            return Err(Error::Config("adaptive list decoding needs the CRC"));
        }
        if self.crc && k <= CRC_BITS {
            return Err(Error::Config("K must exceed the 16 CRC bits"));
        }
        Ok(())
    }

    /// Number of message bits carried by a code of dimension `k`.
    pub fn message_len(&self, k: usize) -> usize {
        if self.crc {
            k - CRC_BITS
        } else {
            k
        }
    }
}

/// A reusable decoder bound to one code and configuration.
#[derive(Debug, Clone)]
pub struct Decoder {
    code: PolarCode,
    frozen: Vec<bool>,
    config: DecoderConfig,
    sc: Option<ScDecoder>,
    scl: Option<SclDecoder>,
}

impl Decoder {
    pub fn new(code: &PolarCode, config: DecoderConfig) -> Result<Self> {
        config.validate(code.k())?;
        let level = code.level();
        let (sc, scl) = match config.algorithm {
            Algorithm::Sc => (Some(ScDecoder::new(level)), None),
            Algorithm::Scl { list_size: l } | Algorithm::AdCascl { max_list: l } => {
                (None, Some(SclDecoder::new(level, l)))
            }
        };
        Ok(Decoder {
            frozen: code.frozen_mask(),
            code: code.clone(),
            config,
            sc,
            scl,
        })
    }

    pub fn config(&self) -> DecoderConfig {
        self.config
    }

    /// Estimated information bits (CRC included when enabled).
    pub fn decode(&mut self, llrs: &[f64]) -> Result<Vec<u8>> {
        check_len(&self.code, llrs)?;
        let info = self.code.info_set();
        let pick = |u: &[u8]| info.iter().map(|&j| u[j]).collect::<Vec<u8>>();
        match self.config.algorithm {
            Algorithm::Sc => {
                let mut u = alloc::vec![0u8; self.code.block_len()];
                self.sc.as_mut().expect("sc state").decode(&self.frozen, llrs, &mut u);
                Ok(pick(&u))
            }
            Algorithm::Scl { list_size } => {
                let list = self.scl.as_mut().expect("scl state").decode(&self.frozen, llrs, list_size);
                Ok(choose(&list, info, self.config.crc).unwrap_or_else(|| pick(&list[0].u)))
            }
            Algorithm::AdCascl { max_list } => {
                let scl = self.scl.as_mut().expect("scl state");
                let mut l = 1;
                loop {
                    let list = scl.decode(&self.frozen, llrs, l);
                    if let Some(bits) = choose(&list, info, true) {
                        return Ok(bits);
                    }
                    if l >= max_list {
                        return Ok(pick(&list[0].u));
                    }
                    l *= 2;
                }
            }
        }
    }
}

// Best-metric candidate whose information bits pass the CRC.
fn choose(list: &[Candidate], info: &[usize], crc: bool) -> Option<Vec<u8>> {
    if !crc {
        return None;
    }
    list.iter()
        .map(|c| info.iter().map(|&j| c.u[j]).collect::<Vec<u8>>())
        .find(|bits| crc16_check(bits))
}

fn check_len(code: &PolarCode, llrs: &[f64]) -> Result<()> {
    if llrs.len() != code.block_len() {
        return Err(Error::Length {
            what: "channel LLRs",
            expected: code.block_len(),
            actual: llrs.len(),
        });
    }
    Ok(())
}

/// Hex string of a bit sequence, MSB first, zero padded to whole nibbles.
pub fn bits_to_hex(bits: &[u8]) -> String {
    bits.chunks(4)
        .map(|c| {
            let v = c.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32 & 1) << (3 - i)));
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

/// Inverse of [`bits_to_hex`], keeping the first `len` bits.
pub fn bits_from_hex(hex: &str, len: usize) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(4 * hex.len());
    for ch in hex.chars() {
        let v = ch.to_digit(16).ok_or(Error::Config("invalid hex digit"))?;
        out.extend((0..4).rev().map(|i| ((v >> i) & 1) as u8));
    }
    if out.len() < len {
        return Err(Error::Length {
            what: "hex bit string",
            expected: len,
            actual: out.len(),
        });
    }
    out.truncate(len);
    Ok(out)
}

#[inline]
pub(crate) fn clamp_llr(x: f64) -> f64 {
    x.clamp(-1e100, 1e100)
}

/// Exact check-node LLR combination `2 atanh(tanh(a/2) tanh(b/2))`.
#[inline]
pub(crate) fn boxplus(a: f64, b: f64) -> f64 {
    let (a, b) = (clamp_llr(a), clamp_llr(b));
    if libm::fabs(a).min(libm::fabs(b)) < 0.25 {
        // Small outputs: the product form keeps full relative precision.
        return 2.0 * libm::atanh(libm::tanh(0.5 * a) * libm::tanh(0.5 * b));
    }
    let (p, q) = (libm::fabs(a).min(libm::fabs(b)), libm::fabs(a).max(libm::fabs(b)));
    // |f| = p + ln(1 + e^-(p+q)) - ln(1 + e^-(q-p)), folded into one log1p.
    let r = if q - p < 40.0 { libm::exp(p - q) } else { 0.0 };
    let x2 = if p < 20.0 { libm::exp(-2.0 * p) } else { 0.0 };
    let mag = p + libm::log1p(-r * (1.0 - x2) / (1.0 + r));
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

/// Variable-node LLR given the left partial sum.
#[inline]
pub(crate) fn var_update(a: f64, b: f64, partial: u8) -> f64 {
    let (a, b) = (clamp_llr(a), clamp_llr(b));
    if partial == 0 {
        b + a
    } else {
        b - a
    }
}
