use alloc::vec::Vec;

use crate::construction::PolarCode;
use crate::{Error, Result};

pub(crate) fn bit_reverse(i: usize, level: u32) -> usize {
    i.reverse_bits() >> (usize::BITS - level)
}

/// In place `v <- v F^(x)n` over GF(2), `F = [[1, 0], [1, 1]]`.
pub fn polar_transform(v: &mut [u8]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in v.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// Places `info` on the information set; frozen positions are zero.
pub fn source_block(code: &PolarCode, info: &[u8]) -> Result<Vec<u8>> {
    if info.len() != code.k() {
        return Err(Error::Length {
            what: "information bits",
            expected: code.k(),
            actual: info.len(),
        });
    }
    let mut u = alloc::vec![0u8; code.block_len()];
    for (&j, &b) in code.info_set().iter().zip(info) {
        u[j] = b & 1;
    }
    Ok(u)
}

/// `x = u B_N F^(x)n` for a full source block `u`.
pub fn encode_source(u: &[u8]) -> Result<Vec<u8>> {
    let n = u.len();
    if !n.is_power_of_two() {
        return Err(Error::Config("block length must be a power of two"));
    }
    let level = n.trailing_zeros();
    let mut v = u.to_vec();
    polar_transform(&mut v);
    if level == 0 {
        return Ok(v);
    }
    Ok((0..n).map(|i| v[bit_reverse(i, level)]).collect())
}

/// Codeword for `info` (length `K`, any CRC already attached).
pub fn encode(code: &PolarCode, info: &[u8]) -> Result<Vec<u8>> {
    encode_source(&source_block(code, info)?)
}
