use alloc::vec::Vec;

use super::encoder::bit_reverse;
use super::{boxplus, check_len, var_update};
use crate::construction::PolarCode;
use crate::Result;

/// Successive cancellation decoder with per-depth LLR and partial-sum buffers.
#[derive(Debug, Clone)]
pub struct ScDecoder {
    level: u32,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<u8>>,
    up: Vec<u8>,
    up_next: Vec<u8>,
}

impl ScDecoder {
    pub fn new(level: u32) -> Self {
        let n = 1usize << level;
        ScDecoder {
            level,
            alpha: (0..=level).map(|d| alloc::vec![0.0; n >> d]).collect(),
            beta: (0..=level).map(|d| alloc::vec![0u8; n >> d]).collect(),
            up: alloc::vec![0u8; n],
            up_next: alloc::vec![0u8; n],
        }
    }

    /// Decodes into `u` (full source estimate). `llrs` are in codeword order.
    pub fn decode(&mut self, frozen: &[bool], llrs: &[f64], u: &mut [u8]) {
        let level = self.level;
        let n = 1usize << level;
        for (i, a) in self.alpha[0].iter_mut().enumerate() {
            *a = llrs[bit_reverse(i, level)];
        }
        for i in 0..n {
            let start = if i == 0 {
                0
            } else {
                (level - 1 - i.trailing_zeros()) as usize
            };
            for d in start..level as usize {
                let h = n >> (d + 1);
                let (upper, lower) = self.alpha.split_at_mut(d + 1);
                let (src, dst) = (&upper[d], &mut lower[0]);
                if (i >> (level as usize - 1 - d)) & 1 == 0 {
                    for k in 0..h {
                        dst[k] = boxplus(src[k], src[k + h]);
                    }
                } else {
                    let partial = &self.beta[d + 1];
                    for k in 0..h {
                        dst[k] = var_update(src[k], src[k + h], partial[k]);
                    }
                }
            }
            let bit = if frozen[i] || self.alpha[level as usize][0] >= 0.0 {
                0
            } else {
                1
            };
            u[i] = bit;
            self.push_up(i, bit);
        }
    }

    fn push_up(&mut self, i: usize, bit: u8) {
        let level = self.level as usize;
        self.up[0] = bit;
        let mut len = 1;
        let mut d = level;
        while d > 0 {
            if (i >> (level - d)) & 1 == 0 {
                self.beta[d][..len].copy_from_slice(&self.up[..len]);
                return;
            }
            let left = &self.beta[d];
            for k in 0..len {
                self.up_next[k] = left[k] ^ self.up[k];
                self.up_next[k + len] = self.up[k];
            }
            core::mem::swap(&mut self.up, &mut self.up_next);
            len *= 2;
            d -= 1;
        }
    }
}

/// SC decoding: returns (information bits, full source estimate).
pub fn sc_decode(code: &PolarCode, llrs: &[f64]) -> Result<(Vec<u8>, Vec<u8>)> {
    check_len(code, llrs)?;
    let mut u = alloc::vec![0u8; code.block_len()];
    ScDecoder::new(code.level()).decode(&code.frozen_mask(), llrs, &mut u);
    let info = code.info_set().iter().map(|&j| u[j]).collect();
    Ok((info, u))
}
