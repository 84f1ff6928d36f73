use alloc::vec::Vec;

use super::encoder::bit_reverse;
use super::{boxplus, check_len, choose, var_update};
use crate::construction::PolarCode;
use crate::Result;

const NONE: usize = usize::MAX;

/// A surviving list path: full source estimate and accumulated penalty.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub u: Vec<u8>,
    pub metric: f64,
}

// Fixed-size slots shared between paths, with reference counts.
#[derive(Debug, Clone)]
struct Pool<T> {
    width: usize,
    data: Vec<T>,
    refs: Vec<u32>,
    free: Vec<usize>,
}

impl<T: Copy + Default> Pool<T> {
    fn new(width: usize, slots: usize) -> Self {
        Pool {
            width,
            data: alloc::vec![T::default(); width * slots],
            refs: alloc::vec![0; slots],
            free: (0..slots).rev().collect(),
        }
    }

    fn reset(&mut self) {
        self.refs.iter_mut().for_each(|r| *r = 0);
        self.free.clear();
        self.free.extend((0..self.refs.len()).rev());
    }

    fn release(&mut self, slot: usize) {
        if slot != NONE {
            self.refs[slot] -= 1;
            if self.refs[slot] == 0 {
                self.free.push(slot);
            }
        }
    }

    fn share(&mut self, slot: usize) {
        if slot != NONE {
            self.refs[slot] += 1;
        }
    }

    /// A slot owned only by the caller; contents are not preserved.
    fn exclusive(&mut self, slot: usize) -> usize {
        if slot != NONE && self.refs[slot] == 1 {
            return slot;
        }
        self.release(slot);
        let fresh = self.free.pop().expect("pool exhausted");
        self.refs[fresh] = 1;
        fresh
    }

    fn get(&self, slot: usize) -> &[T] {
        &self.data[slot * self.width..(slot + 1) * self.width]
    }

    fn get_mut(&mut self, slot: usize) -> &mut [T] {
        &mut self.data[slot * self.width..(slot + 1) * self.width]
    }
}

#[derive(Debug, Clone)]
struct Path {
    alpha: Vec<usize>,
    beta: Vec<usize>,
    metric: f64,
    head: usize,
}

/// SC list decoder with lazy copying of per-depth state.
#[derive(Debug, Clone)]
pub struct SclDecoder {
    level: u32,
    max_list: usize,
    channel: Vec<f64>,
    alpha: Vec<Pool<f64>>,
    beta: Vec<Pool<u8>>,
    paths: Vec<Option<Path>>,
    // Decision history as linked lists: (bit, previous entry).
    arena: Vec<(u8, usize)>,
    up: Vec<u8>,
    up_next: Vec<u8>,
}

impl SclDecoder {
    pub fn new(level: u32, max_list: usize) -> Self {
        let n = 1usize << level;
        let max_list = max_list.max(1);
        SclDecoder {
            level,
            max_list,
            channel: alloc::vec![0.0; n],
            alpha: (0..=level).map(|d| Pool::new(n >> d, max_list)).collect(),
            beta: (0..=level).map(|d| Pool::new(n >> d, max_list)).collect(),
            paths: Vec::new(),
            arena: Vec::new(),
            up: alloc::vec![0; n],
            up_next: alloc::vec![0; n],
        }
    }

    /// Decodes with list size `list` (at most the constructed maximum);
    /// candidates are ranked by increasing metric.
    pub fn decode(&mut self, frozen: &[bool], llrs: &[f64], list: usize) -> Vec<Candidate> {
        let list = list.clamp(1, self.max_list);
        let level = self.level as usize;
        let n = 1usize << level;
        for (i, a) in self.channel.iter_mut().enumerate() {
            *a = llrs[bit_reverse(i, self.level)];
        }
        self.alpha.iter_mut().for_each(Pool::reset);
        self.beta.iter_mut().for_each(Pool::reset);
        self.arena.clear();
        self.paths.clear();
        self.paths.push(Some(Path {
            alpha: alloc::vec![NONE; level + 1],
            beta: alloc::vec![NONE; level + 1],
            metric: 0.0,
            head: NONE,
        }));
        let mut leaf = Vec::with_capacity(list);
        let mut cands: Vec<(f64, usize, u8)> = Vec::with_capacity(2 * list);
        for i in 0..n {
            leaf.clear();
            for p in 0..self.paths.len() {
                if self.paths[p].is_some() {
                    leaf.push((p, self.descend(p, i)));
                }
            }
            if frozen[i] {
                for &(p, l) in &leaf {
                    self.extend(p, i, 0, if l < 0.0 { -l } else { 0.0 });
                }
                continue;
            }
            cands.clear();
            for &(p, l) in &leaf {
                let m = self.paths[p].as_ref().expect("live path").metric;
                let hard = u8::from(l < 0.0);
                for bit in 0..2u8 {
                    cands.push((m + if bit == hard { 0.0 } else { libm::fabs(l) }, p, bit));
                }
            }
            // Stable, so ties keep path order and bit 0 before bit 1.
            cands.sort_by(|a, b| a.0.total_cmp(&b.0));
            cands.truncate(list);
            let mut keep = alloc::vec![[false; 2]; self.paths.len()];
            for &(_, p, bit) in &cands {
                keep[p][bit as usize] = true;
            }
            for &(p, _) in &leaf {
                if !keep[p][0] && !keep[p][1] {
                    self.kill(p);
                }
            }
            for &(p, l) in &leaf {
                let hard = u8::from(l < 0.0);
                let pen = |bit: u8| if bit == hard { 0.0 } else { libm::fabs(l) };
                match keep[p] {
                    [true, true] => {
                        let q = self.clone_path(p);
                        self.extend(p, i, 0, pen(0));
                        self.extend(q, i, 1, pen(1));
                    }
                    [true, false] => self.extend(p, i, 0, pen(0)),
                    [false, true] => self.extend(p, i, 1, pen(1)),
                    [false, false] => {}
                }
            }
        }
        let mut out: Vec<Candidate> = self
            .paths
            .iter()
            .flatten()
            .map(|path| {
                let mut u = alloc::vec![0u8; n];
                let mut at = path.head;
                for k in (0..n).rev() {
                    let (bit, prev) = self.arena[at];
                    u[k] = bit;
                    at = prev;
                }
                Candidate {
                    u,
                    metric: path.metric,
                }
            })
            .collect();
        out.sort_by(|a, b| a.metric.total_cmp(&b.metric));
        out
    }

    // Computes LLRs down to leaf `i` for path `p` and returns the leaf LLR.
    fn descend(&mut self, p: usize, i: usize) -> f64 {
        let level = self.level as usize;
        let n = 1usize << level;
        let start = if i == 0 {
            0
        } else {
            level - 1 - i.trailing_zeros() as usize
        };
        let path = self.paths[p].as_mut().expect("live path");
        for d in start..level {
            let h = n >> (d + 1);
            let dst_slot = self.alpha[d + 1].exclusive(path.alpha[d + 1]);
            path.alpha[d + 1] = dst_slot;
            let (upper, lower) = self.alpha.split_at_mut(d + 1);
            let src: &[f64] = if d == 0 {
                &self.channel
            } else {
                upper[d].get(path.alpha[d])
            };
            let dst = lower[0].get_mut(dst_slot);
            if (i >> (level - 1 - d)) & 1 == 0 {
                for k in 0..h {
                    dst[k] = boxplus(src[k], src[k + h]);
                }
            } else {
                let partial = self.beta[d + 1].get(path.beta[d + 1]);
                for k in 0..h {
                    dst[k] = var_update(src[k], src[k + h], partial[k]);
                }
            }
        }
        self.alpha[level].get(path.alpha[level])[0]
    }

    fn kill(&mut self, p: usize) {
        let path = self.paths[p].take().expect("live path");
        for (d, &s) in path.alpha.iter().enumerate() {
            self.alpha[d].release(s);
        }
        for (d, &s) in path.beta.iter().enumerate() {
            self.beta[d].release(s);
        }
    }

    fn clone_path(&mut self, p: usize) -> usize {
        let path = self.paths[p].clone().expect("live path");
        for (d, &s) in path.alpha.iter().enumerate() {
            self.alpha[d].share(s);
        }
        for (d, &s) in path.beta.iter().enumerate() {
            self.beta[d].share(s);
        }
        match self.paths.iter().position(Option::is_none) {
            Some(q) => {
                self.paths[q] = Some(path);
                q
            }
            None => {
                self.paths.push(Some(path));
                self.paths.len() - 1
            }
        }
    }

    // Records decision `bit` at leaf `i` and propagates partial sums upward.
    fn extend(&mut self, p: usize, i: usize, bit: u8, penalty: f64) {
        let level = self.level as usize;
        let path = self.paths[p].as_mut().expect("live path");
        path.metric += penalty;
        self.arena.push((bit, path.head));
        path.head = self.arena.len() - 1;
        self.up[0] = bit;
        let mut len = 1;
        let mut d = level;
        while d > 0 {
            if (i >> (level - d)) & 1 == 0 {
                let slot = self.beta[d].exclusive(path.beta[d]);
                path.beta[d] = slot;
                self.beta[d].get_mut(slot)[..len].copy_from_slice(&self.up[..len]);
                return;
            }
            let left = self.beta[d].get(path.beta[d]);
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

/// Ranked list of up to `list` candidates.
pub fn scl_decode(code: &PolarCode, llrs: &[f64], list: usize) -> Result<Vec<Candidate>> {
    check_len(code, llrs)?;
    Ok(SclDecoder::new(code.level(), list).decode(&code.frozen_mask(), llrs, list))
}

/// Adaptive CRC-aided list decoding; returns the information bits.
pub fn ad_cascl_decode(code: &PolarCode, llrs: &[f64], max_list: usize) -> Result<Vec<u8>> {
    check_len(code, llrs)?;
    let frozen = code.frozen_mask();
    let mut dec = SclDecoder::new(code.level(), max_list);
    let info = code.info_set();
    let mut l = 1;
    loop {
        let list = dec.decode(&frozen, llrs, l);
        if let Some(bits) = choose(&list, info, true) {
            return Ok(bits);
        }
        if l >= max_list {
            return Ok(info.iter().map(|&j| list[0].u[j]).collect());
        }
        l *= 2;
    }
}
