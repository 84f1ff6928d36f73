use alloc::vec::Vec;

use super::boundaries::{solve_set_boundaries, MeanClass};
use crate::ga::{polarize_mean, GaScheme, SchemeKind};
use crate::{Error, Result};

/// Violation and reversal counts over the non-leaf nodes of a depth-`n` tree.
#[derive(Debug, Clone, PartialEq)]
pub struct SetCensus {
    pub scheme: SchemeKind,
    pub n: u32,
    pub sigma2: f64,
    pub mu_pvs: u64,
    pub mu_prs: u64,
    /// `mu_pvs / (2^n - 1)`
    pub theta_pvs: f64,
    /// `mu_prs / (2^n - 1)`
    pub theta_prs: f64,
}

pub fn census(scheme: &GaScheme, n: u32, sigma2: f64) -> Result<SetCensus> {
    census_levels(scheme, n, n, sigma2).map(|mut v| v.remove(0))
}

/// Censuses for every level in `lo..=hi`, sharing one recursion.
pub fn census_levels(scheme: &GaScheme, lo: u32, hi: u32, sigma2: f64) -> Result<Vec<SetCensus>> {
    if lo == 0 || lo > hi || hi > 30 {
        return Err(Error::Config("census levels must satisfy 1 <= lo <= hi <= 30"));
    }
    if !(sigma2 > 0.0) {
        return Err(Error::domain("census", sigma2, "sigma2 > 0"));
    }
    let sets = solve_set_boundaries(scheme)?;
    // Nodes at depth d belong to every tree of level > d.
    let mut per_depth = Vec::with_capacity(hi as usize);
    let mut cur = alloc::vec![2.0 / sigma2];
    for d in 0..hi {
        let (mut pvs, mut prs) = (0u64, 0u64);
        for &m in &cur {
            match sets.classify(m) {
                MeanClass::Pvs => pvs += 1,
                MeanClass::Prs => prs += 1,
                MeanClass::Normal => {}
            }
        }
        per_depth.push((pvs, prs));
        if d + 1 < hi {
            let mut next = Vec::with_capacity(2 * cur.len());
            for &m in &cur {
                let (c, v) = polarize_mean(scheme, m)?;
                next.push(c);
                next.push(v);
            }
            cur = next;
        }
    }
    let mut out = Vec::new();
    let (mut pvs, mut prs) = (0u64, 0u64);
    for (d, &(a, b)) in per_depth.iter().enumerate() {
        pvs += a;
        prs += b;
        let n = d as u32 + 1;
        if n >= lo {
            let nodes = ((1u64 << n) - 1) as f64;
            out.push(SetCensus {
                scheme: scheme.kind(),
                n,
                sigma2,
                mu_pvs: pvs,
                mu_prs: prs,
                theta_pvs: pvs as f64 / nodes,
                theta_prs: prs as f64 / nodes,
            });
        }
    }
    Ok(out)
}
