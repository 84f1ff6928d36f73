//! Mean recursion over the code tree, information-set selection and the SC bound.
//!
//! Leaf `j` (0-based) is reached from the root by the binary expansion of `j`,
//! most significant bit first, with 0 taking the check (left) branch. These
//! indices address the source vector `u` directly; the encoder owns the
//! bit-reversal permutation.

use alloc::vec::Vec;

use libm::{exp, log, log1p, sqrt};

use crate::ga::{biawgn_capacity, gaussian_tail, polarize_mean, GaScheme};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ConstructionMethod {
    Ga(GaScheme),
    /// Capacity recursion of the erasure channel with the same capacity.
    BecHeuristic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reliabilities {
    /// LLR means of the leaves.
    Means(Vec<f64>),
    /// `ln(I / (1 - I))` of the leaf capacities.
    BecScores(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    pub level: u32,
    pub reliabilities: Reliabilities,
    /// `Q(sqrt(m / 2))` for GA, erasure probability `1 - I` for the BEC heuristic.
    pub error_probs: Vec<f64>,
}

impl ReliabilityProfile {
    pub fn len(&self) -> usize {
        self.error_probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.error_probs.is_empty()
    }

    pub fn means(&self) -> Option<&[f64]> {
        match &self.reliabilities {
            Reliabilities::Means(m) => Some(m),
            Reliabilities::BecScores(_) => None,
        }
    }

    /// Values ranked by [`select_information_set`]; larger is more reliable.
    pub fn scores(&self) -> &[f64] {
        match &self.reliabilities {
            Reliabilities::Means(v) | Reliabilities::BecScores(v) => v,
        }
    }
}

/// Block length `2^level` with a sorted, 0-based information set; frozen bits are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarCode {
    level: u32,
    info_set: Vec<usize>,
}

impl PolarCode {
    pub fn new(level: u32, mut info_set: Vec<usize>) -> Result<Self> {
        if level == 0 || level > 30 {
            return Err(Error::Config("polarization level must be in 1..=30"));
        }
        let n = 1usize << level;
        info_set.sort_unstable();
        if info_set.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("duplicate information index"));
        }
        if info_set.last().is_some_and(|&j| j >= n) {
            return Err(Error::Config("information index out of range"));
        }
        Ok(PolarCode { level, info_set })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn block_len(&self) -> usize {
        1 << self.level
    }

    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_mask(&self) -> Vec<bool> {
        let mut frozen = alloc::vec![true; self.block_len()];
        for &j in &self.info_set {
            frozen[j] = false;
        }
        frozen
    }
}

/// Means at every depth `0..=n` of the tree rooted at `root`.
pub fn mean_levels(scheme: &GaScheme, n: u32, root: f64) -> Result<Vec<Vec<f64>>> {
    let mut levels = Vec::with_capacity(n as usize + 1);
    levels.push(alloc::vec![root]);
    for d in 0..n as usize {
        let next = expand(scheme, &levels[d])?;
        levels.push(next);
    }
    Ok(levels)
}

/// Leaf means of the tree of depth `n` rooted at `root`.
pub fn leaf_means(scheme: &GaScheme, n: u32, root: f64) -> Result<Vec<f64>> {
    let mut cur = alloc::vec![root];
    for _ in 0..n {
        cur = expand(scheme, &cur)?;
    }
    Ok(cur)
}

fn expand(scheme: &GaScheme, parents: &[f64]) -> Result<Vec<f64>> {
    let mut next = Vec::with_capacity(2 * parents.len());
    for &m in parents {
        let (c, v) = polarize_mean(scheme, m)?;
        next.push(c);
        next.push(v);
    }
    Ok(next)
}

/// Leaf `(ln I, ln(1 - I))` pairs of the erasure-capacity recursion.
pub fn bec_leaf_logs(n: u32, root_capacity: f64) -> Result<Vec<(f64, f64)>> {
    if !(root_capacity > 0.0 && root_capacity < 1.0) {
        return Err(Error::domain("bec_leaf_logs", root_capacity, "0 < I < 1"));
    }
    let mut cur = alloc::vec![(log(root_capacity), log1p(-root_capacity))];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * cur.len());
        for &(li, lz) in &cur {
            // I -> I^2 and 1 - I -> (1 - I)^2 on the two branches.
            next.push((2.0 * li, lz + log(2.0 - exp(lz))));
            next.push((li + log(2.0 - exp(li)), 2.0 * lz));
        }
        cur = next;
    }
    Ok(cur)
}

pub fn compute_reliabilities(
    method: &ConstructionMethod,
    n: u32,
    sigma2: f64,
) -> Result<ReliabilityProfile> {
    if n == 0 {
        return Err(Error::Config("polarization level must be at least 1"));
    }
    if !(sigma2 > 0.0) {
        return Err(Error::domain("compute_reliabilities", sigma2, "sigma2 > 0"));
    }
    match method {
        ConstructionMethod::Ga(scheme) => {
            let means = leaf_means(scheme, n, 2.0 / sigma2)?;
            let error_probs = means.iter().map(|&m| gaussian_tail(sqrt(0.5 * m))).collect();
            Ok(ReliabilityProfile {
                level: n,
                reliabilities: Reliabilities::Means(means),
                error_probs,
            })
        }
        ConstructionMethod::BecHeuristic => {
            let leaves = bec_leaf_logs(n, biawgn_capacity(sigma2)?)?;
            Ok(ReliabilityProfile {
                level: n,
                error_probs: leaves.iter().map(|&(_, lz)| exp(lz)).collect(),
                reliabilities: Reliabilities::BecScores(
                    leaves.iter().map(|&(li, lz)| li - lz).collect(),
                ),
            })
        }
    }
}

/// The `k` most reliable indices (0-based, ascending). Ties go to the smaller index.
pub fn select_information_set(profile: &ReliabilityProfile, k: usize) -> Result<Vec<usize>> {
    let scores = profile.scores();
    if k > scores.len() {
        return Err(Error::Config("K exceeds the block length"));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    Ok(order)
}

/// `min(1, sum of Q(sqrt(m_j / 2)))` over the information set.
pub fn sc_upper_bound(profile: &ReliabilityProfile, info_set: &[usize]) -> Result<f64> {
    if profile.means().is_none() {
        return Err(Error::Unsupported("SC bound needs LLR means"));
    }
    let mut sum = 0.0;
    for &j in info_set {
        sum += *profile.error_probs.get(j).ok_or(Error::Config("index out of range"))?;
    }
    Ok(sum.min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub method: ConstructionMethod,
    pub sigma2: f64,
    pub profile: ReliabilityProfile,
    pub code: PolarCode,
}

impl Construction {
    pub fn sc_bound(&self) -> Option<f64> {
        sc_upper_bound(&self.profile, self.code.info_set()).ok()
    }
}

pub fn construct_code(
    method: &ConstructionMethod,
    n: u32,
    k: usize,
    sigma2: f64,
) -> Result<Construction> {
    let profile = compute_reliabilities(method, n, sigma2)?;
    let info_set = select_information_set(&profile, k)?;
    Ok(Construction {
        method: method.clone(),
        sigma2,
        code: PolarCode::new(n, info_set)?,
        profile,
    })
}
