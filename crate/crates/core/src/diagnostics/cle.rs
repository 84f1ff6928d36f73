use alloc::vec::Vec;
use core::f64::consts::LN_2;

use libm::{exp, expm1, fabs, log, log1p, pow};

use crate::construction::{leaf_means, mean_levels};
use crate::ga::{capacity_from_mean, polarize_mean, GaScheme};
use crate::{Error, Result};

/// Erasure-channel capacity after one polarization step (`bit` 0 = check).
pub fn bec_polarize(capacity: f64, bit: u8) -> Result<f64> {
    if !(0.0..=1.0).contains(&capacity) {
        return Err(Error::domain("bec_polarize", capacity, "0 <= I <= 1"));
    }
    Ok(if bit == 0 {
        capacity * capacity
    } else {
        capacity * (2.0 - capacity)
    })
}

fn check_pair(capacity: f64, delta: f64) -> Result<f64> {
    if !(capacity > 0.0 && capacity < 1.0) {
        return Err(Error::domain("cle", capacity, "0 < I < 1"));
    }
    let perturbed = capacity + delta;
    if !(perturbed > 0.0 && perturbed < 1.0) {
        return Err(Error::domain("cle", perturbed, "0 < I + delta < 1"));
    }
    Ok(log1p(delta / capacity) / LN_2)
}

/// Log-capacity error of one leaf and the number of check steps on its path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafError {
    pub alpha: u32,
    pub error: f64,
}

/// Per-leaf `log2(I~) - log2(I)` after `depth` steps from `(I, I + delta)`.
pub fn leaf_log_errors(capacity: f64, delta: f64, depth: u32) -> Result<Vec<LeafError>> {
    let e0 = check_pair(capacity, delta)?;
    // (ln I, e, alpha) along every path.
    let mut cur = alloc::vec![(log(capacity), e0, 0u32)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(2 * cur.len());
        for &(li, e, alpha) in &cur {
            let i = exp(li);
            next.push((2.0 * li, 2.0 * e, alpha + 1));
            let shift = log1p(-i * expm1(e * LN_2) / (2.0 - i)) / LN_2;
            next.push((li + log(2.0 - i), e + shift, alpha));
        }
        cur = next;
    }
    Ok(cur
        .into_iter()
        .map(|(_, error, alpha)| LeafError { alpha, error })
        .collect())
}

/// `sum_k |log2(I~_k) - log2(I_k)|` over the `2^depth` descendants.
pub fn pcle_exact(capacity: f64, delta: f64, depth: u32) -> Result<f64> {
    Ok(leaf_log_errors(capacity, delta, depth)?
        .iter()
        .map(|l| fabs(l.error))
        .sum())
}

/// `3^depth |log2(1 + delta / I)|`
pub fn pcle_bound(capacity: f64, delta: f64, depth: u32) -> Result<f64> {
    Ok(pow(3.0, depth as f64) * fabs(check_pair(capacity, delta)?))
}

/// `2^alpha |log2(1 + delta / I)|`
pub fn leaf_error_bound(capacity: f64, delta: f64, alpha: u32) -> Result<f64> {
    Ok(pow(2.0, alpha as f64) * fabs(check_pair(capacity, delta)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CleSample {
    pub capacity: f64,
    pub delta: f64,
    pub depth: u32,
    pub pcle_exact: f64,
    pub pcle_bound: f64,
}

pub fn cle_sample(capacity: f64, delta: f64, depth: u32) -> Result<CleSample> {
    Ok(CleSample {
        capacity,
        delta,
        depth,
        pcle_exact: pcle_exact(capacity, delta, depth)?,
        pcle_bound: pcle_bound(capacity, delta, depth)?,
    })
}

fn log2_capacity(m: f64) -> Result<f64> {
    Ok(log(capacity_from_mean(m)?) / LN_2)
}

/// Exact-kernel tree from one root mean, shared by every CLE quantity.
#[derive(Debug, Clone)]
pub struct ExactTree {
    n: u32,
    t: f64,
    levels: Vec<Vec<f64>>,
    leaf_log2: Vec<f64>,
}

impl ExactTree {
    pub fn new(n: u32, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::domain("ExactTree::new", t, "t > 0"));
        }
        let levels = mean_levels(&GaScheme::exact(), n, t)?;
        let leaf_log2 = levels[n as usize].iter().map(|&m| log2_capacity(m)).collect::<Result<_>>()?;
        Ok(ExactTree { n, t, levels, leaf_log2 })
    }

    pub fn root(&self) -> f64 {
        self.t
    }

    /// Leaf log-capacity discrepancy of `scheme` run from the same root.
    pub fn end_to_end(&self, scheme: &GaScheme) -> Result<f64> {
        let approx = leaf_means(scheme, self.n, self.t)?;
        let mut total = 0.0;
        for (&a, &b) in approx.iter().zip(&self.leaf_log2) {
            total += fabs(log2_capacity(a)? - b);
        }
        Ok(total)
    }

    /// For every non-leaf node, the capacity error of its check child when
    /// that single update uses `scheme`.
    pub fn injections(&self, scheme: &GaScheme) -> Result<Vec<Injection>> {
        let n = self.n as usize;
        let mut out = Vec::with_capacity((1 << n) - 1);
        for (r, level) in self.levels[..n].iter().enumerate() {
            for (j, &m) in level.iter().enumerate() {
                let truth = capacity_from_mean(self.levels[r + 1][2 * j])?;
                let approx = capacity_from_mean(polarize_mean(scheme, m)?.0)?;
                out.push(Injection {
                    depth: r as u32 + 1,
                    capacity: truth,
                    delta: approx - truth,
                });
            }
        }
        Ok(out)
    }

    /// `(exact, bound)` sums over [`ExactTree::injections`].
    pub fn injected(&self, scheme: &GaScheme) -> Result<(f64, f64)> {
        let injections = self.injections(scheme)?;
        Ok((injected_exact(&injections, self.n)?, injected_bound(&injections, self.n)))
    }
}

/// End-to-end CLE: leaf log-capacity discrepancy between `scheme` and the
/// exact kernel, both run from root mean `t`.
pub fn cle_profile(scheme: &GaScheme, n: u32, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    t_grid
        .iter()
        .map(|&t| Ok((t, ExactTree::new(n, t)?.end_to_end(scheme)?)))
        .collect()
}

/// Error injected by one approximate check update of the exact tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Injection {
    /// Depth of the check child that receives the error.
    pub depth: u32,
    pub capacity: f64,
    pub delta: f64,
}

pub fn cle_injections(scheme: &GaScheme, n: u32, t: f64) -> Result<Vec<Injection>> {
    ExactTree::new(n, t)?.injections(scheme)
}

/// Sum of [`pcle_exact`] over [`cle_injections`], each propagated to the leaves.
pub fn cle_injection_exact(scheme: &GaScheme, n: u32, t: f64) -> Result<f64> {
    injected_exact(&cle_injections(scheme, n, t)?, n)
}

/// `sum 3^(n - depth) |log2(I~ / I)|` over [`cle_injections`].
pub fn cle_injection_bound(scheme: &GaScheme, n: u32, t: f64) -> Result<f64> {
    Ok(injected_bound(&cle_injections(scheme, n, t)?, n))
}

fn injected_exact(injections: &[Injection], n: u32) -> Result<f64> {
    let mut total = 0.0;
    // Capacities that round to one are pulled just below it.
    let top = 1.0 - f64::EPSILON / 2.0;
    for inj in injections {
        let i = inj.capacity.min(top);
        let delta = (inj.capacity + inj.delta).min(top) - i;
        if delta != 0.0 {
            total += pcle_exact(i, delta, n - inj.depth)?;
        }
    }
    Ok(total)
}

fn injected_bound(injections: &[Injection], n: u32) -> f64 {
    let mut total = 0.0;
    for inj in injections {
        let ratio = if inj.delta == 0.0 {
            0.0
        } else {
            log1p(inj.delta / inj.capacity) / LN_2
        };
        total += pow(3.0, (n - inj.depth) as f64) * fabs(ratio);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Direct propagation of both capacities, no log-domain tricks.
    fn naive_leaves(i: f64, d: f64, depth: u32) -> Vec<(f64, f64)> {
        let mut cur = alloc::vec![(i, i + d)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for &(a, b) in &cur {
                next.push((a * a, b * b));
                next.push((2.0 * a - a * a, 2.0 * b - b * b));
            }
            cur = next;
        }
        cur
    }

    #[test]
    fn bec_step_examples() {
        assert_eq!(bec_polarize(0.5, 0).unwrap(), 0.25);
        assert_eq!(bec_polarize(0.5, 1).unwrap(), 0.75);
        assert_eq!(bec_polarize(1.0, 0).unwrap(), 1.0);
        assert_eq!(bec_polarize(1.0, 1).unwrap(), 1.0);
        assert!((bec_polarize(0.8, 0).unwrap() - 0.64).abs() < 1e-15);
        assert!((bec_polarize(0.8, 1).unwrap() - 0.96).abs() < 1e-15);
        assert!(bec_polarize(1.1, 0).is_err());
    }

    #[test]
    fn pcle_examples() {
        assert_eq!(pcle_exact(0.5, 0.0, 3).unwrap(), 0.0);
        assert_eq!(pcle_bound(0.5, 0.0, 3).unwrap(), 0.0);
        let d1 = (0.36f64 / 0.25).log2() + (0.84f64 / 0.75).log2();
        assert!((pcle_exact(0.5, 0.1, 1).unwrap() - d1).abs() < 1e-14);
        assert!((pcle_exact(0.5, 0.1, 1).unwrap() - 0.6896).abs() < 1e-4);
        assert!((pcle_exact(0.5, 0.1, 0).unwrap() - 1.2f64.log2()).abs() < 1e-15);
        assert!((pcle_bound(0.5, 0.1, 1).unwrap() - 3.0 * 1.2f64.log2()).abs() < 1e-12);
        assert!((pcle_bound(0.5, 0.1, 2).unwrap() - 9.0 * 1.2f64.log2()).abs() < 1e-12);
        assert!(pcle_exact(0.95, 0.1, 1).is_err());
    }

    #[test]
    fn log_domain_matches_naive_recursion() {
        for &(i, d) in &[(0.5, 0.1), (0.3, -0.2), (0.9, 0.05)] {
            let fast = leaf_log_errors(i, d, 6).unwrap();
            for (l, (a, b)) in fast.iter().zip(naive_leaves(i, d, 6)) {
                assert!((l.error - (b / a).log2()).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn self_comparison_is_zero() {
        let v = cle_profile(&GaScheme::exact(), 4, &[0.7, 3.0]).unwrap();
        assert!(v.iter().all(|&(_, c)| c == 0.0));
        let v = cle_profile(&GaScheme::chung(), 0, &[0.7]).unwrap();
        assert_eq!(v[0].1, 0.0);
        assert_eq!(cle_injection_bound(&GaScheme::exact(), 4, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn binomial_identity() {
        for d in 0..=20u32 {
            let mut c = 1u64;
            let mut acc = 0u64;
            for a in 0..=d as u64 {
                acc += c << a;
                c = c * (d as u64 - a) / (a + 1);
            }
            assert_eq!(acc, 3u64.pow(d));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn bounds_dominate(i in 0.05f64..0.95, frac in -0.99f64..0.99, depth in 0u32..10) {
            let delta = if frac >= 0.0 { frac * (1.0 - i) } else { frac * i };
            let leaves = leaf_log_errors(i, delta, depth).unwrap();
            for l in &leaves {
                let b = leaf_error_bound(i, delta, l.alpha).unwrap();
                prop_assert!(l.error.abs() <= b * (1.0 + 1e-12));
            }
            prop_assert!(pcle_exact(i, delta, depth).unwrap() <= pcle_bound(i, delta, depth).unwrap() * (1.0 + 1e-12));
        }

        #[test]
        fn all_check_path_is_tight(i in 0.05f64..0.95, frac in 0.0f64..0.99, depth in 0u32..12) {
            let delta = frac * (1.0 - i);
            let first = leaf_log_errors(i, delta, depth).unwrap()[0];
            let want = leaf_error_bound(i, delta, depth).unwrap();
            prop_assert_eq!(first.alpha, depth);
            prop_assert!((first.error - want).abs() <= 1e-12 * want.max(1e-300));
        }
    }
}
