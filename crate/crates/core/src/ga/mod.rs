//! Gaussian-approximation kernel: exact and piecewise `Omega`, the mean
//! update at a polarization step, Gaussian tails and BI-AWGN capacity.

mod capacity;
mod phi;
mod scheme;
mod tail;

pub use capacity::{biawgn_capacity, biawgn_capacity_inv, capacity_from_mean, ebn0_to_noise_variance};
pub use phi::{ln_phi_exact, ln_phi_exact_inv, phi_exact, phi_exact_inv, ASYMPTOTIC_THRESHOLD};
pub use scheme::{CheckSimplification, GaScheme, SchemeKind, Segment, SegmentForm, CONTINUITY_TOL};
pub use tail::{gaussian_tail, gaussian_tail_inv};

pub(crate) use phi::softplus;

use crate::{Error, Result};

/// `Omega(t)` for the given scheme.
pub fn omega_eval(scheme: &GaScheme, t: f64) -> Result<f64> {
    scheme.eval(t)
}

/// `Omega^-1(y)` for the given scheme.
pub fn omega_inv(scheme: &GaScheme, y: f64) -> Result<f64> {
    scheme.inv(y)
}

/// `Omega^-1(1 - (1 - Omega(m))^2)` without the high-mean shortcut.
pub fn check_update(scheme: &GaScheme, m: f64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::domain("check_update", m, "m >= 0"));
    }
    scheme.ln_inv(phi::ln_check_target(scheme.ln_eval(m)?))
}

/// Means of the (check, variable) children of a node with LLR mean `m`.
pub fn polarize_mean(scheme: &GaScheme, m: f64) -> Result<(f64, f64)> {
    if !(m >= 0.0) {
        return Err(Error::domain("polarize_mean", m, "m >= 0"));
    }
    let check = match scheme.check_simplification() {
        Some(c) if m > c.threshold => m - c.offset,
        _ => check_update(scheme, m)?,
    };
    Ok((check, 2.0 * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rule_one_schemes() -> [GaScheme; 4] {
        [
            GaScheme::exact(),
            GaScheme::aga2(),
            GaScheme::aga3(),
            GaScheme::aga4(),
        ]
    }

    #[test]
    fn published_high_region_updates() {
        assert!((polarize_mean(&GaScheme::aga2(), 20.0).unwrap().0 - 17.6456).abs() < 1e-12);
        assert!((polarize_mean(&GaScheme::aga3(), 20.0).unwrap().0 - 17.5524).abs() < 1e-12);
        assert_eq!(polarize_mean(&GaScheme::chung(), 3.0).unwrap().1, 6.0);
        assert!(polarize_mean(&GaScheme::aga4(), -1.0).is_err());
    }

    #[test]
    fn simplified_update_is_close_above_threshold() {
        let s = GaScheme::aga2();
        for &t in &[9.42, 9.5, 10.0] {
            let full = check_update(&s, t).unwrap();
            assert!(((full - (t - 2.3544)) / t).abs() < 1e-2, "t={t}");
        }
    }

    #[test]
    fn rule_one_on_grid() {
        for s in &rule_one_schemes() {
            let mut prev = f64::INFINITY;
            let steps = if s.kind() == SchemeKind::Exact { 2000 } else { 20000 };
            for i in 1..=steps {
                let t = 200.0 * i as f64 / steps as f64;
                let v = omega_eval(s, t).unwrap();
                assert!(v > 0.0 && v < 1.0, "{:?} t={t}", s.kind());
                assert!(v < prev, "{:?} t={t}", s.kind());
                prev = v;
            }
        }
    }

    #[test]
    fn chung_reversal_and_violation_regions() {
        let s = GaScheme::chung();
        for i in 1..=100 {
            let t = 0.01476 * i as f64 / 100.0 * 0.999;
            assert!(check_update(&s, t).unwrap() >= 2.0 * t, "t={t}");
        }
        for i in 1..100 {
            let t = 0.01476 + (0.02939 - 0.01476) * i as f64 / 100.0;
            let c = check_update(&s, t).unwrap();
            assert!(t <= c && c < 2.0 * t, "t={t}");
        }
    }

    #[test]
    fn pure_and_deterministic() {
        for s in &rule_one_schemes() {
            let a = polarize_mean(s, 1.234).unwrap();
            let b = polarize_mean(s, 1.234).unwrap();
            assert_eq!(a.0.to_bits(), b.0.to_bits());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn children_straddle_parent(m in 1e-6f64..200.0, which in 0usize..4) {
            let s = &rule_one_schemes()[which];
            let (c, v) = polarize_mean(s, m).unwrap();
            prop_assert!(c < m && m < v, "{:?} m={} c={}", s.kind(), m, c);
        }

        #[test]
        fn omega_roundtrip(t in 1e-3f64..300.0, which in 0usize..4) {
            let s = &rule_one_schemes()[which];
            let back = omega_inv(s, omega_eval(s, t).unwrap()).unwrap();
            prop_assert!(((back - t) / t).abs() < 1e-8);
        }
    }
}
