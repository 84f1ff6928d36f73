use libm::{exp, pow};

use crate::ga::{check_update, GaScheme, SchemeKind};
use crate::numeric::brent;
use crate::{Error, Result};

/// `S_PRS = (0, prs_upper]`, `S_PVS = (prs_upper, pvs_upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetBoundaries {
    pub scheme: SchemeKind,
    pub prs_upper: f64,
    pub pvs_upper: f64,
    pub empty: bool,
}

impl SetBoundaries {
    pub fn classify(&self, t: f64) -> MeanClass {
        if self.empty || !(t > 0.0) {
            MeanClass::Normal
        } else if t <= self.prs_upper {
            MeanClass::Prs
        } else if t <= self.pvs_upper {
            MeanClass::Pvs
        } else {
            MeanClass::Normal
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanClass {
    /// The check child is at least as reliable as the variable child.
    Prs,
    /// The check child is at least as reliable as its parent.
    Pvs,
    Normal,
}

const GRID_POINTS: usize = 100_000;
const GRID_LO: f64 = 1e-6;
const GRID_HI: f64 = 100.0;

fn grid(i: usize) -> f64 {
    let frac = i as f64 / (GRID_POINTS - 1) as f64;
    GRID_LO * pow(GRID_HI / GRID_LO, frac)
}

/// Solves `2 Omega(a1) - Omega(a1)^2 = Omega(2 a1)` and `Omega(a2) = 1`.
///
/// A scheme is declared empty when `0 < Omega < 1` holds on a log grid over
/// `[1e-6, 100]` and the first segment's limit at `0+` is at most 1.
pub fn solve_set_boundaries(scheme: &GaScheme) -> Result<SetBoundaries> {
    let limit = scheme.segments()[0].form.ln_eval(0.0)?;
    let mut prev: Option<(usize, f64)> = None;
    let mut first_below = None;
    let mut all_inside = true;
    for i in 0..GRID_POINTS {
        let t = grid(i);
        let seg = scheme.segment_index(t);
        let l = scheme.ln_eval(t)?;
        if let Some((s, p)) = prev {
            // Jumps between segments are allowed; each piece must decrease.
            if s == seg && l >= p {
                return Err(Error::Unsupported("scheme is not monotone decreasing"));
            }
        }
        prev = Some((seg, l));
        if l >= 0.0 || l == f64::NEG_INFINITY {
            all_inside = false;
        } else if first_below.is_none() {
            first_below = Some(t);
        }
    }
    let empty = SetBoundaries {
        scheme: scheme.kind(),
        prs_upper: 0.0,
        pvs_upper: 0.0,
        empty: true,
    };
    if all_inside && limit <= 0.0 {
        return Ok(empty);
    }
    if limit <= 0.0 {
        return Err(Error::Unsupported("scheme reaches 1 away from the origin"));
    }
    let hi = first_below.ok_or(Error::Unsupported("scheme never drops below 1"))?;
    let lo = 1e-300;
    let a2 = brent(|t| scheme.ln_eval(t).unwrap_or(f64::NAN), lo, hi, 0.0, 1e-13)?;
    let excess = |t: f64| {
        let y = exp(scheme.ln_eval(t).unwrap_or(f64::NAN));
        2.0 * y - y * y - exp(scheme.ln_eval(2.0 * t).unwrap_or(f64::NAN))
    };
    let a1 = brent(excess, lo, a2, 0.0, 1e-13)?;
    Ok(SetBoundaries {
        scheme: scheme.kind(),
        prs_upper: a1,
        pvs_upper: a2,
        empty: false,
    })
}

/// Classifies `t` by the defining inequalities on the full check update.
pub fn classify_llr_mean(scheme: &GaScheme, t: f64) -> Result<MeanClass> {
    if !(t > 0.0) {
        return Err(Error::domain("classify_llr_mean", t, "t > 0"));
    }
    let c = check_update(scheme, t)?;
    Ok(if c >= 2.0 * t {
        MeanClass::Prs
    } else if c >= t {
        MeanClass::Pvs
    } else {
        MeanClass::Normal
    })
}
