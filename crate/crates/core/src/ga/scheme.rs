//! Piecewise approximations of the check-node kernel.

use alloc::vec::Vec;

use libm::{exp, log, pow, sqrt};

use super::phi::{ln_phi_asymptotic, ln_phi_exact, ln_phi_exact_inv};
use crate::numeric::brent;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Exact,
    Chung,
    Aga2,
    Aga3,
    Aga4,
    Custom,
}

/// Analytic form of one segment, evaluated as `ln Omega(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentForm {
    /// `scale * exp(a t^2 + b t + c)`
    ExpQuadratic { scale: f64, a: f64, b: f64, c: f64 },
    /// `exp(coeff * t^power + offset)`
    ExpPower { coeff: f64, power: f64, offset: f64 },
    /// `sqrt(pi/t) exp(-t/4) (1 - 10/(7t))`
    ChungTail,
    /// The exact kernel.
    Exact,
}

impl SegmentForm {
    pub fn ln_eval(&self, t: f64) -> Result<f64> {
        Ok(match *self {
            SegmentForm::ExpQuadratic { scale, a, b, c } => (a * t + b) * t + c + log(scale),
            SegmentForm::ExpPower {
                coeff,
                power,
                offset,
            } => coeff * pow(t, power) + offset,
            SegmentForm::ChungTail => {
                if t <= 10.0 / 7.0 {
                    return Err(Error::domain("chung tail", t, "t > 10/7"));
                }
                ln_phi_asymptotic(t)
            }
            SegmentForm::Exact => ln_phi_exact(t)?,
        })
    }

    /// Solves `ln_eval(t) = ell` for `t >= 0` on the decreasing branch.
    fn ln_inv(&self, ell: f64, segment: usize) -> Result<f64> {
        let out_of_range = Error::SegmentRange {
            segment,
            value: exp(ell),
        };
        match *self {
            SegmentForm::ExpQuadratic { scale, a, b, c } => {
                let c = c + log(scale);
                let disc = b * b - 4.0 * a * (c - ell);
                if disc < 0.0 || ell > c {
                    return Err(out_of_range);
                }
                // Smaller root, written to avoid cancellation.
                Ok(2.0 * (c - ell) / (sqrt(disc) - b))
            }
            SegmentForm::ExpPower {
                coeff,
                power,
                offset,
            } => {
                let r = (ell - offset) / coeff;
                if r < 0.0 {
                    return Err(out_of_range);
                }
                Ok(pow(r, 1.0 / power))
            }
            SegmentForm::ChungTail => {
                // Monotone from here on.
                let lo = 3.0;
                let f = |t: f64| ln_phi_asymptotic(t) - ell;
                if f(lo) < 0.0 {
                    return Err(out_of_range);
                }
                let mut hi = (-4.0 * ell).max(2.0 * lo);
                while f(hi) > 0.0 {
                    hi *= 2.0;
                }
                brent(f, lo, hi, 0.0, 1e-14)
            }
            SegmentForm::Exact => ln_phi_exact_inv(ell),
        }
    }
}

/// A segment covers `(previous upper, upper]` when `closed`, else `(previous upper, upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub upper: f64,
    pub closed: bool,
    pub form: SegmentForm,
}

impl Segment {
    pub fn closed(upper: f64, form: SegmentForm) -> Self {
        Segment {
            upper,
            closed: true,
            form,
        }
    }

    pub fn open(upper: f64, form: SegmentForm) -> Self {
        Segment {
            upper,
            closed: false,
            form,
        }
    }

    fn contains_below(&self, t: f64) -> bool {
        t < self.upper || (self.closed && t == self.upper)
    }
}

/// Above `threshold` the check update becomes `m - offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckSimplification {
    pub threshold: f64,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaScheme {
    kind: SchemeKind,
    segments: Vec<Segment>,
    check: Option<CheckSimplification>,
}

/// Tolerance for agreement of adjacent segments of a continuous scheme.
pub const CONTINUITY_TOL: f64 = 1e-3;

const CHUNG_HEAD: SegmentForm = SegmentForm::ExpPower {
    coeff: -0.4527,
    power: 0.86,
    offset: 0.0218,
};

fn exp_quad(a: f64, b: f64) -> SegmentForm {
    SegmentForm::ExpQuadratic {
        scale: 1.0,
        a,
        b,
        c: 0.0,
    }
}

fn exp_lin(b: f64, c: f64) -> SegmentForm {
    SegmentForm::ExpQuadratic {
        scale: 1.0,
        a: 0.0,
        b,
        c,
    }
}

impl GaScheme {
    pub fn exact() -> Self {
        GaScheme {
            kind: SchemeKind::Exact,
            segments: alloc::vec![Segment::closed(f64::INFINITY, SegmentForm::Exact)],
            check: None,
        }
    }

    pub fn chung() -> Self {
        GaScheme {
            kind: SchemeKind::Chung,
            segments: alloc::vec![
                Segment::open(10.0, CHUNG_HEAD),
                Segment::closed(f64::INFINITY, SegmentForm::ChungTail),
            ],
            check: None,
        }
    }

    pub fn aga2() -> Self {
        GaScheme {
            kind: SchemeKind::Aga2,
            segments: alloc::vec![
                Segment::closed(7.0633, exp_quad(0.0116, -0.4212)),
                Segment::closed(f64::INFINITY, exp_lin(-0.2944, -0.3169)),
            ],
            check: Some(CheckSimplification {
                threshold: 9.4177,
                offset: 2.3544,
            }),
        }
    }

    pub fn aga3() -> Self {
        GaScheme {
            kind: SchemeKind::Aga3,
            segments: alloc::vec![
                Segment::closed(0.6357, exp_quad(0.06725, -0.4908)),
                Segment::closed(9.2254, CHUNG_HEAD),
                Segment::closed(f64::INFINITY, exp_lin(-0.2832, -0.4254)),
            ],
            check: Some(CheckSimplification {
                threshold: 11.673,
                offset: 2.4476,
            }),
        }
    }

    pub fn aga4() -> Self {
        GaScheme {
            kind: SchemeKind::Aga4,
            segments: alloc::vec![
                Segment::closed(0.1910, exp_quad(0.1047, -0.4992)),
                Segment::closed(
                    0.7420,
                    SegmentForm::ExpQuadratic {
                        scale: 0.9981,
                        a: 0.05315,
                        b: -0.4795,
                        c: 0.0,
                    },
                ),
                Segment::closed(9.2254, CHUNG_HEAD),
                Segment::closed(f64::INFINITY, exp_lin(-0.2832, -0.4254)),
            ],
            check: Some(CheckSimplification {
                threshold: 11.673,
                offset: 2.4476,
            }),
        }
    }

    /// A user-defined scheme. Boundaries must strictly increase, end at
    /// infinity, and every segment must be decreasing on its own interval.
    pub fn custom(segments: Vec<Segment>, check: Option<CheckSimplification>) -> Result<Self> {
        let last = segments
            .last()
            .ok_or(Error::InvalidScheme("no segments"))?;
        if last.upper != f64::INFINITY {
            return Err(Error::InvalidScheme("final boundary must be infinite"));
        }
        let mut prev = 0.0;
        for s in &segments {
            if !(s.upper > prev) {
                return Err(Error::InvalidScheme("boundaries must strictly increase"));
            }
            prev = s.upper;
        }
        if let Some(c) = check {
            if !(c.threshold > 0.0 && c.offset > 0.0) {
                return Err(Error::InvalidScheme("check simplification must be positive"));
            }
        }
        Ok(GaScheme {
            kind: SchemeKind::Custom,
            segments,
            check,
        })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn check_simplification(&self) -> Option<CheckSimplification> {
        self.check
    }

    /// Index of the segment whose interval contains `t`.
    pub fn segment_index(&self, t: f64) -> usize {
        self.segments
            .iter()
            .position(|s| s.contains_below(t))
            .unwrap_or(self.segments.len() - 1)
    }

    pub fn lower_bound(&self, segment: usize) -> f64 {
        if segment == 0 {
            0.0
        } else {
            self.segments[segment - 1].upper
        }
    }

    /// `ln Omega(t)`. At `t = 0` this is the limit of the first segment.
    pub fn ln_eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::domain("omega_eval", t, "t >= 0"));
        }
        if t == f64::INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        self.segments[self.segment_index(t)].form.ln_eval(t)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        self.ln_eval(t).map(exp)
    }

    /// `ln Omega(upper)` of segment `i`, evaluated with that segment's own form.
    fn ln_at_upper(&self, i: usize) -> Result<f64> {
        let s = &self.segments[i];
        if s.upper == f64::INFINITY {
            Ok(f64::NEG_INFINITY)
        } else {
            s.form.ln_eval(s.upper)
        }
    }

    /// Inverse of [`GaScheme::ln_eval`].
    pub fn ln_inv(&self, ell: f64) -> Result<f64> {
        if ell.is_nan() {
            return Err(Error::domain("omega_inv", ell, "a number"));
        }
        let top = self.segments[0].form.ln_eval(0.0)?;
        if ell > top {
            return Err(Error::SegmentRange {
                segment: 0,
                value: exp(ell),
            });
        }
        for i in 0..self.segments.len() {
            if ell >= self.ln_at_upper(i)? {
                let t = self.segments[i].form.ln_inv(ell, i)?;
                // Values falling in a gap between segments map to its edge.
                return Ok(t.clamp(self.lower_bound(i), self.segments[i].upper));
            }
        }
        unreachable!("last segment reaches -inf")
    }

    pub fn inv(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) {
            return Err(Error::domain("omega_inv", y, "y > 0"));
        }
        self.ln_inv(log(y))
    }

    /// Largest relative mismatch between adjacent segments at their shared boundary.
    pub fn boundary_mismatch(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for w in self.segments.windows(2) {
            let x = w[0].upper;
            let l = w[0].form.ln_eval(x)?;
            let r = w[1].form.ln_eval(x)?;
            worst = worst.max(libm::fabs(libm::expm1(r - l)));
        }
        Ok(worst)
    }
}
