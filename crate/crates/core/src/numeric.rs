//! Quadrature and scalar root finding shared by the numerical kernels.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;

use libm::{cos, fabs};

use crate::{Error, Result};

// Gauss-Kronrod 7/15 nodes on [-1, 1] (positive half, centre last).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SPLITS: usize = 400;

/// One G7/K15 panel: returns (kronrod estimate, error estimate).
///
/// The error estimate is floored at the rounding level of the panel so
/// that refinement stops once the two rules agree to machine precision.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut absolute = fabs(fc) * WGK[7];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let (l, r) = (f(centre - dx), f(centre + dx));
        kronrod += w * (l + r);
        absolute += w * (fabs(l) + fabs(r));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (l + r);
        }
    }
    let err = fabs((kronrod - gauss) * half);
    let floor = 50.0 * f64::EPSILON * absolute * fabs(half);
    (kronrod * half, if err <= floor { 0.0 } else { err })
}

struct Panel {
    a: f64,
    b: f64,
    estimate: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// Starts from `panels` equal pieces and bisects the piece with the largest
/// error estimate until the summed estimate drops below
/// `max(abs_tol, rel_tol * |I|)` or the subdivision budget is spent.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> f64 {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap = BinaryHeap::with_capacity(panels + 2 * MAX_SPLITS);
    let (mut total, mut err_sum) = (0.0, 0.0);
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { lo + width };
        let (estimate, err) = gk15(&f, lo, hi);
        total += estimate;
        err_sum += err;
        heap.push(Panel {
            a: lo,
            b: hi,
            estimate,
            err,
        });
    }
    for _ in 0..MAX_SPLITS {
        if err_sum <= abs_tol.max(rel_tol * fabs(total)) {
            break;
        }
        let worst = heap.pop().expect("nonempty");
        total -= worst.estimate;
        err_sum -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            total += worst.estimate;
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (estimate, err) = gk15(&f, lo, hi);
            total += estimate;
            err_sum += err;
            heap.push(Panel {
                a: lo,
                b: hi,
                estimate,
                err,
            });
        }
    }
    let mut parts: Vec<f64> = heap.into_iter().map(|p| p.estimate).collect();
    // Fixed summation order regardless of heap layout.
    parts.sort_by(f64::total_cmp);
    parts.iter().sum()
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut slope = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            slope = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let step = p1 / slope;
            z -= step;
            if fabs(step) < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * slope * slope);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Brent's method on a bracketing interval `[a, b]`.
///
/// Stops when the bracket is narrower than `xtol_abs + xtol_rel * |x|` or
/// the function hits zero exactly.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    xtol_abs: f64,
    xtol_rel: f64,
) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa > 0.0) == (fb > 0.0) || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoConvergence("root is not bracketed"));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fabs(fc) < fabs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * fabs(b) + 0.5 * (xtol_rel * fabs(b) + xtol_abs) + 1e-300;
        let m = 0.5 * (c - b);
        if fabs(m) <= tol || fb == 0.0 {
            return Ok(b);
        }
        if fabs(e) >= tol && fabs(fa) > fabs(fb) {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - fabs(tol * q)).min(fabs(e * q)) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if fabs(d) > tol {
            d
        } else if m > 0.0 {
            tol
        } else {
            -tol
        };
        fb = f(b);
    }
    Err(Error::NoConvergence("brent iteration limit"))
}
