//! One-dimensional maximization of unimodal functions.

use crate::error::{Error, Result};

/// Number of points in the coarse scan that locates the bracket.
pub const PRESCAN_POINTS: usize = 31;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// A coarse scan first checks that the samples rise and then fall (plateaus
/// allowed) and narrows the search to the two cells around the best sample.
/// The search stops once the bracket is shorter than `tol`.
pub fn maximize_unimodal<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Maximum> {
    if !(lo < hi && tol > 0.0) {
        return Err(Error::domain("interval", hi - lo, "needs lo < hi and tol > 0"));
    }
    let n = PRESCAN_POINTS;
    let step = (hi - lo) / (n - 1) as f64;
    let mut samples = [0.0f64; PRESCAN_POINTS];
    for (i, s) in samples.iter_mut().enumerate() {
        *s = f(lo + step * i as f64);
        if s.is_nan() {
            return Err(Error::Numeric("objective is NaN in pre-scan"));
        }
    }
    let best = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty scan");
    let slack = |v: f64| 1e-12 * v.abs().max(1e-300);
    let rising = samples[..=best]
        .windows(2)
        .all(|w| w[1] >= w[0] - slack(w[0]));
    let falling = samples[best..]
        .windows(2)
        .all(|w| w[1] <= w[0] + slack(w[0]));
    if !(rising && falling) {
        return Err(Error::Numeric("objective is not unimodal on the search range"));
    }

    let mut a = lo + step * best.saturating_sub(1) as f64;
    let mut b = (lo + step * (best + 1) as f64).min(hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // Edge maxima can sit exactly on the endpoint.
    let (x, value) = [(x, fx), (lo, samples[0]), (hi, samples[n - 1])]
        .into_iter()
        .fold((x, fx), |acc, cand| if cand.1 > acc.1 { cand } else { acc });
    Ok(Maximum { x, value })
}
