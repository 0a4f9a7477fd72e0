//! Special functions needed by the closed forms.
//!
//! All functions here are pure and deterministic. Accuracy targets are
//! relative 1e-12 unless stated otherwise on the function.

use core::f64::consts::{E, FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;

use crate::error::{ensure, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Tolerances used by the numerical routines in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }
}

impl Accuracy {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        ensure(rel_tol > 0.0, "rel_tol", rel_tol, "must be positive")?;
        ensure(abs_tol > 0.0, "abs_tol", abs_tol, "must be positive")?;
        Ok(Accuracy { rel_tol, abs_tol })
    }

    /// Whether an error estimate is acceptable for a value of size `value`.
    pub fn accepts(&self, err: f64, value: f64) -> bool {
        err <= self.abs_tol.max(self.rel_tol * value.abs())
    }
}

// B_2, B_4, ..., B_14 divided by (2j)!.
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
];

// Terms below this index are summed explicitly before switching to
// Euler–Maclaurin; with seven correction terms the remainder is < 1e-16.
const ZETA_DIRECT_TERMS: u64 = 10;

/// Sum of `k^{-s}` for `k >= start` by Euler–Maclaurin, `start >= 1`.
fn euler_maclaurin_tail(s: f64, start: f64) -> f64 {
    let mut tail = start.powf(1.0 - s) / (s - 1.0) + 0.5 * start.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) times start^{-s-2j+1}
    let mut rising = s;
    let mut power = start.powf(-s - 1.0);
    let inv_sq = 1.0 / (start * start);
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let k = 2.0 * j as f64;
            rising *= (s + k - 1.0) * (s + k);
            power *= inv_sq;
        }
        tail += coeff * rising * power;
    }
    tail
}

/// Tail of the zeta series, `sum_{k > n} k^{-s}`, for `s > 1`.
pub fn zeta_tail(s: f64, n: u64) -> Result<f64> {
    ensure(s > 1.0, "s", s, "zeta requires s > 1")?;
    let mut sum = 0.0;
    let mut k = n + 1;
    while k < ZETA_DIRECT_TERMS {
        sum += (k as f64).powf(-s);
        k += 1;
    }
    Ok(sum + euler_maclaurin_tail(s, k as f64))
}

/// Riemann zeta function for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    ensure(s > 1.0, "s", s, "zeta requires s > 1")?;
    // Summed from the smallest term up.
    let mut sum = euler_maclaurin_tail(s, ZETA_DIRECT_TERMS as f64);
    for k in (1..ZETA_DIRECT_TERMS).rev() {
        sum += (k as f64).powf(-s);
    }
    Ok(sum)
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function `1 - erf(x)` without cancellation.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Principal branch of the Lambert W function, `x >= -1/e`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    const BRANCH: f64 = -1.0 / E;
    // Allow the branch point to be hit through rounding of `-a e^{-a}`.
    ensure(
        x.is_finite() && x >= BRANCH - 4.0 * f64::EPSILON,
        "x",
        x,
        "lambert_w0 requires x >= -1/e",
    )?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let q = 2.0 * (E * x + 1.0);
    if q <= 0.0 {
        return Ok(-1.0);
    }
    let mut w = if q < 0.5 {
        // Series around the branch point in p = sqrt(2 (e x + 1)).
        let p = q.sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))
    } else if x < 3.0 {
        let l = (1.0 + x).ln();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    } else {
        let l = x.ln();
        l - l.ln()
    };
    for _ in 0..64 {
        // Halley step on f(w) = w e^w - x.
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(1e-300) {
            break;
        }
    }
    Ok(w)
}

/// Power series of Li2 for `0 <= w <= 1/2`.
fn li2_series(w: f64) -> f64 {
    let mut sum = 0.0;
    let mut wk = w;
    for k in 1..200 {
        let kf = k as f64;
        let term = wk / (kf * kf);
        sum += term;
        if term < 1e-18 * sum.abs() {
            break;
        }
        wk *= w;
    }
    sum
}

/// Li2(z) for `z <= 0`.
fn li2_nonpositive(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else if z >= -1.0 {
        // Landen: Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2 with z/(z-1) in (0, 1/2].
        let w = z / (z - 1.0);
        let l = (-z).ln_1p();
        -li2_series(w) - 0.5 * l * l
    } else {
        // Inversion: Li2(z) = -pi^2/6 - ln^2(-z)/2 - Li2(1/z).
        let l = (-z).ln();
        -PI * PI / 6.0 - 0.5 * l * l - li2_nonpositive(1.0 / z)
    }
}

/// `dilog(x) = ∫_1^x ln t / (1 - t) dt` for `x >= 1`.
///
/// This equals `Li2(1 - x)`; it is zero at 1 and negative beyond.
pub fn dilog(x: f64) -> Result<f64> {
    ensure(x >= 1.0 && x.is_finite(), "x", x, "dilog requires x >= 1")?;
    Ok(li2_nonpositive(1.0 - x))
}

/// `e^x E1(x)` via the continued fraction, valid for `x >= 1`.
fn e1_scaled_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 1..100 {
        let kf = k as f64;
        fact *= -x / kf;
        let term = fact / kf;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Exponential integral `E1(x) = ∫_1^∞ e^{-xt}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    ensure(x > 0.0, "x", x, "E1 requires x > 0")?;
    if x < 1.0 {
        Ok(e1_series(x))
    } else {
        Ok((-x).exp() * e1_scaled_cf(x))
    }
}

/// `e^x E1(x)` for `x > 0`; finite for every positive `x`.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    ensure(x > 0.0, "x", x, "E1 requires x > 0")?;
    if x < 1.0 {
        Ok(x.exp() * e1_series(x))
    } else {
        Ok(e1_scaled_cf(x))
    }
}

/// Cosine and sine integrals `(Ci(y), Si(y))` for `y > 0`.
pub fn cos_sin_integral(y: f64) -> Result<(f64, f64)> {
    ensure(y > 0.0 && y.is_finite(), "y", y, "Ci/Si require y > 0")?;
    if y <= 2.0 {
        // term_n = ±y^n/n!, sign flipping on every even n.
        let mut si = 0.0;
        let mut ci = 0.0;
        let mut term = 1.0;
        for n in 1..80 {
            term *= y / n as f64;
            if n % 2 == 0 {
                term = -term;
                ci += term / n as f64;
            } else {
                si += term / n as f64;
            }
            if term.abs() < 1e-20 {
                break;
            }
        }
        Ok((EULER_GAMMA + y.ln() + ci, si))
    } else {
        let e1 = e1_imag_cf(y);
        Ok((-e1.re, FRAC_PI_2 + e1.im))
    }
}

/// Continued fraction for E1(iy), convergent for y > 2.
fn e1_imag_cf(y: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, y);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..1000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    h * Complex64::new(y.cos(), -y.sin())
}

/// `E1(iy)` on the positive imaginary axis: `-Ci(y) + i (Si(y) - pi/2)`.
pub fn exp_integral_e1_imag(y: f64) -> Result<Complex64> {
    ensure(y > 0.0 && y.is_finite(), "y", y, "E1(iy) requires y > 0")?;
    if y > 2.0 {
        Ok(e1_imag_cf(y))
    } else {
        let (ci, si) = cos_sin_integral(y)?;
        Ok(Complex64::new(-ci, si - FRAC_PI_2))
    }
}

// Lanczos approximation, g = 7, nine coefficients. Measured max relative
// error against exact factorials and half-integer values is below 1e-13
// on (0, 20].
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * lanczos(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Gamma function for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    ensure(x > 0.0 && x.is_finite(), "x", x, "gamma requires x > 0")?;
    // Exact on small integers.
    if x.fract() == 0.0 && x <= 23.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    Ok(lanczos(x))
}

fn ln_gamma(x: f64) -> f64 {
    if x < 20.0 {
        lanczos(x).ln()
    } else {
        // Stirling series.
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln()
            + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
    }
}

/// Lower incomplete gamma function `γ(a, x) = ∫_0^x t^{a-1} e^{-t} dt`.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    ensure(a > 0.0 && a.is_finite(), "a", a, "incomplete gamma requires a > 0")?;
    ensure(x >= 0.0, "x", x, "incomplete gamma requires x >= 0")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let log_prefactor = a * x.ln() - x;
    if x < a + 1.0 {
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..1000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        Ok(sum * log_prefactor.exp())
    } else {
        // Upper part by Lentz continued fraction, then subtract from Γ(a).
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        let upper = (log_prefactor - ln_gamma(a)).exp() * h;
        Ok((1.0 - upper) * gamma_fn(a)?)
    }
}

/// `sinh^2 y + sin^2 y`, which equals `cosh^2 y - cos^2 y` without the
/// cancellation near zero.
pub(crate) fn sinh2_plus_sin2(y: f64) -> f64 {
    let sh = y.sinh();
    let s = y.sin();
    sh * sh + s * s
}

/// `ln(sinh^2 y + sin^2 y)` for `y >= 0`, finite for large `y`.
pub(crate) fn ln_sinh2_plus_sin2(y: f64) -> f64 {
    if y < 20.0 {
        sinh2_plus_sin2(y).ln()
    } else {
        let e = (-2.0 * y).exp();
        let s = y.sin();
        2.0 * y - 2.0 * core::f64::consts::LN_2 + ((1.0 - e) * (1.0 - e) + 4.0 * e * s * s).ln()
    }
}

/// `ln sinh y` for `y > 0`.
pub(crate) fn ln_sinh(y: f64) -> f64 {
    if y < 20.0 {
        y.sinh().ln()
    } else {
        y - core::f64::consts::LN_2 + (-(-2.0 * y).exp()).ln_1p()
    }
}

/// `ln(sinh y / y)` for `y >= 0`.
pub(crate) fn ln_sinhc(y: f64) -> f64 {
    if y < 1e-4 {
        y * y / 6.0
    } else {
        ln_sinh(y) - y.ln()
    }
}

/// `ln((sinh^2 y + sin^2 y) / (2 y^2))` for `y >= 0`.
pub(crate) fn ln_quartic_kernel(y: f64) -> f64 {
    if y < 1e-3 {
        2.0 * y.powi(4) / 45.0
    } else {
        ln_sinh2_plus_sin2(y) - core::f64::consts::LN_2 - 2.0 * y.ln()
    }
}
