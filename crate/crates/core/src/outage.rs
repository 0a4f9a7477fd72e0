//! Success probabilities `p_s = P(SIR > theta)` given that the desired pair
//! is active, for every supported network class.

use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::contention;
use crate::error::{ensure, Error, Result};
use crate::model::{check_probability, Access, Fading, FadingCase, Sided};
use crate::specfun::{self, ln_quartic_kernel, ln_sinhc, zeta, zeta_tail};

/// Values below this are reported as zero with the underflow flag set.
pub const UNDERFLOW: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessProbability {
    /// Exact value, absent when only bounds are available.
    pub value: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    /// Sharper upper bound where one is known.
    pub tight_upper: Option<f64>,
    pub underflow: bool,
}

impl SuccessProbability {
    /// Value `exp(ln_value)` with the ALOHA sandwich
    /// `max(0, 1 - p gamma) <= p_s <= exp(-p gamma)`.
    pub fn with_sandwich(ln_value: f64, p: f64, gamma: f64) -> Self {
        let (lower, upper) = sandwich(p, gamma);
        let (value, underflow) = from_ln(ln_value);
        Self {
            value: Some(value),
            lower,
            upper,
            tight_upper: None,
            underflow,
        }
    }

    fn squared(self) -> Self {
        let (value, underflow) = match self.value {
            Some(v) => {
                let sq = v * v;
                let tiny = sq < UNDERFLOW && v > 0.0;
                (Some(if tiny { 0.0 } else { sq }), tiny || self.underflow)
            }
            None => (None, self.underflow),
        };
        Self {
            value,
            lower: self.lower * self.lower,
            upper: self.upper * self.upper,
            tight_upper: self.tight_upper.map(|t| t * t),
            underflow,
        }
    }
}

/// `exp(ln)`, flushed to zero with the flag set when it is positive but
/// below [`UNDERFLOW`].
fn from_ln(ln: f64) -> (f64, bool) {
    if ln == f64::NEG_INFINITY {
        (0.0, false)
    } else if ln < UNDERFLOW.ln() {
        (0.0, true)
    } else {
        (ln.exp(), false)
    }
}

/// `(max(0, 1 - p gamma), exp(-p gamma))`.
pub fn sandwich(p: f64, gamma: f64) -> (f64, f64) {
    let x = p * gamma;
    ((1.0 - x).max(0.0), (-x).exp())
}

fn check_theta(theta: f64) -> Result<()> {
    ensure(theta > 0.0 && theta.is_finite(), "theta", theta, "must be positive")
}

fn regularized_lower_gamma(a: f64, x: f64) -> Result<f64> {
    Ok((specfun::lower_incomplete_gamma(a, x)? / specfun::gamma_fn(a)?).clamp(0.0, 1.0))
}

/// One interferer at effective distance `xi` that transmits with
/// probability `p`. Nakagami fading is supported when the other link is
/// Rayleigh or non-fading.
pub fn ps_single(case: FadingCase, xi: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    ensure(xi >= 0.0, "xi", xi, "must be nonnegative")?;
    case.validate()?;
    // Outage probability when the interferer is active.
    let q = match (case.desired.normalized(), case.interferer.normalized()) {
        (Fading::Rayleigh, Fading::Nakagami { m }) => {
            let t = m * xi;
            1.0 - (t / (1.0 + t)).powf(m)
        }
        (Fading::Nakagami { m }, Fading::Rayleigh) => (m / (xi + m)).powf(m),
        (Fading::Nakagami { m }, Fading::None) => {
            if xi == 0.0 {
                1.0
            } else {
                regularized_lower_gamma(m, m / xi)?
            }
        }
        (Fading::None, Fading::Nakagami { m }) => 1.0 - regularized_lower_gamma(m, m * xi)?,
        (Fading::Nakagami { .. }, Fading::Nakagami { .. }) => {
            return Err(Error::Unsupported("Nakagami fading on both links"))
        }
        _ => contention::gamma_single(case, xi)?,
    };
    Ok(1.0 - p * q)
}

/// Unit-intensity Poisson network in `d` dimensions, Rayleigh desired link:
/// `exp(-p gamma)`.
pub fn ps_ppp(d: u32, alpha: f64, theta: f64, p: f64, interferer_fading: Fading) -> Result<f64> {
    check_probability(p)?;
    ensure(d <= 2, "d", d as f64, "closed form holds for d = 1, 2")?;
    let g = contention::gamma_ppp(d, alpha, theta, interferer_fading)?;
    Ok((-p * g.gamma).exp())
}

/// Planar Poisson network, `alpha = 4`, no fading on any link.
pub fn ps_ppp_nonfading_alpha4(theta: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    check_theta(theta)?;
    Ok(specfun::erfc(PI.powf(1.5) * p * theta.sqrt() / 2.0))
}

/// Planar Poisson network, path loss `exp(-delta r)`, Rayleigh fading.
pub fn ps_exp_pathloss(delta: f64, theta: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok((-p * contention::gamma_exp_pathloss(delta, theta)?).exp())
}

/// Fixed interferers at effective distances `xis`, all links Rayleigh:
/// `prod (1 - p/(1 + xi))`.
pub fn ps_explicit(xis: &[f64], p: f64) -> Result<SuccessProbability> {
    check_probability(p)?;
    let gamma = contention::gamma_explicit(xis, Fading::Rayleigh)?;
    let ln: f64 = xis.iter().map(|&xi| (-p / (1.0 + xi)).ln_1p()).sum();
    Ok(SuccessProbability::with_sandwich(ln, p, gamma))
}

/// Fixed interferers, Rayleigh desired link, non-fading interferers:
/// `exp(-p sum 1/xi)`. Under ALOHA this is a lower bound; the exact value is
/// `prod (1 - p (1 - exp(-1/xi)))`, which [`crate::class::NetworkClass::ps`] uses.
pub fn ps_explicit_partial(xis: &[f64], p: f64) -> Result<f64> {
    check_probability(p)?;
    let gamma = contention::gamma_explicit(xis, Fading::None)?;
    Ok((-p * gamma).exp())
}

/// One-sided unit line, `alpha = 2`, Rayleigh fading, ALOHA with `p <= 1`.
/// At `p = 1` this is the TDMA value with `m = 1`.
pub fn ps_line_alpha2_aloha(theta: f64, p: f64) -> Result<f64> {
    check_theta(theta)?;
    check_probability(p)?;
    let b = PI * theta.sqrt();
    let a = b * (1.0 - p).sqrt();
    Ok((ln_sinhc(a) - ln_sinhc(b)).exp())
}

/// One-sided unit line, `alpha = 4`, Rayleigh fading, ALOHA with `p <= 1`.
pub fn ps_line_alpha4_aloha(theta: f64, p: f64) -> Result<f64> {
    check_theta(theta)?;
    check_probability(p)?;
    let y = PI * theta.powf(0.25) / SQRT_2;
    let yp = y * (1.0 - p).powf(0.25);
    Ok((ln_quartic_kernel(yp) - ln_quartic_kernel(y)).exp())
}

/// Exponential approximation of [`ps_line_alpha4_aloha`] through the
/// asymptotic contention.
pub fn ps_line_alpha4_approx(theta: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    let g = contention::gamma_line_alpha4(theta, contention::Alpha4Mode::Approx)?;
    Ok((-p * g).exp())
}

/// Unit line with Rayleigh fading for any `alpha > 1` and either MAC, by
/// summing `ln(1 - q/(1 + (s i)^alpha/theta))` with an exact tail series.
/// ALOHA uses `q = p, s = 1`; TDMA uses `q = 1, s = m`.
pub fn ps_line_rayleigh(alpha: f64, theta: f64, access: Access, sided: Sided) -> Result<f64> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    check_theta(theta)?;
    let (q, s) = match access {
        Access::Aloha { p } => {
            check_probability(p)?;
            (p, 1.0)
        }
        Access::Tdma { m } => {
            ensure(m >= 1, "m", m as f64, "must be at least 1")?;
            (1.0, m as f64)
        }
    };
    // u_i = theta (s i)^-alpha; past n, ln(1 - q u/(1+u)) = sum_k c_k u^k.
    let scale = theta * s.powf(-alpha);
    let n = ((10.0 * scale).powf(1.0 / alpha).ceil() as u64).max(16);
    let head: f64 = (1..=n)
        .map(|i| {
            let u = scale * (i as f64).powf(-alpha);
            (-q * u / (1.0 + u)).ln_1p()
        })
        .sum();
    let mut tail = 0.0;
    let mut power = 1.0;
    let mut keep = 1.0;
    for k in 1..=60u32 {
        power *= scale;
        keep *= 1.0 - q;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * (keep - 1.0) / k as f64 * power * zeta_tail(alpha * k as f64, n)?;
        tail += term;
        if term.abs() < 1e-17 * head.abs().max(1e-300) {
            break;
        }
    }
    let ln = head + tail;
    Ok(match sided {
        Sided::One => ln.exp(),
        Sided::Two => (2.0 * ln).exp(),
    })
}

/// Unit line, Rayleigh fading, TDMA with reuse `m` (all nodes `m, 2m, ...`
/// transmit). Exact for `alpha` in {2, 4}; bounds for any `alpha > 1`.
pub fn ps_tdma_line(alpha: f64, theta: f64, m: u32, sided: Sided) -> Result<SuccessProbability> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    check_theta(theta)?;
    ensure(m >= 1, "m", m as f64, "must be at least 1")?;
    let mf = m as f64;
    let ln_value = if alpha == 2.0 {
        let y = PI * theta.sqrt() / mf;
        Some(-ln_sinhc(y))
    } else if alpha == 4.0 {
        let y = PI * theta.powf(0.25) / (SQRT_2 * mf);
        Some(-ln_quartic_kernel(y))
    } else {
        None
    };
    let z = zeta(alpha)?;
    let t = theta / mf.powf(alpha);
    let (value, underflow) = match ln_value.map(from_ln) {
        Some((v, u)) => (Some(v), u),
        None => (None, false),
    };
    let one = SuccessProbability {
        value,
        lower: (-z * t).exp(),
        upper: 1.0 / (1.0 + z * t),
        tight_upper: Some(1.0 / (1.0 + z * t + (z - 1.0) * t * t)),
        underflow,
    };
    Ok(match sided {
        Sided::One => one,
        Sided::Two => one.squared(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use core::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn single_interferer_cases() {
        assert_eq!(ps_single(FadingCase::RAYLEIGH, 1.0, 1.0).unwrap(), 0.5);
        for case in [FadingCase::RAYLEIGH, FadingCase::DESIRED_ONLY, FadingCase::INTERFERERS_ONLY, FadingCase::NONE] {
            assert_eq!(ps_single(case, 0.7, 0.0).unwrap(), 1.0);
            let g = contention::gamma_single(case, 0.7).unwrap();
            assert!((ps_single(case, 0.7, 0.3).unwrap() - (1.0 - 0.3 * g)).abs() < 1e-15);
        }
        assert!(ps_single(FadingCase::RAYLEIGH, 1.0, 1.1).is_err());
    }

    #[test]
    fn nakagami_limits_and_monotonicity() {
        let target = 1.0 - 0.5 * (1.0 - (-1f64).exp());
        let c = FadingCase::new(Fading::Rayleigh, Fading::Nakagami { m: 64.0 });
        assert!((ps_single(c, 1.0, 0.5).unwrap() - target).abs() < 2e-3);
        let mut prev_i = f64::INFINITY;
        let mut prev_d = 0.0;
        for k in 0..11 {
            let m = 2f64.powi(k);
            let pi = ps_single(FadingCase::new(Fading::Rayleigh, Fading::Nakagami { m }), 2.0, 0.8).unwrap();
            let pd = ps_single(FadingCase::new(Fading::Nakagami { m }, Fading::Rayleigh), 2.0, 0.8).unwrap();
            assert!(pi < prev_i && pd > prev_d, "m = {m}");
            prev_i = pi;
            prev_d = pd;
        }
        let lim_d = ps_single(FadingCase::INTERFERERS_ONLY, 2.0, 0.8).unwrap();
        let lim_i = ps_single(FadingCase::DESIRED_ONLY, 2.0, 0.8).unwrap();
        assert!((prev_d - lim_d).abs() < 2e-3 && (prev_i - lim_i).abs() < 2e-3);
        // Nakagami(1) and Rayleigh agree bit for bit.
        let a = ps_single(FadingCase::new(Fading::Nakagami { m: 1.0 }, Fading::Nakagami { m: 1.0 }), 0.3, 0.4);
        assert_eq!(a.unwrap(), ps_single(FadingCase::RAYLEIGH, 0.3, 0.4).unwrap());
    }

    #[test]
    fn nakagami_against_nonfading_side() {
        // Gamma(1) power is exponential, so m = 1 against a non-fading link
        // must reproduce the Rayleigh partial-fading cases.
        let d = FadingCase::new(Fading::Nakagami { m: 1.0 + 1e-12 }, Fading::None);
        assert!((ps_single(d, 2.0, 1.0).unwrap() - ps_single(FadingCase::DESIRED_ONLY, 2.0, 1.0).unwrap()).abs() < 1e-10);
        let i = FadingCase::new(Fading::None, Fading::Nakagami { m: 1.0 + 1e-12 });
        assert!((ps_single(i, 2.0, 1.0).unwrap() - ps_single(FadingCase::INTERFERERS_ONLY, 2.0, 1.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn ppp_values() {
        assert_eq!(ps_ppp(2, 4.0, 1.0, 0.0, Fading::Rayleigh).unwrap(), 1.0);
        let v = ps_ppp(2, 4.0, 1.0, 2.0 / (PI * PI), Fading::Rayleigh).unwrap();
        assert!(rel(v, 1.0 / E) < 1e-14);
        let v = ps_ppp(2, 4.0, 1.0, 0.05, Fading::Rayleigh).unwrap();
        assert!((v - 0.7814).abs() < 1e-4);
        assert!(ps_ppp(3, 4.0, 1.0, 0.05, Fading::Rayleigh).is_err());
    }

    #[test]
    fn nonfading_ppp() {
        assert_eq!(ps_ppp_nonfading_alpha4(1.0, 0.0).unwrap(), 1.0);
        let v = ps_ppp_nonfading_alpha4(1.0, 0.1).unwrap();
        assert!((v - 0.6937).abs() < 1e-4);
        assert!(1.0 - 0.1 * PI < v && v < (-0.1 * PI).exp());
        let mut prev = 1.0;
        for k in 1..50 {
            let v = ps_ppp_nonfading_alpha4(4.0, 0.02 * k as f64).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn exp_path_loss() {
        assert_eq!(ps_exp_pathloss(1.0, 1.0, 0.0).unwrap(), 1.0);
        assert!((ps_exp_pathloss(1.0, 1.0, 0.1).unwrap() - (-0.1 * PI.powi(3) / 6.0).exp()).abs() < 1e-13);
        let a = ps_exp_pathloss(1.0, 3.0, 0.4).unwrap().ln();
        let b = ps_exp_pathloss(2.0, 3.0, 0.4).unwrap().ln();
        assert!(rel(b, a / 4.0) < 1e-14);
    }

    #[test]
    fn explicit_products() {
        let s = ps_explicit(&[1.0, 1.0], 0.5).unwrap();
        assert!((s.value.unwrap() - 0.5625).abs() < 1e-15);
        assert_eq!(s.lower, 0.5);
        assert!((s.upper - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(ps_explicit(&[], 0.7).unwrap().value, Some(1.0));
        let single = ps_explicit(&[2.5], 0.3).unwrap().value.unwrap();
        assert!((single - ps_single(FadingCase::RAYLEIGH, 2.5, 0.3).unwrap()).abs() < 1e-15);
        assert!((ps_explicit_partial(&[1.0], 1.0).unwrap() - 1.0 / E).abs() < 1e-15);
        assert!(ps_explicit_partial(&[0.0], 1.0).is_err());
    }

    #[test]
    fn line_alpha2_against_product() {
        for &theta in &[0.1, 1.0, 10.0] {
            for &p in &[0.0, 0.1, 0.3, 0.7, 1.0] {
                let xis: Vec<f64> = (1..=200_000).map(|i| (i as f64).powi(2) / theta).collect();
                let mut prod = ps_explicit(&xis, p).unwrap().value.unwrap();
                // Tail beyond the cut: exp(-p theta / n).
                prod *= (-p * theta / 200_000.5).exp();
                let closed = ps_line_alpha2_aloha(theta, p).unwrap();
                assert!((closed - prod).abs() < 1e-8, "theta {theta} p {p}");
                let general = ps_line_rayleigh(2.0, theta, Access::Aloha { p }, Sided::One).unwrap();
                assert!((closed - general).abs() < 1e-12, "theta {theta} p {p}");
            }
        }
        assert!((ps_line_alpha2_aloha(1.0, 1.0).unwrap() - PI / PI.sinh()).abs() < 1e-14);
        assert!((ps_line_alpha2_aloha(1.0, 1.0 - 1e-12).unwrap() - PI / PI.sinh()).abs() < 1e-9);
    }

    #[test]
    fn line_alpha4_against_product() {
        for &theta in &[0.1, 1.0, 10.0, 1e4] {
            for &p in &[0.0, 0.2, 0.5, 0.9, 1.0] {
                let closed = ps_line_alpha4_aloha(theta, p).unwrap();
                let general = ps_line_rayleigh(4.0, theta, Access::Aloha { p }, Sided::One).unwrap();
                assert!((closed - general).abs() < 1e-12, "theta {theta} p {p}");
            }
        }
        let y = PI / SQRT_2;
        let m1 = 2.0 * y * y / (y.sinh().powi(2) + y.sin().powi(2));
        assert!((ps_line_alpha4_aloha(1.0, 1.0).unwrap() - m1).abs() < 1e-14);
        let approx = ps_line_alpha4_approx(10.0, 0.2).unwrap();
        assert!(rel(approx, ps_line_alpha4_aloha(10.0, 0.2).unwrap()) < 0.05);
        assert!(ps_line_alpha4_aloha(1e12, 0.5).unwrap() > 0.0);
    }

    #[test]
    fn tdma_values_and_bounds() {
        let s = ps_tdma_line(2.0, 1.0, 1, Sided::One).unwrap();
        let v = s.value.unwrap();
        assert!((v - 0.272_029_054_982_133).abs() < 1e-12);
        let z = PI * PI / 6.0;
        assert!(v >= (-z).exp() && v <= 1.0 / (1.0 + z));
        assert!(s.lower <= v && v <= s.tight_upper.unwrap() && s.tight_upper.unwrap() <= s.upper);
        assert!((ps_tdma_line(2.0, 1.0, 10_000, Sided::One).unwrap().value.unwrap() - 1.0).abs() < 1e-7);
        let one = ps_tdma_line(4.0, 10.0, 3, Sided::One).unwrap().value.unwrap();
        let two = ps_tdma_line(4.0, 10.0, 3, Sided::Two).unwrap().value.unwrap();
        assert_eq!(two, one * one);
        let b = ps_tdma_line(3.0, 10.0, 2, Sided::One).unwrap();
        assert!(b.value.is_none());
        let general = ps_line_rayleigh(3.0, 10.0, Access::Tdma { m: 2 }, Sided::One).unwrap();
        assert!(b.lower <= general && general <= b.tight_upper.unwrap());
        for m in 1..6 {
            for alpha in [2.0, 4.0] {
                let exact = ps_tdma_line(alpha, 7.0, m, Sided::Two).unwrap().value.unwrap();
                let general = ps_line_rayleigh(alpha, 7.0, Access::Tdma { m }, Sided::Two).unwrap();
                assert!((exact - general).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tdma_underflow_flag() {
        let s = ps_tdma_line(2.0, 1e8, 1, Sided::One).unwrap();
        assert_eq!(s.value, Some(0.0));
        assert!(s.underflow);
        assert!(!ps_tdma_line(2.0, 1.0, 1, Sided::One).unwrap().underflow);
        // A genuine zero is not an underflow.
        let s = ps_explicit(&[0.0], 1.0).unwrap();
        assert_eq!((s.value, s.underflow), (Some(0.0), false));
    }
}
