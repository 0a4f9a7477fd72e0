//! Spatial contention `gamma` for each supported network class.
//!
//! `gamma` is the slope of the outage probability in the ALOHA transmit
//! probability at `p = 0`, so `p_s ~ 1 - p gamma` for small `p`. Its
//! reciprocal, the spatial efficiency, is reported alongside.

use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::model::{unit_ball_volume, ContentionResult, Fading, FadingCase, Sided};
use crate::specfun::{self, zeta, zeta_tail};

/// Below this threshold the line formulas switch to their Taylor series,
/// which avoids the `x coth x - 1` style cancellation.
const LINE_TAYLOR_BELOW: f64 = 0.1;

fn check_theta(theta: f64) -> Result<()> {
    ensure(theta > 0.0 && theta.is_finite(), "theta", theta, "must be positive")
}

/// Single interferer at effective distance `xi` for the four non-Nakagami
/// fading cases. Nakagami cases are handled by [`crate::outage::ps_single`].
pub fn gamma_single(case: FadingCase, xi: f64) -> Result<f64> {
    ensure(xi >= 0.0, "xi", xi, "must be nonnegative")?;
    match (case.desired.normalized(), case.interferer.normalized()) {
        (Fading::Rayleigh, Fading::Rayleigh) => Ok(1.0 / (1.0 + xi)),
        (Fading::Rayleigh, Fading::None) => Ok(if xi == 0.0 { 1.0 } else { -(-1.0 / xi).exp_m1() }),
        (Fading::None, Fading::Rayleigh) => Ok((-xi).exp()),
        (Fading::None, Fading::None) => Ok(if xi <= 1.0 { 1.0 } else { 0.0 }),
        _ => Err(Error::Unsupported("single-interferer contention needs 0/1 fading; use ps_single for Nakagami")),
    }
}

/// `C_d(alpha) = c_d (d pi / alpha) csc(d pi / alpha)`. Proven for `d <= 2`,
/// conjectured above.
pub fn c_d_constant(d: u32, alpha: f64) -> Result<f64> {
    ensure(d >= 1, "d", d as f64, "must be at least 1")?;
    ensure(alpha > d as f64, "alpha", alpha, "must exceed d for finite contention")?;
    let x = d as f64 * PI / alpha;
    Ok(unit_ball_volume(d)? * x / x.sin())
}

/// Poisson network of unit intensity in `d` dimensions with a Rayleigh
/// desired link. Interferers may be Rayleigh (any `d`) or non-fading (`d = 2`).
pub fn gamma_ppp(d: u32, alpha: f64, theta: f64, interferer_fading: Fading) -> Result<ContentionResult> {
    check_theta(theta)?;
    match interferer_fading.normalized() {
        Fading::Rayleigh => {
            let gamma = theta.powf(d as f64 / alpha) * c_d_constant(d, alpha)?;
            Ok(ContentionResult::new(gamma).conjectured(d >= 3))
        }
        Fading::None if d == 2 => {
            ensure(alpha > 2.0, "alpha", alpha, "must exceed d for finite contention")?;
            let gamma = PI * specfun::gamma_fn(1.0 - 2.0 / alpha)? * theta.powf(2.0 / alpha);
            Ok(ContentionResult::new(gamma))
        }
        Fading::None => Err(Error::Unsupported("non-fading interferers are only supported for d = 2")),
        Fading::Nakagami { .. } => Err(Error::Unsupported("Nakagami interferers in a Poisson network")),
    }
}

/// Planar Poisson network, `alpha = 4`, no fading at all: `pi sqrt(theta)`.
pub fn gamma_ppp_nonfading_alpha4(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(PI * theta.sqrt())
}

/// Planar Poisson network with path loss `exp(-delta r)`, Rayleigh fading.
pub fn gamma_exp_pathloss(delta: f64, theta: f64) -> Result<f64> {
    ensure(delta > 0.0, "delta", delta, "must be positive")?;
    check_theta(theta)?;
    Ok(-2.0 * PI * specfun::dilog(theta + 1.0)? / (delta * delta))
}

/// Fixed interferers at effective distances `xis`, Rayleigh desired link.
/// Rayleigh interferers give `sum 1/(1+xi)`, non-fading ones `sum 1/xi`.
pub fn gamma_explicit(xis: &[f64], interferer_fading: Fading) -> Result<f64> {
    match interferer_fading.normalized() {
        Fading::Rayleigh => xis.iter().try_fold(0.0, |acc, &xi| {
            ensure(xi >= 0.0, "xi", xi, "must be nonnegative")?;
            Ok(acc + 1.0 / (1.0 + xi))
        }),
        Fading::None => xis.iter().try_fold(0.0, |acc, &xi| {
            ensure(xi > 0.0, "xi", xi, "must be positive without interferer fading")?;
            Ok(acc + 1.0 / xi)
        }),
        Fading::Nakagami { .. } => Err(Error::Unsupported("Nakagami interferers in an explicit network")),
    }
}

/// One-sided unit line, `alpha = 2`, Rayleigh fading.
pub fn gamma_line_alpha2(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta < LINE_TAYLOR_BELOW {
        return gamma_line_taylor(2.0, theta, 40);
    }
    let x = PI * theta.sqrt();
    Ok(0.5 * (x / x.tanh() - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alpha4Mode {
    Exact,
    /// `pi theta^(1/4) / (2 sqrt 2) - 1/2`, good for `theta > 1`.
    Approx,
}

/// One-sided unit line, `alpha = 4`, Rayleigh fading.
pub fn gamma_line_alpha4(theta: f64, mode: Alpha4Mode) -> Result<f64> {
    check_theta(theta)?;
    let y = PI * theta.powf(0.25) / SQRT_2;
    match mode {
        Alpha4Mode::Approx => Ok(0.5 * (y - 1.0)),
        Alpha4Mode::Exact if theta < LINE_TAYLOR_BELOW => gamma_line_taylor(4.0, theta, 40),
        Alpha4Mode::Exact => {
            // Numerator and denominator divided by e^{2y}.
            let e = (-2.0 * y).exp();
            let (s, c) = y.sin_cos();
            let num = (y - 1.0) + e * (4.0 * c * c + 4.0 * y * c * s - 2.0) - (y + 1.0) * e * e;
            let den = (1.0 - e) * (1.0 - e) + 4.0 * e * s * s;
            Ok(num / (2.0 * den))
        }
    }
}

/// Taylor series `sum_{i>=1} (-1)^(i+1) zeta(alpha i) theta^i` of the
/// one-sided Rayleigh line contention, truncated at `terms`.
pub fn gamma_line_taylor(alpha: f64, theta: f64, terms: u32) -> Result<f64> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    check_theta(theta)?;
    ensure(theta < 0.5, "theta", theta, "series needs theta < 1/2")?;
    ensure(terms >= 1, "terms", terms as f64, "must be at least 1")?;
    let mut sum = 0.0;
    let mut power = 1.0;
    for i in 1..=terms {
        power *= theta;
        let term = zeta(alpha * i as f64)? * power;
        sum += if i % 2 == 1 { term } else { -term };
    }
    Ok(sum)
}

/// One-sided unit line with any `alpha > 1`, Rayleigh fading, by direct
/// summation with an exact series for the tail.
pub fn gamma_line_sum(alpha: f64, theta: f64) -> Result<f64> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    check_theta(theta)?;
    // Past n the terms expand as sum_k (-1)^k theta^(k+1) i^(-alpha(k+1)).
    let n = ((10.0 * theta).powf(1.0 / alpha).ceil() as u64).max(16);
    let head: f64 = (1..=n).map(|i| 1.0 / (1.0 + (i as f64).powf(alpha) / theta)).sum();
    let mut tail = 0.0;
    let mut power = 1.0;
    for k in 1..=60u32 {
        power *= theta;
        let term = power * zeta_tail(alpha * k as f64, n)?;
        tail += if k % 2 == 1 { term } else { -term };
        if term.abs() < 1e-17 * head {
            break;
        }
    }
    Ok(head + tail)
}

/// Rayleigh line contention for either orientation: two-sided doubles it.
pub fn gamma_line(alpha: f64, theta: f64, sided: Sided) -> Result<f64> {
    let one = if alpha == 2.0 {
        gamma_line_alpha2(theta)?
    } else if alpha == 4.0 {
        gamma_line_alpha4(theta, Alpha4Mode::Exact)?
    } else {
        gamma_line_sum(alpha, theta)?
    };
    Ok(match sided {
        Sided::One => one,
        Sided::Two => 2.0 * one,
    })
}

/// TDMA line contention, the slope in `1/m^alpha`: `zeta(alpha) theta`.
pub fn gamma_tdma_line(alpha: f64, theta: f64) -> Result<f64> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    check_theta(theta)?;
    Ok(zeta(alpha)? * theta)
}

/// Radius of the disk whose area equals `gamma`, in units of the link
/// distance.
pub fn equivalent_disk_radius(gamma: f64, link_distance: f64) -> Result<f64> {
    ensure(gamma > 0.0, "gamma", gamma, "must be positive")?;
    ensure(link_distance > 0.0, "link_distance", link_distance, "must be positive")?;
    Ok(link_distance * (gamma / PI).sqrt())
}

/// Transmit density that keeps the outage at `epsilon`, to first order:
/// `epsilon * sigma`.
pub fn transmission_capacity_density(epsilon: f64, sigma: f64) -> Result<f64> {
    ensure((0.0..1.0).contains(&epsilon), "epsilon", epsilon, "must lie in [0, 1)")?;
    ensure(sigma > 0.0, "sigma", sigma, "must be positive")?;
    Ok(epsilon * sigma)
}
