//! Throughput optima: ALOHA transmit probability, TDMA reuse factor and
//! SIR threshold (rate).
//!
//! Probabilistic throughput is `p p_s` for full duplex and `p (1-p) p_s`
//! for half duplex; TDMA gives `p_s / m`. Throughput in nats/s/Hz is
//! `p_T log(1 + theta)`.

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::contention;
use crate::error::{ensure, Error, Result};
use crate::model::{Access, Duplex, Sided};
use crate::optimize::maximize_unimodal;
use crate::outage;
use crate::specfun::{lambert_w0, zeta};

/// Search range of `ln theta` for numeric rate optimization (-40 dB .. 60 dB).
pub const LN_THETA_RANGE: (f64, f64) = (-9.210_340_371_976_184, 13.815_510_557_964_274);

/// Golden-section tolerance on `ln theta`.
pub const LN_THETA_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlohaOptimum {
    pub p_opt: f64,
    /// Maximum probabilistic throughput.
    pub value: f64,
    /// Half duplex only: the throughput at `p = 1/(2 + gamma)`.
    pub lower_bound: Option<f64>,
}

/// Optimal ALOHA transmit probability when `p_s = exp(-p gamma)`.
pub fn aloha_p_opt(gamma: f64, duplex: Duplex) -> Result<AlohaOptimum> {
    ensure(gamma > 0.0 && gamma.is_finite(), "gamma", gamma, "must be positive")?;
    Ok(match duplex {
        Duplex::Full => {
            let p = (1.0 / gamma).min(1.0);
            AlohaOptimum {
                p_opt: p,
                value: p * (-p * gamma).exp(),
                lower_bound: None,
            }
        }
        Duplex::Half => {
            // Root of p^2 - p(1 + 2/gamma) + 1/gamma in the cancellation-free form.
            let p = 2.0 / (gamma + 2.0 + (gamma * gamma + 4.0).sqrt());
            let q = 1.0 / (2.0 + gamma);
            AlohaOptimum {
                p_opt: p,
                value: p * (1.0 - p) * (-p * gamma).exp(),
                lower_bound: Some((1.0 + gamma) * q * q * (-gamma * q).exp()),
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdmaOptimum {
    /// Real-valued bracket on the optimal reuse factor.
    pub m_lower: f64,
    pub m_upper: f64,
    /// Rounded midpoint estimate.
    pub m_hat: u32,
    /// Exact maximizer of `p_s / m` over the scanned range.
    pub m_exact: u32,
    pub throughput_hat: f64,
    pub throughput_exact: f64,
    /// Two-sided success probability at `m_exact`.
    pub ps_exact: f64,
    /// `((1 - 1/(2 alpha))^2, exp(-1/alpha))`, the expected range of `ps_exact`.
    pub ps_window: (f64, f64),
}

/// Two-sided TDMA line throughput `p_s(m) / m`.
pub fn tdma_throughput(alpha: f64, theta: f64, m: u32) -> Result<f64> {
    Ok(tdma_ps_two_sided(alpha, theta, m)? / m as f64)
}

fn tdma_ps_two_sided(alpha: f64, theta: f64, m: u32) -> Result<f64> {
    match outage::ps_tdma_line(alpha, theta, m, Sided::Two)?.value {
        Some(v) => Ok(v),
        None => outage::ps_line_rayleigh(alpha, theta, Access::Tdma { m }, Sided::Two),
    }
}

/// Optimal TDMA reuse factor on a two-sided unit line.
pub fn tdma_m_opt(alpha: f64, theta: f64) -> Result<TdmaOptimum> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    ensure(theta > 0.0 && theta.is_finite(), "theta", theta, "must be positive")?;
    let tz = theta * zeta(alpha)?;
    let inv = 1.0 / alpha;
    let m_lower = (tz * (2.0 * alpha - 1.0)).powf(inv);
    let m_upper = (tz * 2.0 * alpha).powf(inv);
    let m_hat = ((tz * (2.0 * alpha - 0.5)).powf(inv).round() as u32).max(1);
    let top = ((2.0 * m_upper).ceil() as u32).max(m_hat + 1).max(2);
    let mut best = (1u32, f64::NEG_INFINITY);
    for m in 1..=top {
        let t = tdma_throughput(alpha, theta, m)?;
        if t > best.1 {
            best = (m, t);
        }
    }
    Ok(TdmaOptimum {
        m_lower,
        m_upper,
        m_hat,
        m_exact: best.0,
        throughput_hat: tdma_throughput(alpha, theta, m_hat)?,
        throughput_exact: best.1,
        ps_exact: tdma_ps_two_sided(alpha, theta, best.0)?,
        ps_window: ((1.0 - 0.5 * inv).powi(2), (-inv).exp()),
    })
}

/// Full-duplex rate-optimal threshold for `gamma = c theta^(d/alpha)`:
/// `exp(W0(-(alpha/d) e^(-alpha/d)) + alpha/d) - 1`, independent of `c`.
pub fn theta_opt_fullduplex(alpha: f64, d: u32) -> Result<f64> {
    ensure(d >= 1, "d", d as f64, "must be at least 1")?;
    ensure(alpha > d as f64, "alpha", alpha, "must exceed d")?;
    let x = alpha / d as f64;
    let w = lambert_w0(-x * (-x).exp())?;
    Ok((w + x).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateOptimum {
    pub theta_opt: f64,
    pub p_opt: f64,
    /// Maximum throughput `p_T log(1 + theta)` in nats/s/Hz.
    pub t_max: f64,
}

fn rate_at(theta: f64, exponent: f64, c: f64, duplex: Duplex) -> Result<(f64, f64)> {
    let gamma = c * theta.powf(exponent);
    let opt = aloha_p_opt(gamma, duplex)?;
    Ok((opt.p_opt, opt.value * theta.ln_1p()))
}

/// Jointly optimal threshold and transmit probability for a Poisson network
/// with `gamma(theta) = c theta^(d/alpha)`. `c = None` uses `C_d(alpha)`.
pub fn optimize_rate(alpha: f64, d: u32, duplex: Duplex, c: Option<f64>) -> Result<RateOptimum> {
    let c = match c {
        Some(c) => c,
        None => contention::c_d_constant(d, alpha)?,
    };
    ensure(c > 0.0 && c.is_finite(), "c", c, "must be positive")?;
    ensure(alpha > d as f64, "alpha", alpha, "must exceed d")?;
    let exponent = d as f64 / alpha;
    if duplex == Duplex::Full {
        let theta = theta_opt_fullduplex(alpha, d)?;
        let (p, t) = rate_at(theta, exponent, c, duplex)?;
        // The closed form presumes the unclamped p = 1/gamma.
        if c * theta.powf(exponent) >= 1.0 {
            return Ok(RateOptimum {
                theta_opt: theta,
                p_opt: p,
                t_max: t,
            });
        }
    }
    let objective = |ln_theta: f64| rate_at(ln_theta.exp(), exponent, c, duplex).map_or(f64::NAN, |r| r.1);
    let m = maximize_unimodal(objective, LN_THETA_RANGE.0, LN_THETA_RANGE.1, LN_THETA_TOL)?;
    let theta = m.x.exp();
    let (p, t) = rate_at(theta, exponent, c, duplex)?;
    if !t.is_finite() {
        return Err(Error::Numeric("rate objective is not finite at the optimum"));
    }
    Ok(RateOptimum {
        theta_opt: theta,
        p_opt: p,
        t_max: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, LN_2};

    #[test]
    fn aloha_full_duplex() {
        let r = aloha_p_opt(2.0, Duplex::Full).unwrap();
        assert_eq!(r.p_opt, 0.5);
        assert!((r.value - 1.0 / (2.0 * E)).abs() < 1e-15);
        assert_eq!(aloha_p_opt(0.5, Duplex::Full).unwrap().p_opt, 1.0);
        assert!(aloha_p_opt(0.0, Duplex::Full).is_err());
    }

    #[test]
    fn aloha_half_duplex() {
        assert!((aloha_p_opt(1e-9, Duplex::Half).unwrap().p_opt - 0.5).abs() < 1e-9);
        for &g in &[1e-3, 0.5, 5.0, 1e3] {
            let r = aloha_p_opt(g, Duplex::Half).unwrap();
            let textbook = 1.0 / g + (1.0 - (1.0 + 4.0 / (g * g)).sqrt()) / 2.0;
            assert!((r.p_opt - textbook).abs() < 1e-9 * r.p_opt.max(1e-3));
            let full = aloha_p_opt(g, Duplex::Full).unwrap();
            assert!(r.p_opt < full.p_opt && r.p_opt < 0.5);
        }
        // Grid maximum of p(1-p)e^{-5p}.
        let r = aloha_p_opt(5.0, Duplex::Half).unwrap();
        let grid = (1..100_000)
            .map(|i| {
                let p = i as f64 / 100_000.0;
                p * (1.0 - p) * (-5.0 * p).exp()
            })
            .fold(0.0, f64::max);
        let lb = r.lower_bound.unwrap();
        assert!(lb <= grid && lb / grid > 0.986);
        assert!((r.value - grid).abs() < 1e-9);
    }

    #[test]
    fn tdma_examples() {
        let r = tdma_m_opt(2.0, 10.0).unwrap();
        assert_eq!(r.m_hat, 8);
        assert!(r.throughput_hat >= 0.98 * r.throughput_exact);
        assert_eq!(tdma_m_opt(2.0, 1e-6).unwrap().m_exact, 1);
        for &theta in &[0.5, 3.0, 30.0] {
            for alpha in [2.0, 3.0, 4.0] {
                let r = tdma_m_opt(alpha, theta).unwrap();
                let m = r.m_exact;
                let t = |m| tdma_throughput(alpha, theta, m).unwrap();
                assert!(t(m) >= t(m + 1));
                if m > 1 {
                    assert!(t(m) >= t(m - 1));
                }
            }
        }
    }

    #[test]
    fn theta_opt_values() {
        let t = theta_opt_fullduplex(4.0 * LN_2, 2).unwrap();
        assert!((t - 1.0).abs() < 1e-9);
        for &alpha in &[2.5, 3.0, 4.0, 5.0, 6.0] {
            let a = theta_opt_fullduplex(alpha, 2).unwrap();
            let b = theta_opt_fullduplex(alpha / 2.0, 1).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0));
            assert!(a.ln_1p() < alpha - 2.0);
        }
        assert!(theta_opt_fullduplex(2.0, 2).is_err());
        // Stationarity of theta^{-1/2} log(1 + theta) at alpha = 4.
        let t = theta_opt_fullduplex(4.0, 2).unwrap();
        let f = |x: f64| x.powf(-0.5) * x.ln_1p();
        let h = 1e-5 * t;
        assert!(((f(t + h) - f(t - h)) / (2.0 * h)).abs() < 1e-6);
    }

    #[test]
    fn rate_full_duplex_closed_form() {
        let r = optimize_rate(4.0, 2, Duplex::Full, None).unwrap();
        let gamma = contention::c_d_constant(2, 4.0).unwrap() * r.theta_opt.sqrt();
        assert!((r.p_opt * gamma - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rate_half_vs_full() {
        for &alpha in &[2.5, 3.0, 4.0, 5.0] {
            let full = optimize_rate(alpha, 2, Duplex::Full, None).unwrap();
            let half = optimize_rate(alpha, 2, Duplex::Half, None).unwrap();
            assert!(full.t_max > half.t_max);
            // A fine grid in ln theta cannot beat the search.
            let c = contention::c_d_constant(2, alpha).unwrap();
            let grid = (0..20_001)
                .map(|i| {
                    let lt = LN_THETA_RANGE.0 + (LN_THETA_RANGE.1 - LN_THETA_RANGE.0) * i as f64 / 20_000.0;
                    rate_at(lt.exp(), 2.0 / alpha, c, Duplex::Half).unwrap().1
                })
                .fold(0.0, f64::max);
            assert!(half.t_max >= grid * (1.0 - 1e-6));
        }
    }
}
