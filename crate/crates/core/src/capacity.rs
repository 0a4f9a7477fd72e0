//! Ergodic capacity `C = E log(1 + SIR)` in nats/s/Hz, and spatial
//! capacity (capacity weighted by the probability of transmitting).
//!
//! In a Poisson network with Rayleigh fading the variable `SIR^{d/alpha}`
//! is exponential with rate `c_p = p C_d(alpha)`, so the capacity depends
//! only on `c_p` and the boost exponent `b = alpha/d`:
//! `C = ∫ log(1 + (u/c_p)^b) e^{-u} du`.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI, SQRT_2};

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::contention::c_d_constant;
use crate::error::{ensure, Error, Result};
use crate::model::{check_probability, Access, Duplex, Sided};
use crate::optimize::maximize_unimodal;
use crate::outage::{ps_line_rayleigh, ps_tdma_line};
use crate::quad::integrate_pieces;
use crate::specfun::{
    exp_integral_e1, exp_integral_e1_imag, exp_integral_e1_scaled, ln_sinhc, lower_incomplete_gamma, zeta,
    Accuracy,
};

/// Upper limit of the `u = c_p t` integral; the `e^{-u}` weight makes the
/// remainder below `1e-24` for every admissible exponent.
pub const U_MAX: f64 = 60.0;

/// Golden-section tolerance on `p` for spatial capacity.
pub const P_TOL: f64 = 1e-6;

const QUAD: Accuracy = Accuracy {
    rel_tol: 1e-11,
    abs_tol: 1e-13,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityMethod {
    ClosedForm,
    Quadrature,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// nats/s/Hz.
    pub value: f64,
    pub method: CapacityMethod,
    /// `p C_d(alpha)` for Poisson networks; `zeta(alpha)/m^alpha` for TDMA.
    pub c_p: f64,
}

/// `log(1 + e^y)` without overflow.
fn ln_1p_exp(y: f64) -> f64 {
    if y > 35.0 {
        y + (-y).exp()
    } else {
        y.exp().ln_1p()
    }
}

/// `∫_0^∞ log(1 + (u/c_p)^b) e^{-u} du` by adaptive quadrature.
pub fn capacity_exponential(boost: f64, c_p: f64) -> Result<CapacityResult> {
    ensure(boost > 0.0 && boost.is_finite(), "boost", boost, "must be positive")?;
    ensure(c_p > 0.0 && c_p.is_finite(), "c_p", c_p, "must be positive")?;
    let ln_c = c_p.ln();
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        ln_1p_exp(boost * (u.ln() - ln_c)) * (-u).exp()
    };
    let mut points: Vec<f64> = Vec::from([0.0, 1.0, 10.0, U_MAX]);
    if c_p < U_MAX {
        points.push(c_p);
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    let r = integrate_pieces(f, &points, QUAD)?;
    Ok(CapacityResult {
        value: r.value,
        method: CapacityMethod::Quadrature,
        c_p,
    })
}

/// Closed form for boost exponent 2 (`d = 2, alpha = 4` or `d = 1, alpha = 2`):
/// `C = -2 Ci(c) cos c - 2 (Si(c) - pi/2) sin c`.
pub fn capacity_boost2_closed_form(c_p: f64) -> Result<CapacityResult> {
    let q = exp_integral_e1_imag(c_p)?;
    let value = 2.0 * q.re * c_p.cos() - 2.0 * q.im * c_p.sin();
    Ok(CapacityResult {
        value,
        method: CapacityMethod::ClosedForm,
        c_p,
    })
}

/// Poisson network (`d` in {1, 2}), Rayleigh fading, ALOHA with probability `p`.
pub fn ergodic_capacity_ppp(d: u32, alpha: f64, p: f64) -> Result<CapacityResult> {
    ensure(d == 1 || d == 2, "d", d as f64, "capacity is available for d = 1, 2")?;
    check_probability(p)?;
    ensure(p > 0.0, "p", p, "must be positive")?;
    let c_p = p * c_d_constant(d, alpha)?;
    capacity_exponential(alpha / d as f64, c_p)
}

/// Lower bound for the planar Poisson network. Returns the larger of the
/// split bound (linear below `u = c_p`, `log 2` plus a log term above) and
/// the high-SIR bound [`ergodic_capacity_ppp_high_sir`].
pub fn ergodic_capacity_ppp_lower(alpha: f64, p: f64) -> Result<CapacityResult> {
    ensure(alpha > 2.0, "alpha", alpha, "must exceed 2")?;
    check_probability(p)?;
    ensure(p > 0.0, "p", p, "must be positive")?;
    let c = p * c_d_constant(2, alpha)?;
    let a = alpha / 2.0;
    let rc = SQRT_2 * c;
    let split = LN_2
        * (c.powf(-a) * lower_incomplete_gamma(1.0 + a, c)? + (alpha / 4.0 - 1.0) * (-rc).exp() + (-c).exp())
        + a * exp_integral_e1(rc)?;
    let high = ergodic_capacity_ppp_high_sir(alpha, p)?;
    Ok(CapacityResult {
        value: split.max(high.value),
        method: CapacityMethod::LowerBound,
        c_p: c,
    })
}

/// `(alpha/2) E1(c_p)`, from `log(1 + x) >= max(0, log x)`.
pub fn ergodic_capacity_ppp_high_sir(alpha: f64, p: f64) -> Result<CapacityResult> {
    ensure(alpha > 2.0, "alpha", alpha, "must exceed 2")?;
    check_probability(p)?;
    ensure(p > 0.0, "p", p, "must be positive")?;
    let c = p * c_d_constant(2, alpha)?;
    Ok(CapacityResult {
        value: alpha / 2.0 * exp_integral_e1(c)?,
        method: CapacityMethod::LowerBound,
        c_p: c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialCapacity {
    pub p_opt: f64,
    /// `p C` (full duplex) or `p (1 - p) C` (half duplex) at `p_opt`.
    pub value: f64,
}

/// Maximizes spatial capacity over `p` in a planar Poisson network.
pub fn spatial_capacity_opt(alpha: f64, duplex: Duplex) -> Result<SpatialCapacity> {
    ensure(alpha > 2.0, "alpha", alpha, "must exceed 2")?;
    let c2 = c_d_constant(2, alpha)?;
    let boost = alpha / 2.0;
    let weight = |p: f64| match duplex {
        Duplex::Full => p,
        Duplex::Half => p * (1.0 - p),
    };
    let f = |p: f64| {
        if p <= 0.0 {
            return 0.0;
        }
        match capacity_exponential(boost, p * c2) {
            Ok(c) => weight(p) * c.value,
            Err(_) => f64::NAN,
        }
    };
    let best = maximize_unimodal(f, 0.0, 1.0, P_TOL)?;
    Ok(SpatialCapacity {
        p_opt: best.x,
        value: best.value,
    })
}

/// Density of `t = pi sqrt(SIR)/m` on the TDMA line with `alpha = 2`:
/// `(t coth t - 1)/sinh t`.
pub fn tdma_alpha2_density(t: f64) -> f64 {
    if t < 1e-3 {
        t / 3.0 * (1.0 - 7.0 * t * t / 30.0)
    } else if t > 700.0 {
        0.0
    } else {
        let s = t.sinh();
        (t * t.cosh() / s - 1.0) / s
    }
}

/// `P(pi sqrt(SIR)/m < t) = 1 - t/sinh t` on the TDMA line with `alpha = 2`.
pub fn tdma_sqrt_sir_cdf(t: f64) -> Result<f64> {
    ensure(t >= 0.0, "t", t, "must be nonnegative")?;
    Ok(-(-ln_sinhc(t)).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdmaSirMoments {
    pub mean_sqrt_sir: f64,
    pub mean_sir: f64,
}

/// Moments of the SIR on the TDMA line with `alpha = 2`.
pub fn tdma_sir_moments(m: u32) -> Result<TdmaSirMoments> {
    ensure(m >= 1, "m", m as f64, "must be at least 1")?;
    let mf = m as f64;
    Ok(TdmaSirMoments {
        mean_sqrt_sir: PI * mf / 4.0,
        mean_sir: 7.0 * zeta(3.0)? * mf * mf / (PI * PI),
    })
}

/// Ergodic capacity of a one-sided unit line, Rayleigh fading, TDMA with
/// reuse `m`. Exact density for `alpha = 2`; otherwise the ccdf integral
/// `∫ p_s(theta)/(1 + theta) dtheta` over `y = theta^{1/alpha}`.
pub fn ergodic_capacity_tdma(alpha: f64, m: u32) -> Result<CapacityResult> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    ensure(m >= 1, "m", m as f64, "must be at least 1")?;
    let mf = m as f64;
    let c_p = zeta(alpha)? / mf.powf(alpha);
    let value = if alpha == 2.0 {
        let scale = mf / PI;
        let f = |t: f64| ln_1p_exp(2.0 * (scale * t).ln()) * tdma_alpha2_density(t);
        integrate_pieces(f, &[0.0, 1.0, 5.0, 20.0, 80.0], QUAD)?.value
    } else {
        let exact = alpha == 4.0;
        let failed = core::cell::Cell::new(None);
        let f = |y: f64| {
            if y <= 0.0 {
                return 0.0;
            }
            let theta = y.powf(alpha);
            let ps = if exact {
                ps_tdma_line(alpha, theta, m, Sided::One).map(|s| s.value.unwrap_or(0.0))
            } else {
                ps_line_rayleigh(alpha, theta, Access::Tdma { m }, Sided::One)
            };
            match ps {
                Ok(ps) => ps * alpha * theta / (y * (1.0 + theta)),
                Err(e) => {
                    failed.set(Some(e));
                    0.0
                }
            }
        };
        let points: Vec<f64> = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]
            .iter()
            .map(|x| x * mf)
            .collect();
        let r = integrate_pieces(f, &points, QUAD)?;
        if let Some(e) = failed.take() {
            return Err(e);
        }
        r.value
    };
    Ok(CapacityResult {
        value,
        method: CapacityMethod::Quadrature,
        c_p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdmaCapacityBounds {
    /// `e^lambda E1(lambda)` with `lambda = zeta(alpha)/m^alpha`, any `alpha`.
    pub lower: CapacityResult,
    /// `2 log(2m/pi)`, `alpha = 2` only.
    pub log_lower: Option<CapacityResult>,
    /// `log(1 + E SIR)` by Jensen, `alpha = 2` only.
    pub upper: Option<CapacityResult>,
}

pub fn tdma_capacity_bounds(alpha: f64, m: u32) -> Result<TdmaCapacityBounds> {
    ensure(alpha > 1.0, "alpha", alpha, "must exceed 1")?;
    ensure(m >= 1, "m", m as f64, "must be at least 1")?;
    let mf = m as f64;
    let c_p = zeta(alpha)? / mf.powf(alpha);
    let bound = |value, method| CapacityResult { value, method, c_p };
    let (log_lower, upper) = if alpha == 2.0 {
        let moments = tdma_sir_moments(m)?;
        (
            Some(bound(2.0 * (2.0 * mf / PI).ln(), CapacityMethod::LowerBound)),
            Some(bound(moments.mean_sir.ln_1p(), CapacityMethod::UpperBound)),
        )
    } else {
        (None, None)
    };
    Ok(TdmaCapacityBounds {
        lower: bound(exp_integral_e1_scaled(c_p)?, CapacityMethod::LowerBound),
        log_lower,
        upper,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TdmaSpatialCapacity {
    pub m_opt: u32,
    /// `(m, C/m)` for every `m` scanned.
    pub values: Vec<(u32, f64)>,
}

/// Reuse factor maximizing `C/m` over `m_range`.
pub fn tdma_spatial_capacity(alpha: f64, m_range: &[u32]) -> Result<TdmaSpatialCapacity> {
    ensure(!m_range.is_empty(), "m_range", 0.0, "must not be empty")?;
    let mut values = Vec::with_capacity(m_range.len());
    for &m in m_range {
        values.push((m, ergodic_capacity_tdma(alpha, m)?.value / m as f64));
    }
    let m_opt = values
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|v| v.0)
        .ok_or(Error::Numeric("empty scan"))?;
    Ok(TdmaSpatialCapacity { m_opt, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for &c in &[0.05, 0.1, 0.3, 1.0, 2.5, 7.0, 20.0] {
            let q = capacity_exponential(2.0, c).unwrap().value;
            let cf = capacity_boost2_closed_form(c).unwrap().value;
            assert!(rel(cf, q) < 1e-9, "c={c} cf={cf} q={q}");
        }
    }

    #[test]
    fn frozen_quadrature_values() {
        // Independent high-precision quadrature.
        let cases = [
            (1.05, 0.1, 2.0961433131452085),
            (2.0, 1.0, 0.686755923112854),
            (2.5, 10.0, 0.010009608426435931),
            (1.5, 0.5, 1.1205926526890955),
        ];
        for (b, c, want) in cases {
            let got = capacity_exponential(b, c).unwrap().value;
            assert!(rel(got, want) < 1e-10, "b={b} c={c} got={got}");
        }
    }

    #[test]
    fn closed_form_large_c_decays() {
        // C ~ 2/c^2 for large c.
        let c = 200.0;
        let v = capacity_boost2_closed_form(c).unwrap().value;
        assert!(rel(v, 2.0 / (c * c)) < 1e-3);
    }

    #[test]
    fn one_and_two_dim_equal_at_equal_c_p() {
        let c4 = c_d_constant(2, 4.0).unwrap();
        let c2 = c_d_constant(1, 2.0).unwrap();
        let a = ergodic_capacity_ppp(2, 4.0, 0.1).unwrap();
        let b = ergodic_capacity_ppp(1, 2.0, 0.1 * c4 / c2).unwrap();
        assert!(rel(a.value, b.value) < 1e-9);
    }

    #[test]
    fn small_p_grows_like_log() {
        let c = c_d_constant(2, 4.0).unwrap();
        let r = ergodic_capacity_ppp(2, 4.0, 1e-6 / c).unwrap();
        assert!(r.value > 12.0);
        assert!(rel(r.c_p, 1e-6) < 1e-12);
    }

    #[test]
    fn lower_bounds_hold() {
        for &alpha in &[2.1, 2.5, 3.0, 4.0, 5.0] {
            for &p in &[1e-3, 0.01, 0.05, 0.2, 0.5, 1.0] {
                let c = ergodic_capacity_ppp(2, alpha, p).unwrap().value;
                let lo = ergodic_capacity_ppp_lower(alpha, p).unwrap().value;
                let hi = ergodic_capacity_ppp_high_sir(alpha, p).unwrap().value;
                assert!(lo <= c && hi <= lo && hi >= 0.0, "alpha={alpha} p={p}");
            }
        }
    }

    #[test]
    fn frozen_lower_bound() {
        // c_p = 1, alpha = 4, from an independent evaluation.
        let p = 1.0 / c_d_constant(2, 4.0).unwrap();
        let lo = ergodic_capacity_ppp_lower(4.0, p).unwrap().value;
        assert!(rel(lo, 0.5938078493618314) < 1e-10);
    }

    #[test]
    fn capacity_decreases_in_p() {
        let mut prev = f64::INFINITY;
        for k in 1..=20 {
            let c = ergodic_capacity_ppp(2, 3.0, k as f64 / 20.0).unwrap().value;
            assert!(c < prev);
            prev = c;
        }
    }

    #[test]
    fn spatial_capacity_half_duplex_near_one_ninth() {
        for &alpha in &[2.5, 3.0, 4.0, 5.0] {
            let s = spatial_capacity_opt(alpha, Duplex::Half).unwrap();
            assert!((0.09..=0.13).contains(&s.p_opt), "alpha={alpha} p={}", s.p_opt);
        }
    }

    #[test]
    fn spatial_capacity_full_duplex_decreasing() {
        let a = spatial_capacity_opt(2.5, Duplex::Full).unwrap();
        let b = spatial_capacity_opt(5.0, Duplex::Full).unwrap();
        assert!(a.p_opt > b.p_opt);
    }

    #[test]
    fn tdma_density_integrates_to_one() {
        let r = integrate_pieces(tdma_alpha2_density, &[0.0, 1.0, 5.0, 80.0], QUAD).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        // Series and direct forms agree at the switch.
        let t = 1e-3;
        let direct = (t * t.cosh() / t.sinh() - 1.0) / t.sinh();
        assert!(rel(tdma_alpha2_density(t), direct) < 1e-9);
    }

    #[test]
    fn tdma_cdf_is_integral_of_density() {
        for &t in &[0.01, 0.5, 2.0, 10.0] {
            let r = integrate_pieces(tdma_alpha2_density, &[0.0, t], QUAD).unwrap();
            assert!((r.value - tdma_sqrt_sir_cdf(t).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn tdma_alpha2_frozen_and_bracketed() {
        let frozen = [
            (1, 0.505_545_622_199_421_8),
            (2, 1.164_092_557_389_932_1),
            (4, 2.150_544_600_707_738_4),
            (10, 3.774_572_114_957_177_8),
        ];
        for (m, want) in frozen {
            let c = ergodic_capacity_tdma(2.0, m).unwrap().value;
            assert!(rel(c, want) < 1e-10, "m={m} c={c}");
            let b = tdma_capacity_bounds(2.0, m).unwrap();
            assert!(b.lower.value < c);
            assert!(b.log_lower.unwrap().value < c);
            assert!(b.upper.unwrap().value > c);
        }
    }

    #[test]
    fn tdma_alpha2_ccdf_route_agrees() {
        // The generic ccdf route, fed with the alpha = 2 product, must agree
        // with the density route.
        let m = 3;
        let f = |y: f64| {
            if y <= 0.0 {
                return 0.0;
            }
            let theta = y * y;
            let ps = ps_line_rayleigh(2.0, theta, Access::Tdma { m }, Sided::One).unwrap();
            ps * 2.0 * y / (1.0 + theta)
        };
        let r = integrate_pieces(f, &[0.0, 3.0, 12.0, 48.0, 192.0], QUAD).unwrap();
        assert!(rel(r.value, ergodic_capacity_tdma(2.0, m).unwrap().value) < 1e-9);
    }

    #[test]
    fn tdma_alpha4_matches_generic_product() {
        let m = 2;
        let exact = ergodic_capacity_tdma(4.0, m).unwrap().value;
        let generic = ergodic_capacity_tdma(4.0 + 1e-12, m).unwrap().value;
        assert!(rel(exact, generic) < 1e-8, "{exact} {generic}");
        assert!(tdma_capacity_bounds(4.0, m).unwrap().lower.value < exact);
    }

    #[test]
    fn log_bound_tightens() {
        let gap = |m: u32| {
            ergodic_capacity_tdma(2.0, m).unwrap().value - tdma_capacity_bounds(2.0, m).unwrap().log_lower.unwrap().value
        };
        assert!(gap(30) < gap(10) && gap(100) < gap(30) && gap(100) < 5e-3);
    }

    #[test]
    fn moments() {
        let one = tdma_sir_moments(1).unwrap();
        assert!((one.mean_sqrt_sir - core::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let two = tdma_sir_moments(2).unwrap();
        assert!((two.mean_sir - 3.4103).abs() < 1e-4);
        for m in 1..20 {
            let s = tdma_sir_moments(m).unwrap();
            assert!(s.mean_sqrt_sir * s.mean_sqrt_sir <= s.mean_sir);
        }
    }

    #[test]
    fn tdma_spatial_optimum() {
        let range: Vec<u32> = (1..=10).collect();
        assert_eq!(tdma_spatial_capacity(2.0, &range).unwrap().m_opt, 2);
        assert_eq!(tdma_spatial_capacity(4.0, &range).unwrap().m_opt, 3);
        assert!(tdma_spatial_capacity(2.0, &[]).is_err());
    }
}
