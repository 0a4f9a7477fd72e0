//! Monte Carlo oracle: samples network realizations, fading and MAC
//! outcomes directly and estimates the quantities the closed forms predict.
//!
//! Every trial draws from its own ChaCha8 stream, keyed by the seed and
//! selected by the trial index, so results do not depend on how trials are
//! scheduled. Cross-trial reductions use pairwise summation over samples
//! kept in trial order.
//!
//! The desired transmitter sits at unit distance with unit mean received
//! power and always transmits. Interferers outside the simulation window
//! are replaced by their mean interference; the window is chosen so that
//! the standard deviation of what is replaced stays below `truncation_tol`
//! times the power of a typical nearest interferer.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::model::{check_probability, unit_ball_volume, Access, Fading, Geometry, MacScheme, NetworkModel, PathLoss, Sided};
use crate::specfun::zeta_tail;

/// SIR values above this (including infinite ones) are clipped when
/// estimating capacity.
pub const SIR_CAP: f64 = 1e12;
pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-3;
/// Largest expected number of in-window interferers per trial.
pub const MAX_EXPECTED_POINTS: f64 = 1e6;
/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    Auto,
    /// Fixed radius; on lines, the distance covered on each side.
    Radius(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub window: Window,
    pub truncation_tol: f64,
    pub theta_grid: Vec<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: 0,
            window: Window::Auto,
            truncation_tol: DEFAULT_TRUNCATION_TOL,
            theta_grid: Vec::from([0.1, 1.0, 10.0]),
        }
    }
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.trials >= 1, "trials", self.trials as f64, "must be at least 1")?;
        let tol = self.truncation_tol;
        ensure(tol > 0.0 && tol < 0.1, "truncation_tol", tol, "must lie in (0, 0.1)")?;
        if let Window::Radius(r) = self.window {
            ensure(r > 0.0 && r.is_finite(), "window_radius", r, "must be positive")?;
        }
        for &t in &self.theta_grid {
            ensure(t > 0.0 && t.is_finite(), "theta", t, "must be positive")?;
        }
        Ok(())
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub ci95: (f64, f64),
}

impl Estimate {
    pub fn new(mean: f64, stderr: f64, n: u64) -> Self {
        Self {
            mean,
            stderr,
            n,
            ci95: (mean - Z95 * stderr, mean + Z95 * stderr),
        }
    }

    /// Mean and `sample std / sqrt(n)`, both via pairwise summation.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self::new(f64::NAN, f64::NAN, 0);
        }
        let mean = pairwise_sum(xs) / n as f64;
        if n == 1 {
            return Self::new(mean, 0.0, 1);
        }
        let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = pairwise_sum(&dev) / (n - 1) as f64;
        Self::new(mean, (var / n as f64).sqrt(), n as u64)
    }

    /// Multiplies mean and standard error by `k`.
    pub fn scaled(self, k: f64) -> Self {
        Self::new(self.mean * k, self.stderr * k.abs(), self.n)
    }

    /// `|mean - reference| / stderr`; zero stderr gives 0 on exact agreement
    /// and infinity otherwise.
    pub fn z_score(&self, reference: f64) -> f64 {
        z_from(self.mean - reference, self.stderr)
    }

    /// z-score of a proportion against its null standard error
    /// `sqrt(q (1 - q) / n)`, which stays meaningful when every trial agrees.
    pub fn binomial_z(&self, q: f64) -> f64 {
        z_from(self.mean - q, (q * (1.0 - q) / self.n as f64).sqrt())
    }
}

fn z_from(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff.abs() / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        xs.iter().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// Executes independent trials and returns their results in trial order.
pub trait TrialRunner {
    fn run<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialRunner for Sequential {
    fn run<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..trials).map(f).collect()
    }
}

/// Generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
    keyed_rng(key, trial)
}

fn keyed_rng(key: [u8; 32], trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

/// Unit-mean power fading sampler.
#[derive(Debug, Clone, Copy)]
enum PowerSampler {
    Unit,
    Exp,
    Erlang(u32),
    Gamma(Gamma<f64>, f64),
}

impl PowerSampler {
    fn new(f: Fading) -> Result<Self> {
        Ok(match f.normalized() {
            Fading::None => PowerSampler::Unit,
            Fading::Rayleigh => PowerSampler::Exp,
            Fading::Nakagami { m } if m.fract() == 0.0 && m <= 64.0 => PowerSampler::Erlang(m as u32),
            Fading::Nakagami { m } => {
                let g = Gamma::new(m, 1.0 / m).map_err(|_| Error::Numeric("gamma sampler"))?;
                PowerSampler::Gamma(g, m)
            }
        })
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            PowerSampler::Unit => 1.0,
            PowerSampler::Exp => Exp1.sample(rng),
            PowerSampler::Erlang(m) => {
                let s: f64 = (0..m).map(|_| -> f64 { Exp1.sample(rng) }).sum();
                s / m as f64
            }
            PowerSampler::Gamma(g, _) => g.sample(rng),
        }
    }

    /// `E[h^2]`.
    fn second_moment(&self) -> f64 {
        match *self {
            PowerSampler::Unit => 1.0,
            PowerSampler::Exp => 2.0,
            PowerSampler::Erlang(m) => 1.0 + 1.0 / m as f64,
            PowerSampler::Gamma(_, m) => 1.0 + 1.0 / m,
        }
    }
}

/// Simulation window and the mean interference added for what lies beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowPlan {
    /// Radius for Poisson networks; distance covered per side on lines.
    pub radius: f64,
    pub expected_points: f64,
    /// Mean interference from outside the window.
    pub far_mean: f64,
    /// Upper bound on the standard deviation of that interference.
    pub far_std: f64,
    /// Mean power of a typical nearest interferer.
    pub scale: f64,
}

impl WindowPlan {
    /// `far_std / scale`, the quantity held below `truncation_tol`.
    pub fn truncation_ratio(&self) -> f64 {
        if self.scale > 0.0 {
            self.far_std / self.scale
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone)]
enum Layout {
    Ppp {
        lambda: f64,
        c_d: f64,
        dim: u32,
        volume: f64,
    },
    /// Nodes at distances `spacing * i`, `i = 1..=n`, on `sides` sides,
    /// each active with probability `q`.
    Line { n: u64, spacing: f64, q: f64, sides: u32 },
    Fixed { distances: Vec<f64>, q: f64 },
}

/// Everything a trial needs; built once per simulation.
#[derive(Debug, Clone)]
struct Sampler {
    layout: Layout,
    path_loss: PathLoss,
    desired: PowerSampler,
    interferer: PowerSampler,
    far_mean: f64,
    key: [u8; 32],
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    sir: f64,
    active: u32,
}

/// `∫_R^∞ g(r)^k r^{d-1} dr` for the given path loss.
fn radial_tail(path_loss: PathLoss, k: f64, dim: u32, r: f64) -> Result<f64> {
    let d = dim as f64;
    match path_loss {
        PathLoss::PowerLaw { alpha } => {
            ensure(k * alpha > d, "alpha", alpha, "must exceed the dimension")?;
            Ok(r.powf(d - k * alpha) / (k * alpha - d))
        }
        PathLoss::Exponential { delta } => {
            // e^{-aR} sum_j (d-1)!/(d-1-j)! R^{d-1-j} / a^{j+1}
            let a = k * delta;
            let mut coef = 1.0;
            let mut sum = 0.0;
            for j in 0..dim {
                sum += coef * r.powi((dim - 1 - j) as i32) / a.powi(j as i32 + 1);
                coef *= (dim - 1 - j) as f64;
            }
            Ok((-a * r).exp() * sum)
        }
    }
}

/// `sum_{i > n} g(s i)^k`.
fn line_tail(path_loss: PathLoss, k: f64, spacing: f64, n: u64) -> Result<f64> {
    match path_loss {
        PathLoss::PowerLaw { alpha } => Ok(spacing.powf(-k * alpha) * zeta_tail(k * alpha, n)?),
        PathLoss::Exponential { delta } => {
            let x = (-k * delta * spacing).exp();
            Ok(x.powf((n + 1) as f64) / (1.0 - x))
        }
    }
}

/// Smallest `n` in `lo..` with `ok(n)`, assuming `ok` is monotone.
fn first_true<F: Fn(u64) -> Result<bool>>(lo: u64, limit: u64, ok: F) -> Result<Option<u64>> {
    let mut hi = lo.max(1);
    while !ok(hi)? {
        if hi >= limit {
            return Ok(None);
        }
        hi = (hi * 2).min(limit);
    }
    let mut lo = lo;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(hi))
}

/// Window and far-field compensation for `model` under `mac`.
pub fn plan_window(model: &NetworkModel, mac: &MacScheme, cfg: &SimConfig) -> Result<WindowPlan> {
    Ok(build_sampler(model, mac, cfg)?.1)
}

fn build_sampler(model: &NetworkModel, mac: &MacScheme, cfg: &SimConfig) -> Result<(Sampler, WindowPlan)> {
    model.validate()?;
    mac.validate()?;
    cfg.validate()?;
    let desired = PowerSampler::new(model.fading.desired)?;
    let interferer = PowerSampler::new(model.fading.interferer)?;
    let h2 = interferer.second_moment();
    let pl = model.path_loss;
    let tol = cfg.truncation_tol;
    let aloha = |what: &'static str| match mac.access {
        Access::Aloha { p } => Ok(p),
        Access::Tdma { .. } => Err(Error::Unsupported(what)),
    };
    let (layout, plan) = match &model.geometry {
        Geometry::Ppp { dim } => {
            let lambda = aloha("TDMA needs a regular line")?;
            let dim = *dim;
            let c_d = unit_ball_volume(dim)?;
            let dc = dim as f64 * c_d;
            if lambda == 0.0 {
                let plan = WindowPlan {
                    radius: 0.0,
                    expected_points: 0.0,
                    far_mean: 0.0,
                    far_std: 0.0,
                    scale: 0.0,
                };
                (
                    Layout::Ppp {
                        lambda,
                        c_d,
                        dim,
                        volume: 0.0,
                    },
                    plan,
                )
            } else {
                let r0 = (lambda * c_d).powf(-1.0 / dim as f64);
                let scale = pl.gain(r0);
                let std_at = |r: f64| -> Result<f64> { Ok((lambda * h2 * dc * radial_tail(pl, 2.0, dim, r)?).sqrt()) };
                let radius = match cfg.window {
                    Window::Radius(r) => r,
                    Window::Auto => {
                        let limit = (MAX_EXPECTED_POINTS / (lambda * c_d)).powf(1.0 / dim as f64);
                        // Search on a grid of r0/64 steps.
                        let step = r0 / 64.0;
                        let steps = (limit / step).ceil() as u64 + 1;
                        match first_true(1, steps, |k| Ok(std_at(k as f64 * step)? <= tol * scale))? {
                            Some(k) => k as f64 * step,
                            None => {
                                let mut r = limit;
                                while std_at(r)? > tol * scale && r.is_finite() {
                                    r *= 2.0;
                                }
                                return Err(Error::WindowTooLarge {
                                    required_radius: r,
                                    expected_points: lambda * c_d * r.powi(dim as i32),
                                });
                            }
                        }
                    }
                };
                let volume = c_d * radius.powi(dim as i32);
                let plan = WindowPlan {
                    radius,
                    expected_points: lambda * volume,
                    far_mean: lambda * dc * radial_tail(pl, 1.0, dim, radius)?,
                    far_std: std_at(radius)?,
                    scale,
                };
                (
                    Layout::Ppp {
                        lambda,
                        c_d,
                        dim,
                        volume,
                    },
                    plan,
                )
            }
        }
        Geometry::RegularLine { sided } => {
            let (q, spacing) = match mac.access {
                Access::Aloha { p } => (p, 1.0),
                Access::Tdma { m } => (1.0, m as f64),
            };
            let sides: u32 = match sided {
                Sided::One => 1,
                Sided::Two => 2,
            };
            let sf = sides as f64;
            let scale = pl.gain(spacing);
            let std_at = |n: u64| -> Result<f64> { Ok((sf * q * h2 * line_tail(pl, 2.0, spacing, n)?).sqrt()) };
            let limit = (MAX_EXPECTED_POINTS / sf) as u64;
            let n = match cfg.window {
                Window::Radius(r) => (r / spacing).floor() as u64,
                Window::Auto if q == 0.0 => 0,
                Window::Auto => match first_true(1, limit, |n| Ok(std_at(n)? <= tol * scale))? {
                    Some(n) => n,
                    None => {
                        return Err(Error::WindowTooLarge {
                            required_radius: f64::INFINITY,
                            expected_points: f64::INFINITY,
                        })
                    }
                },
            };
            let plan = WindowPlan {
                radius: n as f64 * spacing,
                expected_points: sf * q * n as f64,
                far_mean: sf * q * line_tail(pl, 1.0, spacing, n)?,
                far_std: std_at(n)?,
                scale,
            };
            (
                Layout::Line {
                    n,
                    spacing,
                    q,
                    sides,
                },
                plan,
            )
        }
        Geometry::Explicit { distances } => {
            let q = aloha("TDMA needs a regular line")?;
            let plan = fixed_plan(q, distances.len());
            (
                Layout::Fixed {
                    distances: distances.clone(),
                    q,
                },
                plan,
            )
        }
        Geometry::SingleInterferer { r } => {
            let q = aloha("TDMA needs a regular line")?;
            (
                Layout::Fixed {
                    distances: Vec::from([*r]),
                    q,
                },
                fixed_plan(q, 1),
            )
        }
    };
    let sampler = Sampler {
        layout,
        path_loss: pl,
        desired,
        interferer,
        far_mean: plan.far_mean,
        key: ChaCha8Rng::seed_from_u64(cfg.seed).get_seed(),
    };
    Ok((sampler, plan))
}

fn fixed_plan(q: f64, n: usize) -> WindowPlan {
    WindowPlan {
        radius: f64::INFINITY,
        expected_points: q * n as f64,
        far_mean: 0.0,
        far_std: 0.0,
        scale: 0.0,
    }
}

impl Sampler {
    fn trial(&self, index: u64) -> Trial {
        let mut rng = keyed_rng(self.key, index);
        let s = self.desired.sample(&mut rng);
        let mut interference = 0.0;
        let mut active = 0u32;
        match &self.layout {
            Layout::Ppp {
                lambda,
                c_d,
                dim,
                volume,
            } => {
                if *lambda > 0.0 {
                    // Volumes c_d r^d of the ordered points are Poisson arrivals.
                    let inv_dim = 1.0 / *dim as f64;
                    let mut v = 0.0;
                    loop {
                        let e: f64 = Exp1.sample(&mut rng);
                        v += e / lambda;
                        if v > *volume {
                            break;
                        }
                        let r = (v / c_d).powf(inv_dim);
                        interference += self.interferer.sample(&mut rng) * self.path_loss.gain(r);
                        active += 1;
                    }
                }
            }
            Layout::Line { n, spacing, q, sides } => {
                for _ in 0..*sides {
                    for i in 1..=*n {
                        if *q >= 1.0 || rng.random::<f64>() < *q {
                            let g = self.path_loss.gain(spacing * i as f64);
                            interference += self.interferer.sample(&mut rng) * g;
                            active += 1;
                        }
                    }
                }
            }
            Layout::Fixed { distances, q } => {
                for &r in distances {
                    if *q >= 1.0 || rng.random::<f64>() < *q {
                        interference += self.interferer.sample(&mut rng) * self.path_loss.gain(r);
                        active += 1;
                    }
                }
            }
        }
        let total = interference + self.far_mean;
        let sir = if total > 0.0 { s / total } else { f64::INFINITY };
        Trial { sir, active }
    }
}

/// Per-trial SIR samples of one simulation, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct SirSamples {
    pub sir: Vec<f64>,
    /// Active interferers inside the window, per trial.
    pub active: Vec<u32>,
    /// Trials with no interference at all (SIR = +inf).
    pub infinite: u64,
    /// Trials with no active interferer inside the window.
    pub empty: u64,
    pub plan: WindowPlan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityEstimate {
    pub estimate: Estimate,
    /// Samples with SIR above [`SIR_CAP`], infinite ones included.
    pub clipped: u64,
}

impl SirSamples {
    pub fn len(&self) -> usize {
        self.sir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sir.is_empty()
    }

    /// Estimate of `E f(SIR)`.
    pub fn mean_of<F: Fn(f64) -> f64>(&self, f: F) -> Estimate {
        let xs: Vec<f64> = self.sir.iter().map(|&s| f(s)).collect();
        Estimate::from_samples(&xs)
    }

    /// Estimate of `P(SIR > theta)`.
    pub fn ps(&self, theta: f64) -> Estimate {
        self.mean_of(|s| if s > theta { 1.0 } else { 0.0 })
    }

    pub fn ccdf(&self, thetas: &[f64]) -> Vec<Estimate> {
        thetas.iter().map(|&t| self.ps(t)).collect()
    }

    /// `E log(1 + min(SIR, SIR_CAP))`.
    pub fn capacity(&self) -> CapacityEstimate {
        let clipped = self.sir.iter().filter(|&&s| s > SIR_CAP).count() as u64;
        CapacityEstimate {
            estimate: self.mean_of(|s| s.min(SIR_CAP).ln_1p()),
            clipped,
        }
    }

    /// `SIR^exponent` for every sample.
    pub fn powered(&self, exponent: f64) -> Vec<f64> {
        self.sir.iter().map(|s| s.powf(exponent)).collect()
    }
}

/// Draws `cfg.trials` SIR samples.
pub fn simulate_sir_samples<R: TrialRunner>(
    model: &NetworkModel,
    mac: &MacScheme,
    cfg: &SimConfig,
    runner: &R,
) -> Result<SirSamples> {
    let (sampler, plan) = build_sampler(model, mac, cfg)?;
    let trials = runner.run(cfg.trials, |i| sampler.trial(i));
    let mut sir = Vec::with_capacity(trials.len());
    let mut active = Vec::with_capacity(trials.len());
    let mut infinite = 0;
    let mut empty = 0;
    for t in trials {
        infinite += u64::from(t.sir.is_infinite());
        empty += u64::from(t.active == 0);
        sir.push(t.sir);
        active.push(t.active);
    }
    Ok(SirSamples {
        sir,
        active,
        infinite,
        empty,
        plan,
    })
}

/// Estimate of `p_s(theta)` given that the desired pair is active.
pub fn simulate_ps<R: TrialRunner>(
    model: &NetworkModel,
    mac: &MacScheme,
    theta: f64,
    cfg: &SimConfig,
    runner: &R,
) -> Result<Estimate> {
    ensure(theta > 0.0 && theta.is_finite(), "theta", theta, "must be positive")?;
    Ok(simulate_sir_samples(model, mac, cfg, runner)?.ps(theta))
}

/// Default ALOHA probability for finite-difference contention estimates.
pub const P_PROBE: f64 = 1e-2;

/// `(1 - p_s(p_probe)) / p_probe` under ALOHA. Its expectation lies below
/// the true slope by at most [`gamma_bias_bound`].
pub fn estimate_gamma<R: TrialRunner>(
    model: &NetworkModel,
    theta: f64,
    cfg: &SimConfig,
    p_probe: f64,
    runner: &R,
) -> Result<Estimate> {
    check_probability(p_probe)?;
    ensure(p_probe > 0.0, "p_probe", p_probe, "must be positive")?;
    let ps = simulate_ps(model, &MacScheme::aloha(p_probe), theta, cfg, runner)?;
    let outage = Estimate::new(1.0 - ps.mean, ps.stderr, ps.n);
    Ok(outage.scaled(1.0 / p_probe))
}

/// `gamma^2 p / 2`, the second-order term separating the finite difference
/// from the slope at `p = 0`.
pub fn gamma_bias_bound(gamma: f64, p_probe: f64) -> f64 {
    gamma * gamma * p_probe / 2.0
}

pub fn estimate_capacity<R: TrialRunner>(
    model: &NetworkModel,
    mac: &MacScheme,
    cfg: &SimConfig,
    runner: &R,
) -> Result<CapacityEstimate> {
    Ok(simulate_sir_samples(model, mac, cfg, runner)?.capacity())
}

/// One-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    pub n: u64,
    pub p_value: f64,
}

impl KsTest {
    pub fn passes(&self, level: f64) -> bool {
        self.p_value > level
    }
}

/// KS test of `samples` against the continuous cdf `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsTest> {
    ensure(!samples.is_empty(), "samples", 0.0, "must not be empty")?;
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    let sn = n.sqrt();
    Ok(KsTest {
        statistic: d,
        n: xs.len() as u64,
        p_value: kolmogorov_q((sn + 0.12 + 0.11 / sn) * d),
    })
}

/// KS test against Exponential(`rate`).
pub fn ks_exponential(samples: &[f64], rate: f64) -> Result<KsTest> {
    ensure(rate > 0.0, "rate", rate, "must be positive")?;
    ks_test(samples, |x| if x <= 0.0 { 0.0 } else { -(-rate * x).exp_m1() })
}

/// Kolmogorov survival function `2 sum (-1)^{k-1} e^{-2 k^2 x^2}`.
pub fn kolmogorov_q(x: f64) -> f64 {
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += sign * term;
        if term < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
