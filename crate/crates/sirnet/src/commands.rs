//! Subcommand implementations. Each writes one CSV report.

use std::io::Write;

use sirnet_core::capacity::{
    capacity_boost2_closed_form, ergodic_capacity_ppp, ergodic_capacity_ppp_high_sir, ergodic_capacity_ppp_lower,
    ergodic_capacity_tdma, spatial_capacity_opt, tdma_capacity_bounds,
};
use sirnet_core::class::{table3_special_case, table3_value, NetworkClass, Table3Params, TABLE3};
use sirnet_core::model::{Access, Duplex, Fading, FadingCase, MacScheme, SirThreshold};
use sirnet_core::montecarlo::{simulate_sir_samples, SimConfig};
use sirnet_core::throughput::{aloha_p_opt, optimize_rate, tdma_m_opt};

use crate::cli::{
    AccessArgs, CapacityArgs, ClassArgs, ContentionArgs, DuplexArg, OutageArgs, ReproduceArgs, SampleArgs, SimArgs,
    Target, ThetaArgs, ThroughputArgs, ValidateArgs,
};
use crate::config::Config;
use crate::error::AppError;
use crate::range::{parse_ints, parse_reals};
use crate::report::{
    AlohaRow, CatalogRow, Method, PppCapacityRow, RateRow, Report, ReportRow, SpatialRow, TdmaCapacityRow, TdmaRow,
};
use crate::runner::Rayon;
use crate::validate::{self, Family};

/// How a command finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ValidationFailed,
}

pub const DEFAULT_SEED: u64 = 0;
const DEFAULT_ALPHA: f64 = 4.0;

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn parse_fading(s: &str) -> Result<Fading, AppError> {
    let f = match s.trim() {
        "none" | "0" => Fading::None,
        "rayleigh" | "1" => Fading::Rayleigh,
        t => match t.strip_prefix('m').map(str::parse::<f64>) {
            Some(Ok(m)) => Fading::Nakagami { m },
            _ => return Err(usage(format!("fading {s:?} must be rayleigh, none or m<value>"))),
        },
    };
    f.validate()?;
    Ok(f.normalized())
}

impl ClassArgs {
    /// The class named on the command line, else the config's.
    pub fn resolve(&self, config: &Config) -> Result<NetworkClass, AppError> {
        let Some(name) = self.class.as_deref() else {
            return config
                .class
                .clone()
                .ok_or_else(|| usage("no network class: pass --class or a config with [class]"));
        };
        let alpha = self.alpha.unwrap_or(DEFAULT_ALPHA);
        let interferers = self.interferers.as_deref().map(parse_fading).transpose()?.unwrap_or(Fading::Rayleigh);
        let class = match name {
            "ppp2-nofade" => NetworkClass::PppNonfading,
            "ppp2-exp" => NetworkClass::PppExponential {
                delta: self.delta.ok_or_else(|| usage("ppp2-exp needs --delta"))?,
            },
            "line1" | "line2" => NetworkClass::Line {
                alpha,
                sided: if name == "line1" {
                    sirnet_core::model::Sided::One
                } else {
                    sirnet_core::model::Sided::Two
                },
            },
            "explicit" => NetworkClass::Explicit {
                alpha,
                distances: parse_reals(self.distances.as_deref().ok_or_else(|| usage("explicit needs --distances"))?)?,
                interferers,
            },
            "single" => {
                let fading: FadingCase = self.fading_case.as_deref().unwrap_or("1/1").parse()?;
                let r = match (self.xi, self.r) {
                    (Some(xi), _) => {
                        if !(xi.is_finite() && xi > 0.0) {
                            return Err(usage("--xi must be positive"));
                        }
                        xi.powf(1.0 / alpha)
                    }
                    (None, Some(r)) => r,
                    (None, None) => 1.0,
                };
                NetworkClass::Single { alpha, r, fading }
            }
            other => match other.strip_prefix("ppp").map(str::parse::<u32>) {
                Some(Ok(dim)) if dim >= 1 => NetworkClass::Ppp { dim, alpha, interferers },
                _ => {
                    return Err(usage(format!(
                        "unknown class {other:?}; expected ppp<d>, ppp2-nofade, ppp2-exp, line1, line2, explicit or single"
                    )))
                }
            },
        };
        // Surface domain errors (alpha, distances, fading) up front.
        class.model()?;
        Ok(class)
    }
}

impl ThetaArgs {
    /// Linear thresholds; the config's, else `[1]`, when no flag is given.
    pub fn resolve(&self, config: &Config) -> Result<Vec<f64>, AppError> {
        let thetas = match (&self.theta, &self.theta_db) {
            (Some(t), _) => parse_reals(t)?,
            (None, Some(db)) => parse_reals(db)?
                .into_iter()
                .map(|d| SirThreshold::from_db(d).map(SirThreshold::linear))
                .collect::<Result<_, _>>()?,
            (None, None) if !config.theta.is_empty() => config.theta.clone(),
            (None, None) => vec![1.0],
        };
        for &t in &thetas {
            SirThreshold::new(t)?;
        }
        Ok(thetas)
    }
}

impl ThetaArgs {
    /// Thresholds paired with their dB values, exact when given in dB.
    pub fn resolve_with_db(&self, config: &Config) -> Result<Vec<(f64, f64)>, AppError> {
        if self.theta.is_none() {
            if let Some(db) = &self.theta_db {
                return parse_reals(db)?
                    .into_iter()
                    .map(|d| Ok((SirThreshold::from_db(d)?.linear(), d)))
                    .collect();
            }
        }
        Ok(self.resolve(config)?.into_iter().map(|t| (t, 10.0 * t.log10())).collect())
    }
}

impl AccessArgs {
    pub fn resolve(&self, config: &Config) -> Result<MacScheme, AppError> {
        let mac = match (self.p, self.m) {
            (Some(p), _) => MacScheme::aloha(p),
            (None, Some(m)) => MacScheme::tdma(m),
            (None, None) => config.mac.unwrap_or(MacScheme::aloha(1.0)),
        };
        mac.validate()?;
        Ok(mac)
    }
}

impl SimArgs {
    pub fn resolve(&self, config: &Config, default_trials: u64) -> SimConfig {
        let mut sim = config.sim.clone().unwrap_or_else(|| SimConfig::new(default_trials, DEFAULT_SEED));
        if let Some(t) = self.trials {
            sim.trials = t;
        }
        if let Some(s) = self.seed {
            sim.seed = s;
        }
        sim
    }
}

fn duplexes(arg: Option<DuplexArg>) -> Vec<Duplex> {
    match arg {
        Some(DuplexArg::Full) => vec![Duplex::Full],
        Some(DuplexArg::Half) => vec![Duplex::Half],
        None => vec![Duplex::Full, Duplex::Half],
    }
}

fn duplex_name(d: Duplex) -> &'static str {
    match d {
        Duplex::Full => "full",
        Duplex::Half => "half",
    }
}

fn class_alpha(class: &NetworkClass) -> Option<f64> {
    match class {
        NetworkClass::Ppp { alpha, .. }
        | NetworkClass::Line { alpha, .. }
        | NetworkClass::Explicit { alpha, .. }
        | NetworkClass::Single { alpha, .. } => Some(*alpha),
        NetworkClass::PppNonfading => Some(4.0),
        NetworkClass::PppExponential { .. } => None,
    }
}

pub fn contention<W: Write>(args: &ContentionArgs, config: &Config, out: W) -> Result<Outcome, AppError> {
    if args.table3 {
        let thetas = args.theta.resolve(config)?;
        let params = Table3Params {
            alpha: args.class.alpha.unwrap_or(DEFAULT_ALPHA),
            m: args.m,
            ..Table3Params::default()
        };
        return table3(&thetas, &params, out);
    }
    let class = args.class.resolve(config)?;
    let thetas = args.theta.resolve(config)?;
    let label = class.label();
    let mut report = Report::new(out, "report", &[])?;
    for theta in thetas {
        let g = class.gamma(theta)?;
        let note = if g.conjectured { "conjectured" } else { "" };
        for (quantity, value) in [("gamma", g.gamma), ("sigma", g.sigma)] {
            let mut row = ReportRow::new(quantity, label.clone(), value, Method::ClosedForm);
            row.alpha = class_alpha(&class);
            row.theta = Some(theta);
            row.note = note.into();
            report.row(&row)?;
        }
    }
    report.finish()?;
    Ok(Outcome::Success)
}

fn table3<W: Write>(thetas: &[f64], params: &Table3Params, out: W) -> Result<Outcome, AppError> {
    let mut report = Report::new(out, "catalog", &[])?;
    for (index, row) in TABLE3.iter().enumerate() {
        let alpha = row.fixed_alpha.unwrap_or(params.alpha);
        for &theta in thetas {
            let (u_l, u_f, u_a) = row.uncertainty;
            report.row(&CatalogRow {
                row: index,
                u_l,
                u_f,
                u_a,
                dim: row.dim,
                formula: row.formula,
                remark: row.remark,
                alpha,
                theta,
                theta_db: 10.0 * theta.log10(),
                value: table3_value(index, theta, params)?,
                check: table3_special_case(index, theta),
            })?;
        }
    }
    report.finish()?;
    Ok(Outcome::Success)
}

pub fn outage<W: Write>(args: &OutageArgs, config: &Config, out: W) -> Result<Outcome, AppError> {
    let class = args.class.resolve(config)?;
    let thetas = args.theta.resolve(config)?;
    let mac = args.access.resolve(config)?;
    let label = class.label();
    let (p, m) = match mac.access {
        Access::Aloha { p } => (Some(p), None),
        Access::Tdma { m } => (None, Some(m)),
    };
    let sim = args.sim.resolve(config, validate::FULL_TRIALS);
    let meta = if args.validate {
        vec![("seed", sim.seed.to_string()), ("trials", sim.trials.to_string())]
    } else {
        vec![]
    };
    let samples = if args.validate {
        let runner = Rayon::new(args.sim.workers)?;
        Some(simulate_sir_samples(&class.model()?, &mac, &sim, &runner)?)
    } else {
        None
    };
    let mut report = Report::new(out, "report", &meta)?;
    for theta in thetas {
        let s = class.ps(theta, mac.access)?;
        let base = |quantity, value, method| {
            let mut row = ReportRow::new(quantity, label.clone(), value, method);
            row.alpha = class_alpha(&class);
            row.theta = Some(theta);
            row.p = p;
            row.m = m;
            row
        };
        let method = if s.value.is_some() { Method::ClosedForm } else { Method::Bound };
        let mut row = base("ps", s.value.unwrap_or(f64::NAN), method);
        row.value = s.value;
        row.lower = Some(s.lower);
        row.upper = Some(s.tight_upper.unwrap_or(s.upper));
        if s.underflow {
            row.note = "underflow".into();
        }
        report.row(&row)?;
        if let (Some(samples), Some(v)) = (&samples, s.value) {
            let est = samples.ps(theta);
            let mut mc = base("ps", est.mean, Method::MonteCarlo);
            mc.stderr = Some(est.stderr);
            mc.z = Some(est.binomial_z(v));
            report.row(&mc)?;
        }
    }
    report.finish()?;
    Ok(Outcome::Success)
}

pub fn throughput<W: Write>(args: &ThroughputArgs, config: &Config, out: W) -> Result<Outcome, AppError> {
    if args.tdma {
        let alpha = args.class.alpha.unwrap_or(2.0);
        let thetas = args.theta.resolve_with_db(config)?;
        let mut report = Report::new(out, "tdma", &[])?;
        for (theta, db) in thetas {
            tdma_row(&mut report, alpha, theta, db)?;
        }
        report.finish()?;
        return Ok(Outcome::Success);
    }
    if args.rate {
        let alphas = match (args.class.alpha, &args.alphas) {
            (Some(a), _) => vec![a],
            (None, Some(list)) => parse_reals(list)?,
            (None, None) => parse_reals("2.5:0.5:5")?,
        };
        let mut report = Report::new(out, "rate", &[])?;
        for alpha in alphas {
            for duplex in duplexes(args.duplex) {
                rate_row(&mut report, alpha, args.dim, duplex, args.c)?;
            }
        }
        report.finish()?;
        return Ok(Outcome::Success);
    }
    let class = args.class.resolve(config)?;
    let thetas = args.theta.resolve(config)?;
    let mut report = Report::new(out, "aloha", &[])?;
    for theta in thetas {
        let gamma = class.gamma(theta)?.gamma;
        for duplex in duplexes(args.duplex) {
            let opt = aloha_p_opt(gamma, duplex)?;
            report.row(&AlohaRow {
                class: class.label(),
                theta,
                duplex: duplex_name(duplex),
                gamma,
                p_opt: opt.p_opt,
                value: opt.value,
                lower_bound: opt.lower_bound,
            })?;
        }
    }
    report.finish()?;
    Ok(Outcome::Success)
}

fn tdma_row<W: Write>(report: &mut Report<W>, alpha: f64, theta: f64, theta_db: f64) -> Result<(), AppError> {
    let o = tdma_m_opt(alpha, theta)?;
    report.row(&TdmaRow {
        theta_db,
        m_lower: o.m_lower,
        m_upper: o.m_upper,
        m_hat: o.m_hat,
        m_exact: o.m_exact,
        p_t: o.throughput_exact,
        p_t_hat: o.throughput_hat,
        ps_exact: o.ps_exact,
        alpha,
    })
}

fn rate_row<W: Write>(report: &mut Report<W>, alpha: f64, dim: u32, duplex: Duplex, c: Option<f64>) -> Result<(), AppError> {
    let o = optimize_rate(alpha, dim, duplex, c)?;
    report.row(&RateRow {
        alpha,
        dim,
        duplex: duplex_name(duplex),
        theta_opt: o.theta_opt,
        theta_opt_db: 10.0 * o.theta_opt.log10(),
        p_opt: o.p_opt,
        t_max: o.t_max,
    })
}

pub fn capacity<W: Write>(args: &CapacityArgs, out: W) -> Result<Outcome, AppError> {
    let alphas = parse_reals(&args.alpha)?;
    if args.tdma {
        let ms = parse_ints(&args.m)?;
        let mut report = Report::new(out, "capacity-tdma", &[])?;
        for alpha in alphas {
            for &m in &ms {
                tdma_capacity_row(&mut report, alpha, m)?;
            }
        }
        report.finish()?;
    } else if args.spatial {
        let mut report = Report::new(out, "spatial", &[])?;
        for alpha in alphas {
            for duplex in duplexes(args.duplex) {
                let s = spatial_capacity_opt(alpha, duplex)?;
                report.row(&SpatialRow {
                    alpha,
                    duplex: duplex_name(duplex),
                    p_opt: s.p_opt,
                    value: s.value,
                })?;
            }
        }
        report.finish()?;
    } else {
        let ps = parse_reals(&args.p)?;
        let mut report = Report::new(out, "capacity-ppp", &[])?;
        for alpha in alphas {
            for &p in &ps {
                ppp_capacity_row(&mut report, alpha, args.dim, p)?;
            }
        }
        report.finish()?;
    }
    Ok(Outcome::Success)
}

fn tdma_capacity_row<W: Write>(report: &mut Report<W>, alpha: f64, m: u32) -> Result<(), AppError> {
    let c = ergodic_capacity_tdma(alpha, m)?;
    let b = tdma_capacity_bounds(alpha, m)?;
    report.row(&TdmaCapacityRow {
        alpha,
        m,
        capacity: c.value,
        per_m: c.value / m as f64,
        lower: b.lower.value,
        log_lower: b.log_lower.map(|r| r.value),
        upper: b.upper.map(|r| r.value),
    })
}

fn ppp_capacity_row<W: Write>(report: &mut Report<W>, alpha: f64, dim: u32, p: f64) -> Result<(), AppError> {
    let c = ergodic_capacity_ppp(dim, alpha, p)?;
    let boost = alpha / dim as f64;
    let closed = if boost == 2.0 {
        Some(capacity_boost2_closed_form(c.c_p)?.value)
    } else {
        None
    };
    let (lower, high) = if dim == 2 {
        (
            Some(ergodic_capacity_ppp_lower(alpha, p)?.value),
            Some(ergodic_capacity_ppp_high_sir(alpha, p)?.value),
        )
    } else {
        (None, None)
    };
    report.row(&PppCapacityRow {
        alpha,
        dim,
        p,
        c_p: c.c_p,
        capacity: c.value,
        closed_form: closed,
        lower,
        high_sir: high,
    })
}

pub fn validate<W: Write>(args: &ValidateArgs, config: &Config, out: W) -> Result<Outcome, AppError> {
    let default_trials = if args.quick {
        validate::QUICK_TRIALS
    } else {
        validate::FULL_TRIALS
    };
    let mut sim = args.sim.resolve(config, default_trials);
    if args.quick || args.full {
        sim.trials = args.sim.trials.unwrap_or(default_trials);
    }
    let filter = args.class.as_deref().map(str::parse::<Family>).transpose()?;
    let cases = validate::cases(filter);
    let runner = Rayon::new(args.sim.workers)?;
    let sweep = validate::run_sweep(&cases, sim.trials, sim.seed, &runner)?;
    let meta = [("seed", sim.seed.to_string()), ("trials", sim.trials.to_string())];
    let mut report = Report::new(out, "validation", &meta)?;
    for row in &sweep.rows {
        report.row(row)?;
    }
    report.finish()?;
    eprintln!(
        "validate: {}/{} simulated values within z < {}, {} bound violations",
        sweep.z_passed,
        sweep.simulated,
        validate::Z_LIMIT,
        sweep.bound_failures
    );
    if sweep.passed() {
        Ok(Outcome::Success)
    } else {
        for row in sweep.rows.iter().filter(|r| !r.pass) {
            eprintln!(
                "FAIL {} {} {} theta={} analytic={} estimate={:?} z={:?}",
                row.check, row.class, row.mac, row.theta, row.analytic, row.estimate, row.z
            );
        }
        Ok(Outcome::ValidationFailed)
    }
}

pub fn sample<W: Write>(args: &SampleArgs, config: &Config, mut out: W) -> Result<Outcome, AppError> {
    let class = args.class.resolve(config)?;
    let mac = args.access.resolve(config)?;
    let sim = args.sim.resolve(config, validate::QUICK_TRIALS);
    let runner = Rayon::new(args.sim.workers)?;
    let samples = simulate_sir_samples(&class.model()?, &mac, &sim, &runner)?;
    let canonical = Config {
        theta: Vec::new(),
        class: Some(class),
        mac: Some(mac),
        sim: Some(sim.clone()),
    };
    writeln!(out, "# sirnet sir-samples v{}", crate::report::SCHEMA_VERSION)?;
    writeln!(out, "# config={}", canonical.hash())?;
    writeln!(out, "# seed={} trials={} infinite={}", sim.seed, sim.trials, samples.infinite)?;
    for s in &samples.sir {
        writeln!(out, "{s}")?;
    }
    out.flush()?;
    Ok(Outcome::Success)
}

pub fn reproduce<W: Write>(args: &ReproduceArgs, out: W) -> Result<Outcome, AppError> {
    let db_grid = |a: &str| -> Result<Vec<(f64, f64)>, AppError> {
        parse_reals(a)?
            .into_iter()
            .map(|d| Ok((SirThreshold::from_db(d)?.linear(), d)))
            .collect()
    };
    match args.target {
        Target::Table3 => {
            let thetas: Vec<f64> = db_grid("-10:5:20")?.into_iter().map(|(t, _)| t).collect();
            table3(&thetas, &Table3Params::default(), out)
        }
        Target::MValues => {
            let mut report = Report::new(out, "tdma", &[])?;
            for alpha in [2.0, 4.0] {
                for (theta, db) in db_grid("0:1:20")? {
                    tdma_row(&mut report, alpha, theta, db)?;
                }
            }
            report.finish()?;
            Ok(Outcome::Success)
        }
        Target::MaxThru => {
            let mut report = Report::new(out, "rate", &[])?;
            for alpha in parse_reals("2.5:0.25:5")? {
                for duplex in [Duplex::Full, Duplex::Half] {
                    rate_row(&mut report, alpha, 2, duplex, None)?;
                }
            }
            report.finish()?;
            Ok(Outcome::Success)
        }
        Target::ErgCapacity => {
            let mut report = Report::new(out, "capacity-ppp", &[])?;
            let ps: Vec<f64> = (0..=30).map(|k| 10f64.powf(-3.0 + k as f64 / 10.0)).collect();
            for alpha in [2.5, 3.0, 4.0, 5.0] {
                for &p in &ps {
                    ppp_capacity_row(&mut report, alpha, 2, p)?;
                }
            }
            report.finish()?;
            Ok(Outcome::Success)
        }
        Target::CapTdma => {
            let mut report = Report::new(out, "capacity-tdma", &[])?;
            for alpha in [2.0, 4.0] {
                for m in 1..=10 {
                    tdma_capacity_row(&mut report, alpha, m)?;
                }
            }
            report.finish()?;
            Ok(Outcome::Success)
        }
    }
}
