//! Analytic-versus-simulation sweep behind `sirnet validate`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sirnet_core::class::NetworkClass;
use sirnet_core::model::{Access, Fading, FadingCase, MacScheme, Sided};
use sirnet_core::montecarlo::{simulate_sir_samples, SimConfig, TrialRunner};

use crate::error::AppError;
use crate::report::ValidationRow;

pub const QUICK_TRIALS: u64 = 10_000;
pub const FULL_TRIALS: u64 = 100_000;
pub const THETAS: [f64; 3] = [0.1, 1.0, 10.0];
/// A simulated value passes when its z-score is below this.
pub const Z_LIMIT: f64 = 3.0;
/// Fraction of simulated values that must pass.
pub const PASS_FRACTION: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ppp,
    Line,
    Single,
    Explicit,
    Tdma,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Ppp, Family::Line, Family::Single, Family::Explicit, Family::Tdma];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ppp => "ppp",
            Family::Line => "line",
            Family::Single => "single",
            Family::Explicit => "explicit",
            Family::Tdma => "tdma",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| AppError::Usage(format!("unknown family {s:?}; expected ppp, line, single, explicit or tdma")))
    }
}

/// One simulated network, checked at every threshold in [`THETAS`].
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub family: Family,
    pub class: NetworkClass,
    pub mac: MacScheme,
}

pub fn mac_label(mac: &MacScheme) -> String {
    match mac.access {
        Access::Aloha { p } => format!("aloha:p{p}"),
        Access::Tdma { m } => format!("tdma:m{m}"),
    }
}

/// The sweep, in a fixed order.
pub fn cases(filter: Option<Family>) -> Vec<Case> {
    let mut out = Vec::new();
    let mut push = |family, class, mac| {
        if filter.is_none_or(|f| f == family) {
            out.push(Case { family, class, mac });
        }
    };
    let alphas = [2.0, 3.0, 4.0];
    for p in [0.05, 0.2, 0.5] {
        for dim in [1u32, 2] {
            for alpha in alphas.into_iter().filter(|&a| a > dim as f64) {
                let class = NetworkClass::Ppp {
                    dim,
                    alpha,
                    interferers: Fading::Rayleigh,
                };
                push(Family::Ppp, class, MacScheme::aloha(p));
            }
        }
        for sided in [Sided::One, Sided::Two] {
            for alpha in alphas {
                push(Family::Line, NetworkClass::Line { alpha, sided }, MacScheme::aloha(p));
            }
        }
    }
    for p in [0.5, 1.0] {
        for fading in [FadingCase::RAYLEIGH, FadingCase::DESIRED_ONLY, FadingCase::INTERFERERS_ONLY] {
            for alpha in alphas {
                let class = NetworkClass::Single { alpha, r: 1.2, fading };
                push(Family::Single, class, MacScheme::aloha(p));
            }
        }
    }
    for p in [0.1, 0.3, 0.6] {
        for interferers in [Fading::Rayleigh, Fading::None] {
            for alpha in alphas {
                let class = NetworkClass::Explicit {
                    alpha,
                    distances: vec![1.5, 2.0, 3.0, 5.0],
                    interferers,
                };
                push(Family::Explicit, class, MacScheme::aloha(p));
            }
        }
    }
    for sided in [Sided::One, Sided::Two] {
        for m in [1, 2, 4, 8] {
            for alpha in alphas {
                push(Family::Tdma, NetworkClass::Line { alpha, sided }, MacScheme::tdma(m));
            }
        }
    }
    out
}

/// Seed of case `index`, so cases draw independent streams.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<ValidationRow>,
    pub simulated: usize,
    pub z_passed: usize,
    pub bound_failures: usize,
}

impl Sweep {
    pub fn z_pass_fraction(&self) -> f64 {
        if self.simulated == 0 {
            1.0
        } else {
            self.z_passed as f64 / self.simulated as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.bound_failures == 0 && self.z_pass_fraction() >= PASS_FRACTION
    }
}

/// Simulates every case and compares `P(SIR > theta)` with the closed form
/// by its binomial z-score; also checks the bound orderings of each case.
pub fn run_sweep<R: TrialRunner>(cases: &[Case], trials: u64, seed: u64, runner: &R) -> Result<Sweep, AppError> {
    let mut rows = Vec::new();
    let (mut simulated, mut z_passed, mut bound_failures) = (0, 0, 0);
    for (index, case) in cases.iter().enumerate() {
        let cfg = SimConfig::new(trials, case_seed(seed, index));
        let model = case.class.model()?;
        let samples = simulate_sir_samples(&model, &case.mac, &cfg, runner)?;
        let class = case.class.label();
        let mac = mac_label(&case.mac);
        for theta in THETAS {
            let analytic = case.class.ps(theta, case.mac.access)?;
            let value = analytic.value.ok_or_else(|| AppError::Usage(format!("no value for {class}")))?;
            let est = samples.ps(theta);
            let z = est.binomial_z(value);
            let pass = z < Z_LIMIT;
            simulated += 1;
            z_passed += usize::from(pass);
            rows.push(ValidationRow {
                check: "ps",
                class: class.clone(),
                mac: mac.clone(),
                theta,
                analytic: value,
                estimate: Some(est.mean),
                stderr: Some(est.stderr),
                z: Some(z),
                pass,
            });
            let slack = 1e-12;
            let (check, ok) = match case.mac.access {
                Access::Tdma { .. } => {
                    let tight = analytic.tight_upper.unwrap_or(analytic.upper);
                    let ok = analytic.lower <= value + slack && value <= tight + slack && tight <= analytic.upper + slack;
                    ("tdma_bounds", ok)
                }
                Access::Aloha { .. } if case.class.rayleigh_desired() => {
                    let ok = analytic.lower <= value + slack && value <= analytic.upper + slack;
                    ("sandwich", ok)
                }
                Access::Aloha { .. } => continue,
            };
            bound_failures += usize::from(!ok);
            rows.push(ValidationRow {
                check,
                class: class.clone(),
                mac: mac.clone(),
                theta,
                analytic: value,
                estimate: None,
                stderr: None,
                z: None,
                pass: ok,
            });
        }
    }
    Ok(Sweep {
        rows,
        simulated,
        z_passed,
        bound_failures,
    })
}
