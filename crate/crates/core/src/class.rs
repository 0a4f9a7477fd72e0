//! Catalog of analytically tractable network classes.
//!
//! A [`NetworkClass`] pairs a network description with its closed forms, so
//! sweeps, bound checks and simulations can treat every class alike.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::contention::{self, Alpha4Mode};
use crate::error::{ensure, Error, Result};
use crate::model::{
    check_probability, effective_distance, Access, ContentionResult, Fading, FadingCase, Geometry, NetworkModel,
    PathLoss, Sided,
};
use crate::outage::{self, SuccessProbability};
use crate::specfun::zeta;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum NetworkClass {
    /// Poisson network, Rayleigh desired link; interferers Rayleigh or
    /// non-fading (the latter only for `dim = 2`).
    Ppp { dim: u32, alpha: f64, interferers: Fading },
    /// Planar Poisson network with `alpha = 4` and no fading anywhere.
    PppNonfading,
    /// Planar Poisson network with path loss `exp(-delta r)`, Rayleigh fading.
    PppExponential { delta: f64 },
    /// Unit-spaced line, Rayleigh fading, ALOHA or TDMA.
    Line { alpha: f64, sided: Sided },
    /// Fixed interferer distances, Rayleigh desired link.
    Explicit {
        alpha: f64,
        distances: Vec<f64>,
        interferers: Fading,
    },
    /// One interferer at distance `r`.
    Single { alpha: f64, r: f64, fading: FadingCase },
}

impl NetworkClass {
    /// Network description for simulation.
    pub fn model(&self) -> Result<NetworkModel> {
        let power = |alpha| PathLoss::PowerLaw { alpha };
        match self {
            NetworkClass::Ppp { dim, alpha, interferers } => NetworkModel::new(
                Geometry::Ppp { dim: *dim },
                power(*alpha),
                FadingCase::new(Fading::Rayleigh, *interferers),
            ),
            NetworkClass::PppNonfading => NetworkModel::new(Geometry::Ppp { dim: 2 }, power(4.0), FadingCase::NONE),
            NetworkClass::PppExponential { delta } => NetworkModel::new(
                Geometry::Ppp { dim: 2 },
                PathLoss::Exponential { delta: *delta },
                FadingCase::RAYLEIGH,
            ),
            NetworkClass::Line { alpha, sided } => {
                NetworkModel::new(Geometry::RegularLine { sided: *sided }, power(*alpha), FadingCase::RAYLEIGH)
            }
            NetworkClass::Explicit {
                alpha,
                distances,
                interferers,
            } => NetworkModel::new(
                Geometry::Explicit {
                    distances: distances.clone(),
                },
                power(*alpha),
                FadingCase::new(Fading::Rayleigh, *interferers),
            ),
            NetworkClass::Single { alpha, r, fading } => {
                NetworkModel::new(Geometry::SingleInterferer { r: *r }, power(*alpha), *fading)
            }
        }
    }

    fn xis(&self, theta: f64) -> Result<Vec<f64>> {
        match self {
            NetworkClass::Explicit { alpha, distances, .. } => {
                distances.iter().map(|&r| effective_distance(r, *alpha, theta)).collect()
            }
            NetworkClass::Single { alpha, r, .. } => Ok(alloc::vec![effective_distance(*r, *alpha, theta)?]),
            _ => Ok(Vec::new()),
        }
    }

    /// Spatial contention for ALOHA. Explicit networks with non-fading
    /// interferers use the exact slope `sum (1 - exp(-1/xi))`.
    pub fn gamma(&self, theta: f64) -> Result<ContentionResult> {
        let gamma = match self {
            NetworkClass::Ppp { dim, alpha, interferers } => {
                return contention::gamma_ppp(*dim, *alpha, theta, *interferers)
            }
            NetworkClass::PppNonfading => contention::gamma_ppp_nonfading_alpha4(theta)?,
            NetworkClass::PppExponential { delta } => contention::gamma_exp_pathloss(*delta, theta)?,
            NetworkClass::Line { alpha, sided } => contention::gamma_line(*alpha, theta, *sided)?,
            NetworkClass::Explicit { interferers, .. } => {
                let xis = self.xis(theta)?;
                match interferers.normalized() {
                    Fading::None => xis
                        .iter()
                        .map(|&xi| contention::gamma_single(FadingCase::DESIRED_ONLY, xi))
                        .sum::<Result<f64>>()?,
                    f => contention::gamma_explicit(&xis, f)?,
                }
            }
            NetworkClass::Single { fading, .. } => {
                let xi = self.xis(theta)?[0];
                1.0 - outage::ps_single(*fading, xi, 1.0)?
            }
        };
        Ok(ContentionResult::new(gamma))
    }

    /// Success probability with its contention sandwich.
    pub fn ps(&self, theta: f64, access: Access) -> Result<SuccessProbability> {
        if let (NetworkClass::Line { alpha, sided }, Access::Tdma { m }) = (self, access) {
            let mut s = outage::ps_tdma_line(*alpha, theta, m, *sided)?;
            if s.value.is_none() {
                s.value = Some(outage::ps_line_rayleigh(*alpha, theta, access, *sided)?);
            }
            return Ok(s);
        }
        let p = match access {
            Access::Aloha { p } => p,
            Access::Tdma { .. } => return Err(Error::Unsupported("TDMA is defined on line networks only")),
        };
        check_probability(p)?;
        let gamma = self.gamma(theta)?.gamma;
        let value = match self {
            NetworkClass::Ppp { dim, alpha, interferers } => outage::ps_ppp(*dim, *alpha, theta, p, *interferers)?,
            NetworkClass::PppNonfading => outage::ps_ppp_nonfading_alpha4(theta, p)?,
            NetworkClass::PppExponential { delta } => outage::ps_exp_pathloss(*delta, theta, p)?,
            NetworkClass::Line { alpha, sided } => match (*alpha, *sided) {
                (2.0, Sided::One) => outage::ps_line_alpha2_aloha(theta, p)?,
                (4.0, Sided::One) => outage::ps_line_alpha4_aloha(theta, p)?,
                (a, s) => outage::ps_line_rayleigh(a, theta, access, s)?,
            },
            NetworkClass::Explicit { interferers, .. } => {
                let xis = self.xis(theta)?;
                match interferers.normalized() {
                    Fading::Rayleigh => return outage::ps_explicit(&xis, p),
                    Fading::None => xis.iter().map(|&xi| 1.0 - p * (-(-1.0 / xi).exp_m1())).product(),
                    _ => return Err(Error::Unsupported("Nakagami interferers in an explicit network")),
                }
            }
            NetworkClass::Single { fading, .. } => outage::ps_single(*fading, self.xis(theta)?[0], p)?,
        };
        Ok(SuccessProbability::with_sandwich(value.ln(), p, gamma))
    }

    /// True when the desired link is Rayleigh, the setting of the contention
    /// sandwich bounds.
    pub fn rayleigh_desired(&self) -> bool {
        match self {
            NetworkClass::PppNonfading => false,
            NetworkClass::Single { fading, .. } => fading.desired.normalized() == Fading::Rayleigh,
            _ => true,
        }
    }

    /// Short identifier used in reports.
    pub fn label(&self) -> alloc::string::String {
        use alloc::format;
        match self {
            NetworkClass::Ppp { dim, alpha, interferers } => {
                let f = if interferers.normalized() == Fading::None { "/nf" } else { "" };
                format!("ppp{dim}{f}:a{alpha}")
            }
            NetworkClass::PppNonfading => "ppp2-nofade:a4".into(),
            NetworkClass::PppExponential { delta } => format!("ppp2-exp:d{delta}"),
            NetworkClass::Line { alpha, sided } => {
                let s = if *sided == Sided::One { 1 } else { 2 };
                format!("line{s}:a{alpha}")
            }
            NetworkClass::Explicit { alpha, distances, .. } => format!("explicit{}:a{alpha}", distances.len()),
            NetworkClass::Single { alpha, r, fading } => format!("single{fading}:a{alpha}:r{r}"),
        }
    }
}

/// Parameters for evaluating the contention catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table3Params {
    pub alpha: f64,
    /// Interferer distances for the deterministic-placement rows.
    pub distances: Vec<f64>,
    /// Reuse factor for the TDMA row.
    pub m: u32,
}

impl Default for Table3Params {
    fn default() -> Self {
        Self {
            alpha: 4.0,
            distances: (1..=10).map(f64::from).collect(),
            m: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table3Row {
    pub uncertainty: (u8, u8, u8),
    pub formula: &'static str,
    pub dim: &'static str,
    pub remark: &'static str,
    /// `alpha` used by the row, or `None` when the row fixes it.
    pub fixed_alpha: Option<f64>,
}

/// The contention catalog: one entry per closed form, in display order.
pub const TABLE3: [Table3Row; 12] = [
    row((1, 1, 1), "2 pi theta^(1/a) csc(pi/a) / a", "1", "two-sided", None),
    row((1, 1, 1), "2 pi^2 theta^(2/a) csc(2pi/a) / a", "2", "", None),
    row((1, 1, 1), "pi^2 sqrt(theta) / 2", "2", "alpha = 4", Some(4.0)),
    row((1, 1, 1), "pi Gamma(1-2/a) theta^(2/a)", "2", "non-fading interferers", None),
    row((1, 1, 1), "pi^(3/2) sqrt(theta)", "2", "alpha = 4, non-fading interferers", Some(4.0)),
    row((1, 0, 1), "pi sqrt(theta)", "2", "no fading, alpha = 4", Some(4.0)),
    row((0, 1, 1), "sum 1/(1+xi_i)", "d", "deterministic placement", None),
    row((0, 1, 1), "pi sqrt(theta) coth(pi sqrt(theta))/2 - 1/2", "1", "one-sided line, alpha = 2", Some(2.0)),
    row((0, 1, 1), "~ pi theta^(1/4)/(2 sqrt 2) - 1/2", "1", "one-sided line, alpha = 4", Some(4.0)),
    row((0, 1, 1), "sum 1/xi_i", "d", "deterministic placement, non-fading interferers", None),
    row((0, 1, 1), "theta zeta(a)", "1", "line, non-fading interferers", None),
    row((0, 1, 0), "p_s >~ exp(-zeta(a) theta / m^a)", "1", "TDMA, one-sided line", None),
];

const fn row(
    uncertainty: (u8, u8, u8),
    formula: &'static str,
    dim: &'static str,
    remark: &'static str,
    fixed_alpha: Option<f64>,
) -> Table3Row {
    Table3Row {
        uncertainty,
        formula,
        dim,
        remark,
        fixed_alpha,
    }
}

/// Evaluates catalog row `index` at threshold `theta`. The TDMA row returns
/// its lower bound on `p_s`, every other row a contention value.
pub fn table3_value(index: usize, theta: f64, params: &Table3Params) -> Result<f64> {
    ensure(index < TABLE3.len(), "row", index as f64, "no such catalog row")?;
    let a = TABLE3[index].fixed_alpha.unwrap_or(params.alpha);
    let xis = || -> Result<Vec<f64>> {
        params.distances.iter().map(|&r| effective_distance(r, a, theta)).collect()
    };
    match index {
        0 => Ok(contention::gamma_ppp(1, a, theta, Fading::Rayleigh)?.gamma),
        1 | 2 => Ok(contention::gamma_ppp(2, a, theta, Fading::Rayleigh)?.gamma),
        3 | 4 => Ok(contention::gamma_ppp(2, a, theta, Fading::None)?.gamma),
        5 => contention::gamma_ppp_nonfading_alpha4(theta),
        6 => contention::gamma_explicit(&xis()?, Fading::Rayleigh),
        7 => contention::gamma_line_alpha2(theta),
        8 => contention::gamma_line_alpha4(theta, Alpha4Mode::Approx),
        9 => contention::gamma_explicit(&xis()?, Fading::None),
        10 => contention::gamma_tdma_line(a, theta),
        _ => {
            ensure(params.m >= 1, "m", params.m as f64, "must be at least 1")?;
            Ok((-zeta(a)? * theta / (params.m as f64).powf(a)).exp())
        }
    }
}

/// Closed-form check values for the catalog rows with a fixed exponent.
pub fn table3_special_case(index: usize, theta: f64) -> Option<f64> {
    match index {
        2 => Some(PI * PI * theta.sqrt() / 2.0),
        4 => Some(PI.powf(1.5) * theta.sqrt()),
        5 => Some(PI * theta.sqrt()),
        _ => None,
    }
}
