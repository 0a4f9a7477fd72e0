//! Network descriptions shared by the analytic and simulation modules.
//!
//! A network is a [`NetworkModel`] (where the interferers are, how power
//! decays, what fades) plus a [`MacScheme`] (who transmits in a slot). The
//! desired link always has length 1, Poisson networks have intensity 1 and
//! line networks have spacing 1.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // inherent when std is in the build graph
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// Coordinates of a network in the unit cube of location, fading and access
/// randomness. Descriptive metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyPoint {
    pub u_l: f64,
    pub u_f: f64,
    pub u_a: f64,
}

impl UncertaintyPoint {
    pub fn new(u_l: f64, u_f: f64, u_a: f64) -> Result<Self> {
        for (name, v) in [("u_l", u_l), ("u_f", u_f), ("u_a", u_a)] {
            ensure((0.0..=1.0).contains(&v), name, v, "must lie in [0, 1]")?;
        }
        Ok(Self { u_l, u_f, u_a })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathLoss {
    /// Received power `r^-alpha`.
    PowerLaw { alpha: f64 },
    /// Received power `exp(-delta r)`.
    Exponential { delta: f64 },
}

impl PathLoss {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PathLoss::PowerLaw { alpha } => ensure(alpha > 0.0 && alpha.is_finite(), "alpha", alpha, "must be positive"),
            PathLoss::Exponential { delta } => {
                ensure(delta > 0.0 && delta.is_finite(), "delta", delta, "must be positive")
            }
        }
    }

    /// Mean received power at distance `r`.
    pub fn gain(&self, r: f64) -> f64 {
        match *self {
            PathLoss::PowerLaw { alpha } => r.powf(-alpha),
            PathLoss::Exponential { delta } => (-delta * r).exp(),
        }
    }
}

/// Power fading of one link, normalized to unit mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fading {
    None,
    Rayleigh,
    /// Nakagami-m amplitude, i.e. Gamma(m, 1/m) power. `m = 1` is Rayleigh.
    Nakagami { m: f64 },
}

impl Fading {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Fading::Nakagami { m } => ensure(m >= 0.5 && m.is_finite(), "m", m, "Nakagami m must be >= 0.5"),
            _ => Ok(()),
        }
    }

    /// Canonical form: `Nakagami { m: 1 }` becomes `Rayleigh`.
    pub fn normalized(self) -> Self {
        match self {
            Fading::Nakagami { m: 1.0 } => Fading::Rayleigh,
            f => f,
        }
    }

    /// Fading coordinate of the uncertainty cube: 0, 1, or `1/m`.
    pub fn figure(&self) -> f64 {
        match *self {
            Fading::None => 0.0,
            Fading::Rayleigh => 1.0,
            Fading::Nakagami { m } => 1.0 / m,
        }
    }
}

/// Fading of the desired link and of the interfering links, written
/// `desired/interferer` with `1` for Rayleigh and `0` for none.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingCase {
    pub desired: Fading,
    pub interferer: Fading,
}

impl FadingCase {
    pub const RAYLEIGH: Self = Self::new(Fading::Rayleigh, Fading::Rayleigh);
    pub const DESIRED_ONLY: Self = Self::new(Fading::Rayleigh, Fading::None);
    pub const INTERFERERS_ONLY: Self = Self::new(Fading::None, Fading::Rayleigh);
    pub const NONE: Self = Self::new(Fading::None, Fading::None);

    pub const fn new(desired: Fading, interferer: Fading) -> Self {
        Self { desired, interferer }
    }

    pub fn validate(&self) -> Result<()> {
        self.desired.validate()?;
        self.interferer.validate()
    }

    pub fn normalized(self) -> Self {
        Self::new(self.desired.normalized(), self.interferer.normalized())
    }
}

impl fmt::Display for FadingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part(x: Fading, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x.normalized() {
                Fading::None => f.write_str("0"),
                Fading::Rayleigh => f.write_str("1"),
                Fading::Nakagami { m } => write!(f, "m{m}"),
            }
        }
        part(self.desired, f)?;
        f.write_str("/")?;
        part(self.interferer, f)
    }
}

impl FromStr for FadingCase {
    type Err = Error;

    /// Parses `1/1`, `1/0`, `0/1`, `0/0`, with `m<value>` for Nakagami.
    fn from_str(s: &str) -> Result<Self> {
        fn part(s: &str) -> Result<Fading> {
            let f = match s.trim() {
                "0" => Fading::None,
                "1" => Fading::Rayleigh,
                t => match t.strip_prefix('m').map(str::parse::<f64>) {
                    Some(Ok(m)) => Fading::Nakagami { m },
                    _ => return Err(Error::Unsupported("fading must be 0, 1 or m<value>")),
                },
            };
            f.validate()?;
            Ok(f.normalized())
        }
        let (d, i) = s
            .split_once('/')
            .ok_or(Error::Unsupported("fading case must look like desired/interferer"))?;
        Ok(Self::new(part(d)?, part(i)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sided {
    /// Interferers at distances `1, 2, 3, ...` on one side of the receiver.
    One,
    /// Interferers on both sides.
    Two,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    /// Unit-intensity Poisson point process in `dim` dimensions.
    Ppp { dim: u32 },
    /// Unit-spaced regular line with the receiver at the origin.
    RegularLine { sided: Sided },
    /// Fixed interferer distances from the receiver.
    Explicit { distances: Vec<f64> },
    SingleInterferer { r: f64 },
}

impl Geometry {
    pub fn validate(&self) -> Result<()> {
        match self {
            Geometry::Ppp { dim } => ensure(*dim >= 1, "dim", *dim as f64, "must be at least 1"),
            Geometry::RegularLine { .. } => Ok(()),
            Geometry::Explicit { distances } => distances.iter().try_for_each(|&r| {
                ensure(r > 0.0 && r.is_finite(), "distance", r, "must be positive and finite")
            }),
            Geometry::SingleInterferer { r } => ensure(*r > 0.0 && r.is_finite(), "r", *r, "must be positive and finite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Duplex {
    /// The receiver listens in every slot.
    Full,
    /// A node either transmits or listens.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Access {
    /// Each node transmits independently with probability `p`.
    Aloha { p: f64 },
    /// Every `m`-th node of a line transmits.
    Tdma { m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacScheme {
    pub access: Access,
    pub duplex: Duplex,
}

impl MacScheme {
    pub fn aloha(p: f64) -> Self {
        Self {
            access: Access::Aloha { p },
            duplex: Duplex::Full,
        }
    }

    pub fn tdma(m: u32) -> Self {
        Self {
            access: Access::Tdma { m },
            duplex: Duplex::Full,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.access {
            Access::Aloha { p } => check_probability(p),
            Access::Tdma { m } => ensure(m >= 1, "m", m as f64, "reuse factor must be at least 1"),
        }
    }
}

/// Linear SIR threshold.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SirThreshold(f64);

impl SirThreshold {
    pub fn new(theta: f64) -> Result<Self> {
        ensure(theta > 0.0 && theta.is_finite(), "theta", theta, "must be positive")?;
        Ok(Self(theta))
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(libm::pow(10.0, db / 10.0))
    }

    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContentionResult {
    /// Spatial contention: slope of the outage probability in `p` at `p = 0`.
    pub gamma: f64,
    /// Spatial efficiency `1 / gamma`, infinite when `gamma = 0`.
    pub sigma: f64,
    /// Set when the formula is only conjectured (Poisson networks with `d >= 3`).
    pub conjectured: bool,
}

impl ContentionResult {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            sigma: if gamma == 0.0 { f64::INFINITY } else { 1.0 / gamma },
            conjectured: false,
        }
    }

    pub fn conjectured(mut self, flag: bool) -> Self {
        self.conjectured = flag;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    pub geometry: Geometry,
    pub path_loss: PathLoss,
    pub fading: FadingCase,
}

impl NetworkModel {
    pub fn new(geometry: Geometry, path_loss: PathLoss, fading: FadingCase) -> Result<Self> {
        let model = Self {
            geometry,
            path_loss,
            fading: fading.normalized(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.path_loss.validate()?;
        self.fading.validate()?;
        if let (Geometry::Ppp { dim }, PathLoss::PowerLaw { alpha }) = (&self.geometry, self.path_loss) {
            ensure(alpha > *dim as f64, "alpha", alpha, "must exceed the dimension")?;
        }
        if let (Geometry::RegularLine { .. }, PathLoss::PowerLaw { alpha }) = (&self.geometry, self.path_loss) {
            ensure(alpha > 1.0, "alpha", alpha, "must exceed 1 on a line")?;
        }
        Ok(())
    }

    pub fn uncertainty(&self, mac: &MacScheme) -> UncertaintyPoint {
        let u_l = if matches!(self.geometry, Geometry::Ppp { .. }) { 1.0 } else { 0.0 };
        let u_f = self.fading.desired.figure().max(self.fading.interferer.figure());
        let u_a = if matches!(mac.access, Access::Aloha { .. }) { 1.0 } else { 0.0 };
        UncertaintyPoint {
            u_l,
            u_f: u_f.min(1.0),
            u_a,
        }
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    ensure((0.0..=1.0).contains(&p), "p", p, "must be a probability")
}

/// `xi = r^alpha / theta`, the distance through which an interferer enters
/// every single-link formula.
pub fn effective_distance(r: f64, alpha: f64, theta: f64) -> Result<f64> {
    ensure(r > 0.0, "r", r, "must be positive")?;
    ensure(alpha > 0.0, "alpha", alpha, "must be positive")?;
    ensure(theta > 0.0, "theta", theta, "must be positive")?;
    Ok(r.powf(alpha) / theta)
}

/// Volume of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: u32) -> Result<f64> {
    ensure(d >= 1, "d", d as f64, "must be at least 1")?;
    // c_d = c_{d-2} 2 pi / d, exact in the low dimensions.
    let mut v = if d % 2 == 1 { 2.0 } else { core::f64::consts::PI };
    let mut k = 4 - d % 2;
    while k <= d {
        v *= 2.0 * core::f64::consts::PI / k as f64;
        k += 2;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use core::f64::consts::PI;

    #[test]
    fn effective_distance_examples() {
        assert_eq!(effective_distance(1.0, 4.0, 1.0).unwrap(), 1.0);
        assert!((effective_distance(2.0, 4.0, 10.0).unwrap() - 1.6).abs() < 1e-15);
        assert_eq!(effective_distance(2.0, 2.0, 4.0).unwrap(), 1.0);
        assert!(effective_distance(0.0, 2.0, 1.0).is_err());
        assert!(effective_distance(1.0, 2.0, -1.0).is_err());
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1).unwrap() - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2).unwrap() - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!(unit_ball_volume(0).is_err());
        for d in 1..12u32 {
            let half = d as f64 / 2.0;
            let gamma_form = PI.powf(half) / crate::specfun::gamma_fn(1.0 + half).unwrap();
            assert!((unit_ball_volume(d).unwrap() / gamma_form - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn fading_case_parsing() {
        for s in ["1/1", "1/0", "0/1", "0/0"] {
            assert_eq!(s.parse::<FadingCase>().unwrap().to_string(), s);
        }
        let c: FadingCase = "1/m1".parse().unwrap();
        assert_eq!(c, FadingCase::RAYLEIGH);
        let c: FadingCase = "m2.5/1".parse().unwrap();
        assert_eq!(c.desired, Fading::Nakagami { m: 2.5 });
        assert!("1/m0.2".parse::<FadingCase>().is_err());
        assert!("11".parse::<FadingCase>().is_err());
    }

    #[test]
    fn uncertainty_corners() {
        let m = NetworkModel::new(Geometry::Ppp { dim: 2 }, PathLoss::PowerLaw { alpha: 4.0 }, FadingCase::RAYLEIGH)
            .unwrap();
        let u = m.uncertainty(&MacScheme::aloha(0.1));
        assert_eq!((u.u_l, u.u_f, u.u_a), (1.0, 1.0, 1.0));
        let m = NetworkModel::new(
            Geometry::RegularLine { sided: Sided::One },
            PathLoss::PowerLaw { alpha: 2.0 },
            FadingCase::new(Fading::Nakagami { m: 4.0 }, Fading::None),
        )
        .unwrap();
        let u = m.uncertainty(&MacScheme::tdma(2));
        assert_eq!((u.u_l, u.u_f, u.u_a), (0.0, 0.25, 0.0));
    }

    #[test]
    fn rejects_bad_models() {
        let ppp = Geometry::Ppp { dim: 2 };
        assert!(NetworkModel::new(ppp.clone(), PathLoss::PowerLaw { alpha: 2.0 }, FadingCase::RAYLEIGH).is_err());
        assert!(NetworkModel::new(
            Geometry::Explicit {
                distances: alloc::vec![1.0, -2.0]
            },
            PathLoss::PowerLaw { alpha: 3.0 },
            FadingCase::RAYLEIGH
        )
        .is_err());
        assert!(MacScheme::aloha(1.5).validate().is_err());
        assert!(MacScheme::tdma(0).validate().is_err());
        assert!(UncertaintyPoint::new(0.5, 1.2, 0.0).is_err());
    }

    #[test]
    fn threshold_db_round_trip() {
        let t = SirThreshold::from_db(10.0).unwrap();
        assert!((t.linear() - 10.0).abs() < 1e-12);
        assert!((t.db() - 10.0).abs() < 1e-12);
        assert!(SirThreshold::new(0.0).is_err());
    }
}
