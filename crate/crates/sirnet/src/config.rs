//! TOML configuration files.
//!
//! A config file mirrors the library types field for field:
//!
//! ```toml
//! theta = [0.1, 1.0, 10.0]
//!
//! [class]
//! class = "ppp"
//! dim = 2
//! alpha = 4.0
//! interferers = { kind = "rayleigh" }
//!
//! [mac]
//! access = { kind = "aloha", p = 0.05 }
//! duplex = "full"
//!
//! [sim]
//! trials = 100000
//! seed = 7
//! window = "auto"
//! truncation_tol = 0.001
//! ```
//!
//! Every section is optional; command-line flags fill the gaps.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sirnet_core::class::NetworkClass;
use sirnet_core::model::MacScheme;
use sirnet_core::montecarlo::SimConfig;

use crate::error::AppError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<NetworkClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mac: Option<MacScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimConfig>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, AppError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config types always serialize")
    }

    /// Hex SHA-256 of the canonical TOML encoding.
    pub fn hash(&self) -> String {
        Sha256::digest(self.to_toml().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sirnet_core::model::{Fading, Sided};
    use sirnet_core::montecarlo::Window;

    #[test]
    fn documented_example_parses() {
        let text = r#"
theta = [0.1, 1.0, 10.0]

[class]
class = "ppp"
dim = 2
alpha = 4.0
interferers = { kind = "rayleigh" }

[mac]
access = { kind = "aloha", p = 0.05 }
duplex = "full"

[sim]
trials = 100000
seed = 7
window = "auto"
truncation_tol = 0.001
"#;
        let c = Config::parse(text).unwrap();
        assert_eq!(
            c.class,
            Some(NetworkClass::Ppp {
                dim: 2,
                alpha: 4.0,
                interferers: Fading::Rayleigh
            })
        );
        assert_eq!(c.mac, Some(MacScheme::aloha(0.05)));
        let sim = c.sim.clone().unwrap();
        assert_eq!((sim.trials, sim.seed, sim.window), (100_000, 7, Window::Auto));
        assert_eq!(Config::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(Config::parse("thetas = [1.0]").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = Config {
            class: Some(NetworkClass::Line {
                alpha: 2.0,
                sided: Sided::One,
            }),
            ..Config::default()
        };
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.theta.push(1.0);
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
