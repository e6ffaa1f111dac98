use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::model::{default_hydrogen_params, TransitionParams};

/// Parameter overrides read from a JSON file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub kappa: Option<f64>,
    pub gamma: Option<f64>,
    pub lamb: Option<f64>,
    pub heaviside_at_zero: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    fn apply(&self, mut p: TransitionParams) -> TransitionParams {
        if let Some(v) = self.kappa {
            p.kappa = v;
        }
        if let Some(v) = self.gamma {
            p.gamma = v;
        }
        if let Some(v) = self.lamb {
            p.lamb = v;
        }
        if let Some(v) = self.heaviside_at_zero {
            p.heaviside_at_zero = v;
        }
        p
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// JSON file with any of kappa, gamma, lamb, heaviside_at_zero.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Decay rate Γ/ω0.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Lamb shift ω_LS/ω0.
    #[arg(long, allow_negative_numbers = true)]
    pub lamb: Option<f64>,
    /// Value of the step function at zero.
    #[arg(long)]
    pub heaviside_at_zero: Option<f64>,
}

impl ParamArgs {
    /// Hydrogen defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<TransitionParams, String> {
        let mut p = default_hydrogen_params();
        if let Some(path) = &self.config {
            p = Config::load(path)?.apply(p);
        }
        let flags = Config {
            kappa: self.kappa,
            gamma: self.gamma,
            lamb: self.lamb,
            heaviside_at_zero: self.heaviside_at_zero,
        };
        p = flags.apply(p);
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("pwf-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"kappa": 20.0, "gamma": 0.1}"#).unwrap();
        let args = ParamArgs { config: Some(path.clone()), kappa: Some(30.0), ..Default::default() };
        let p = args.resolve().unwrap();
        assert_eq!(p.kappa, 30.0);
        assert_eq!(p.gamma, 0.1);
        assert_eq!(p.heaviside_at_zero, 0.5);
        std::fs::write(&path, r#"{"kapa": 20.0}"#).unwrap();
        assert!(args.resolve().is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn invalid_values_rejected() {
        let args = ParamArgs { kappa: Some(-1.0), ..Default::default() };
        assert!(args.resolve().is_err());
    }
}
