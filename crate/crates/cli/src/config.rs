//! Experiment configuration files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wallindex_core::dirac::{Discretization, DEFAULT_TAU};
use wallindex_core::presets::{build_wall, FieldSpec, ManifoldSpec, WallSpec};
use wallindex_core::wall::WallData;
use wallindex_core::WallPlane;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Verification suites, in the order they run and are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Forms,
    Transgression,
    Rsa,
    Cylinder,
    Index,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Forms, Suite::Transgression, Suite::Rsa, Suite::Cylinder, Suite::Index];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Forms => "forms",
            Suite::Transgression => "transgression",
            Suite::Rsa => "rsa",
            Suite::Cylinder => "cylinder",
            Suite::Index => "index",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::All].into_iter().chain(Suite::CONCRETE).find(|x| x.name() == s).ok_or_else(|| {
            ConfigError::Invalid(format!("unknown suite `{s}` (expected forms, transgression, rsa, cylinder, index or all)"))
        })
    }
}

/// Expand `all`, drop duplicates and sort into run order.
pub fn normalize_suites(suites: &[Suite]) -> Vec<Suite> {
    let mut out: Vec<Suite> = if suites.contains(&Suite::All) {
        Suite::CONCRETE.to_vec()
    } else {
        suites.to_vec()
    };
    out.sort();
    out.dedup();
    out
}

/// Absolute tolerances, one per check family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub d_squared: f64,
    pub stokes: f64,
    pub bianchi: f64,
    pub transgression: f64,
    /// Agreement between surface-term channels (integrands, cylinders).
    pub rsa_channels: f64,
    /// Seeley family value against the spectral eta difference.
    pub eta: f64,
    pub thin_limit: f64,
    /// Relative tolerance on the halving of the cylinder gap.
    pub gap_ratio: f64,
    pub integrality: f64,
    pub pairing: f64,
    pub hermiticity: f64,
    /// Imaginary parts of quantities that must be real.
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            d_squared: 1e-10,
            stokes: 1e-8,
            bianchi: 1e-8,
            transgression: 1e-8,
            rsa_channels: 1e-6,
            eta: 1e-3,
            thin_limit: 1e-6,
            gap_ratio: 0.2,
            integrality: 0.05,
            pairing: 1e-9,
            hermiticity: 1e-10,
            imaginary: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn scaled(&self, s: f64) -> Tolerances {
        Tolerances {
            d_squared: self.d_squared * s,
            stokes: self.stokes * s,
            bianchi: self.bianchi * s,
            transgression: self.transgression * s,
            rsa_channels: self.rsa_channels * s,
            eta: self.eta * s,
            thin_limit: self.thin_limit * s,
            gap_ratio: self.gap_ratio * s,
            integrality: self.integrality * s,
            pairing: self.pairing * s,
            hermiticity: self.hermiticity * s,
            imaginary: self.imaginary * s,
        }
    }

    fn all(&self) -> [f64; 12] {
        [
            self.d_squared,
            self.stokes,
            self.bianchi,
            self.transgression,
            self.rsa_channels,
            self.eta,
            self.thin_limit,
            self.gap_ratio,
            self.integrality,
            self.pairing,
            self.hermiticity,
            self.imaginary,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndexSettings {
    pub discretization: Discretization,
    /// Near-zero threshold for the chirality count.
    pub tau: f64,
    /// Repeat the spectral count at this resolution and require the same index.
    pub refine_points: Option<usize>,
}

impl Default for IndexSettings {
    fn default() -> Self {
        IndexSettings { discretization: Discretization::Spectral, tau: DEFAULT_TAU, refine_points: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CylinderSettings {
    /// Width of the checked cylinder.
    pub epsilon: f64,
    /// Widths written to `sweep.csv`.
    pub sweep: Vec<f64>,
    /// Seed of a random `B₂` linear term; when set the sweep must show the
    /// first-order gap halving with the width.
    pub linear_term_seed: Option<u64>,
}

impl Default for CylinderSettings {
    fn default() -> Self {
        CylinderSettings { epsilon: 0.1, sweep: vec![0.2, 0.1, 0.05, 0.025], linear_term_seed: None }
    }
}

/// One experiment: a wall configuration plus the suites to run on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default = "default_suites")]
    pub suites: Vec<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    pub manifold: ManifoldSpec,
    pub wall: WallSpec,
    pub field: FieldSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub index: IndexSettings,
    #[serde(default)]
    pub cylinder: CylinderSettings,
}

fn default_suites() -> Vec<Suite> {
    vec![Suite::All]
}

impl ExperimentConfig {
    /// Parse TOML; `origin` names the source in error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
            origin: origin.to_string(),
            message: e.to_string().trim_end().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.tolerances.all().iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return bad("tolerances must be finite and non-negative".into());
        }
        if !(self.index.tau > 0.0 && self.index.tau.is_finite()) {
            return bad(format!("index.tau must be positive, got {}", self.index.tau));
        }
        if let Some(n) = self.index.refine_points {
            if n < 4 {
                return bad(format!("index.refine_points must be at least 4, got {n}"));
            }
        }
        let c = &self.cylinder;
        if c.sweep.iter().chain([&c.epsilon]).any(|e| !(*e > 0.0 && e.is_finite())) {
            return bad("cylinder widths must be positive".into());
        }
        if self.field.orientation.abs() != 1.0 {
            return bad(format!("field.orientation must be +1 or -1, got {}", self.field.orientation));
        }
        if self.field.rank == 0 {
            return bad("field.rank must be positive".into());
        }
        // Cheap structural checks; the fields themselves are built on demand.
        let grid = self.manifold.grid().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        grid.check_wall(WallPlane { axis: self.wall.axis, index: self.wall.index })
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.manifold.dim != 2 && self.manifold.dim != 4 {
            return bad(format!("walls need a manifold of dimension 2 or 4, got {}", self.manifold.dim));
        }
        Ok(())
    }

    /// The wall configuration at the configured resolution.
    pub fn wall_data(&self) -> Result<WallData, ConfigError> {
        self.wall_data_at(self.manifold.points)
    }

    /// The same configuration at another resolution; the wall plane keeps its position.
    pub fn wall_data_at(&self, points: usize) -> Result<WallData, ConfigError> {
        let n0 = self.manifold.points;
        if !(self.wall.index * points).is_multiple_of(n0) {
            return Err(ConfigError::Invalid(format!(
                "wall index {} on {n0} points has no grid plane at {points} points",
                self.wall.index
            )));
        }
        let manifold = ManifoldSpec { points, ..self.manifold };
        let wall = WallSpec { index: self.wall.index * points / n0, ..self.wall };
        build_wall(&manifold, &wall, &self.field).map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
name = "t"
[manifold]
dim = 2
points = 8
[wall]
axis = 0
index = 4
[field]
rank = 1
gauge = { kind = "flux", m = 1 }
"#;

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::parse(MINIMAL, "inline").unwrap();
        assert_eq!(c.suites, vec![Suite::All]);
        assert_eq!(c.tolerances, Tolerances::default());
        assert_eq!(c.field.orientation, 1.0);
    }

    #[test]
    fn unknown_field_names_the_line() {
        let text = MINIMAL.replace("points = 8", "points = 8\nwidth = 3");
        let e = ExperimentConfig::parse(&text, "inline").unwrap_err().to_string();
        assert!(e.contains("width") && e.contains("line"), "{e}");
    }

    #[test]
    fn suites_normalize() {
        assert_eq!(normalize_suites(&[Suite::Index, Suite::Forms, Suite::Index]), vec![Suite::Forms, Suite::Index]);
        assert_eq!(normalize_suites(&[Suite::All]).len(), 5);
        assert!("spectra".parse::<Suite>().is_err());
    }

    #[test]
    fn refinement_keeps_the_wall_position() {
        let c = ExperimentConfig::parse(MINIMAL, "inline").unwrap();
        let w = c.wall_data_at(16).unwrap();
        assert_eq!(w.wall().index, 8);
        assert!(c.wall_data_at(12).is_ok());
        assert!(ExperimentConfig::parse(&MINIMAL.replace("index = 4", "index = 3"), "inline")
            .unwrap()
            .wall_data_at(12)
            .is_err());
    }

    #[test]
    fn invalid_wall_is_rejected() {
        let text = MINIMAL.replace("axis = 0", "axis = 5");
        assert!(matches!(ExperimentConfig::parse(&text, "inline"), Err(ConfigError::Invalid(_))));
    }
}
