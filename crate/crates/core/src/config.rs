//! Pipeline configuration: defaults, an optional `key = value` file, and
//! command-line overrides (applied last).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fuzzcore::{FamilyKind, ShapeParams, DEFAULT_ACTIVATION_FLOOR, DEFAULT_GRID_POINTS};
use crate::harness::DEFAULT_PROBE_OFFSET;
use crate::model::EngineSettings;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub family: FamilyKind,
    pub sigma_divisor: f64,
    pub shoulder: f64,
    pub grid_points: usize,
    /// Probe offset from each interval end, as a fraction of its width.
    pub probe_offset: f64,
    pub activation_floor: f64,
    pub data: Option<PathBuf>,
    pub rulebase: Option<PathBuf>,
    pub reports: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let shape = ShapeParams::default();
        PipelineConfig {
            family: FamilyKind::Trapezoidal,
            sigma_divisor: shape.sigma_divisor,
            shoulder: shape.shoulder,
            grid_points: DEFAULT_GRID_POINTS,
            probe_offset: DEFAULT_PROBE_OFFSET,
            activation_floor: DEFAULT_ACTIVATION_FLOOR,
            data: None,
            rulebase: None,
            reports: None,
        }
    }
}

/// Every key is optional; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub family: Option<String>,
    pub sigma_divisor: Option<f64>,
    pub shoulder: Option<f64>,
    pub grid_points: Option<usize>,
    pub probe_offset: Option<f64>,
    pub activation_floor: Option<f64>,
    pub data: Option<PathBuf>,
    pub rulebase: Option<PathBuf>,
    pub reports: Option<PathBuf>,
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

impl PipelineConfig {
    pub fn apply(&mut self, o: &ConfigOverrides) -> Result<()> {
        if let Some(f) = &o.family {
            self.family = f.parse()?;
        }
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = o.$field.clone() { self.$field = v.into(); } )* };
        }
        take!(sigma_divisor, shoulder, grid_points, probe_offset, activation_floor);
        if let Some(p) = &o.data {
            self.data = Some(p.clone());
        }
        if let Some(p) = &o.rulebase {
            self.rulebase = Some(p.clone());
        }
        if let Some(p) = &o.reports {
            self.reports = Some(p.clone());
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.shape().validate()?;
        if self.grid_points < 3 {
            return Err(Error::invalid(format!("grid_points must be at least 3, got {}", self.grid_points)));
        }
        if !(self.probe_offset > 0.0 && self.probe_offset < 0.5) {
            return Err(Error::invalid(format!("probe_offset must be in (0, 0.5), got {}", self.probe_offset)));
        }
        if !(0.0..1.0).contains(&self.activation_floor) {
            return Err(Error::invalid(format!("activation_floor must be in [0, 1), got {}", self.activation_floor)));
        }
        Ok(())
    }

    pub fn shape(&self) -> ShapeParams {
        ShapeParams { sigma_divisor: self.sigma_divisor, shoulder: self.shoulder }
    }

    pub fn engine_settings(&self) -> EngineSettings {
        EngineSettings {
            grid_points: self.grid_points,
            activation_floor: self.activation_floor,
            sigma_divisor: self.sigma_divisor,
            shoulder: self.shoulder,
        }
    }
}
