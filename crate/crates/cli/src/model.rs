//! Model files: JSON records describing a base, a fibre length and a
//! curvature density.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use s1_yamabe::bundle::{InvariantMetric, WpsDensity};
use s1_yamabe::numerics::{EndpointMode, QuadratureConfig};
use s1_yamabe::orbifold::{self, Base, ConeSurfaceProfile, FlatTorusBase, DEFAULT_GRID};
use s1_yamabe::radial::{Constant, Radial, RadialFunction};

/// A malformed model, with the path of the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ModelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ModelError {}

fn err(path: &str, message: impl Into<String>) -> ModelError {
    ModelError {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub base: BaseSpec,
    pub ell: EllSpec,
    #[serde(rename = "F")]
    pub density: DensitySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureOverrides>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSpec {
    Wps {
        m1: u64,
        m2: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<usize>,
    },
    RoundSphere {
        radius: f64,
    },
    BumpedSphere {
        radius: f64,
        amplitude: f64,
    },
    Profile {
        samples: Vec<[f64; 2]>,
        m_start: u64,
        m_end: u64,
    },
    FlatTorus {
        length: f64,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EllSpec {
    Constant {
        value: f64,
    },
    /// Values at uniformly spaced points from `s = 0` to `s = L`.
    Samples {
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Constant { value: f64 },
    Wps,
    Samples { values: Vec<f64> },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points_per_panel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint_mode: Option<EndpointModeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_refinements: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointModeSpec {
    Plain,
    Substitution,
    EpsilonCutoff,
}

impl QuadratureOverrides {
    pub fn apply(&self, base: QuadratureConfig) -> Result<QuadratureConfig, ModelError> {
        let mut cfg = base;
        if let Some(v) = self.panels {
            cfg.panels = v;
        }
        if let Some(v) = self.points_per_panel {
            cfg.points_per_panel = v;
        }
        if let Some(v) = self.endpoint_mode {
            cfg.endpoint_mode = match v {
                EndpointModeSpec::Plain => EndpointMode::Plain,
                EndpointModeSpec::Substitution => EndpointMode::Substitution,
                EndpointModeSpec::EpsilonCutoff => EndpointMode::EpsilonCutoff,
            };
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = self.max_refinements {
            cfg.max_refinements = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        cfg.validate(0.0, 1.0)
            .map_err(|e| err("quadrature", e.to_string()))?;
        Ok(cfg)
    }
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." {
                "<root>".to_string()
            } else {
                path
            };
            err(&path, e.into_inner().to_string())
        })
    }

    pub fn read(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err("<file>", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds the base, checking every field.
    pub fn build_base(&self) -> Result<Base, ModelError> {
        let positive = |path: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(err(path, format!("must be positive and finite (got {v})")))
            }
        };
        match &self.base {
            BaseSpec::Wps { m1, m2, grid } => {
                if *m1 == 0 {
                    return Err(err("base.m1", "must be positive"));
                }
                if *m2 == 0 {
                    return Err(err("base.m2", "must be positive"));
                }
                let grid = grid.unwrap_or(DEFAULT_GRID);
                if grid < 8 {
                    return Err(err("base.grid", "must be at least 8"));
                }
                orbifold::wps_profile(*m1, *m2, grid)
                    .map(Base::from)
                    .map_err(|e| err("base", e.to_string()))
            }
            BaseSpec::RoundSphere { radius } => {
                positive("base.radius", *radius)?;
                orbifold::make_round_sphere(*radius)
                    .map(Base::from)
                    .map_err(|e| err("base", e.to_string()))
            }
            BaseSpec::BumpedSphere { radius, amplitude } => {
                positive("base.radius", *radius)?;
                if !(amplitude.abs() < 1.0) {
                    return Err(err("base.amplitude", "must lie in (-1, 1)"));
                }
                orbifold::make_bumped_sphere(*radius, *amplitude)
                    .map(Base::from)
                    .map_err(|e| err("base", e.to_string()))
            }
            BaseSpec::Profile {
                samples,
                m_start,
                m_end,
            } => {
                if *m_start == 0 {
                    return Err(err("base.m_start", "must be positive"));
                }
                if *m_end == 0 {
                    return Err(err("base.m_end", "must be positive"));
                }
                if samples.len() < 4 {
                    return Err(err("base.samples", "need at least four samples"));
                }
                if let Some(i) = samples
                    .iter()
                    .position(|p| !(p[0].is_finite() && p[1].is_finite()))
                {
                    return Err(err(&format!("base.samples[{i}]"), "non-finite sample"));
                }
                let pairs: Vec<(f64, f64)> = samples.iter().map(|p| (p[0], p[1])).collect();
                orbifold::sampled_profile(&pairs, *m_start, *m_end)
                    .map(Base::from)
                    .map_err(|e| err("base.samples", e.to_string()))
            }
            BaseSpec::FlatTorus { length, radius } => {
                positive("base.length", *length)?;
                positive("base.radius", *radius)?;
                FlatTorusBase::new(*length, *radius)
                    .map(Base::from)
                    .map_err(|e| err("base", e.to_string()))
            }
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig, ModelError> {
        match &self.quadrature {
            Some(q) => q.apply(QuadratureConfig::plain()),
            None => Ok(QuadratureConfig::plain()),
        }
    }

    pub fn build(&self) -> Result<InvariantMetric, ModelError> {
        let base = self.build_base()?;
        let len = base.length();
        let ell: Arc<dyn Radial> = match &self.ell {
            EllSpec::Constant { value } => {
                if !(*value > 0.0 && value.is_finite()) {
                    return Err(err(
                        "ell.value",
                        format!("must be positive and finite (got {value})"),
                    ));
                }
                Arc::new(Constant(*value))
            }
            EllSpec::Samples { values } => {
                Arc::new(samples("ell.values", len, values, &base, true)?)
            }
        };
        let density: Arc<dyn Radial> = match &self.density {
            DensitySpec::Constant { value } => {
                if !value.is_finite() {
                    return Err(err("F.value", "must be finite"));
                }
                Arc::new(Constant(*value))
            }
            DensitySpec::Wps => {
                let profile: &ConeSurfaceProfile = base
                    .as_cone()
                    .ok_or_else(|| err("F", "type \"wps\" needs a base of type \"wps\""))?;
                if !matches!(self.base, BaseSpec::Wps { .. }) {
                    return Err(err("F", "type \"wps\" needs a base of type \"wps\""));
                }
                Arc::new(WpsDensity::new(profile.clone()).map_err(|e| err("F", e.to_string()))?)
            }
            DensitySpec::Samples { values } => {
                Arc::new(samples("F.values", len, values, &base, false)?)
            }
        };
        let metric =
            InvariantMetric::new(base, ell, density).map_err(|e| err("<model>", e.to_string()))?;
        Ok(metric.with_quadrature(self.quadrature()?))
    }
}

fn samples(
    path: &str,
    len: f64,
    values: &[f64],
    base: &Base,
    positive: bool,
) -> Result<RadialFunction, ModelError> {
    if values.len() < 4 {
        return Err(err(path, "need at least four values"));
    }
    if let Some(i) = values
        .iter()
        .position(|v| !v.is_finite() || (positive && *v <= 0.0))
    {
        let what = if positive {
            "must be positive and finite"
        } else {
            "must be finite"
        };
        return Err(err(&format!("{path}[{i}]"), what));
    }
    if base.is_periodic() && values[0] != values[values.len() - 1] {
        return Err(err(path, "first and last value must agree on a torus"));
    }
    RadialFunction::from_samples(len, values).map_err(|e| err(path, e.to_string()))
}
