//! Scenario files: a half ellipse, a polarization with a pole at its end,
//! the spectral parameters to study and the initial points of the Darboux
//! transforms.

use std::path::Path;

use darboux_core::curve::PoleOrder;
use darboux_core::primitive::StepOptions;
use darboux_core::transform::TransformOptions;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub a: f64,
    pub b_axis: f64,
    /// Parameter interval (0, domain_b] traces the half ellipse.
    #[serde(default = "default_domain")]
    pub domain_b: f64,
}

fn default_domain() -> f64 {
    1.0
}

/// Initial point of a Darboux track at the base parameter p.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum InitialSpec {
    /// `count` points drawn uniformly from [−2, 2]² in the stereographic chart.
    Random {
        seed: u64,
        #[serde(default = "default_count")]
        count: usize,
    },
    /// A point of the stereographic chart.
    Coords { coords: [f64; 2] },
    /// The point of the limit circle with parameter s (second-order poles
    /// with λr > ½ only).
    OnLimitCircle { on_limit_circle: f64 },
}

fn default_count() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub limit: f64,
    pub cauchy: f64,
    pub circle: f64,
    pub cluster_radius: f64,
    pub step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let d = TransformOptions::default();
        Self {
            limit: d.limit_tol,
            cauchy: d.cauchy_tol,
            circle: d.circle_tol,
            cluster_radius: d.cluster_radius,
            step: d.step.tol,
        }
    }
}

/// Output file names, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub csv: Option<String>,
    pub svg: Option<String>,
    pub report: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub curve: CurveSpec,
    pub pole_order: u8,
    pub lambdas: Vec<f64>,
    pub p: f64,
    #[serde(default)]
    pub initials: Vec<InitialSpec>,
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub outputs: Outputs,
}

fn default_k_max() -> u32 {
    22
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let s: Scenario = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.curve.a > 0.0 && self.curve.b_axis > 0.0 && self.curve.domain_b > 0.0) {
            return bad("curve axes and domain must be positive".into());
        }
        if !matches!(self.pole_order, 1 | 2) {
            return bad(format!("pole_order must be 1 or 2, got {}", self.pole_order));
        }
        if self.lambdas.is_empty() {
            return bad("lambdas must not be empty".into());
        }
        if let Some(l) = self.lambdas.iter().find(|l| **l == 0.0 || !l.is_finite()) {
            return bad(format!("λ = {l} is not allowed (Darboux transforms need λ ≠ 0)"));
        }
        if !(self.p > 0.0 && self.p < self.curve.domain_b) {
            return bad(format!("base p = {} must lie in (0, {})", self.p, self.curve.domain_b));
        }
        if self.k_max == 0 || self.k_max > 60 {
            return bad(format!("k_max = {} out of range 1..=60", self.k_max));
        }
        let t = &self.tolerances;
        if [t.limit, t.cauchy, t.circle, t.cluster_radius, t.step].iter().any(|v| !(*v > 0.0)) {
            return bad("tolerances must be positive".into());
        }
        for init in &self.initials {
            match init {
                InitialSpec::Random { count, .. } if *count == 0 => return bad("random initials need count >= 1".into()),
                InitialSpec::Coords { coords } if coords.iter().any(|c| !c.is_finite()) => {
                    return bad("initial coordinates must be finite".into())
                }
                InitialSpec::OnLimitCircle { .. } if self.pole_order != 2 => {
                    return bad("on_limit_circle initials need pole_order = 2".into())
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn pole_order(&self) -> PoleOrder {
        PoleOrder::from_u8(self.pole_order).expect("validated")
    }

    pub fn transform_options(&self) -> TransformOptions {
        let t = &self.tolerances;
        TransformOptions {
            k_max: self.k_max,
            limit_tol: t.limit,
            cauchy_tol: t.cauchy,
            circle_tol: t.circle,
            cluster_radius: t.cluster_radius,
            step: StepOptions { tol: t.step, ..StepOptions::default() },
        }
    }
}
