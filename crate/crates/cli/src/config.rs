use std::path::Path;

use samptraj::design::Search;
use samptraj::{AtomField, ConvexBody, TrajectorySet, Window};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Check,
    Design,
    Density,
    Sample,
    Reconstruct,
    Report,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Check => "check",
            Action::Design => "design",
            Action::Density => "density",
            Action::Sample => "sample",
            Action::Reconstruct => "reconstruct",
            Action::Report => "report",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignMode {
    /// One family of lines in the plane.
    #[serde(rename = "uniform_2d")]
    Uniform2d,
    /// One family of hyperplanes.
    Hyperplanes,
    /// Periodic lines in R^d; needs `search`.
    LinesD,
}

/// Inclusive spacing sweep with a fixed number of rows.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "Outputs::verdict")]
    pub verdict: String,
    #[serde(default = "Outputs::design")]
    pub design: String,
    #[serde(default = "Outputs::set")]
    pub set: String,
    #[serde(default = "Outputs::density")]
    pub density: String,
    #[serde(default = "Outputs::samples")]
    pub samples: String,
    #[serde(default = "Outputs::reconstruction")]
    pub reconstruction: String,
    #[serde(default = "Outputs::report")]
    pub report: String,
}

impl Outputs {
    fn verdict() -> String {
        "verdict.json".into()
    }
    fn design() -> String {
        "design.json".into()
    }
    fn set() -> String {
        "set.json".into()
    }
    fn density() -> String {
        "density.json".into()
    }
    fn samples() -> String {
        "samples.csv".into()
    }
    fn reconstruction() -> String {
        "reconstruction.json".into()
    }
    fn report() -> String {
        "report.csv".into()
    }
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs {
            verdict: Outputs::verdict(),
            design: Outputs::design(),
            set: Outputs::set(),
            density: Outputs::density(),
            samples: Outputs::samples(),
            reconstruction: Outputs::reconstruction(),
            report: Outputs::report(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub omega: ConvexBody,
    /// Must match the subcommand when given.
    #[serde(default)]
    pub action: Option<Action>,
    #[serde(default)]
    pub set: Option<TrajectorySet>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub mode: Option<DesignMode>,
    #[serde(default)]
    pub search: Option<Search>,
    #[serde(default)]
    pub window: Option<Window>,
    /// Along-path sample pitch.
    #[serde(default)]
    pub pitch: Option<f64>,
    #[serde(default)]
    pub field: Option<AtomField>,
    /// Random field size when no `field` is given.
    #[serde(default)]
    pub atoms: Option<usize>,
    #[serde(default)]
    pub margin: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Probe nodes per axis for reconstruction errors.
    #[serde(default)]
    pub probe: Option<usize>,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub outputs: Outputs,
}

pub fn load(path: &Path) -> Result<PipelineConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn missing(action: Action, field: &str) -> String {
    format!("`{field}` is required for {}", action.name())
}

impl PipelineConfig {
    pub fn validate(&self, action: Action) -> Result<(), String> {
        if let Some(a) = self.action {
            if a != action {
                return Err(format!("config action `{}` does not match subcommand `{}`", a.name(), action.name()));
            }
        }
        let need_set = matches!(action, Action::Check | Action::Density | Action::Sample | Action::Reconstruct | Action::Report);
        if need_set && self.set.is_none() {
            return Err(missing(action, "set"));
        }
        match action {
            Action::Design => {
                self.epsilon.ok_or_else(|| missing(action, "epsilon"))?;
                let mode = self.mode.ok_or_else(|| missing(action, "mode"))?;
                if mode == DesignMode::LinesD && self.search.is_none() {
                    return Err(missing(action, "search"));
                }
            }
            Action::Sample | Action::Reconstruct => {
                self.window.as_ref().ok_or_else(|| missing(action, "window"))?;
                self.pitch.ok_or_else(|| missing(action, "pitch"))?;
                if action == Action::Reconstruct && self.field.is_none() && self.atoms.is_none() {
                    return Err("reconstruct needs `field` or `atoms`".into());
                }
            }
            Action::Report => {
                let s = self.sweep.as_ref().ok_or_else(|| missing(action, "sweep"))?;
                if !(s.from > 0.0 && s.to > s.from && s.steps >= 2) {
                    return Err("sweep needs 0 < from < to and steps >= 2".into());
                }
            }
            Action::Check | Action::Density => {}
        }
        Ok(())
    }
}
