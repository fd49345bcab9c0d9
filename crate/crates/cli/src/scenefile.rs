//! JSON scene files and command-line overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tiltpick::planner::GridSpec;
use tiltpick::scene::{PalmModel, Scene, SupportPair, TrapezoidObject};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub w_b: f64,
    pub w_t: f64,
    pub h: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportSpec {
    pub psi_deg: f64,
    pub mu_a: f64,
    pub mu_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PalmSpec {
    pub mu_c: f64,
    #[serde(default)]
    pub sticky: bool,
    pub radius: f64,
    pub tip_arc_length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFileSpec {
    pub theta_max_deg: f64,
    pub n_theta: usize,
    pub n_delta: usize,
}

impl Default for GridFileSpec {
    fn default() -> Self {
        let g = GridSpec::default();
        GridFileSpec {
            theta_max_deg: g.theta_max.to_degrees().round(),
            n_theta: g.n_theta,
            n_delta: g.n_delta,
        }
    }
}

/// Everything a command needs to know about the physical setup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub object: ObjectSpec,
    pub supports: SupportSpec,
    pub palm: PalmSpec,
    #[serde(default)]
    pub grid: GridFileSpec,
}

/// Values given on the command line that take precedence over the file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Overrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<(usize, usize)>,
}

/// Validated model objects built from a scene file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub scene: Scene,
    pub grid: GridSpec,
}

impl SceneFile {
    /// The 0.3 m × 0.1 m rectangle in a right-angle corner, μ_C = 0.2.
    pub fn reference() -> Self {
        SceneFile {
            object: ObjectSpec {
                w_b: 0.3,
                w_t: 0.3,
                h: 0.1,
                mass: 1.0,
            },
            supports: SupportSpec {
                psi_deg: 90.0,
                mu_a: 0.1,
                mu_b: 0.1,
            },
            palm: PalmSpec {
                mu_c: 0.2,
                sticky: false,
                radius: 0.08,
                tip_arc_length: 0.1,
            },
            grid: GridFileSpec::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let file: SceneFile = serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(format!("scene file: {e}")))?;
        file.resolve()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        SceneFile::from_json(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Self {
        if let Some(mu_c) = o.mu_c {
            self.palm.mu_c = mu_c;
        }
        if let Some(psi) = o.psi_deg {
            self.supports.psi_deg = psi;
        }
        if let Some((n_theta, n_delta)) = o.grid {
            self.grid.n_theta = n_theta;
            self.grid.n_delta = n_delta;
        }
        self
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let o = self.object;
        let object = TrapezoidObject::new(o.w_b, o.w_t, o.h, o.mass)?;
        let s = self.supports;
        let supports = SupportPair::new(s.psi_deg.to_radians(), s.mu_a, s.mu_b)?;
        let p = self.palm;
        let palm = PalmModel::new(p.mu_c, p.sticky, p.radius, p.tip_arc_length)?;
        let g = self.grid;
        let grid = GridSpec::new(g.theta_max_deg.to_radians(), g.n_theta, g.n_delta)?;
        Ok(Resolved {
            scene: Scene::new(object, supports, palm),
            grid,
        })
    }
}

/// Parses `NxM` into `(n_theta, n_delta)`.
pub fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got {text:?}"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad grid size {s:?}: {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}
