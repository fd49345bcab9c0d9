//! Configuration-space planning over `(θ, δ)`: force-closure maps, secure
//! straight-line tilt paths and palm motion under pure rolling.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::closure::force_closure;
use crate::error::{Error, Result};
use crate::geom2d::{Pose2, Vec2, EPS_GEOM};
use crate::mobility::{critical_palm_angle, ungrasp_cw_feasible, with_palm_angle};
use crate::scene::{Configuration, ContactSet, Scene, THETA_MAX};

/// Uniform sampling of `θ ∈ [0, theta_max]` and `δ ∈ [0, L_side]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub theta_max: f64,
    pub n_theta: usize,
    pub n_delta: usize,
}

impl GridSpec {
    pub fn new(theta_max: f64, n_theta: usize, n_delta: usize) -> Result<Self> {
        if !(theta_max > 0.0 && theta_max <= THETA_MAX + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "theta_max must lie in (0, 80] deg (got {:.4} deg)",
                theta_max.to_degrees()
            )));
        }
        if n_theta < 2 || n_delta < 2 {
            return Err(Error::InvalidParameter(
                "grid needs at least 2 samples per axis".into(),
            ));
        }
        Ok(GridSpec {
            theta_max: theta_max.min(THETA_MAX),
            n_theta,
            n_delta,
        })
    }

    pub fn theta(&self, i: usize) -> f64 {
        i as f64 * self.theta_max / (self.n_theta - 1) as f64
    }

    pub fn delta(&self, j: usize, side_length: f64) -> f64 {
        j as f64 * side_length / (self.n_delta - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_delta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            theta_max: 60f64.to_radians(),
            n_theta: 100,
            n_delta: 100,
        }
    }
}

/// Force-closure verdicts on a [`GridSpec`], row-major with θ outer.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureMap {
    pub spec: GridSpec,
    pub side_length: f64,
    pub mu_c: f64,
    cells: Vec<bool>,
}

impl ClosureMap {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.spec.n_delta + j]
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn config(&self, i: usize, j: usize) -> Configuration {
        Configuration::new(self.spec.theta(i), self.spec.delta(j, self.side_length))
    }

    pub fn count_true(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// `(i, j, θ, δ, closed)` for every cell, θ outer.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64, f64, bool)> + '_ {
        let nd = self.spec.n_delta;
        self.cells.iter().enumerate().map(move |(k, &c)| {
            let (i, j) = (k / nd, k % nd);
            let cfg = self.config(i, j);
            (i, j, cfg.theta, cfg.delta, c)
        })
    }

    /// Normalized Euclidean distance from each cell center to the nearest
    /// open (non-closed) cell, clamped to 1. Open cells have distance 0.
    pub fn clearance_field(&self) -> Vec<f64> {
        let (nt, nd) = (self.spec.n_theta, self.spec.n_delta);
        let (st, sd) = (1.0 / (nt - 1) as f64, 1.0 / (nd - 1) as f64);
        // Squared distance along δ to the nearest open cell in the same row.
        let mut col = vec![f64::INFINITY; nt * nd];
        for i in 0..nt {
            let row = &self.cells[i * nd..(i + 1) * nd];
            let mut last: Option<usize> = None;
            for j in 0..nd {
                if !row[j] {
                    last = Some(j);
                }
                if let Some(l) = last {
                    col[i * nd + j] = ((j - l) as f64 * sd).powi(2);
                }
            }
            last = None;
            for j in (0..nd).rev() {
                if !row[j] {
                    last = Some(j);
                }
                if let Some(l) = last {
                    let d = ((l - j) as f64 * sd).powi(2);
                    col[i * nd + j] = col[i * nd + j].min(d);
                }
            }
        }
        let mut out = vec![1.0; nt * nd];
        for i in 0..nt {
            for j in 0..nd {
                let best = (0..nt)
                    .map(|k| ((i as f64 - k as f64) * st).powi(2) + col[k * nd + j])
                    .fold(f64::INFINITY, f64::min);
                out[i * nd + j] = best.sqrt().min(1.0);
            }
        }
        out
    }

    /// Indices of the grid cell nearest to a configuration.
    pub fn nearest_cell(&self, config: Configuration) -> (usize, usize) {
        let fi = config.theta / self.spec.theta_max * (self.spec.n_theta - 1) as f64;
        let fj = config.delta / self.side_length * (self.spec.n_delta - 1) as f64;
        let i = (fi.round().max(0.0) as usize).min(self.spec.n_theta - 1);
        let j = (fj.round().max(0.0) as usize).min(self.spec.n_delta - 1);
        (i, j)
    }
}

/// Force closure at one configuration; invalid placements count as open.
pub fn closed_at(scene: &Scene, config: Configuration) -> bool {
    scene
        .contacts(config)
        .map(|cs| force_closure(&cs))
        .unwrap_or(false)
}

/// Force-closure sweep over the `(θ, δ)` grid. Cells are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn closure_map(scene: &Scene, spec: GridSpec) -> ClosureMap {
    let side_length = scene.object.side_length();
    let nd = spec.n_delta;
    let cells = (0..spec.len())
        .into_par_iter()
        .map(|k| {
            let cfg = Configuration::new(spec.theta(k / nd), spec.delta(k % nd, side_length));
            closed_at(scene, cfg)
        })
        .collect();
    ClosureMap {
        spec,
        side_length,
        mu_c: scene.palm.mu_c,
        cells,
    }
}

/// True iff every closed cell of `a` is closed in `b`.
pub fn map_containment(a: &ClosureMap, b: &ClosureMap) -> Result<bool> {
    if a.spec != b.spec || (a.side_length - b.side_length).abs() > EPS_GEOM {
        return Err(Error::SpecMismatch);
    }
    Ok(a.cells.iter().zip(&b.cells).all(|(&x, &y)| !x || y))
}

/// Straight-line tilt from `(0, δ₀)` to `(θ_T, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TiltPlan {
    pub start: Configuration,
    pub target: Configuration,
    /// Minimum normalized distance from the path samples to an open cell.
    pub clearance: f64,
    pub waypoints: Vec<Configuration>,
}

pub const MIN_VALIDATION_SAMPLES: usize = 50;

fn segment_samples(start: Configuration, target: Configuration, n: usize) -> Vec<Configuration> {
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            let theta = if k == n - 1 {
                target.theta
            } else {
                start.theta + t * (target.theta - start.theta)
            };
            let delta = if k == n - 1 {
                target.delta
            } else {
                start.delta + t * (target.delta - start.delta)
            };
            Configuration::new(theta, delta)
        })
        .collect()
}

struct Candidate {
    i_target: usize,
    j_start: usize,
    clearance: f64,
}

/// Picks the straight path between the δ-axis and the θ-axis that stays in
/// force closure with the largest clearance.
pub fn plan_on_map(scene: &Scene, map: &ClosureMap, n_validate: usize) -> Result<TiltPlan> {
    if n_validate < MIN_VALIDATION_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "n_validate must be at least {MIN_VALIDATION_SAMPLES}"
        )));
    }
    let spec = map.spec;
    let field = map.clearance_field();
    let clearance_of = |samples: &[Configuration]| {
        samples
            .iter()
            .map(|&c| {
                let (i, j) = map.nearest_cell(c);
                field[i * spec.n_delta + j]
            })
            .fold(1.0_f64, f64::min)
    };

    let mut candidates: Vec<Candidate> = (1..spec.n_theta)
        .flat_map(|i| (1..spec.n_delta).map(move |j| (i, j)))
        .map(|(i, j)| {
            let samples = segment_samples(map.config(0, j), map.config(i, 0), n_validate);
            Candidate {
                i_target: i,
                j_start: j,
                clearance: clearance_of(&samples),
            }
        })
        .collect();
    candidates.sort_by(|a, b| {
        b.clearance
            .total_cmp(&a.clearance)
            .then(b.i_target.cmp(&a.i_target))
            .then(b.j_start.cmp(&a.j_start))
    });

    for cand in candidates {
        let start = map.config(0, cand.j_start);
        let target = map.config(cand.i_target, 0);
        let samples = segment_samples(start, target, n_validate);
        if samples.iter().all(|&c| closed_at(scene, c)) {
            return Ok(TiltPlan {
                start,
                target,
                clearance: cand.clearance,
                waypoints: samples,
            });
        }
    }
    Err(Error::NoFeasiblePath)
}

pub fn plan_straight_path(scene: &Scene, spec: GridSpec, n_validate: usize) -> Result<TiltPlan> {
    let map = closure_map(scene, spec);
    plan_on_map(scene, &map, n_validate)
}

/// Point of the palm arc at arc length `lambda` from the tip Y, in the palm
/// frame. Y is the origin, the arc leaves Y along +x and bends toward −z.
pub fn palm_arc_point(radius: f64, lambda: f64) -> Vec2 {
    let a = lambda / radius;
    Vec2::new(radius * a.sin(), radius * a.cos() - radius)
}

/// Unit tangent of the palm arc (direction of increasing arc length).
pub fn palm_arc_tangent(radius: f64, lambda: f64) -> Vec2 {
    let a = lambda / radius;
    Vec2::new(a.cos(), -a.sin())
}

/// Palm pose that touches the object at C with the arc point `λ = δ`,
/// tangent to the palm-side edge. Returns the pose and `λ`.
pub fn palm_pose_for_config(scene: &Scene, config: Configuration) -> Result<(Pose2, f64)> {
    let palm = scene.palm;
    if config.delta > palm.tip_arc_length + EPS_GEOM {
        return Err(Error::ArcBudgetExceeded {
            delta: config.delta,
            budget: palm.tip_arc_length,
        });
    }
    let contacts = scene.contacts(config)?;
    let edge_dir = -contacts.c.normal.perp();
    let lambda = config.delta;
    let angle = edge_dir.angle() + lambda / palm.radius;
    let rotated = palm_arc_point(palm.radius, lambda).rotate(angle);
    Ok((Pose2::new(angle, contacts.c.position - rotated), lambda))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PalmTrajectory {
    pub poses: Vec<Pose2>,
    pub contact_params: Vec<f64>,
    pub restrained_at_target: bool,
    /// Palm angle in `[0, π)` at which the three normals are concurrent.
    pub critical_angle: f64,
    /// Angle in `[0, π)` of the palm chord from Y to X at the target.
    pub final_palm_angle: f64,
}

/// Whether a straight palm at angle `phi` blocks every clockwise escape.
pub fn restrained_with_palm_angle(contacts: &ContactSet, phi: f64) -> bool {
    !ungrasp_cw_feasible(&with_palm_angle(contacts, phi))
}

pub fn palm_trajectory(plan: &TiltPlan, scene: &Scene) -> Result<PalmTrajectory> {
    let mut poses = Vec::with_capacity(plan.waypoints.len());
    let mut contact_params = Vec::with_capacity(plan.waypoints.len());
    for &w in &plan.waypoints {
        let (pose, lambda) = palm_pose_for_config(scene, w)?;
        poses.push(pose);
        contact_params.push(lambda);
    }

    let target = scene.contacts(plan.target)?;
    let critical_angle = critical_palm_angle(&target.a, &target.b, target.c.position)?;

    let final_pose = poses.last().copied().ok_or(Error::NoFeasiblePath)?;
    let x = palm_arc_point(scene.palm.radius, plan.start.delta);
    let chord = final_pose.transform_vector(x - palm_arc_point(scene.palm.radius, 0.0));
    let final_palm_angle = chord.angle().rem_euclid(PI);

    Ok(PalmTrajectory {
        poses,
        contact_params,
        restrained_at_target: restrained_with_palm_angle(&target, final_palm_angle),
        critical_angle,
        final_palm_angle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 10, 10).is_err());
        assert!(GridSpec::new(85f64.to_radians(), 10, 10).is_err());
        assert!(GridSpec::new(1.0, 1, 10).is_err());
        let g = GridSpec::new(1.0, 3, 5).unwrap();
        assert_eq!(g.theta(2), 1.0);
        assert_eq!(g.delta(4, 0.1), 0.1);
    }

    #[test]
    fn clearance_field_distances() {
        let spec = GridSpec::new(1.0, 5, 5).unwrap();
        let mut cells = vec![true; 25];
        cells[0] = false;
        let map = ClosureMap {
            spec,
            side_length: 1.0,
            mu_c: 0.0,
            cells,
        };
        let f = map.clearance_field();
        assert_eq!(f[0], 0.0);
        assert!((f[1] - 0.25).abs() < 1e-15);
        assert!((f[6] - (2.0f64).sqrt() * 0.25).abs() < 1e-15);
        assert_eq!(f[24], 1.0);
    }

    #[test]
    fn containment_requires_same_grid() {
        let scene = Scene::reference(0.2);
        let a = closure_map(&scene, GridSpec::new(0.5, 4, 4).unwrap());
        let b = closure_map(&scene, GridSpec::new(0.5, 5, 4).unwrap());
        assert_eq!(map_containment(&a, &b), Err(Error::SpecMismatch));
        assert_eq!(map_containment(&a, &a), Ok(true));
    }

    #[test]
    fn empty_map_is_contained_everywhere() {
        let scene = Scene::reference(0.2);
        let spec = GridSpec::new(0.5, 6, 6).unwrap();
        let mut zero = scene;
        zero.supports.mu_a = 0.0;
        zero.supports.mu_b = 0.0;
        zero.palm.mu_c = 0.0;
        let empty = closure_map(&zero, spec);
        assert_eq!(empty.count_true(), 0);
        assert_eq!(map_containment(&empty, &closure_map(&scene, spec)), Ok(true));
    }

    #[test]
    fn palm_tip_at_bottom_right_vertex() {
        let scene = Scene::reference(0.2);
        let cfg = Configuration::new(0.4, 0.0);
        let (pose, lambda) = palm_pose_for_config(&scene, cfg).unwrap();
        assert_eq!(lambda, 0.0);
        let br = scene.world_vertices(0.4).unwrap()[1];
        assert!(pose.translation.distance(br) < 1e-12);
        let edge = scene.edge_line(0.4).unwrap().direction();
        assert!(pose.transform_vector(palm_arc_tangent(0.08, 0.0)).distance(edge) < 1e-12);
    }

    #[test]
    fn rolling_changes_orientation_by_arc_angle() {
        let scene = Scene::reference(0.2);
        let (p1, _) = palm_pose_for_config(&scene, Configuration::new(0.3, 0.02)).unwrap();
        let (p2, _) = palm_pose_for_config(&scene, Configuration::new(0.3, 0.05)).unwrap();
        assert!(((p2.angle() - p1.angle()) - 0.03 / 0.08).abs() < 1e-12);
    }

    #[test]
    fn arc_budget() {
        let mut scene = Scene::reference(0.2);
        scene.palm.tip_arc_length = 0.04;
        assert!(matches!(
            palm_pose_for_config(&scene, Configuration::new(0.3, 0.05)),
            Err(Error::ArcBudgetExceeded { .. })
        ));
    }
}
