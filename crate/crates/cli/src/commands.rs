//! The four subcommands. Each returns a [`RunReport`] on success; files go
//! to the output directory, the report goes to standard output.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use tiltpick::closure::force_closure;
use tiltpick::mobility::{classify, ungrasp_cw_feasible, TiltMode};
use tiltpick::planner::{closure_map, palm_trajectory, plan_on_map, ClosureMap, TiltPlan};
use tiltpick::scene::Configuration;

use crate::error::CliError;
use crate::scenefile::{Overrides, SceneFile};
use crate::svg::{closure_map_svg, num, scene_svg};

/// Inputs shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Context {
    pub scene_file: SceneFile,
    pub overrides: Overrides,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
}

impl Context {
    pub fn new(scene_file: SceneFile, out_dir: impl Into<PathBuf>) -> Self {
        Context {
            scene_file,
            overrides: Overrides::default(),
            seed: None,
            out_dir: out_dir.into(),
        }
    }

    fn effective(&self) -> SceneFile {
        self.scene_file.with_overrides(&self.overrides)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub arguments: Value,
    pub overrides: Overrides,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub parameters: SceneFile,
    pub verdicts: Value,
    pub outputs: Vec<String>,
    pub wall_clock_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapFormat {
    Csv,
    Svg,
    Both,
}

/// Rounds to six decimals for emitted text.
fn r6(x: f64) -> f64 {
    let y = (x * 1e6).round() / 1e6;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn config_json(c: Configuration) -> Value {
    json!({ "theta_deg": r6(c.theta.to_degrees()), "delta_m": r6(c.delta) })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<String, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path.display().to_string())
}

fn report(
    ctx: &Context,
    command: &str,
    arguments: Value,
    verdicts: Value,
    outputs: Vec<String>,
    started: Instant,
) -> RunReport {
    RunReport {
        command: command.to_string(),
        arguments,
        overrides: ctx.overrides,
        seed: ctx.seed,
        parameters: ctx.effective(),
        verdicts,
        outputs,
        wall_clock_ms: started.elapsed().as_millis() as u64,
    }
}

fn configuration(theta_deg: f64, delta: f64) -> Configuration {
    Configuration::new(theta_deg.to_radians(), delta)
}

pub fn cmd_classify(ctx: &Context, theta_deg: f64, delta: f64) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let resolved = ctx.effective().resolve()?;
    let scene = resolved.scene;
    let cfg = configuration(theta_deg, delta);
    let contacts = scene.contacts(cfg)?;
    let analysis = classify(&scene, cfg)?;
    let achievable = match analysis.mode {
        TiltMode::Infeasible => false,
        TiltMode::StickyRequired => scene.palm.sticky,
        _ => true,
    };
    let verdicts = json!({
        "tilt_mode": analysis.mode.name(),
        "ordering": analysis.ordering.notation(),
        "b1_param": analysis.images.param1.map(r6),
        "b2_param": analysis.images.param2.map(r6),
        "c_param": r6(analysis.c_param),
        "boundary_adjacent": analysis.boundary_adjacent,
        "wedge": analysis.wedge,
        "slide_balance": analysis.slide_balance,
        "sticky_balance": analysis.sticky_balance,
        "achievable_with_palm": achievable,
        "force_closure": force_closure(&contacts),
        "frictionless_cw_escape": ungrasp_cw_feasible(&contacts),
    });
    Ok(report(
        ctx,
        "classify",
        json!({ "theta_deg": theta_deg, "delta": delta }),
        verdicts,
        Vec::new(),
        started,
    ))
}

/// `theta_deg,delta_m,closure` rows, θ outer.
pub fn closure_map_csv(map: &ClosureMap) -> String {
    let mut out = String::from("theta_deg,delta_m,closure\n");
    for (_, _, theta, delta, closed) in map.iter() {
        out.push_str(&format!(
            "{},{},{}\n",
            num(theta.to_degrees()),
            num(delta),
            u8::from(closed)
        ));
    }
    out
}

pub fn cmd_map(ctx: &Context, format: MapFormat) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let resolved = ctx.effective().resolve()?;
    let map = closure_map(&resolved.scene, resolved.grid);
    let mut outputs = Vec::new();
    if matches!(format, MapFormat::Csv | MapFormat::Both) {
        outputs.push(write_file(&ctx.out_dir, "closure_map.csv", &closure_map_csv(&map))?);
    }
    if matches!(format, MapFormat::Svg | MapFormat::Both) {
        outputs.push(write_file(&ctx.out_dir, "closure_map.svg", &closure_map_svg(&map))?);
    }
    let verdicts = json!({
        "cells": map.spec.len(),
        "closed_cells": map.count_true(),
    });
    Ok(report(ctx, "map", json!({ "format": format }), verdicts, outputs, started))
}

fn plan_json(plan: &TiltPlan) -> Value {
    json!({
        "start": config_json(plan.start),
        "target": config_json(plan.target),
        "clearance": r6(plan.clearance),
        "waypoints": plan.waypoints.iter().map(|&w| config_json(w)).collect::<Vec<_>>(),
    })
}

pub fn cmd_plan(ctx: &Context, samples: usize) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let resolved = ctx.effective().resolve()?;
    let scene = resolved.scene;
    let map = closure_map(&scene, resolved.grid);
    let plan = plan_on_map(&scene, &map, samples)?;
    let traj = palm_trajectory(&plan, &scene)?;

    let trajectory = json!({
        "palm_poses": traj.poses.iter().map(|p| json!({
            "angle_deg": r6(p.angle().to_degrees()),
            "x": r6(p.translation.x),
            "z": r6(p.translation.z),
        })).collect::<Vec<_>>(),
        "contact_params": traj.contact_params.iter().map(|&l| r6(l)).collect::<Vec<_>>(),
        "critical_angle_deg": r6(traj.critical_angle.to_degrees()),
        "final_palm_angle_deg": r6(traj.final_palm_angle.to_degrees()),
        "restrained_at_target": traj.restrained_at_target,
    });
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    let outputs = vec![
        write_file(&ctx.out_dir, "plan.json", &pretty(&plan_json(&plan)))?,
        write_file(&ctx.out_dir, "trajectory.json", &pretty(&trajectory))?,
    ];
    let verdicts = json!({
        "start": config_json(plan.start),
        "target": config_json(plan.target),
        "clearance": r6(plan.clearance),
        "critical_angle_deg": r6(traj.critical_angle.to_degrees()),
        "final_palm_angle_deg": r6(traj.final_palm_angle.to_degrees()),
        "restrained_at_target": traj.restrained_at_target,
    });
    Ok(report(ctx, "plan", json!({ "samples": samples }), verdicts, outputs, started))
}

pub fn cmd_render(
    ctx: &Context,
    theta_deg: f64,
    delta: f64,
    out_svg: Option<&Path>,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let resolved = ctx.effective().resolve()?;
    let scene = resolved.scene;
    let cfg = configuration(theta_deg, delta);
    let contacts = scene.contacts(cfg)?;
    let vertices = scene.world_vertices(cfg.theta)?;
    let images = tiltpick::mobility::b_prime_points(&contacts.b, &scene.edge_line(cfg.theta)?);
    let image_points: Vec<_> = [images.b1, images.b2].into_iter().flatten().collect();
    let svg = scene_svg(&scene, &vertices, &contacts, &image_points);

    let written = match out_svg {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
            }
            std::fs::write(path, &svg).map_err(|e| CliError::io(path, e))?;
            path.display().to_string()
        }
        None => write_file(&ctx.out_dir, "scene.svg", &svg)?,
    };
    Ok(report(
        ctx,
        "render",
        json!({ "theta_deg": theta_deg, "delta": delta }),
        json!({ "images_on_edge_line": image_points.len() }),
        vec![written],
        started,
    ))
}
