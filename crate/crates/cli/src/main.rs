use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tiltpick::planner::MIN_VALIDATION_SAMPLES;
use tiltpick_cli::{
    cmd_classify, cmd_map, cmd_plan, cmd_render, parse_grid, CliError, Context, MapFormat,
    Overrides, RunReport, SceneFile,
};

#[derive(Parser)]
#[command(name = "tiltpick", version, about = "Tilt-to-pick grasp analysis and planning")]
struct Cli {
    /// Scene file (JSON). Defaults to the built-in reference scene.
    #[arg(long, global = true)]
    scene: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for randomized test oracles; echoed in the report.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the palm friction coefficient.
    #[arg(long = "mu-c", global = true)]
    mu_c: Option<f64>,
    /// Override the support angle in degrees.
    #[arg(long = "psi-deg", global = true)]
    psi_deg: Option<f64>,
    /// Override the grid size as NxM (θ samples × δ samples).
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the tilt mode at one configuration.
    Classify {
        #[arg(long = "theta-deg", allow_hyphen_values = true)]
        theta_deg: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
    /// Sweep force closure over the (θ, δ) grid.
    Map {
        #[arg(long, value_enum, default_value = "csv")]
        format: MapFormat,
    },
    /// Plan a straight tilt path and the palm motion along it.
    Plan {
        /// Exact closure checks along each candidate path.
        #[arg(long, default_value_t = MIN_VALIDATION_SAMPLES)]
        samples: usize,
    },
    /// Draw one configuration as SVG.
    Render {
        #[arg(long = "theta-deg", allow_hyphen_values = true)]
        theta_deg: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        /// Output file; defaults to scene.svg in the output directory.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<RunReport, CliError> {
    let scene_file = match &cli.scene {
        Some(path) => SceneFile::load(path)?,
        None => SceneFile::reference(),
    };
    let ctx = Context {
        scene_file,
        overrides: Overrides {
            mu_c: cli.mu_c,
            psi_deg: cli.psi_deg,
            grid: cli.grid,
        },
        seed: cli.seed,
        out_dir: cli.out,
    };
    match cli.command {
        Command::Classify { theta_deg, delta } => cmd_classify(&ctx, theta_deg, delta),
        Command::Map { format } => cmd_map(&ctx, format),
        Command::Plan { samples } => cmd_plan(&ctx, samples),
        Command::Render {
            theta_deg,
            delta,
            svg,
        } => cmd_render(&ctx, theta_deg, delta, svg.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
