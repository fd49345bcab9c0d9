//! Command-line front end for the `tiltpick` library: scene files, the
//! `classify`, `map`, `plan` and `render` subcommands, and their CSV, JSON
//! and SVG outputs.

pub mod commands;
pub mod error;
pub mod scenefile;
pub mod svg;

pub use commands::{
    closure_map_csv, cmd_classify, cmd_map, cmd_plan, cmd_render, Context, MapFormat, RunReport,
};
pub use error::CliError;
pub use scenefile::{parse_grid, Overrides, SceneFile};
