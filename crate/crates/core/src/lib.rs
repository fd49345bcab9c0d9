//! Planar quasistatic mechanics for picking an object by tilting it against
//! two supports with a passive, curved palm.
//!
//! The crate is organized bottom-up: [`geom2d`] primitives, the [`scene`]
//! world model, wrench-space [`closure`] tests, qualitative [`mobility`]
//! analysis and the configuration-space [`planner`].

pub mod closure;
pub mod error;
pub mod geom2d;
pub mod lp;
pub mod mobility;
pub mod planner;
pub mod scene;
pub mod wrench;

pub use error::{Error, Result};
