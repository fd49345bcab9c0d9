use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no valid placement of the object at theta = {theta_deg:.3} deg")]
    NoValidPlacement { theta_deg: f64 },

    #[error("delta out of range: {delta} not in [0, {side_length}]")]
    DeltaOutOfRange { delta: f64, side_length: f64 },

    #[error("contact has no slip direction")]
    MissingSlipDirection,

    #[error("friction-cone edge of B does not reach the line of the palm-side edge")]
    DegenerateEdgeImages,

    #[error("normal lines of A and B are parallel")]
    ParallelNormals,

    #[error("no straight-line tilt path stays in force closure")]
    NoFeasiblePath,

    #[error("contact parameter {delta} exceeds the palm arc budget {budget}")]
    ArcBudgetExceeded { delta: f64, budget: f64 },

    #[error("closure maps were computed on different grids")]
    SpecMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
