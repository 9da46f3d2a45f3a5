use thiserror::Error;

/// Errors produced by the geodesic engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesicError {
    #[error("dimension {0} is below the minimum of 3")]
    DimensionTooSmall(usize),

    #[error("dimension {found} exceeds the configured cap of {cap}")]
    DimensionCap { found: usize, cap: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("point is not on the cube surface (sup norm {0})")]
    NotOnSurface(f64),

    #[error("parameter {name} = {value} lies outside [-1, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("path has no vertices")]
    EmptyPath,

    #[error("leg {0} joins points that share no face")]
    LegOffSurface(usize),

    #[error("index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exact candidate count overflows at m = {0}")]
    CountOverflow(u32),

    #[error("grid resolution K = {0} must be even and at least 10")]
    BadResolution(usize),

    #[error("grid needs {nodes} lattice slots, budget is {budget}")]
    BudgetExceeded { nodes: u128, budget: u128 },

    #[error("linear program failed: {0}")]
    Solver(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, GeodesicError>;
