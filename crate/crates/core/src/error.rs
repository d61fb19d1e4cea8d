use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group element is the antipode g = -1 (momentum at infinity)")]
    Antipode,
    #[error("Maurer-Cartan frame is singular (|det ω| = {det:e})")]
    SingularFrame { det: f64 },
    #[error("empty momentum grid: kmax = {kmax} < h = {h}")]
    EmptyGrid { h: f64, kmax: f64 },
    #[error("chart point {k:?} lies outside the grid band")]
    OutOfBand { k: [f64; 3] },
    #[error("cutoff parameter must be finite and non-negative, got {0}")]
    InvalidCutoff(f64),
    #[error("operation requires a > 0")]
    ClassicalLimit,
    #[error("field length {found} does not match grid size {expected}")]
    GridMismatch { expected: usize, found: usize },
    #[error("non-finite value encountered at t = {t}")]
    NonFinite { t: f64 },
    #[error("config error: {0}")]
    Config(String),
    #[error("snapshot error: {0}")]
    Snapshot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
