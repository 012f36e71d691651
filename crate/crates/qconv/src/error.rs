//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {got} outside supported range 1..={max}")]
    QubitCountOutOfRange { got: usize, max: usize },

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitIndexOutOfRange { index: usize, num_qubits: usize },

    #[error("gate requires distinct qubits, got {0:?}")]
    DuplicateQubits(Vec<usize>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state preparation target is not unit norm (norm {norm})")]
    NotUnitNorm { norm: f64 },

    #[error("pixel value {0} outside [0, 1]")]
    PixelOutOfRange(f64),

    #[error("window {hh}x{ww} does not fit image {height}x{width}")]
    WindowGeometry {
        hh: usize,
        ww: usize,
        height: usize,
        width: usize,
    },

    #[error("stride must be at least 1")]
    ZeroStride,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("ansatz shape invalid: {0}")]
    AnsatzShape(String),

    #[error("parameter index {index} out of range for {count} parameters")]
    ParamIndexOutOfRange { index: usize, count: usize },

    #[error("upstream gradient {0} outside [-0.5, 0.5]; range-map it first")]
    UpstreamOutOfRange(f64),

    #[error("finite-difference epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("upstream gradient count {upstream} does not match window count {windows}")]
    UpstreamLengthMismatch { upstream: usize, windows: usize },

    #[error("grid shapes differ: {a_rows}x{a_cols} vs {b_rows}x{b_cols}")]
    GridShapeMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },

    #[error("filter weights are not unit norm (norm {norm})")]
    NonUnitFilter { norm: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("data error in {path}: {reason}")]
    Data { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 usage/config, 2 data, 3 internal.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) => 1,
            Error::Data { .. } | Error::Io(_) => 2,
            _ => 3,
        }
    }
}
