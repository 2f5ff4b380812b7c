use thiserror::Error;

/// Errors produced by construction, parsing and metric preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed token {token:?} at position {position}")]
    MalformedToken { token: String, position: usize },
    #[error("table length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),
    #[error("entry {entry:#x} at index {index} does not fit in {m} output bits")]
    EntryOutOfRange { entry: u32, index: usize, m: u32 },
    #[error("empty input")]
    EmptyInput,
    #[error("input width {0} out of supported range 1..=16")]
    UnsupportedWidth(u32),
    #[error("compact hex format requires m <= 4, got m = {0}")]
    CompactHexWidth(u32),
    #[error("S-box is not a bijection")]
    NotBijective,
    #[error("operation requires n = m, got n = {n}, m = {m}")]
    NotSquare { n: u32, m: u32 },
    #[error("operation requires m >= 2, got m = {0}")]
    TooFewOutputBits(u32),
    #[error("metric rejected for n = {n}: limit is n <= {limit}")]
    WidthPolicy { n: u32, limit: u32 },
    #[error("dimension mismatch: transform is {t_n}x{t_m}, S-box is {s_n}x{s_m}")]
    DimensionMismatch { t_n: u32, t_m: u32, s_n: u32, s_m: u32 },
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {degree}")]
    ReducibleModulus { modulus: u32, degree: u32 },
    #[error("unknown property id {0:?}")]
    UnknownProperty(String),
    #[error("unknown builtin id {0:?}")]
    UnknownBuiltin(String),
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("comparison needs at least 2 reports, got {0}")]
    TooFewReports(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
