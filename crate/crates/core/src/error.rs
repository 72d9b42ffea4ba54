use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u64),
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {k} is not coprime to order {order}")]
    NotCoprime { k: i64, order: u64 },
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("invalid level r = {0}: must be odd and at least 5")]
    InvalidLevel(i64),
    #[error("invalid color {color} at level {r}")]
    InvalidColor { color: u32, r: u32 },
    #[error("coloring has {got} entries, link has {expected} components")]
    ColoringMismatch { got: usize, expected: usize },
    #[error("cable width {width} exceeds limit {limit}")]
    CableWidth { width: usize, limit: usize },
    #[error("{count} colorings exceed budget {limit}")]
    ColoringBudget { count: u128, limit: u128 },
    #[error("no fast path registered for {0} beyond r = 31; pass the generic-engine override")]
    FastPathRequired(String),
    #[error("surface data (g, n) = ({g}, {n}) is excluded from the dimension bound")]
    Inadmissible { g: i64, n: i64 },
    #[error("invalid pattern site {0}")]
    InvalidSite(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("illegal destabilization: {0}")]
    IllegalDestabilization(String),
    #[error("link needs at least two components")]
    TooFewComponents,
    #[error("invalid component {0}")]
    InvalidComponent(usize),
    #[error("split diagram: generator {0} does not occur")]
    SplitDiagram(usize),
    #[error("non-integral genus from chi = {chi}, boundary = {boundary}")]
    NonIntegralGenus { chi: i64, boundary: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("value is not real: imaginary residual {0}")]
    NotReal(f64),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidLevel(_) | Error::InvalidBraid(_) => 2,
            Error::CableWidth { .. } | Error::ColoringBudget { .. } | Error::FastPathRequired(_) => 3,
            _ => 4,
        }
    }
}
