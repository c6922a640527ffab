use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuncError {
    #[error("{breakpoints} breakpoints cannot carry {pieces} pieces")]
    PieceCount { breakpoints: usize, pieces: usize },
    #[error("invalid partition: {0}")]
    Breakpoints(String),
    #[error("t = {0} lies outside (0, 1]")]
    OutOfDomain(f64),
    #[error("{0}")]
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-finite number at byte {pos}")]
    NonFinite { pos: usize },
    #[error("breakpoints out of order at byte {pos}: {msg}")]
    BreakpointOrder { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("exponent must lie in [1, inf], got {0}")]
    InvalidExponent(f64),
    #[error("integrand is not integrable at 0+ in the requested sense")]
    Divergent,
    #[error("{0}")]
    Domain(String),
    #[error("exponent {0} is outside the range 1 < p < inf")]
    ExponentRange(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("function is not a member of AC_{p}")]
    NotMember { p: f64 },
    #[error("exponent p = inf is not allowed here")]
    InfiniteExponent,
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiplierError {
    #[error("requires r > p > 1, got p = {p}, r = {r}")]
    ExponentOrder { p: f64, r: f64 },
    #[error("witness derivative is not in L^{r} near 0")]
    WitnessNotInLr { r: f64 },
    #[error("m is not a multiplier of AC_{p}")]
    NotMultiplier { p: f64 },
    #[error("dyadic depth must be at least 1")]
    Depth,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
