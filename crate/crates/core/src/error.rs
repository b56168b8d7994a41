use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("linear solve failed: {0}")]
    Linear(String),
    #[error("zero vector is not a projective object")]
    ZeroVector,
    #[error("conic is degenerate (determinant vanishes)")]
    DegenerateConic,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("projective transform is singular")]
    SingularTransform,
    #[error(
        "no rational point found on the conic within search bound {bound}; supply a seed point"
    )]
    NoRationalPoint { bound: i64 },
    #[error("seed point does not lie on the conic")]
    SeedNotOnConic,
    #[error("value is irrational and cannot be represented exactly: {0}")]
    Irrational(String),
    #[error("operation `{0}` is not supported on the exact backend")]
    Unsupported(&'static str),
    #[error("root finder did not converge (degree {degree}, residual {residual:e})")]
    RootsDidNotConverge { degree: usize, residual: f64 },
    #[error("degree {got} is too small (need at least {min})")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("polynomial division is inexact (residual norm {residual:e})")]
    InexactDivision { residual: f64 },
    #[error("form has repeated roots (chordal separation {separation:e}); the gon is degenerate")]
    RepeatedRoots { separation: f64 },
    #[error("sections are linearly dependent; determinant curve vanishes identically")]
    DependentSections,
    #[error("the zero form has no roots")]
    ZeroForm,
    #[error("degenerate Poncelet step: {0}")]
    DegenerateStep(String),
    #[error("invalid Poncelet flag: {0}")]
    InvalidFlag(String),
    #[error("porism certificate failed: solution space has dimension {dimension} (need >= 2)")]
    PorismCertificateFailed { dimension: usize },
    #[error(
        "determinant curve does not split off the outer conic (division residual {residual:e})"
    )]
    GammaSplitFailed { residual: f64 },
    #[error("Darboux completion failed: {reason} (max vertex residual {max_residual:e})")]
    DarbouxFailed { reason: String, max_residual: f64 },
    #[error("incidence certificate failed: {0}")]
    IncidenceFailed(String),
}
