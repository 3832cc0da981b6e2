use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Checks that are report-valued (validation, admissibility, Andreev) do not
/// use this type for their verdicts; they return reports instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point is not on the expected quadric (residual {residual:e})")]
    OffQuadric { residual: f64 },
    #[error("not a Lorentz transformation: {0}")]
    NotLorentz(String),
    #[error("infeasible spherical triangle with sides ({0}, {1}, {2})")]
    InvalidTriangle(f64, f64, f64),
    #[error("point is not a finite point of H^3 (Klein norm {0})")]
    NotFinitePoint(f64),
    #[error("point lies at projective infinity")]
    ProjectiveInfinity,
    #[error("combinatorial structure is invalid: {0}")]
    InvalidCombinatorics(String),
    #[error("degenerate polyhedron: {0}")]
    DegeneratePolyhedron(String),
    #[error("faces {0} and {1} do not meet at a dihedral angle")]
    NoDihedral(usize, usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("invalid cone metric: {0}")]
    InvalidSurface(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("outside the guaranteed domain of the inverse map (f = {0})")]
    OutsideDomain(f64),
    #[error("convexity failure at vertex {vertex}: {detail}")]
    ConvexityFailure { vertex: usize, detail: String },
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
