//! Error types shared across the toolkit.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the scattering, inverse, and evaluation pipelines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// `1 + λ|ρ(λ)|²` fell below the configured positivity threshold, or
    /// `|α(λ)|` vanished on the real axis.
    #[error("spectral singularity: {0}")]
    SpectralSingularity(String),

    /// Two discrete eigenvalues closer than the configured separation.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    /// Malformed input file or schema violation.
    #[error("parse error: {0}")]
    Parse(String),

    /// Domain violation (invalid parameter combination or sample).
    #[error("invalid parameter: {0}")]
    Param(String),

    /// A λ requested outside the region of boundedness of a Jost column.
    #[error("λ outside domain of analyticity: {0}")]
    Domain(String),

    /// Product-integration marching failed to converge.
    #[error("Volterra iteration did not converge: {0}")]
    NoConvergence(String),

    /// Argument-principle count disagrees with the refined zero count.
    #[error("winding mismatch: {0}")]
    WindingMismatch(String),

    /// A zero of ᾰ was found too close to the real axis.
    #[error("eigenvalue near real axis: {0}")]
    NearAxis(String),

    /// Proportionality residual too large in the norming-constant extraction.
    #[error("ill-conditioned norming constant: {0}")]
    IllConditioned(String),

    /// Aggregate genericity failure of the direct map.
    #[error("non-generic potential: {0}")]
    GenericityFail(String),

    /// Contour circles would intersect each other or the real axis.
    #[error("contour geometry: {0}")]
    Geometry(String),

    /// The linear system of the reflectionless RHP is numerically singular.
    #[error("singular soliton system: {0}")]
    SingularSystem(String),

    /// Linear solver failure in the Beals–Coifman equation.
    #[error("solver failure: {0}")]
    SolverFail(String),

    /// Requested evaluation point lies on the branch cut of δ.
    #[error("point on cut: {0}")]
    OnCut(String),

    /// The `|λ₀| > M t^{-1/8}` hypothesis of the u-level asymptotics fails.
    #[error("outside asymptotic region: {0}")]
    Region(String),

    /// Two eigenvalues share a real part within tolerance.
    #[error("degenerate velocities: {0}")]
    DegenerateVelocities(String),

    /// PDE solution magnitude exceeded the configured bound.
    #[error("blow-up detected: {0}")]
    Blowup(String),

    /// Time-step stability condition violated.
    #[error("CFL violation: {0}")]
    Cfl(String),

    /// One or more grid points failed during a grid-level map.
    #[error("{} grid point(s) failed, first at index {first}: {error}", .indices.len())]
    GridFailures {
        /// Indices of the failed points.
        indices: Vec<usize>,
        /// Index of the first failure.
        first: usize,
        /// The first underlying error.
        error: Box<Error>,
    },
}

impl Error {
    /// Exit code classification for the CLI: domain errors exit 1.
    pub fn is_domain(&self) -> bool {
        true
    }
}
