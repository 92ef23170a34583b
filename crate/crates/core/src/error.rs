//! Error type shared by all solvers.

/// Errors raised by geometry construction, measure building and solvers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// `Ψ` is only defined on the closed exterior of the unit disk.
    #[error("evaluation point lies inside the unit disk (|w| = {modulus})")]
    WInsideDisk { modulus: f64 },

    /// Newton inversion of `Ψ` stalled before reaching the residual target.
    #[error("conformal map inversion did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    /// Inversion converged to a point of the closed region.
    #[error("point lies inside the region")]
    InsideRegion,

    #[error("atom {index} lies outside the region")]
    AtomOutsideRegion { index: usize },

    #[error("degree {degree} too large for grid of {nodes} nodes (need 16*degree <= nodes)")]
    DegreeTooLargeForGrid { degree: usize, nodes: usize },

    #[error("gram matrix is numerically rank deficient")]
    RankDeficient,

    /// The density fails the Szegő condition at working precision; the
    /// requested quantity is undefined.
    #[error("density does not satisfy the entropy (Szego) condition")]
    NonSzego,

    #[error("interior atoms cannot be pushed forward to the circle")]
    InteriorAtomNotPushable,

    #[error("weight is positive on {support} support points, need at least {needed}")]
    RhoTooSparse { support: usize, needed: usize },

    /// Densities parameterized by the boundary angle have no values at
    /// interior points, so they cannot weight interior atoms.
    #[error("density kind `{0}` cannot be evaluated off the boundary")]
    DensityNotPointEvaluable(&'static str),

    #[error("{context}: {message}")]
    InvalidArgument {
        context: &'static str,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(context: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            context,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
