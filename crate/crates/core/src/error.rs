use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the recurrence, reconstruction and oracle routines.
///
/// Everything except [`Error::InvalidInput`], [`Error::OrderMismatch`] and
/// [`Error::ShapeMismatch`] signals a violated mathematical hypothesis of the
/// input data rather than a malformed input.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid {what}: {reason}")]
    InvalidInput { what: &'static str, reason: String },

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("pole collision at j={j}: z*d_{j} coincides with b_{j}")]
    PoleCollision { j: usize },

    #[error("degenerate last row: z*c_n coincides with a_n")]
    DegenerateLastRow,

    #[error(
        "point {point} lies in the spectrum of the leading pencil of order {order} \
         (P_{order} vanishes there)"
    )]
    SpectrumCollision { point: Complex64, order: usize },

    #[error(
        "Delta_{j} vanishes (|Delta_{j}| = {magnitude:.3e}): the pole alpha_{j} = b_{j}/d_{j} \
         must be non-real and lambda, mu must avoid the leading spectra"
    )]
    SingularDelta { j: usize, magnitude: f64 },

    #[error(
        "Hermitian consistency failed at j={j}: the conjugate unknown differs from conj(b_{j}) \
         by {gap:.3e}; the spectral data are inconsistent"
    )]
    HermitianInconsistent { j: usize, gap: f64 },

    #[error("component {i} vanishes where it is used as a divisor")]
    VanishingComponent { i: usize },

    #[error(
        "diagonal entry a_{i} came out with imaginary part {imag:.3e}; \
         the data are inconsistent with a Hermitian H"
    )]
    NonRealDiagonal { i: usize, imag: f64 },

    #[error("m-function difference at index {j} vanishes; the factorization hypothesis fails")]
    DegenerateDifference { j: usize },

    #[error("degree drop: leading coefficient kappa_{m} vanishes")]
    DegreeDrop { m: usize },

    #[error("matrix is numerically singular")]
    NearSingular,

    #[error("instance generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

impl Error {
    /// True for errors caused by the data violating a hypothesis of the
    /// method (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::InvalidInput { .. }
                | Error::OrderMismatch { .. }
                | Error::ShapeMismatch(_)
                | Error::IndexOutOfRange { .. }
        )
    }

    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            reason: reason.into(),
        }
    }
}
