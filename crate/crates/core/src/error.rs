use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The CLI maps [`Error::Parse`] to exit status 2 and every other variant to
/// exit status 1, so new variants should be domain errors unless they come
/// from reading text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in ambient dimension {ambient_dim})")]
    NotFullDimensional { affine_dim: usize, ambient_dim: usize },

    #[error("polytope is not centred: vertex centroid is {centroid}")]
    NotCentered { centroid: String },

    #[error("origin is not an interior point of the polytope; polar dual would be unbounded")]
    OriginNotInterior,

    #[error("zero rank is not a support label (point {point})")]
    ZeroRank { point: String },

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("relator {relator} does not vanish under the abelianization (image {image})")]
    RelatorNotInKernel { relator: usize, image: String },

    #[error("determinant route needs deficiency one: {generators} generators, {relators} relators")]
    Deficiency { generators: usize, relators: usize },

    #[error("column minors disagree after normalization: {first} vs {second}")]
    MinorDisagreement { first: String, second: String },

    #[error("Jacobian must be square: {images} images for {generators} generators")]
    NonSquareJacobian { images: usize, generators: usize },

    #[error("zero polynomial has no support")]
    ZeroPolynomial,

    #[error("unknown example {name:?}; registered: {registered}")]
    UnknownExample { name: String, registered: String },

    #[error("cannot render ambient dimension {dim}; project to at most 3 coordinates first")]
    RenderDimension { dim: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Empty(_) => "empty_input",
            Error::NotFullDimensional { .. } => "not_full_dimensional",
            Error::NotCentered { .. } => "not_centered",
            Error::OriginNotInterior => "origin_not_interior",
            Error::ZeroRank { .. } => "zero_rank",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::RelatorNotInKernel { .. } => "relator_not_in_kernel",
            Error::Deficiency { .. } => "deficiency",
            Error::MinorDisagreement { .. } => "minor_disagreement",
            Error::NonSquareJacobian { .. } => "non_square_jacobian",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::UnknownExample { .. } => "unknown_example",
            Error::RenderDimension { .. } => "render_dimension",
            Error::Parse(_) => "parse",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
