use serde_json::{json, Value};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what} has size {size}, above the limit {limit}")]
    TooLarge { what: String, size: u64, limit: u64 },

    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("map is not injective: {0} and {1} have the same image")]
    NotInjective(usize, usize),
    #[error("representation law fails at ({0}, {1})")]
    NotARepresentation(usize, usize),
    #[error("action law fails at ({0}, {1}, point {2})")]
    NotAnAction(usize, usize, usize),

    #[error("cochain is not normalized at {0:?}")]
    NotNormalized(Vec<usize>),
    #[error("cochain is not a cocycle at {0:?}")]
    NotACocycle(Vec<usize>),
    #[error("unsupported Lie family {0}")]
    UnsupportedFamily(String),

    #[error("eigenvalue gaps stayed below tolerance after {0} reseeds")]
    NumericalDegeneracy(usize),

    #[error("bicharacter is degenerate: {0} pairs trivially with everything")]
    Degenerate(usize),
    #[error("bicharacter is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("no quadratic refinement exists")]
    NoRefinement,
    #[error("the level 0 centre of the circle is not finite")]
    ZeroLevelCircle,
    #[error("subgroup is not isotropic: q({0}) is nonzero")]
    NotIsotropic(usize),
    #[error("groups differ")]
    GroupMismatch,
    #[error("fusion ring has multiplicity {mult} at ({i}, {j}, {k})")]
    Multiplicity { i: usize, j: usize, k: usize, mult: u32 },

    #[error("simple {0} is not invertible")]
    NotInvertible(usize),
    #[error("listed invertibles are not closed under fusion at ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("point-level fusion is only available on circle models")]
    PointsUnsupported,
    #[error("{0} components exceed the drawing limit of 32")]
    TooManyComponents(usize),

    #[error("sheaves live over different bases")]
    BaseMismatch,
    #[error("point {0} is not in the support")]
    NotInSupport(usize),
}

impl Error {
    /// Short machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::TooLarge { .. } => "too_large",
            Error::NotAssociative(..) => "not_associative",
            Error::NoIdentity => "no_identity",
            Error::NoInverse(_) => "no_inverse",
            Error::NotAHomomorphism(..) => "not_a_homomorphism",
            Error::NotInjective(..) => "not_injective",
            Error::NotARepresentation(..) => "not_a_representation",
            Error::NotAnAction(..) => "not_an_action",
            Error::NotNormalized(_) => "not_normalized",
            Error::NotACocycle(_) => "not_a_cocycle",
            Error::UnsupportedFamily(_) => "unsupported_family",
            Error::NumericalDegeneracy(_) => "numerical_degeneracy",
            Error::Degenerate(_) => "degenerate",
            Error::NotSymmetric(..) => "not_symmetric",
            Error::NoRefinement => "no_refinement",
            Error::ZeroLevelCircle => "zero_level_circle",
            Error::NotIsotropic(_) => "not_isotropic",
            Error::GroupMismatch => "group_mismatch",
            Error::Multiplicity { .. } => "multiplicity",
            Error::NotInvertible(_) => "not_invertible",
            Error::NotClosed(..) => "not_closed",
            Error::PointsUnsupported => "points_unsupported",
            Error::TooManyComponents(_) => "too_many_components",
            Error::BaseMismatch => "base_mismatch",
            Error::NotInSupport(_) => "not_in_support",
        }
    }

    /// The offending data, if the error carries any.
    pub fn witness(&self) -> Value {
        match self {
            Error::Parse(s) | Error::InvalidInput(s) | Error::Unsupported(s) | Error::UnsupportedFamily(s) => {
                json!(s)
            }
            Error::TooLarge { what, size, limit } => json!({"what": what, "size": size, "limit": limit}),
            Error::NotAssociative(a, b, c) => json!([a, b, c]),
            Error::NoInverse(g) | Error::Degenerate(g) | Error::NotIsotropic(g) => json!(g),
            Error::NotInvertible(g) | Error::NotInSupport(g) | Error::TooManyComponents(g) => json!(g),
            Error::NotAHomomorphism(a, b)
            | Error::NotInjective(a, b)
            | Error::NotSymmetric(a, b)
            | Error::NotARepresentation(a, b)
            | Error::NotClosed(a, b) => json!([a, b]),
            Error::NotAnAction(a, b, x) => json!([a, b, x]),
            Error::NotNormalized(t) | Error::NotACocycle(t) => json!(t),
            Error::NumericalDegeneracy(n) => json!(n),
            Error::Multiplicity { i, j, k, mult } => json!({"triple": [i, j, k], "mult": mult}),
            Error::NoIdentity
            | Error::NoRefinement
            | Error::ZeroLevelCircle
            | Error::GroupMismatch
            | Error::PointsUnsupported
            | Error::BaseMismatch => Value::Null,
        }
    }
}
