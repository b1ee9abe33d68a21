//! Error type shared across the engine.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multiplication table is not associative: ({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NonAssociative(usize, usize, usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("multiplication table is not a Latin square (row or column {0} repeats a value)")]
    NotLatinSquare(usize),
    #[error("size {got} exceeds the configured bound {bound}")]
    SizeExceeded { got: usize, bound: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("element set is not a subgroup (missing identity, product, or inverse)")]
    NotASubgroup,
    #[error("subgroup does not live in the expected parent group")]
    SubgroupNotInParent,
    #[error("search exceeded the node budget of {0}")]
    BudgetExceeded(u64),
    #[error("map is not a homomorphism: f({0} * {1}) != f({0}) * f({1})")]
    NotHomomorphism(usize, usize),
    #[error("carrier is not closed under two-sided multiplication by the given subgroups")]
    CarrierNotClosed,
    #[error("twisted rule maps a class outside the carrier")]
    ActionNotClosed,
    #[error("twisted rule is not representative-independent on class {0}")]
    ActionNotWellDefined(usize),
    #[error("twisted rule applied twice does not return class {0} to itself")]
    NotInvolution(usize),
    #[error("the two amalgamated subgroups are not isomorphic")]
    NotIsomorphicSubgroups,
    #[error("push-outs do not share compatible factor and subgroup shapes")]
    IncompatibleShapes,
    #[error("amalgam is fictitious: the subgroup equals one of the factors")]
    FictitiousAmalgam,
    #[error("symmetric mode requires a twist element")]
    MissingXi,
    #[error("genus input fails invariant: {0}")]
    InvalidGenusInput(String),
    #[error("the bound of the normalizer decomposition only applies to non-symmetric amalgams")]
    SymmetricInputForNonsymmetricBound,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
