use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The structural fact about genuine threefolds that an input contradicts.
///
/// None of these can be decided from lattice data alone, so a violation
/// brands the input as non-geometric instead of failing the computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    /// `T(u, v, w) = 0` in the hyperbolic frame; excluded by the Hodge index theorem.
    HodgeIndex,
    /// `T(w, w2, w2) = 0` in the unipotent frame; excluded by the Lefschetz hyperplane theorem.
    Lefschetz,
    /// A unipotent symmetry with a rank-one Jordan block.
    RankOneJordanBlock,
}

impl Mechanism {
    pub fn description(self) -> &'static str {
        match self {
            Mechanism::HodgeIndex => {
                "uvw = 0 in the hyperbolic eigenframe, which the Hodge index theorem forbids"
            }
            Mechanism::Lefschetz => {
                "w*w2^2 = 0 in the unipotent frame, which the Lefschetz hyperplane theorem forbids"
            }
            Mechanism::RankOneJordanBlock => {
                "unipotent symmetry with a rank-one Jordan block (rank(g - id) = 1), which is \
                 excluded for actions on a Calabi-Yau threefold via the Hodge index and \
                 Lefschetz hyperplane theorems"
            }
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible quadratic fields Q(sqrt {0}) and Q(sqrt {1})")]
    IncompatibleFields(u64, u64),
    #[error("t^2 - {0}t + 1 has complex roots")]
    ComplexRoots(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector")]
    ZeroVector,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i128),
    #[error("map does not preserve the linear form")]
    DoesNotPreserveL,
    #[error("element does not have finite order")]
    NotFiniteOrder,
    #[error("eigenvalue tag inconsistent with order {0}")]
    InconsistentTag(u32),
    #[error("element is not unipotent")]
    NotUnipotent,
    #[error("element is the identity")]
    IsIdentity,
    #[error("point does not lie on the quadric")]
    NotOnQuadric,
    #[error("quadric is singular at the point")]
    SingularPoint,
    #[error("geometric inconsistency: {mechanism}: {detail}")]
    GeometricInconsistency { mechanism: Mechanism, detail: String },
    #[error("intersection relations not verified: {0}")]
    RelationsNotVerified(String),
    #[error("map does not preserve the pair of lines")]
    LinesNotPreserved,
    #[error("element is not unipotent upper-triangular in the frame: {0}")]
    NotUnipotentInFrame(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("value {0} is not an integer")]
    NonIntegral(String),
    #[error("bound {bound} exceeds the limit {limit} (pass the override to allow it)")]
    BoundTooLarge { bound: u32, limit: u32 },
    #[error("generator {0} does not preserve the cubic and linear forms")]
    NonPreservingGenerator(usize),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    pub fn geometric(mechanism: Mechanism, detail: impl Into<String>) -> Self {
        Error::GeometricInconsistency {
            mechanism,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
