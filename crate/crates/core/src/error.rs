use thiserror::Error;

use crate::lattice::LatticeVector;

/// Errors raised by the library. Every variant is a domain error: the input
/// violated a contract, or an exactness assertion failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid datum specification: {0}")]
    InvalidSpec(String),

    #[error("root/coroot pair {index} pairs to {value}, expected 2")]
    BadPairing { index: usize, value: i64 },

    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),

    #[error("root system is not closed under simple reflections: {0}")]
    NotReflectionClosed(String),

    #[error("vector {vector} has length {found}, expected rank {expected}")]
    RankMismatch { vector: LatticeVector, found: usize, expected: usize },

    #[error("coweight {0} is not dominant")]
    NotDominant(LatticeVector),

    #[error("coordinates {0:?} do not define an element of the cocharacter lattice")]
    NotInLattice(Vec<i64>),

    #[error("datum is not semisimple; take the derived datum first")]
    NotSemisimple,

    #[error("{what} is not integral: {value}")]
    NonIntegral { what: &'static str, value: String },

    #[error("negative multiplicity {value} at {at}")]
    NegativeMultiplicity { at: LatticeVector, value: i128 },

    #[error("weights outside the cone below {bound}: {offending:?}")]
    OutsideCone { bound: LatticeVector, offending: Vec<LatticeVector> },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("Weyl orbit exceeds the enumeration limit of {0} elements")]
    OrbitTooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid_spec",
            Error::BadPairing { .. } => "bad_pairing",
            Error::NotFiniteType(_) => "not_finite_type",
            Error::NotReflectionClosed(_) => "not_reflection_closed",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::NotDominant(_) => "not_dominant",
            Error::NotInLattice(_) => "not_in_lattice",
            Error::NotSemisimple => "not_semisimple",
            Error::NonIntegral { .. } => "non_integral",
            Error::NegativeMultiplicity { .. } => "negative_multiplicity",
            Error::OutsideCone { .. } => "outside_cone",
            Error::Overflow(_) => "overflow",
            Error::OrbitTooLarge(_) => "orbit_too_large",
        }
    }
}
