use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamentalDiscriminant(i64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid external field descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("splitting of {0} is missing from the external field descriptor")]
    MissingSplitting(u64),

    #[error("zeta value at 1-2j for j = {0} is missing from the external field descriptor")]
    MissingZetaValue(u32),

    #[error("operation requires the rationals or a real quadratic field: {0}")]
    UnsupportedField(&'static str),

    #[error("prime ideal {0} does not belong to this field")]
    ForeignPrime(String),

    #[error("ideals live over different fields: {0}")]
    FieldMismatch(String),

    #[error("the level must be a proper ideal (unit ideal given)")]
    UnitLevel,

    #[error("invalid quaternion algebra: {0}")]
    InvalidAlgebra(String),

    #[error("ramification parity violated: {finite} finite + {real} real ramified places is odd")]
    ParityViolation { finite: usize, real: u32 },

    #[error("totally definite algebras require n >= 2 (strong approximation fails for n = 1)")]
    TotallyDefiniteRankOne,

    #[error("rank n must be at least 1")]
    ZeroRank,

    #[error(
        "level divides (2): -1 is congruent to 1, so the congruence subgroup has torsion; \
         pass assume_torsion_free to override"
    )]
    TorsionUnverified,

    #[error("invalid signature class: {0}")]
    InvalidSignature(String),

    #[error(
        "algebra is not Fuchsian (must be a division algebra split at exactly one real place)"
    )]
    NotFuchsian,

    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(i64),

    #[error("search space of {states} states exceeds the cap of {cap}")]
    SearchSpaceExceeded { states: u128, cap: u128 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
