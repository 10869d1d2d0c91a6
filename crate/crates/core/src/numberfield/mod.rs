//! Base fields, prime splitting, ideals as formal products of primes, and
//! Dedekind zeta values.
//!
//! ℚ and real quadratic fields are computed natively. Other fields enter
//! through an [`ExternalField`] descriptor that supplies the degree,
//! discriminant, prime splitting and zeta values.

mod field;
mod ideal;
mod zeta;

pub use crate::arith::kronecker;
pub use field::{ExternalField, ExternalFieldDescriptor, QuadraticCharacter, TotallyRealField};
pub use ideal::{
    ideal_divides, ideal_from_integer, ideal_norm, ideals_up_to_norm, split_prime, validate_ideal,
    validate_prime, Ideal, PrimeIdeal,
};
pub use zeta::{
    dedekind_zeta_neg, gen_bernoulli, zeta_f_positive_even_numeric,
    zeta_f_positive_even_numeric_with, zeta_positive_even_from_functional_equation, ZetaEstimate,
};
