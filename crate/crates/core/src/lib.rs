//! Exact Lefschetz numbers of the symplectic-type involution on principal
//! congruence subgroups of SL_n over quaternion orders, together with the
//! Euler characteristics of its fixed-point components, congruence indices,
//! and genera of cocompact Fuchsian quotients.
//!
//! Every closed formula is paired with an independent check: Bernoulli
//! recurrences against the Akiyama-Tanigawa table, finite group orders
//! against exhaustive enumeration, and the exact Euler characteristic
//! against a floating-point evaluation of the adelic volume formula.

mod arith;
pub mod error;
pub mod exact;
pub mod finitegrp;
pub mod lefschetz;
pub mod numberfield;
pub mod par;
pub mod quaternion;

pub use error::{Error, Result};
