//! Exact arithmetic: rationals, Bernoulli numbers and the closed symbolic
//! scalar `q · π^k · √m`.

mod bernoulli;
mod rational;
mod symbolic;

pub use bernoulli::{bernoulli, bernoulli_poly_eval, binomial, riemann_zeta_neg};
pub use rational::{ratio, Rational};
pub use symbolic::{square_part, SymbolicScalar};

pub fn symbolic_mul(a: &SymbolicScalar, b: &SymbolicScalar) -> SymbolicScalar {
    a.mul(b)
}

pub fn symbolic_pow(a: &SymbolicScalar, e: i64) -> crate::Result<SymbolicScalar> {
    a.pow(e)
}

pub fn symbolic_is_rational(a: &SymbolicScalar) -> bool {
    a.is_rational()
}
