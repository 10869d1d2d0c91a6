use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::numberfield::{validate_ideal, Ideal};
use crate::quaternion::QuaternionAlgebra;

/// [Γ(1) : Γ(𝔄)] = N(𝔄)^{4n²-1}
///   · Π_{𝔓|𝔄 split} Π_{j=2}^{2n} (1 - N𝔓^{-j})
///   · Π_{𝔓|𝔄 ramified} (1 + N𝔓^{-1}) Π_{j=2}^{n} (1 - N𝔓^{-2j}).
pub fn congruence_index(algebra: &QuaternionAlgebra, n: u32, level: &Ideal) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if level.is_unit() {
        return Err(Error::UnitLevel);
    }
    validate_ideal(algebra.field(), level)?;
    let n = i64::from(n);
    let one = Rational::one();
    let mut acc = Rational::from_integer(level.norm()).pow(4 * n * n - 1)?;
    for pr in level.primes() {
        let q = Rational::from(pr.norm());
        if algebra.is_ramified_at(pr) {
            acc *= &one + q.pow(-1)?;
            for j in 2..=n {
                acc *= &one - q.pow(-2 * j)?;
            }
        } else {
            for j in 2..=2 * n {
                acc *= &one - q.pow(-j)?;
            }
        }
    }
    acc.to_integer()
        .ok_or_else(|| Error::Inconsistent(format!("congruence index {acc} is not integral")))
}
