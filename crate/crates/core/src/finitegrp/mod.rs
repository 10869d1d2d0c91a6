//! Orders of the finite groups appearing in the local factors, and the
//! exhaustive enumeration oracles that check them at small sizes.

mod brute;
mod gf;

use num_bigint::BigInt;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::exact::Rational;

pub use brute::{
    brute_force_ramified_sl1, brute_force_ramified_sl1_with, brute_force_sl, brute_force_sl_with,
    brute_force_sp, brute_force_sp_with, brute_force_unitary, brute_force_unitary_with,
    SEARCH_SPACE_CAP,
};
pub use gf::Fq2;

/// Local behaviour of the quaternion algebra at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalKind {
    Split,
    Ramified,
}

fn check_q(q: u64) -> Result<Rational> {
    prime_power(q)?;
    Ok(Rational::from(q))
}

fn into_integer(value: Rational, what: &str) -> Result<BigInt> {
    value
        .to_integer()
        .ok_or_else(|| Error::Inconsistent(format!("{what} is not integral: {value}")))
}

/// Π_{j ∈ range} (1 + sign(j) · q^{-exp(j)}).
fn euler_product(
    q: &Rational,
    js: impl Iterator<Item = u64>,
    term: impl Fn(u64) -> (i64, i64),
) -> Rational {
    js.map(|j| {
        let (sign, exp) = term(j);
        Rational::one() + Rational::from(sign) * q.pow(-exp).expect("q >= 2")
    })
    .product()
}

/// |SL_m(F_q)| = q^{m²-1} Π_{j=2}^{m} (1 - q^{-j}).
pub fn sl_order(m: u32, q: u64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("SL_m needs m >= 2, got {m}")));
    }
    let qq = check_q(q)?;
    let m = u64::from(m);
    let v = qq.pow((m * m - 1) as i64)? * euler_product(&qq, 2..=m, |j| (-1, j as i64));
    into_integer(v, "|SL_m(q)|")
}

/// |Sp_n(F_q)| (rank n, 2n × 2n matrices) = q^d Π_{j=1}^{n} (1 - q^{-2j}),
/// d = n(2n+1).
pub fn sp_order(n: u32, q: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let qq = check_q(q)?;
    let n = u64::from(n);
    let d = n * (2 * n + 1);
    let v = qq.pow(d as i64)? * euler_product(&qq, 1..=n, |j| (-1, 2 * j as i64));
    into_integer(v, "|Sp_n(q)|")
}

/// Order of the fixed-point group modulo a ramified prime:
/// q^{n(2n+1)} Π_{j=1}^{n} (1 - (-1)^j q^{-j}).
pub fn ramified_local_order(n: u32, q: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let qq = check_q(q)?;
    let n = u64::from(n);
    let d = n * (2 * n + 1);
    let v = qq.pow(d as i64)?
        * euler_product(&qq, 1..=n, |j| (if j % 2 == 0 { -1 } else { 1 }, j as i64));
    into_integer(v, "ramified local order")
}

/// |U_n(F_{q²}/F_q)| = q^{n(n-1)/2} Π_{j=1}^{n} (q^j - (-1)^j).
pub fn unitary_order(n: u32, q: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    check_q(q)?;
    let n = u64::from(n);
    let qb = BigInt::from(q);
    let mut acc = num_traits::pow(qb.clone(), (n * (n - 1) / 2) as usize);
    for j in 1..=n {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc *= num_traits::pow(qb.clone(), j as usize) - sign;
    }
    Ok(acc)
}

/// |G(𝒪/𝔓^e)| for G = SL_n over a quaternion order:
/// q^{(e-1)(4n²-1)} · |G(𝒪/𝔓)|.
pub fn local_index_factor(q: u64, kind: LocalKind, n: u32, e: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if e == 0 {
        return Err(Error::OutOfRange("exponent e must be >= 1".into()));
    }
    let qq = check_q(q)?;
    let n64 = u64::from(n);
    let dim = (4 * n64 * n64 - 1) as i64;
    let residue = match kind {
        LocalKind::Split => Rational::from(sl_order(2 * n, q)?),
        LocalKind::Ramified => {
            qq.pow(dim)?
                * (Rational::one() + qq.pow(-1)?)
                * euler_product(&qq, 2..=n64, |j| (-1, 2 * j as i64))
        }
    };
    let v = qq.pow(dim * (i64::from(e) - 1))? * residue;
    into_integer(v, "local index factor")
}
