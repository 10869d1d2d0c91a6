//! Quaternion algebras over the base field, described by their ramification.
//!
//! Every invariant used downstream depends only on the set of ramified
//! places, so no maximal order is stored: any maximal order Λ_D gives the
//! same numbers.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{factorize, kronecker_symbol};
use crate::error::{Error, Result};
use crate::numberfield::{split_prime, validate_prime, PrimeIdeal, TotallyRealField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    field: TotallyRealField,
    ram_finite: BTreeSet<PrimeIdeal>,
    ram_real: u32,
}

impl QuaternionAlgebra {
    /// Validates membership of the primes, `ram_real ≤ #real places` and
    /// the parity of the total number of ramified places.
    pub fn new(
        field: TotallyRealField,
        ram_finite: impl IntoIterator<Item = PrimeIdeal>,
        ram_real: u32,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for pr in ram_finite {
            validate_prime(&field, &pr)?;
            if !set.insert(pr.clone()) {
                return Err(Error::InvalidAlgebra(format!("prime {pr} listed twice")));
            }
        }
        if ram_real > field.num_real_places() {
            return Err(Error::InvalidAlgebra(format!(
                "{ram_real} ramified real places but the field has only {}",
                field.num_real_places()
            )));
        }
        if (set.len() as u64 + u64::from(ram_real)) % 2 == 1 {
            return Err(Error::ParityViolation {
                finite: set.len(),
                real: ram_real,
            });
        }
        Ok(QuaternionAlgebra {
            field,
            ram_finite: set,
            ram_real,
        })
    }

    /// The matrix algebra M_2(F).
    pub fn split(field: TotallyRealField) -> Self {
        QuaternionAlgebra {
            field,
            ram_finite: BTreeSet::new(),
            ram_real: 0,
        }
    }

    /// Ramified at the unique prime above each listed rational prime.
    /// Fails when some `p` splits, since the choice of prime is then
    /// ambiguous.
    pub fn from_rational_primes(
        field: TotallyRealField,
        primes: &[u64],
        ram_real: u32,
    ) -> Result<Self> {
        let mut ram = Vec::with_capacity(primes.len());
        for &p in primes {
            let mut above = split_prime(&field, p)?;
            if above.len() != 1 {
                return Err(Error::InvalidAlgebra(format!(
                    "{p} splits in {field}; name the prime explicitly"
                )));
            }
            ram.push(above.remove(0));
        }
        Self::new(field, ram, ram_real)
    }

    pub fn field(&self) -> &TotallyRealField {
        &self.field
    }

    pub fn ram_finite(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.ram_finite.iter()
    }

    pub fn is_ramified_at(&self, p: &PrimeIdeal) -> bool {
        self.ram_finite.contains(p)
    }

    /// r = |Ram_∞(D)|.
    pub fn ram_real_count(&self) -> u32 {
        self.ram_real
    }

    /// s = number of real places splitting D.
    pub fn split_real_count(&self) -> u32 {
        self.field.num_real_places() - self.ram_real
    }

    pub fn is_totally_definite(&self) -> bool {
        self.field.is_totally_real() && self.ram_real == self.field.num_real_places()
    }

    pub fn is_division(&self) -> bool {
        !self.ram_finite.is_empty() || self.ram_real > 0
    }

    pub fn is_fuchsian(&self) -> bool {
        self.is_division() && self.split_real_count() == 1
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D/{}: Ram_f = {{", self.field)?;
        for (i, p) in self.ram_finite.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}, r = {}", self.ram_real)
    }
}

/// d(D) = (-1)^r · Π_{𝔓 ∈ Ram_f(D)} N(𝔓).
pub fn signed_reduced_discriminant(d: &QuaternionAlgebra) -> BigInt {
    let abs = d
        .ram_finite
        .iter()
        .fold(BigInt::one(), |acc, p| acc * BigInt::from(p.norm()));
    if d.ram_real % 2 == 1 {
        -abs
    } else {
        abs
    }
}

pub fn is_totally_definite(d: &QuaternionAlgebra) -> bool {
    d.is_totally_definite()
}

pub fn is_division(d: &QuaternionAlgebra) -> bool {
    d.is_division()
}

pub fn is_fuchsian(d: &QuaternionAlgebra) -> bool {
    d.is_fuchsian()
}

/// Where a Hilbert symbol is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Infinite,
    Prime(u64),
}

/// Splits `x = p^k · u` with `p ∤ u`.
fn split_off(x: i64, p: i64) -> (u32, i64) {
    let mut k = 0;
    let mut u = x;
    while u % p == 0 {
        u /= p;
        k += 1;
    }
    (k, u)
}

/// Local Hilbert symbol (a, b)_v over ℚ, as ±1.
pub fn hilbert_symbol_q(a: i64, b: i64, place: Place) -> i8 {
    assert!(a != 0 && b != 0, "hilbert symbol of zero");
    match place {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_off(a, 2);
            let (beta, v) = split_off(b, 2);
            let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32 & 1;
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let p = p as i64;
            let (alpha, u) = split_off(a, p);
            let (beta, v) = split_off(b, p);
            let mut s: i8 = 1;
            if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= kronecker_symbol(u, p);
            }
            if alpha % 2 == 1 {
                s *= kronecker_symbol(v, p);
            }
            s
        }
    }
}

/// The quaternion algebra (a, b | ℚ), ramified exactly where the local
/// Hilbert symbol is -1.
pub fn hilbert_ramification_q(a: i64, b: i64) -> Result<QuaternionAlgebra> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidAlgebra(
            "Hilbert symbol entries must be nonzero".into(),
        ));
    }
    let mut candidates: BTreeSet<u64> = BTreeSet::from([2]);
    for x in [a, b] {
        candidates.extend(factorize(x.unsigned_abs()).into_iter().map(|(p, _)| p));
    }
    let field = TotallyRealField::rationals();
    let mut ram = Vec::new();
    for p in candidates {
        if hilbert_symbol_q(a, b, Place::Prime(p)) == -1 {
            ram.push(PrimeIdeal::new(p, 1, 1, "a")?);
        }
    }
    let ram_real = u32::from(hilbert_symbol_q(a, b, Place::Infinite) == -1);
    QuaternionAlgebra::new(field, ram, ram_real).map_err(|e| match e {
        Error::ParityViolation { .. } => {
            Error::Inconsistent(format!("Hilbert reciprocity failed for ({a}, {b}): {e}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> TotallyRealField {
        TotallyRealField::rationals()
    }

    fn ram_primes(d: &QuaternionAlgebra) -> Vec<u64> {
        d.ram_finite().map(|p| p.residue_char()).collect()
    }

    /// (a,b)_p = 1 iff z² = a x² + b y² has a primitive solution mod p^k
    /// for suitably large k; checked by enumeration for small odd p.
    fn hilbert_by_search(a: i64, b: i64, p: i64) -> i8 {
        let m = p.pow(3);
        let mut is_square = vec![false; m as usize];
        for z in 0..m {
            is_square[((z * z) % m) as usize] = true;
        }
        for x in 0..m {
            for y in 0..m {
                if x % p == 0 && y % p == 0 {
                    continue;
                }
                if is_square[(a * x * x + b * y * y).rem_euclid(m) as usize] {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn discriminants() {
        let d = QuaternionAlgebra::from_rational_primes(q(), &[2, 3], 0).unwrap();
        assert_eq!(signed_reduced_discriminant(&d), BigInt::from(6));
        let h = QuaternionAlgebra::from_rational_primes(q(), &[2], 1).unwrap();
        assert_eq!(signed_reduced_discriminant(&h), BigInt::from(-2));
        let k5 = TotallyRealField::quadratic(5).unwrap();
        let td = QuaternionAlgebra::new(k5, [], 2).unwrap();
        assert_eq!(signed_reduced_discriminant(&td), BigInt::from(1));
        assert_eq!(td.split_real_count(), 0);
    }

    #[test]
    fn predicates() {
        let d6 = QuaternionAlgebra::from_rational_primes(q(), &[2, 3], 0).unwrap();
        assert!(!d6.is_totally_definite() && d6.is_division() && d6.is_fuchsian());
        let m2 = QuaternionAlgebra::split(q());
        assert!(!m2.is_division() && !m2.is_fuchsian());
        let k5 = TotallyRealField::quadratic(5).unwrap();
        let td = QuaternionAlgebra::new(k5.clone(), [], 2).unwrap();
        assert!(td.is_totally_definite() && !td.is_fuchsian());
        let p5 = split_prime(&k5, 5).unwrap().remove(0);
        let fu = QuaternionAlgebra::new(k5, [p5], 1).unwrap();
        assert!(fu.is_fuchsian() && !fu.is_totally_definite());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            QuaternionAlgebra::from_rational_primes(q(), &[2], 0),
            Err(Error::ParityViolation { finite: 1, real: 0 })
        ));
        assert!(matches!(
            QuaternionAlgebra::new(q(), [], 2),
            Err(Error::InvalidAlgebra(_))
        ));
        let k5 = TotallyRealField::quadratic(5).unwrap();
        assert!(matches!(
            QuaternionAlgebra::from_rational_primes(k5.clone(), &[11], 1),
            Err(Error::InvalidAlgebra(_))
        ));
        let foreign = PrimeIdeal::new(3, 1, 1, "a").unwrap();
        assert!(matches!(
            QuaternionAlgebra::new(k5, [foreign], 1),
            Err(Error::ForeignPrime(_))
        ));
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert_ramification_q(-1, -1).unwrap();
        assert_eq!((ram_primes(&h), h.ram_real_count()), (vec![2], 1));
        let s = hilbert_ramification_q(1, 7).unwrap();
        assert_eq!((ram_primes(&s), s.ram_real_count()), (vec![], 0));
        let t = hilbert_ramification_q(-1, -3).unwrap();
        assert_eq!((ram_primes(&t), t.ram_real_count()), (vec![3], 1));
        let u = hilbert_ramification_q(2, 3).unwrap();
        assert_eq!(ram_primes(&u), vec![2, 3]);
        assert!(hilbert_ramification_q(0, 3).is_err());
    }

    #[test]
    fn parity_holds_on_exhaustive_range() {
        for a in (-20i64..=20).filter(|&x| x != 0) {
            for b in (-20i64..=20).filter(|&x| x != 0) {
                let d = hilbert_ramification_q(a, b).unwrap();
                let n = ram_primes(&d).len() as u32 + d.ram_real_count();
                assert_eq!(n % 2, 0, "({a}, {b})");
                assert_eq!(d, hilbert_ramification_q(b, a).unwrap());
            }
        }
    }

    #[test]
    fn odd_symbols_match_search() {
        for p in [3i64, 5, 7] {
            for a in [-7i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15] {
                for b in [-7i64, -3, -1, 2, 3, 5, 7, 14] {
                    assert_eq!(
                        hilbert_symbol_q(a, b, Place::Prime(p as u64)),
                        hilbert_by_search(a, b, p),
                        "({a},{b})_{p}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn odd_ramification_rejected(n_primes in 0usize..5, r in 0u32..=1) {
            let primes = [2u64, 3, 5, 7, 11];
            let res = QuaternionAlgebra::from_rational_primes(q(), &primes[..n_primes], r);
            if (n_primes as u32 + r) % 2 == 1 {
                prop_assert!(
                    matches!(res, Err(Error::ParityViolation { .. })),
                    "odd ramification was accepted"
                );
            } else {
                let d = res.unwrap();
                let disc = signed_reduced_discriminant(&d);
                let abs: u64 = primes[..n_primes].iter().product();
                let sign = if r == 1 { -1 } else { 1 };
                prop_assert_eq!(disc, BigInt::from(sign * abs as i64));
            }
        }
    }
}
