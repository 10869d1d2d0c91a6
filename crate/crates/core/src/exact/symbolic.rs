use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Exact value `coeff · π^pi_exp · √radicand` with a squarefree radicand.
///
/// Canonical: zero is always `0 · π^0 · √1`, so derived equality compares
/// values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicScalar {
    coeff: Rational,
    pi_exp: i64,
    radicand: u64,
}

/// Splits `m` as `s² · t` with `t` squarefree; returns `(s, t)`.
pub fn square_part(m: u64) -> (u64, u64) {
    assert!(m >= 1, "square_part of zero");
    let mut rest = m;
    let mut s = 1u64;
    let mut t = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            t *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, t * rest)
}

impl SymbolicScalar {
    pub fn new(coeff: Rational, pi_exp: i64, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Ok(Self::zero());
        }
        let (s, t) = square_part(radicand);
        Ok(Self::canonical(coeff * Rational::from(s), pi_exp, t))
    }

    fn canonical(coeff: Rational, pi_exp: i64, radicand: u64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            SymbolicScalar {
                coeff,
                pi_exp,
                radicand,
            }
        }
    }

    pub fn zero() -> Self {
        SymbolicScalar {
            coeff: Rational::zero(),
            pi_exp: 0,
            radicand: 1,
        }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self::canonical(q, 0, 1)
    }

    pub fn pi() -> Self {
        Self::canonical(Rational::one(), 1, 1)
    }

    /// √m for a positive integer m.
    pub fn sqrt(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange("sqrt of zero".into()));
        }
        Self::new(Rational::one(), 0, m)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_exp(&self) -> i64 {
        self.pi_exp
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.pi_exp == 0 && self.radicand == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        let radicand = (self.radicand / g)
            .checked_mul(other.radicand / g)
            .expect("radicand overflow");
        let coeff = &self.coeff * &other.coeff * Rational::from(g);
        Self::canonical(coeff, self.pi_exp + other.pi_exp, radicand)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(c π^k √m) = (1/(c m)) π^{-k} √m
        let coeff = (&self.coeff * &Rational::from(self.radicand)).recip()?;
        Ok(Self::canonical(coeff, -self.pi_exp, self.radicand))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        if e == 0 {
            return Ok(Self::one());
        }
        // (√m)^e = m^{⌊e/2⌋} · √m^{e mod 2}
        let half = i64::try_from(e / 2).map_err(|_| Error::OutOfRange("exponent".into()))?;
        let coeff = base.coeff.pow(e as i64)? * Rational::from(base.radicand).pow(half)?;
        let radicand = if e % 2 == 1 { base.radicand } else { 1 };
        let pi_exp = base
            .pi_exp
            .checked_mul(e as i64)
            .ok_or_else(|| Error::OutOfRange("π exponent".into()))?;
        Ok(Self::canonical(coeff, pi_exp, radicand))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::canonical(&self.coeff * q, self.pi_exp, self.radicand)
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64()
            * std::f64::consts::PI.powi(self.pi_exp as i32)
            * (self.radicand as f64).sqrt()
    }
}

impl Mul for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        SymbolicScalar::mul(self, rhs)
    }
}

impl Mul for SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, rhs: SymbolicScalar) -> SymbolicScalar {
        SymbolicScalar::mul(&self, &rhs)
    }
}

impl fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        match self.pi_exp {
            0 => {}
            1 => write!(f, "*pi")?,
            k => write!(f, "*pi^{k}")?,
        }
        if self.radicand != 1 {
            write!(f, "*sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SymbolicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn sym(c: Rational, k: i64, m: u64) -> SymbolicScalar {
        SymbolicScalar::new(c, k, m).unwrap()
    }

    #[test]
    fn products() {
        let two_pi_sq = sym(Rational::from(2), 2, 1);
        assert_eq!(&two_pi_sq * &two_pi_sq, sym(Rational::from(4), 4, 1));

        let r5 = SymbolicScalar::sqrt(5).unwrap();
        let p = &r5 * &r5;
        assert!(p.is_rational());
        assert_eq!(p.to_rational(), Some(Rational::from(5)));

        let a = sym(Rational::from(3), 0, 2);
        let b = SymbolicScalar::sqrt(6).unwrap();
        assert_eq!(&a * &b, sym(Rational::from(6), 0, 3));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(sym(Rational::one(), 0, 12), sym(Rational::from(2), 0, 3));
        assert_eq!(sym(Rational::zero(), 7, 5), SymbolicScalar::zero());
        assert!(SymbolicScalar::zero().is_rational());
        assert!(!SymbolicScalar::pi().is_rational());
        assert_eq!(square_part(72), (6, 2));
        assert_eq!(square_part(1), (1, 1));
        assert_eq!(square_part(97), (1, 97));
    }

    #[test]
    fn powers_and_inverse() {
        let r5 = SymbolicScalar::sqrt(5).unwrap();
        assert_eq!(r5.pow(3).unwrap(), sym(Rational::from(5), 0, 5));
        assert_eq!(r5.pow(-1).unwrap(), sym(ratio(1, 5), 0, 5));
        let x = sym(ratio(2, 3), 2, 7);
        assert_eq!(&x * &x.recip().unwrap(), SymbolicScalar::one());
        assert_eq!(x.pow(-2).unwrap(), x.pow(2).unwrap().recip().unwrap());
        assert_eq!(SymbolicScalar::zero().pow(-1), Err(Error::DivisionByZero));
        assert_eq!(SymbolicScalar::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(x.pow(0).unwrap(), SymbolicScalar::one());
    }

    #[test]
    fn display() {
        assert_eq!(sym(ratio(8, 3), 6, 1).to_string(), "8/3*pi^6");
        assert_eq!(sym(Rational::from(5), 0, 5).to_string(), "5*sqrt(5)");
    }

    fn arb_scalar() -> impl Strategy<Value = SymbolicScalar> {
        (-30i64..30, 1i64..20, -6i64..6, 1u64..60).prop_map(|(n, d, k, m)| sym(ratio(n, d), k, m))
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn canonicalization_is_idempotent(a in arb_scalar()) {
            let again = sym(a.coeff().clone(), a.pi_exp(), a.radicand());
            prop_assert_eq!(&again, &a);
            prop_assert_eq!(square_part(a.radicand()).0, 1);
        }

        #[test]
        fn float_image_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            let lhs = (&a * &b).to_f64();
            let rhs = a.to_f64() * b.to_f64();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1e-300));
        }
    }
}
