use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::TotallyRealField;
use crate::arith::{factorize, is_prime, kronecker_symbol};
use crate::error::{Error, Result};

/// A prime ideal 𝔓 above the rational prime `p`, with residue degree `f`
/// and ramification index `e`. Conjugate primes above a split `p` are told
/// apart by `label`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal {
    p: u64,
    f: u32,
    e: u32,
    label: String,
}

impl PrimeIdeal {
    pub fn new(p: u64, f: u32, e: u32, label: impl Into<String>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 || e == 0 {
            return Err(Error::OutOfRange(format!(
                "prime above {p}: residue degree and ramification index must be >= 1"
            )));
        }
        Ok(PrimeIdeal {
            p,
            f,
            e,
            label: label.into(),
        })
    }

    pub fn residue_char(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn ramification_index(&self) -> u32 {
        self.e
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// N(𝔓) = p^f.
    pub fn norm(&self) -> u64 {
        self.p
            .checked_pow(self.f)
            .expect("prime ideal norm overflows u64")
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.p, self.f, self.e, self.label)
    }
}

impl Serialize for PrimeIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts `p:f:e:label`.
impl FromStr for PrimeIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "prime ideal p:f:e:label",
            input: s.to_string(),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [p, f, e, label] = parts.as_slice() else {
            return Err(err());
        };
        let p = p.parse().map_err(|_| err())?;
        let f = f.parse().map_err(|_| err())?;
        let e = e.parse().map_err(|_| err())?;
        PrimeIdeal::new(p, f, e, *label)
    }
}

/// Formal product of prime ideals. The empty product is the unit ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ideal {
    factors: BTreeMap<PrimeIdeal, u32>,
}

impl Ideal {
    pub fn unit() -> Self {
        Ideal::default()
    }

    pub fn prime(p: PrimeIdeal) -> Self {
        Ideal::prime_power(p, 1)
    }

    pub fn prime_power(p: PrimeIdeal, k: u32) -> Self {
        let mut factors = BTreeMap::new();
        if k > 0 {
            factors.insert(p, k);
        }
        Ideal { factors }
    }

    pub fn from_factors(it: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Self {
        let mut out = Ideal::unit();
        for (p, k) in it {
            out = out.mul(&Ideal::prime_power(p, k));
        }
        out
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// ν_𝔓(self).
    pub fn valuation(&self, p: &PrimeIdeal) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&PrimeIdeal, u32)> {
        self.factors.iter().map(|(p, &k)| (p, k))
    }

    pub fn primes(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.factors.keys()
    }

    pub fn norm(&self) -> BigInt {
        self.factors
            .iter()
            .map(|(p, &k)| num_traits::pow(BigInt::from(p.norm()), k as usize))
            .fold(BigInt::one(), |a, b| a * b)
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let mut factors = self.factors.clone();
        for (p, &k) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += k;
        }
        Ideal { factors }
    }

    /// True iff self | other, i.e. ν_𝔓(self) ≤ ν_𝔓(other) for all 𝔓.
    pub fn divides(&self, other: &Ideal) -> bool {
        self.factors.iter().all(|(p, &k)| k <= other.valuation(p))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        for (i, (p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}^{k}")?;
        }
        Ok(())
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts a comma-separated list of `p:f:e:label` or `p:f:e:label^k`.
impl FromStr for Ideal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Ideal::unit();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (prime, k) = match tok.split_once('^') {
                Some((pr, k)) => (
                    pr,
                    k.trim().parse::<u32>().map_err(|_| Error::Parse {
                        what: "ideal exponent",
                        input: tok.to_string(),
                    })?,
                ),
                None => (tok, 1),
            };
            out = out.mul(&Ideal::prime_power(prime.parse()?, k));
        }
        Ok(out)
    }
}

fn label_for(i: usize) -> String {
    let mut s = String::new();
    let mut n = i;
    loop {
        s.insert(0, (b'a' + (n % 26) as u8) as char);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s
}

/// The prime ideals above the rational prime `p`, labelled `a`, `b`, ...
pub fn split_prime(field: &TotallyRealField, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pairs: Vec<(u32, u32)> = match field {
        TotallyRealField::Rationals => vec![(1, 1)],
        TotallyRealField::RealQuadratic { .. } => {
            let disc = field.discriminant() as i64;
            match kronecker_symbol(disc, p as i64) {
                1 => vec![(1, 1), (1, 1)],
                -1 => vec![(2, 1)],
                _ => vec![(1, 2)],
            }
        }
        TotallyRealField::External(x) => x.splitting(p).ok_or(Error::MissingSplitting(p))?.to_vec(),
    };
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (f, e))| PrimeIdeal::new(p, f, e, label_for(i)))
        .collect()
}

/// The principal ideal N𝒪.
pub fn ideal_from_integer(field: &TotallyRealField, n: u64) -> Result<Ideal> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "level integer must be >= 2, got {n}"
        )));
    }
    let mut out = Ideal::unit();
    for (p, k) in factorize(n) {
        for pr in split_prime(field, p)? {
            let e = pr.ramification_index();
            out = out.mul(&Ideal::prime_power(pr, e * k));
        }
    }
    Ok(out)
}

/// Every proper ideal of norm at most `bound`, ordered by norm and then by
/// the text form.
pub fn ideals_up_to_norm(field: &TotallyRealField, bound: u64) -> Result<Vec<Ideal>> {
    let mut primes = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        primes.extend(
            split_prime(field, p)?
                .into_iter()
                .filter(|pr| pr.norm() <= bound),
        );
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Ideal::unit(), 1u64)];
    while let Some((start, ideal, norm)) = stack.pop() {
        if !ideal.is_unit() {
            out.push((norm, ideal.clone()));
        }
        for (i, pr) in primes.iter().enumerate().skip(start) {
            if let Some(next) = norm.checked_mul(pr.norm()).filter(|&m| m <= bound) {
                stack.push((i, ideal.mul(&Ideal::prime(pr.clone())), next));
            }
        }
    }
    out.sort_by_cached_key(|(norm, ideal)| (*norm, ideal.to_string()));
    Ok(out.into_iter().map(|(_, ideal)| ideal).collect())
}

pub fn ideal_norm(a: &Ideal) -> BigInt {
    a.norm()
}

/// Checks that every prime of `ideal` is a prime of `field`.
pub fn validate_ideal(field: &TotallyRealField, ideal: &Ideal) -> Result<()> {
    for pr in ideal.primes() {
        validate_prime(field, pr)?;
    }
    Ok(())
}

pub fn validate_prime(field: &TotallyRealField, pr: &PrimeIdeal) -> Result<()> {
    let above =
        split_prime(field, pr.residue_char()).map_err(|_| Error::ForeignPrime(pr.to_string()))?;
    if above.contains(pr) {
        Ok(())
    } else {
        Err(Error::ForeignPrime(pr.to_string()))
    }
}

/// `a | b`, after checking both ideals belong to `field`.
pub fn ideal_divides(field: &TotallyRealField, a: &Ideal, b: &Ideal) -> Result<bool> {
    for ideal in [a, b] {
        validate_ideal(field, ideal).map_err(|e| Error::FieldMismatch(e.to_string()))?;
    }
    Ok(a.divides(b))
}
