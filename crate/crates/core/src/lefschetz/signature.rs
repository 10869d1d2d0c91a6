use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::binomial;

/// Local signatures (p_v, q_v) at the real places ramified in D, one pair
/// per place, with p_v + q_v = n and every q_v even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignatureClass {
    n: u32,
    signatures: Vec<(u32, u32)>,
}

impl SignatureClass {
    pub fn new(n: u32, signatures: Vec<(u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        for &(p, q) in &signatures {
            if p + q != n {
                return Err(Error::InvalidSignature(format!(
                    "({p},{q}): p + q must equal n = {n}"
                )));
            }
            if q % 2 == 1 {
                return Err(Error::InvalidSignature(format!(
                    "({p},{q}): q must be even"
                )));
            }
        }
        Ok(SignatureClass { n, signatures })
    }

    /// The class with no real ramified places.
    pub fn empty(n: u32) -> Self {
        SignatureClass {
            n,
            signatures: Vec::new(),
        }
    }

    /// Parses `"p,q;p,q;..."`; the empty string is the empty class.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let mut sigs = Vec::new();
        for tok in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let tok = tok.trim_start_matches('(').trim_end_matches(')');
            let err = || Error::Parse {
                what: "signature pair p,q",
                input: tok.to_string(),
            };
            let (p, q) = tok.split_once(',').ok_or_else(err)?;
            sigs.push((
                p.trim().parse().map_err(|_| err())?,
                q.trim().parse().map_err(|_| err())?,
            ));
        }
        Self::new(n, sigs)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn signatures(&self) -> &[(u32, u32)] {
        &self.signatures
    }

    /// Number of places r the class is defined for.
    pub fn len(&self) -> usize {
        self.signatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signatures.is_empty()
    }

    /// Π_v C(n, p_v).
    pub fn binomial_factor(&self) -> BigInt {
        self.signatures.iter().fold(BigInt::one(), |acc, &(p, _)| {
            acc * binomial(u64::from(self.n), u64::from(p))
        })
    }
}

impl fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, q)) in self.signatures.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({p},{q})")?;
        }
        Ok(())
    }
}

impl Serialize for SignatureClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All classes in ℋ¹(τ*): tuples of (p_v, q_v) over r places with q_v even.
/// There are (⌊n/2⌋ + 1)^r of them, listed with the first place varying
/// slowest and q ascending.
pub fn h1_signature_classes(r: u32, n: u32) -> Result<Vec<SignatureClass>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let local: Vec<(u32, u32)> = (0..=n).step_by(2).map(|q| (n - q, q)).collect();
    let mut classes: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    for _ in 0..r {
        classes = classes
            .into_iter()
            .flat_map(|prefix| {
                local.iter().map(move |&pq| {
                    let mut next = prefix.clone();
                    next.push(pq);
                    next
                })
            })
            .collect();
    }
    Ok(classes
        .into_iter()
        .map(|signatures| SignatureClass { n, signatures })
        .collect())
}

/// |W(𝔤_ℂ)| / |W(𝔨_ℂ)| = 2^{n s} Π_v C(n, p_v).
pub fn weyl_quotient(n: u32, s: u32, class: &SignatureClass) -> Result<BigInt> {
    if class.n() != n {
        return Err(Error::InvalidSignature(format!(
            "class is for n = {}, not {n}",
            class.n()
        )));
    }
    Ok(num_traits::pow(BigInt::from(2), (n * s) as usize) * class.binomial_factor())
}

/// dim X(γ) = s n(n+1) + Σ_v 4 p_v q_v.
pub fn symmetric_space_dim(n: u32, s: u32, class: &SignatureClass) -> u64 {
    let n = u64::from(n);
    u64::from(s) * n * (n + 1)
        + class
            .signatures()
            .iter()
            .map(|&(p, q)| 4 * u64::from(p) * u64::from(q))
            .sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let c = h1_signature_classes(0, 5).unwrap();
        assert_eq!(c, vec![SignatureClass::empty(5)]);

        let c = h1_signature_classes(1, 2).unwrap();
        let sigs: Vec<_> = c.iter().map(|c| c.signatures().to_vec()).collect();
        assert_eq!(sigs, vec![vec![(2, 0)], vec![(0, 2)]]);

        assert_eq!(h1_signature_classes(2, 3).unwrap().len(), 4);
    }

    #[test]
    fn class_count_and_binomial_identity() {
        for n in 1..=6u32 {
            for r in 0..=4u32 {
                let classes = h1_signature_classes(r, n).unwrap();
                assert_eq!(classes.len(), ((n / 2 + 1) as usize).pow(r));
                let total: BigInt = classes.iter().map(|c| c.binomial_factor()).sum();
                assert_eq!(
                    total,
                    num_traits::pow(BigInt::from(2), (r * (n - 1)) as usize)
                );
            }
        }
    }

    #[test]
    fn weyl_examples() {
        let c = SignatureClass::new(2, vec![(2, 0)]).unwrap();
        assert_eq!(weyl_quotient(2, 1, &c).unwrap(), BigInt::from(4));
        let c = SignatureClass::new(3, vec![(1, 2), (3, 0)]).unwrap();
        assert_eq!(weyl_quotient(3, 2, &c).unwrap(), BigInt::from(192));
        assert!(matches!(
            SignatureClass::new(2, vec![(1, 1)]),
            Err(Error::InvalidSignature(_))
        ));
        assert!(SignatureClass::new(2, vec![(2, 1)]).is_err());
    }

    #[test]
    fn symmetric_space_dimension_is_even() {
        for n in 1..=6u32 {
            for r in 0..=3u32 {
                for s in 0..=3u32 {
                    for c in h1_signature_classes(r, n).unwrap() {
                        assert_eq!(symmetric_space_dim(n, s, &c) % 2, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let c = SignatureClass::parse(2, "2,0;0,2").unwrap();
        assert_eq!(c.to_string(), "(2,0);(0,2)");
        assert_eq!(SignatureClass::parse(2, &c.to_string()).unwrap(), c);
        assert!(SignatureClass::parse(2, "").unwrap().is_empty());
        assert!(SignatureClass::parse(2, "2;0").is_err());
    }
}
