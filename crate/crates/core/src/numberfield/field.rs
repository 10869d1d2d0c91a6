use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_squarefree, kronecker_symbol};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Base field F: the rationals, a real quadratic field, or an externally
/// described number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotallyRealField {
    Rationals,
    /// ℚ(√d) with d > 1 squarefree.
    RealQuadratic {
        d: u64,
    },
    External(Arc<ExternalField>),
}

/// User-supplied field data for fields without native support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalField {
    degree: u32,
    abs_discriminant: u64,
    num_real_places: u32,
    zeta_neg: Vec<Rational>,
    splitting: BTreeMap<u64, Vec<(u32, u32)>>,
}

/// On-disk form of [`ExternalField`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalFieldDescriptor {
    pub degree: u32,
    pub abs_discriminant: u64,
    pub num_real_places: u32,
    /// ζ_F(1-2j) for j = 1, 2, ... as `"p/q"` strings.
    pub zeta_neg: Vec<String>,
    /// Rational prime → list of `[f, e]` pairs, one per prime above it.
    pub splitting: BTreeMap<String, Vec<[u32; 2]>>,
}

impl ExternalField {
    pub fn from_descriptor(desc: &ExternalFieldDescriptor) -> Result<Self> {
        let bad = |m: String| Error::InvalidDescriptor(m);
        if desc.degree == 0 {
            return Err(bad("degree must be positive".into()));
        }
        if desc.abs_discriminant == 0 {
            return Err(bad("abs_discriminant must be positive".into()));
        }
        if desc.num_real_places > desc.degree {
            return Err(bad("more real places than the degree".into()));
        }
        if !(desc.degree - desc.num_real_places).is_multiple_of(2) {
            return Err(bad(
                "degree - num_real_places must be even (complex places come in pairs)".into(),
            ));
        }
        let totally_real = desc.num_real_places == desc.degree;

        let mut zeta_neg = Vec::with_capacity(desc.zeta_neg.len());
        for (i, s) in desc.zeta_neg.iter().enumerate() {
            let j = i as u32 + 1;
            let z: Rational = s.parse()?;
            if totally_real {
                let expected = if (j * desc.degree).is_multiple_of(2) { 1 } else { -1 };
                if z.signum() != expected {
                    return Err(bad(format!(
                        "zeta_neg[{j}] = {z} must be nonzero with sign {expected:+}"
                    )));
                }
            } else if !z.is_zero() {
                return Err(bad(format!(
                    "zeta_neg[{j}] = {z}: zeta values at negative odd integers vanish \
                     for fields with a complex place"
                )));
            }
            zeta_neg.push(z);
        }

        let mut splitting = BTreeMap::new();
        for (key, pairs) in &desc.splitting {
            let p: u64 = key.trim().parse().map_err(|_| Error::Parse {
                what: "rational prime",
                input: key.clone(),
            })?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if pairs.is_empty() || pairs.iter().any(|&[f, e]| f == 0 || e == 0) {
                return Err(bad(format!("splitting of {p}: f and e must be >= 1")));
            }
            let total: u32 = pairs.iter().map(|&[f, e]| f * e).sum();
            if total != desc.degree {
                return Err(bad(format!(
                    "splitting of {p}: sum of e*f is {total}, expected {}",
                    desc.degree
                )));
            }
            splitting.insert(p, pairs.iter().map(|&[f, e]| (f, e)).collect());
        }

        Ok(ExternalField {
            degree: desc.degree,
            abs_discriminant: desc.abs_discriminant,
            num_real_places: desc.num_real_places,
            zeta_neg,
            splitting,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: ExternalFieldDescriptor =
            serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        Self::from_descriptor(&desc)
    }

    pub fn to_descriptor(&self) -> ExternalFieldDescriptor {
        ExternalFieldDescriptor {
            degree: self.degree,
            abs_discriminant: self.abs_discriminant,
            num_real_places: self.num_real_places,
            zeta_neg: self.zeta_neg.iter().map(|z| z.to_string()).collect(),
            splitting: self
                .splitting
                .iter()
                .map(|(p, v)| (p.to_string(), v.iter().map(|&(f, e)| [f, e]).collect()))
                .collect(),
        }
    }

    pub fn zeta_neg(&self, j: u32) -> Option<&Rational> {
        self.zeta_neg.get((j as usize).checked_sub(1)?)
    }

    pub fn splitting(&self, p: u64) -> Option<&[(u32, u32)]> {
        self.splitting.get(&p).map(Vec::as_slice)
    }
}

impl TotallyRealField {
    pub fn rationals() -> Self {
        TotallyRealField::Rationals
    }

    pub fn quadratic(d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!(
                "Q(sqrt({d})): d must be a squarefree integer > 1"
            )));
        }
        Ok(TotallyRealField::RealQuadratic { d })
    }

    pub fn external(field: ExternalField) -> Self {
        TotallyRealField::External(Arc::new(field))
    }

    pub fn degree(&self) -> u32 {
        match self {
            TotallyRealField::Rationals => 1,
            TotallyRealField::RealQuadratic { .. } => 2,
            TotallyRealField::External(x) => x.degree,
        }
    }

    pub fn num_real_places(&self) -> u32 {
        match self {
            TotallyRealField::External(x) => x.num_real_places,
            _ => self.degree(),
        }
    }

    pub fn is_totally_real(&self) -> bool {
        self.num_real_places() == self.degree()
    }

    /// True for ℚ and real quadratic fields, whose data is computed here.
    pub fn is_native(&self) -> bool {
        !matches!(self, TotallyRealField::External(_))
    }

    /// Signed discriminant D_F; positive for every field handled here
    /// except externals with an odd number of complex places, which only
    /// expose |d_F|.
    pub fn discriminant(&self) -> u64 {
        match *self {
            TotallyRealField::Rationals => 1,
            TotallyRealField::RealQuadratic { d } => {
                if d % 4 == 1 {
                    d
                } else {
                    4 * d
                }
            }
            TotallyRealField::External(ref x) => x.abs_discriminant,
        }
    }

    pub fn abs_discriminant(&self) -> u64 {
        self.discriminant()
    }

    pub fn quadratic_character(&self) -> Option<QuadraticCharacter> {
        match self {
            TotallyRealField::RealQuadratic { .. } => Some(QuadraticCharacter {
                discriminant: self.discriminant() as i64,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for TotallyRealField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotallyRealField::Rationals => write!(f, "Q"),
            TotallyRealField::RealQuadratic { d } => write!(f, "Q(sqrt({d}))"),
            TotallyRealField::External(x) => write!(
                f,
                "external(degree {}, |d_F| {}, {} real places)",
                x.degree, x.abs_discriminant, x.num_real_places
            ),
        }
    }
}

/// The quadratic character χ_D attached to a fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticCharacter {
    discriminant: i64,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Result<Self> {
        if !crate::arith::is_fundamental_discriminant(discriminant) {
            return Err(Error::NotFundamentalDiscriminant(discriminant));
        }
        Ok(QuadraticCharacter { discriminant })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn conductor(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn value(&self, m: i64) -> i8 {
        kronecker_symbol(self.discriminant, m)
    }

    pub fn is_even(&self) -> bool {
        self.discriminant > 0
    }
}
