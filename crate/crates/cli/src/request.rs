//! Request assembly: a JSON config file overlaid with command-line flags,
//! validated into engine inputs.

use std::fs;
use std::path::Path;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use symplefs::exact::Rational;
use symplefs::lefschetz::LefschetzInput;
use symplefs::numberfield::{
    ideal_from_integer, split_prime, ExternalField, ExternalFieldDescriptor, Ideal, PrimeIdeal,
    TotallyRealField,
};
use symplefs::quaternion::{hilbert_ramification_q, QuaternionAlgebra};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ProblemArgs {
    /// Base field: q, quad:<d> or external:<path>
    #[arg(long)]
    pub field: Option<String>,
    /// Finite ramified primes, as rational primes or p:f:e:label
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["split", "hilbert"])]
    pub ram: Option<Vec<String>>,
    /// Use the matrix algebra M_2(F)
    #[arg(long, conflicts_with = "hilbert")]
    pub split: bool,
    /// The algebra (a, b | Q)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub hilbert: Option<Vec<i64>>,
    /// Number of ramified real places
    #[arg(long)]
    pub ram_real: Option<u32>,
    /// Rank n of SL_n(D)
    #[arg(long)]
    pub n: Option<u32>,
    /// Level: an integer N or a list p:f:e:label^k,...
    #[arg(long)]
    pub level: Option<String>,
    /// Trace of the involution on the coefficient module, as p/q
    #[arg(long, allow_hyphen_values = true)]
    pub trace_w: Option<String>,
    /// Proceed when the level divides (2)
    #[arg(long)]
    pub assume_torsion_free: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Spec(String),
    Inline(ExternalFieldDescriptor),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PrimeJson {
    Rational(u64),
    Named(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamifiedJson {
    pub ram_primes: Vec<PrimeJson>,
    #[serde(default)]
    pub ram_real: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertJson {
    pub hilbert: [i64; 2],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    Ramified(RamifiedJson),
    Hilbert(HilbertJson),
    /// The string "split".
    Named(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LevelJson {
    Integer(u64),
    Spec(String),
}

/// Config file contents; every key mirrors a flag.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestConfig {
    pub field: Option<FieldJson>,
    pub algebra: Option<AlgebraJson>,
    pub n: Option<u32>,
    pub level: Option<LevelJson>,
    pub trace_w: Option<String>,
    pub assume_torsion_free: Option<bool>,
    pub format: Option<Format>,
    pub signature: Option<String>,
    pub weights: Option<Vec<i64>>,
    pub levels: Option<String>,
    pub jmax: Option<u32>,
    pub adelic_terms: Option<u64>,
}

impl RequestConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Flags take precedence over config values.
    pub fn overlay(mut self, args: &ProblemArgs) -> Self {
        if let Some(f) = &args.field {
            self.field = Some(FieldJson::Spec(f.clone()));
        }
        if args.split {
            self.algebra = Some(AlgebraJson::Named("split".into()));
        } else if let Some(h) = &args.hilbert {
            let pair = match h.as_slice() {
                [a, b] => [*a, *b],
                _ => [0, 0],
            };
            self.algebra = Some(AlgebraJson::Hilbert(HilbertJson { hilbert: pair }));
        } else if let Some(ram) = &args.ram {
            let primes = ram
                .iter()
                .map(|t| match t.trim().parse::<u64>() {
                    Ok(p) => PrimeJson::Rational(p),
                    Err(_) => PrimeJson::Named(t.trim().to_string()),
                })
                .collect();
            self.algebra = Some(AlgebraJson::Ramified(RamifiedJson {
                ram_primes: primes,
                ram_real: 0,
            }));
        }
        if let Some(r) = args.ram_real {
            match &mut self.algebra {
                Some(AlgebraJson::Ramified(x)) => x.ram_real = r,
                None => {
                    self.algebra = Some(AlgebraJson::Ramified(RamifiedJson {
                        ram_primes: Vec::new(),
                        ram_real: r,
                    }))
                }
                _ => {}
            }
        }
        if args.n.is_some() {
            self.n = args.n;
        }
        if let Some(l) = &args.level {
            self.level = Some(match l.trim().parse::<u64>() {
                Ok(n) => LevelJson::Integer(n),
                Err(_) => LevelJson::Spec(l.clone()),
            });
        }
        if args.trace_w.is_some() {
            self.trace_w = args.trace_w.clone();
        }
        if args.assume_torsion_free {
            self.assume_torsion_free = Some(true);
        }
        self
    }

    pub fn field(&self) -> Result<TotallyRealField, CliError> {
        match &self.field {
            None => Err(CliError::Usage("a base field is required (--field)".into())),
            Some(FieldJson::Inline(desc)) => Ok(TotallyRealField::external(
                ExternalField::from_descriptor(desc)?,
            )),
            Some(FieldJson::Spec(spec)) => parse_field(spec),
        }
    }

    pub fn algebra(&self, field: &TotallyRealField) -> Result<QuaternionAlgebra, CliError> {
        match &self.algebra {
            None => Err(CliError::Usage(
                "an algebra is required (--split, --ram or --hilbert)".into(),
            )),
            Some(AlgebraJson::Named(name)) if name == "split" => {
                Ok(QuaternionAlgebra::split(field.clone()))
            }
            Some(AlgebraJson::Named(other)) => {
                Err(CliError::Usage(format!("unknown algebra {other:?}")))
            }
            Some(AlgebraJson::Hilbert(h)) => {
                if *field != TotallyRealField::rationals() {
                    return Err(CliError::Usage("--hilbert is only available over Q".into()));
                }
                if h.hilbert.contains(&0) {
                    return Err(CliError::Usage(
                        "--hilbert needs two nonzero integers a,b".into(),
                    ));
                }
                Ok(hilbert_ramification_q(h.hilbert[0], h.hilbert[1])?)
            }
            Some(AlgebraJson::Ramified(x)) => {
                let mut primes = Vec::with_capacity(x.ram_primes.len());
                for p in &x.ram_primes {
                    primes.push(resolve_prime(field, p)?);
                }
                Ok(QuaternionAlgebra::new(field.clone(), primes, x.ram_real)?)
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n.unwrap_or(1)
    }

    pub fn level(&self, field: &TotallyRealField) -> Result<Ideal, CliError> {
        match &self.level {
            None => Err(CliError::Usage("a level is required (--level)".into())),
            Some(LevelJson::Integer(n)) => Ok(ideal_from_integer(field, *n)?),
            Some(LevelJson::Spec(s)) => match s.trim().parse::<u64>() {
                Ok(n) => Ok(ideal_from_integer(field, n)?),
                Err(_) => Ok(s.parse::<Ideal>()?),
            },
        }
    }

    pub fn trace_w(&self) -> Result<Rational, CliError> {
        match &self.trace_w {
            None => Ok(Rational::one()),
            Some(t) => Ok(t.trim().parse::<Rational>()?),
        }
    }

    pub fn assume_torsion_free(&self) -> bool {
        self.assume_torsion_free.unwrap_or(false)
    }

    pub fn input(&self) -> Result<LefschetzInput, CliError> {
        let field = self.field()?;
        let algebra = self.algebra(&field)?;
        let level = self.level(&field)?;
        Ok(
            LefschetzInput::new(algebra, self.n(), level, self.trace_w()?)?
                .assume_torsion_free(self.assume_torsion_free()),
        )
    }
}

pub fn parse_field(spec: &str) -> Result<TotallyRealField, CliError> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("q") {
        return Ok(TotallyRealField::rationals());
    }
    if let Some(d) = spec.strip_prefix("quad:") {
        let d = d
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("bad quadratic field {spec:?}")))?;
        return Ok(TotallyRealField::quadratic(d)?);
    }
    if let Some(path) = spec.strip_prefix("external:") {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
        return Ok(TotallyRealField::external(ExternalField::from_json(&text)?));
    }
    Err(CliError::Usage(format!(
        "unknown field {spec:?}; use q, quad:<d> or external:<path>"
    )))
}

fn resolve_prime(field: &TotallyRealField, p: &PrimeJson) -> Result<PrimeIdeal, CliError> {
    match p {
        PrimeJson::Named(s) => Ok(s.parse::<PrimeIdeal>()?),
        PrimeJson::Rational(p) => {
            let mut above = split_prime(field, *p)?;
            if above.len() != 1 {
                return Err(CliError::Usage(format!(
                    "{p} splits in {field}; name the prime as {p}:f:e:label"
                )));
            }
            Ok(above.remove(0))
        }
    }
}
