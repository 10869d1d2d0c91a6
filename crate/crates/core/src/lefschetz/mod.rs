//! Lefschetz numbers of the symplectic-type involution on congruence
//! subgroups of SL_n(D), and the quantities derived from them.

mod adelic;
mod euler;
mod fuchsian;
mod index;
mod signature;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::numberfield::{
    dedekind_zeta_neg, ideal_from_integer, validate_ideal, Ideal, TotallyRealField,
};
use crate::quaternion::{signed_reduced_discriminant, QuaternionAlgebra};

pub use adelic::{
    euler_char_adelic_numeric, euler_char_adelic_numeric_with, global_modulus_factor,
    vol_sp_compact, AdelicEstimate,
};
pub use euler::{euler_char_fixed_component, lefschetz_via_decomposition, EulerCharReport};
pub use fuchsian::{genus_fuchsian, modular_form_dim, GenusReport};
pub use index::congruence_index;
pub use signature::{h1_signature_classes, symmetric_space_dim, weyl_quotient, SignatureClass};

/// Warning attached whenever only the necessary torsion condition was checked.
pub const TORSION_WARNING: &str =
    "torsion-freeness of the congruence subgroup is assumed; only the level not dividing (2) was checked";
/// Warning attached when the level divides (2) and the caller overrode the check.
pub const TORSION_OVERRIDE_WARNING: &str =
    "level divides (2); torsion-freeness asserted by override, result is conditional";

#[derive(Clone, Debug)]
pub struct LefschetzInput {
    algebra: QuaternionAlgebra,
    n: u32,
    level: Ideal,
    trace_w: Rational,
    assume_torsion_free: bool,
}

impl LefschetzInput {
    /// Validates the level against the field, rejects the unit ideal, n = 0
    /// and totally definite algebras with n = 1.
    pub fn new(
        algebra: QuaternionAlgebra,
        n: u32,
        level: Ideal,
        trace_w: Rational,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if level.is_unit() {
            return Err(Error::UnitLevel);
        }
        validate_ideal(algebra.field(), &level)?;
        if n == 1 && algebra.is_totally_definite() {
            return Err(Error::TotallyDefiniteRankOne);
        }
        Ok(LefschetzInput {
            algebra,
            n,
            level,
            trace_w,
            assume_torsion_free: false,
        })
    }

    pub fn assume_torsion_free(mut self, yes: bool) -> Self {
        self.assume_torsion_free = yes;
        self
    }

    pub fn with_trace(mut self, trace_w: Rational) -> Self {
        self.trace_w = trace_w;
        self
    }

    pub fn field(&self) -> &TotallyRealField {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> &Ideal {
        &self.level
    }

    pub fn trace_w(&self) -> &Rational {
        &self.trace_w
    }

    pub fn torsion_override(&self) -> bool {
        self.assume_torsion_free
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LefschetzReport {
    pub value: Rational,
    pub totally_real: bool,
    pub m_factors: Vec<Rational>,
    /// 2^{-r}
    pub two_power: Rational,
    /// N(𝔄)^{n(2n+1)}
    pub level_norm_power: Rational,
    /// d(D)^{n(n+1)/2}
    pub discriminant_power: Rational,
    pub trace_w: Rational,
    pub warnings: Vec<String>,
}

impl LefschetzReport {
    /// Product of the recorded factors; equals `value` for totally real fields.
    pub fn factor_product(&self) -> Rational {
        if !self.totally_real {
            return Rational::zero();
        }
        self.m_factors.iter().cloned().product::<Rational>()
            * &self.two_power
            * &self.level_norm_power
            * &self.discriminant_power
            * &self.trace_w
    }
}

/// True iff the level does not divide (2)𝒪, i.e. -1 ≢ 1 mod 𝔄.
pub fn check_torsion_necessary(field: &TotallyRealField, level: &Ideal) -> Result<bool> {
    if level.is_unit() {
        return Err(Error::UnitLevel);
    }
    let two = ideal_from_integer(field, 2)?;
    Ok(!level.divides(&two))
}

/// Runs the torsion gate and returns the warnings it produces.
pub(crate) fn torsion_gate(
    field: &TotallyRealField,
    level: &Ideal,
    assume_torsion_free: bool,
) -> Result<Vec<String>> {
    if check_torsion_necessary(field, level)? {
        Ok(vec![TORSION_WARNING.to_string()])
    } else if assume_torsion_free {
        Ok(vec![TORSION_OVERRIDE_WARNING.to_string()])
    } else {
        Err(Error::TorsionUnverified)
    }
}

/// M(j, 𝔄, D) = ζ_F(1-2j) Π_{𝔓|𝔄} (1 - N𝔓^{-2j}) Π_{𝔓 ∈ Ram_f, 𝔓∤𝔄} (1 + (-1)^j N𝔓^{-j}).
pub fn m_factor(algebra: &QuaternionAlgebra, j: u32, level: &Ideal) -> Result<Rational> {
    if j == 0 {
        return Err(Error::OutOfRange("M-factor index j must be >= 1".into()));
    }
    if level.is_unit() {
        return Err(Error::UnitLevel);
    }
    let field = algebra.field();
    validate_ideal(field, level)?;
    let j = i64::from(j);
    let mut acc = dedekind_zeta_neg(field, j as u32)?;
    for pr in level.primes() {
        acc *= Rational::one() - Rational::from(pr.norm()).pow(-2 * j)?;
    }
    let sign = Rational::from(if j % 2 == 0 { 1 } else { -1 });
    for pr in algebra.ram_finite().filter(|p| level.valuation(p) == 0) {
        acc *= Rational::one() + &sign * Rational::from(pr.norm()).pow(-j)?;
    }
    Ok(acc)
}

pub(crate) fn pow_big(base: &BigInt, exp: u64) -> Rational {
    Rational::from_integer(num_traits::pow(base.clone(), exp as usize))
}

/// The pieces shared by the Lefschetz number and the Euler characteristics.
pub(crate) struct CommonFactors {
    pub m_factors: Vec<Rational>,
    pub level_norm_power: Rational,
    pub discriminant_power: Rational,
    pub warnings: Vec<String>,
}

pub(crate) fn common_factors(
    algebra: &QuaternionAlgebra,
    n: u32,
    level: &Ideal,
    assume_torsion_free: bool,
) -> Result<CommonFactors> {
    let field = algebra.field();
    let warnings = torsion_gate(field, level, assume_torsion_free)?;
    let n64 = u64::from(n);
    let m_factors = if field.is_totally_real() {
        (1..=n)
            .map(|j| m_factor(algebra, j, level))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(CommonFactors {
        m_factors,
        level_norm_power: pow_big(&level.norm(), n64 * (2 * n64 + 1)),
        discriminant_power: pow_big(&signed_reduced_discriminant(algebra), n64 * (n64 + 1) / 2),
        warnings,
    })
}

/// ℒ(τ*, Γ(𝔄), W) = 2^{-r} N(𝔄)^{n(2n+1)} d(D)^{n(n+1)/2} Tr(τ*|W) Π_j M(j, 𝔄, D),
/// and 0 when the field has a complex place.
pub fn lefschetz_number(input: &LefschetzInput) -> Result<LefschetzReport> {
    let algebra = &input.algebra;
    let common = common_factors(algebra, input.n, &input.level, input.assume_torsion_free)?;
    let totally_real = algebra.field().is_totally_real();
    let two_power = Rational::from(2).pow(-i64::from(algebra.ram_real_count()))?;
    let mut report = LefschetzReport {
        value: Rational::zero(),
        totally_real,
        m_factors: common.m_factors,
        two_power,
        level_norm_power: common.level_norm_power,
        discriminant_power: common.discriminant_power,
        trace_w: input.trace_w.clone(),
        warnings: common.warnings,
    };
    report.value = report.factor_product();
    Ok(report)
}

/// n(2n+1) / (4n² - 1).
pub fn betti_growth_exponent(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let n = i64::from(n);
    Rational::new(n * (2 * n + 1), 4 * n * n - 1)
}

/// |ℒ| with Tr = 1, a lower bound for the total Betti number of Γ(𝔄).
pub fn betti_lower_bound(input: &LefschetzInput) -> Result<Rational> {
    let trivial = input.clone().with_trace(Rational::one());
    Ok(lefschetz_number(&trivial)?.value.abs())
}
