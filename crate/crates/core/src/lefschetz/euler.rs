use serde::Serialize;

use super::signature::{h1_signature_classes, SignatureClass};
use super::{common_factors, LefschetzInput};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerCharReport {
    pub value: Rational,
    pub signature_class: SignatureClass,
    /// Π_v C(n, p_v)
    pub binomial_factor: Rational,
    pub m_factors: Vec<Rational>,
    pub warnings: Vec<String>,
}

/// χ of the fixed-point group attached to `class`:
/// 2^{-nr} N(𝔄)^{n(2n+1)} d(D)^{n(n+1)/2} Π_v C(n, p_v) Π_j M(j, 𝔄, D).
///
/// The trace of `input` is ignored.
pub fn euler_char_fixed_component(
    input: &LefschetzInput,
    class: &SignatureClass,
) -> Result<EulerCharReport> {
    let algebra = input.algebra();
    let n = input.n();
    let r = algebra.ram_real_count();
    if class.n() != n || class.len() != r as usize {
        return Err(Error::InvalidSignature(format!(
            "class {class} does not match n = {n} with {r} ramified real places"
        )));
    }
    let common = common_factors(algebra, n, input.level(), input.torsion_override())?;
    let binomial_factor = Rational::from_integer(class.binomial_factor());
    let value = if algebra.field().is_totally_real() {
        Rational::from(2).pow(-i64::from(n * r))?
            * &common.level_norm_power
            * &common.discriminant_power
            * &binomial_factor
            * common.m_factors.iter().cloned().product::<Rational>()
    } else {
        Rational::zero()
    };

    let s = u64::from(algebra.split_real_count());
    let n64 = u64::from(n);
    let expected: i8 = if (s * n64 * (n64 + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    };
    if !value.is_zero() && value.signum() != expected {
        return Err(Error::Inconsistent(format!(
            "Euler characteristic {value} has the wrong sign for s = {s}, n = {n}"
        )));
    }
    Ok(EulerCharReport {
        value,
        signature_class: class.clone(),
        binomial_factor,
        m_factors: common.m_factors,
        warnings: common.warnings,
    })
}

/// Σ over ℋ¹ classes of χ(class) · Tr(τ*|W).
pub fn lefschetz_via_decomposition(input: &LefschetzInput) -> Result<Rational> {
    let r = input.algebra().ram_real_count();
    let mut total = Rational::zero();
    for class in h1_signature_classes(r, input.n())? {
        total += euler_char_fixed_component(input, &class)?.value;
    }
    Ok(total * input.trace_w())
}
