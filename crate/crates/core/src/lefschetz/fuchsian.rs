use serde::Serialize;

use super::{lefschetz_number, torsion_gate, LefschetzInput};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::numberfield::{dedekind_zeta_neg, validate_ideal, Ideal};
use crate::quaternion::{signed_reduced_discriminant, QuaternionAlgebra};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusReport {
    pub genus: u64,
    pub b1: u64,
    /// 2 - 2g, the Euler characteristic of the curve.
    pub chi: Rational,
    pub warnings: Vec<String>,
}

/// Genus of the compact Shimura curve Γ(𝔄)\ℍ:
/// g = 1 + 2^{-[F:ℚ]} N(𝔄)³ |d(D) ζ_F(-1)| Π_{𝔓|𝔄} (1 - N𝔓^{-2}) Π_{𝔓 ∈ Ram_f, 𝔓∤𝔄} (1 - N𝔓^{-1}).
pub fn genus_fuchsian(
    algebra: &QuaternionAlgebra,
    level: &Ideal,
    assume_torsion_free: bool,
) -> Result<GenusReport> {
    if !algebra.is_fuchsian() {
        return Err(Error::NotFuchsian);
    }
    if level.is_unit() {
        return Err(Error::UnitLevel);
    }
    let field = algebra.field();
    validate_ideal(field, level)?;
    let mut warnings = torsion_gate(field, level, assume_torsion_free)?;

    let one = Rational::one();
    let disc = Rational::from_integer(signed_reduced_discriminant(algebra));
    let mut excess = Rational::from(2).pow(-i64::from(field.degree()))?
        * Rational::from_integer(level.norm()).pow(3)?
        * (disc * dedekind_zeta_neg(field, 1)?).abs();
    for pr in level.primes() {
        excess *= &one - Rational::from(pr.norm()).pow(-2)?;
    }
    for pr in algebra.ram_finite().filter(|p| level.valuation(p) == 0) {
        excess *= &one - Rational::from(pr.norm()).pow(-1)?;
    }
    let g = (&one + &excess)
        .to_integer()
        .ok_or_else(|| Error::Inconsistent(format!("genus 1 + {excess} is not an integer")))?;
    let genus = u64::try_from(g).map_err(|e| Error::OutOfRange(e.to_string()))?;
    let chi = Rational::from(2) - Rational::from(2) * Rational::from(genus);

    let input = LefschetzInput::new(algebra.clone(), 1, level.clone(), one)?
        .assume_torsion_free(assume_torsion_free);
    let lefschetz = lefschetz_number(&input)?.value;
    if lefschetz != chi {
        return Err(Error::Inconsistent(format!(
            "2 - 2g = {chi} but the Lefschetz number is {lefschetz}"
        )));
    }
    if genus < 2 {
        warnings.push(format!(
            "genus {genus} < 2: the congruence subgroup is probably not torsion-free"
        ));
    }
    Ok(GenusReport {
        genus,
        b1: 2 * genus,
        chi,
        warnings,
    })
}

/// dim S_k(Γ) for a torsion-free cocompact Fuchsian Γ of genus g:
/// g for k = 2 and (k - 1)(g - 1) for even k ≥ 4.
pub fn modular_form_dim(genus: u64, k: i64) -> Result<u64> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidWeight(k));
    }
    if k == 2 {
        return Ok(genus);
    }
    (k as u64 - 1)
        .checked_mul(genus.saturating_sub(1))
        .ok_or_else(|| Error::OutOfRange(format!("dim S_{k} overflows for genus {genus}")))
}
