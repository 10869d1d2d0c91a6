use serde::Serialize;

use super::{QuadraticCharacter, TotallyRealField};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly_eval, riemann_zeta_neg, Rational, SymbolicScalar};
use crate::par::{chunked_sum, Execution};

/// Generalized Bernoulli number B_{k,χ} = f^{k-1} Σ_{a=1}^{f} χ(a) B_k(a/f),
/// with f the conductor of χ.
pub fn gen_bernoulli(k: u32, chi: &QuadraticCharacter) -> Rational {
    assert!(k >= 1, "gen_bernoulli needs k >= 1");
    let f = chi.conductor();
    let f_q = Rational::from(f);
    let sum: Rational = (1..=f)
        .filter_map(|a| {
            let c = chi.value(a as i64);
            (c != 0).then(|| {
                let b = bernoulli_poly_eval(k as usize, &(Rational::from(a) / f_q.clone()));
                if c > 0 {
                    b
                } else {
                    -b
                }
            })
        })
        .sum();
    sum * f_q.pow(k as i64 - 1).expect("nonzero conductor")
}

/// ζ_F(1 - 2j).
pub fn dedekind_zeta_neg(field: &TotallyRealField, j: u32) -> Result<Rational> {
    if j == 0 {
        return Err(Error::OutOfRange("zeta index j must be >= 1".into()));
    }
    match field {
        TotallyRealField::Rationals => Ok(riemann_zeta_neg(j)),
        TotallyRealField::RealQuadratic { .. } => {
            let chi = field.quadratic_character().expect("quadratic field");
            let k = 2 * j;
            let l_value = -(gen_bernoulli(k, &chi) / Rational::from(k));
            Ok(riemann_zeta_neg(j) * l_value)
        }
        TotallyRealField::External(x) => x.zeta_neg(j).cloned().ok_or(Error::MissingZetaValue(j)),
    }
}

/// A truncated Dirichlet series value with its truncation bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaEstimate {
    pub value: f64,
    /// Documented bound degree · terms^{1-2j} / (2j - 1).
    pub error_bound: f64,
    pub terms: u64,
}

pub fn zeta_f_positive_even_numeric(
    field: &TotallyRealField,
    j: u32,
    terms: u64,
) -> Result<ZetaEstimate> {
    zeta_f_positive_even_numeric_with(field, j, terms, Execution::default())
}

/// ζ_F(2j) from the truncated series Σ_{m ≤ terms} m^{-2j}, times
/// Σ_{m ≤ terms} χ(m) m^{-2j} for quadratic F.
pub fn zeta_f_positive_even_numeric_with(
    field: &TotallyRealField,
    j: u32,
    terms: u64,
    exec: Execution,
) -> Result<ZetaEstimate> {
    if j == 0 {
        return Err(Error::OutOfRange("zeta index j must be >= 1".into()));
    }
    if terms < 100 {
        return Err(Error::OutOfRange(format!(
            "at least 100 series terms required, got {terms}"
        )));
    }
    let s = 2 * j as i32;
    let riemann = chunked_sum(exec, 1..terms + 1, |m| (m as f64).powi(-s));
    let value = match field {
        TotallyRealField::Rationals => riemann,
        TotallyRealField::RealQuadratic { .. } => {
            let chi = field.quadratic_character().expect("quadratic field");
            let l = chunked_sum(exec, 1..terms + 1, |m| {
                f64::from(chi.value(m as i64)) * (m as f64).powi(-s)
            });
            riemann * l
        }
        TotallyRealField::External(_) => {
            return Err(Error::UnsupportedField(
                "no Dirichlet character is available for an external field",
            ))
        }
    };
    let error_bound = f64::from(field.degree()) * (terms as f64).powi(1 - s) / f64::from(2 * j - 1);
    Ok(ZetaEstimate {
        value,
        error_bound,
        terms,
    })
}

/// ζ_F(2j) obtained exactly from ζ_F(1-2j) through the functional equation
///
/// ζ_F(2j) |d_F|^{(4j-1)/2} (2 (2j-1)! / (2π)^{2j})^{[F:ℚ]} = (-1)^{j [F:ℚ]} ζ_F(1-2j).
///
/// The result has the shape q · π^{2j[F:ℚ]} · √m.
pub fn zeta_positive_even_from_functional_equation(
    field: &TotallyRealField,
    j: u32,
) -> Result<SymbolicScalar> {
    if !field.is_totally_real() {
        return Err(Error::UnsupportedField(
            "the functional equation form used here needs a totally real field",
        ));
    }
    let deg = field.degree() as i64;
    let neg = dedekind_zeta_neg(field, j)?;
    let sign = if (j as i64 * deg) % 2 == 0 { 1 } else { -1 };

    // gamma_factor = 2 (2j-1)! / (2π)^{2j} = (2j-1)! / (2^{2j-1} π^{2j})
    let fact: Rational = (1..2 * j as u64).map(Rational::from).product();
    let gamma_factor = SymbolicScalar::new(
        fact / Rational::from(2).pow(2 * j as i64 - 1)?,
        -2 * j as i64,
        1,
    )?;
    let disc = SymbolicScalar::sqrt(field.abs_discriminant())?.pow(4 * j as i64 - 1)?;
    let denom = &disc * &gamma_factor.pow(deg)?;
    Ok(denom.recip()?.scale(&(neg * Rational::from(sign))))
}
