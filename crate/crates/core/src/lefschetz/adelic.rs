use serde::Serialize;

use super::signature::{symmetric_space_dim, weyl_quotient, SignatureClass};
use crate::error::{Error, Result};
use crate::exact::{Rational, SymbolicScalar};
use crate::finitegrp::{ramified_local_order, sp_order};
use crate::numberfield::{validate_ideal, zeta_f_positive_even_numeric_with, Ideal, ZetaEstimate};
use crate::par::Execution;
use crate::quaternion::{signed_reduced_discriminant, QuaternionAlgebra};

/// Smallest number of series terms accepted by the numeric path.
pub const MIN_TERMS: u64 = 10_000;

/// vol(Sp(n)) = Π_{j=1}^{n} (2π)^{2j} / (2 (2j-1)!).
pub fn vol_sp_compact(n: u32) -> Result<SymbolicScalar> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut acc = SymbolicScalar::one();
    for j in 1..=i64::from(n) {
        let fact: Rational = (1..2 * j).map(Rational::from).product();
        let term = SymbolicScalar::new(
            Rational::from(2).pow(2 * j)? / (Rational::from(2) * fact),
            2 * j,
            1,
        )?;
        acc = &acc * &term;
    }
    Ok(acc)
}

/// mf(B) = 2^{n[F:ℚ]} (-1)^{r n(n+1)/2} d(D)^{-n(n+1)/2}.
pub fn global_modulus_factor(algebra: &QuaternionAlgebra, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let n = i64::from(n);
    let k = n * (n + 1) / 2;
    let sign = if (i64::from(algebra.ram_real_count()) * k) % 2 == 0 {
        1
    } else {
        -1
    };
    let disc = Rational::from_integer(signed_reduced_discriminant(algebra));
    Ok(
        Rational::from(2).pow(n * i64::from(algebra.field().degree()))?
            * Rational::from(sign)
            * disc.pow(-k)?,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdelicEstimate {
    pub value: f64,
    /// Everything except the ζ_F(2j) values, kept exact.
    pub exact_factor: SymbolicScalar,
    pub zeta_values: Vec<ZetaEstimate>,
    pub dim_symmetric_space: u64,
    /// First-order relative error from truncating the ζ series.
    pub relative_error_bound: f64,
}

pub fn euler_char_adelic_numeric(
    algebra: &QuaternionAlgebra,
    n: u32,
    level: &Ideal,
    class: &SignatureClass,
    terms: u64,
) -> Result<AdelicEstimate> {
    euler_char_adelic_numeric_with(algebra, n, level, class, terms, Execution::default())
}

/// χ from the volume formula
///
/// (-1)^{dim X / 2} |d_F|^{d/2} |W_ℂ / W_K| vol(G_u)^{-1} mf(B)^{-1} Π_𝔓 N𝔓^{d α_𝔓} / |U_𝔓|,
///
/// d = n(2n+1), with the generic local factors summed to Π_j ζ_F(2j)
/// numerically and the special primes corrected exactly.
pub fn euler_char_adelic_numeric_with(
    algebra: &QuaternionAlgebra,
    n: u32,
    level: &Ideal,
    class: &SignatureClass,
    terms: u64,
    exec: Execution,
) -> Result<AdelicEstimate> {
    let field = algebra.field();
    if !field.is_native() {
        return Err(Error::UnsupportedField(
            "the numeric volume formula needs the rationals or a real quadratic field",
        ));
    }
    if terms < MIN_TERMS {
        return Err(Error::OutOfRange(format!(
            "at least {MIN_TERMS} series terms required, got {terms}"
        )));
    }
    if level.is_unit() {
        return Err(Error::UnitLevel);
    }
    validate_ideal(field, level)?;
    let r = algebra.ram_real_count();
    let s = algebra.split_real_count();
    if class.n() != n || class.len() != r as usize {
        return Err(Error::InvalidSignature(format!(
            "class {class} does not match n = {n} with {r} ramified real places"
        )));
    }

    let n64 = u64::from(n);
    let d = n64 * (2 * n64 + 1);
    let deg = i64::from(field.degree());
    let dim_x = symmetric_space_dim(n, s, class);

    let mut exact = SymbolicScalar::sqrt(field.abs_discriminant())?.pow(d as i64)?;
    exact = exact.scale(&Rational::from_integer(weyl_quotient(n, s, class)?));
    exact = &exact * &vol_sp_compact(n)?.pow(-deg)?;
    exact = exact.scale(&global_modulus_factor(algebra, n)?.recip()?);

    let mut local = Rational::one();
    for (pr, e) in level.factors() {
        let q = pr.norm();
        local *= Rational::from(q).pow((d * u64::from(e)) as i64)?
            * Rational::from_integer(sp_order(n, q)?)
            * Rational::from(q).pow(-(d as i64))?;
    }
    for pr in algebra.ram_finite().filter(|p| level.valuation(p) == 0) {
        let q = pr.norm();
        local *= Rational::from_integer(sp_order(n, q)?)
            / Rational::from_integer(ramified_local_order(n, q)?);
    }
    if (dim_x / 2) % 2 == 1 {
        local = -local;
    }
    exact = exact.scale(&local);

    let zeta_values = (1..=n)
        .map(|j| zeta_f_positive_even_numeric_with(field, j, terms, exec))
        .collect::<Result<Vec<_>>>()?;
    let value = zeta_values
        .iter()
        .fold(exact.to_f64(), |acc, z| acc * z.value);
    let relative_error_bound = zeta_values.iter().map(|z| z.error_bound / z.value).sum();
    Ok(AdelicEstimate {
        value,
        exact_factor: exact,
        zeta_values,
        dim_symmetric_space: dim_x,
        relative_error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{euler_char_fixed_component, h1_signature_classes};
    use super::*;
    use crate::exact::ratio;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn compact_volumes() {
        let v = |c: Rational, k| SymbolicScalar::new(c, k, 1).unwrap();
        assert_eq!(vol_sp_compact(1).unwrap(), v(Rational::from(2), 2));
        assert_eq!(vol_sp_compact(2).unwrap(), v(ratio(8, 3), 6));
        assert_eq!(vol_sp_compact(3).unwrap(), v(ratio(32, 45), 12));
    }

    #[test]
    fn modulus_factors() {
        assert_eq!(
            global_modulus_factor(&split_q(), 1).unwrap(),
            Rational::from(2)
        );
        assert_eq!(global_modulus_factor(&ram23(), 1).unwrap(), ratio(1, 3));
        assert_eq!(
            global_modulus_factor(&hamilton_sqrt5(), 2).unwrap(),
            Rational::from(16)
        );
        let ham_q = QuaternionAlgebra::from_rational_primes(q(), &[2], 1).unwrap();
        for n in 1..=4u32 {
            let k = i64::from(n * (n + 1) / 2);
            let expected =
                Rational::from(2).pow(i64::from(n)).unwrap() * Rational::from(2).pow(-k).unwrap();
            assert_eq!(global_modulus_factor(&ham_q, n).unwrap(), expected);
        }
    }

    #[test]
    fn agrees_with_exact_values() {
        let cases = [
            (
                ram23(),
                1,
                level(&q(), 5),
                SignatureClass::empty(1),
                -20.0,
                1e-6,
            ),
            (
                split_q(),
                2,
                level(&q(), 3),
                SignatureClass::empty(2),
                -36.0,
                1e-6,
            ),
            (
                hamilton_sqrt5(),
                2,
                p3_sqrt5(),
                SignatureClass::parse(2, "2,0;2,0").unwrap(),
                119556.0,
                1e-5,
            ),
        ];
        for (alg, n, lvl, class, want, tol) in cases {
            let est = euler_char_adelic_numeric(&alg, n, &lvl, &class, 1_000_000).unwrap();
            assert!(rel(est.value, want) < tol, "{} vs {want}", est.value);
            assert!(est.relative_error_bound < tol);
        }
    }

    #[test]
    fn every_class_of_a_quadratic_example() {
        let alg = hamilton_sqrt5();
        let inp = input(alg.clone(), 2, p3_sqrt5());
        for class in h1_signature_classes(2, 2).unwrap() {
            let exact = euler_char_fixed_component(&inp, &class)
                .unwrap()
                .value
                .to_f64();
            let est = euler_char_adelic_numeric(&alg, 2, &p3_sqrt5(), &class, 100_000).unwrap();
            assert!(
                rel(est.value, exact) < 1e-5,
                "{class}: {} vs {exact}",
                est.value
            );
        }
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(euler_char_adelic_numeric(
            &split_q(),
            1,
            &level(&q(), 3),
            &SignatureClass::empty(1),
            100
        )
        .is_err());
        assert!(euler_char_adelic_numeric(
            &hamilton_sqrt5(),
            2,
            &p3_sqrt5(),
            &SignatureClass::empty(2),
            MIN_TERMS
        )
        .is_err());
    }

    #[test]
    fn modes_agree_bitwise() {
        let class = SignatureClass::empty(1);
        let a = euler_char_adelic_numeric_with(
            &ram23(),
            1,
            &level(&q(), 7),
            &class,
            50_000,
            Execution::Sequential,
        )
        .unwrap();
        let b = euler_char_adelic_numeric_with(
            &ram23(),
            1,
            &level(&q(), 7),
            &class,
            50_000,
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
