//! Oracle-equivalence and invariant suites behind `symplefs verify`.

use num_bigint::BigInt;
use serde::Serialize;
use symplefs::exact::{ratio, riemann_zeta_neg, Rational, SymbolicScalar};
use symplefs::finitegrp::{
    brute_force_ramified_sl1, brute_force_sl, brute_force_sp, brute_force_unitary,
    local_index_factor, ramified_local_order, sl_order, sp_order, unitary_order, LocalKind,
};
use symplefs::lefschetz::{
    check_torsion_necessary, congruence_index, euler_char_adelic_numeric,
    euler_char_fixed_component, genus_fuchsian, global_modulus_factor, h1_signature_classes,
    lefschetz_number, lefschetz_via_decomposition, modular_form_dim, symmetric_space_dim,
    vol_sp_compact, LefschetzInput, SignatureClass,
};
use symplefs::numberfield::{
    dedekind_zeta_neg, ideal_from_integer, ideals_up_to_norm, zeta_f_positive_even_numeric,
    zeta_positive_even_from_functional_equation, Ideal, PrimeIdeal, TotallyRealField,
};
use symplefs::quaternion::{
    hilbert_ramification_q, signed_reduced_discriminant, QuaternionAlgebra,
};

type Outcome = Result<(), String>;

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn check(&mut self, what: impl Into<String>, outcome: Outcome) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.failures.push(format!("{}: {msg}", what.into()));
            }
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, what: impl Into<String>, got: T, want: T) {
        let outcome = if got == want {
            Ok(())
        } else {
            Err(format!("got {got}, expected {want}"))
        };
        self.check(what, outcome);
    }

    /// Records `Err` from the engine as a failure and returns the value.
    fn value<T, E: std::fmt::Display>(&mut self, what: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(what, Err(e.to_string()));
                None
            }
        }
    }
}

type Suite = (&'static str, fn(&mut SuiteReport));

pub const SUITES: [Suite; 8] = [
    ("zeta", zeta),
    ("quaternion", quaternion),
    ("finitegrp", finitegrp),
    ("index", index),
    ("signatures", signatures),
    ("lefschetz", lefschetz),
    ("genus", genus),
    ("adelic", adelic),
];

/// Runs every suite whose name starts with `filter`.
pub fn run(filter: Option<&str>) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.starts_with(f)))
        .map(|(name, suite)| {
            let mut report = SuiteReport {
                name,
                ..SuiteReport::default()
            };
            suite(&mut report);
            report
        })
        .collect()
}

fn q() -> TotallyRealField {
    TotallyRealField::rationals()
}

fn quad(d: u64) -> TotallyRealField {
    TotallyRealField::quadratic(d).expect("squarefree")
}

fn level(field: &TotallyRealField, n: u64) -> Ideal {
    ideal_from_integer(field, n).expect("level >= 2")
}

fn ram(field: TotallyRealField, primes: &[u64], r: u32) -> QuaternionAlgebra {
    QuaternionAlgebra::from_rational_primes(field, primes, r).expect("valid ramification")
}

fn hamilton_sqrt5() -> QuaternionAlgebra {
    QuaternionAlgebra::new(quad(5), [], 2).expect("even ramification")
}

fn p3_sqrt5() -> Ideal {
    Ideal::prime(PrimeIdeal::new(3, 2, 1, "a").expect("prime"))
}

fn input(alg: QuaternionAlgebra, n: u32, lvl: Ideal) -> LefschetzInput {
    LefschetzInput::new(alg, n, lvl, Rational::one()).expect("valid input")
}

fn zeta(s: &mut SuiteReport) {
    for (j, want) in [
        (1, ratio(-1, 12)),
        (2, ratio(1, 120)),
        (3, ratio(-1, 252)),
        (4, ratio(1, 240)),
    ] {
        s.eq(format!("zeta(1-{})", 2 * j), riemann_zeta_neg(j), want);
    }
    for (d, j, want) in [
        (5u64, 1u32, ratio(1, 30)),
        (5, 2, ratio(1, 60)),
        (2, 1, ratio(1, 12)),
    ] {
        if let Some(v) = s.value("quadratic zeta", dedekind_zeta_neg(&quad(d), j)) {
            s.eq(format!("zeta_Q(sqrt({d}))(1-{})", 2 * j), v, want);
        }
    }
    for field in [q(), quad(2), quad(5), quad(13)] {
        for j in 1..=4u32 {
            if let Some(v) = s.value("zeta sign", dedekind_zeta_neg(&field, j)) {
                let want: i8 = if (j * field.degree()) % 2 == 0 { 1 } else { -1 };
                s.check(
                    format!("sign of zeta_{field}(1-{})", 2 * j),
                    if !v.is_zero() && v.signum() == want {
                        Ok(())
                    } else {
                        Err(format!("value {v}"))
                    },
                );
            }
        }
    }
    for field in [q(), quad(5), quad(2)] {
        for j in 1..=2u32 {
            let exact = zeta_positive_even_from_functional_equation(&field, j);
            let numeric = zeta_f_positive_even_numeric(&field, j, 1_000_000);
            if let (Some(e), Some(n)) = (
                s.value("functional equation", exact),
                s.value("series", numeric),
            ) {
                let rel = ((e.to_f64() - n.value) / n.value).abs();
                s.check(
                    format!("functional equation {field} j={j}"),
                    if rel < 1e-6 {
                        Ok(())
                    } else {
                        Err(format!("relative gap {rel:e}"))
                    },
                );
            }
        }
    }
}

fn quaternion(s: &mut SuiteReport) {
    let mut bad = Vec::new();
    for a in (-20i64..=20).filter(|&a| a != 0) {
        for b in (-20i64..=20).filter(|&b| b != 0) {
            if hilbert_ramification_q(a, b).is_err() {
                bad.push(format!("({a},{b})"));
            }
        }
    }
    s.check(
        "Hilbert parity on [-20,20]^2",
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad.join(" "))
        },
    );
    for (a, b, primes, r) in [
        (-1i64, -1i64, vec![2u64], 1u32),
        (1, 7, vec![], 0),
        (-1, -3, vec![3], 1),
    ] {
        if let Some(alg) = s.value("hilbert", hilbert_ramification_q(a, b)) {
            let got: Vec<u64> = alg.ram_finite().map(PrimeIdeal::residue_char).collect();
            s.check(
                format!("ramification of ({a},{b})"),
                if got == primes && alg.ram_real_count() == r {
                    Ok(())
                } else {
                    Err(format!("{alg}"))
                },
            );
        }
    }
    s.eq(
        "d(D) for {2,3}",
        signed_reduced_discriminant(&ram(q(), &[2, 3], 0)),
        BigInt::from(6),
    );
    s.eq(
        "d(D) for {2}, r=1",
        signed_reduced_discriminant(&ram(q(), &[2], 1)),
        BigInt::from(-2),
    );
    s.eq(
        "d(D) for Hamilton over Q(sqrt(5))",
        signed_reduced_discriminant(&hamilton_sqrt5()),
        BigInt::from(1),
    );
}

fn finitegrp(s: &mut SuiteReport) {
    let big = |v: u64| BigInt::from(v);
    for (m, q) in [(2u32, 2u64), (2, 3), (2, 5), (2, 7), (3, 2)] {
        if let (Some(a), Some(b)) = (
            s.value("sl", sl_order(m, q)),
            s.value("sl brute", brute_force_sl(m, q)),
        ) {
            s.eq(format!("|SL_{m}(F_{q})|"), a, big(b));
        }
    }
    for (n, q) in [(1u32, 2u64), (1, 3), (1, 5), (2, 2)] {
        if let (Some(a), Some(b)) = (
            s.value("sp", sp_order(n, q)),
            s.value("sp brute", brute_force_sp(n, q)),
        ) {
            s.eq(format!("|Sp_{n}(F_{q})|"), a, big(b));
        }
    }
    for q in [2u64, 3, 5] {
        if let (Some(a), Some(b)) = (
            s.value("ramified", ramified_local_order(1, q)),
            s.value("ramified brute", brute_force_ramified_sl1(q)),
        ) {
            s.eq(format!("ramified local order q={q}"), a, big(b));
        }
    }
    for (n, q) in [(1u32, 2u64), (1, 3), (2, 2)] {
        if let (Some(a), Some(b)) = (
            s.value("unitary", unitary_order(n, q)),
            s.value("unitary brute", brute_force_unitary(n, q)),
        ) {
            s.eq(format!("|U_{n}(F_{q})|"), a, big(b));
        }
    }
    for n in 1..=5u32 {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            if let (Some(a), Some(u)) = (
                s.value("ramified", ramified_local_order(n, q)),
                s.value("unitary", unitary_order(n, q)),
            ) {
                let unip = num_traits_pow(q, n * (n + 1));
                s.eq(
                    format!("ramified = unitary * unipotent, n={n} q={q}"),
                    a,
                    u * unip,
                );
            }
        }
    }
    if let (Some(a), Some(b)) = (
        s.value("sl", brute_force_sl(2, 6)),
        s.value("sl", brute_force_sl(2, 2)),
    ) {
        if let Some(c) = s.value("sl", brute_force_sl(2, 3)) {
            s.eq("CRT: |SL_2(Z/6)|", a, b * c);
        }
    }
}

fn num_traits_pow(q: u64, e: u32) -> BigInt {
    (0..e).fold(BigInt::from(1), |acc, _| acc * q)
}

fn index(s: &mut SuiteReport) {
    let split = QuaternionAlgebra::split(q());
    for n in 2..=6u64 {
        if let (Some(a), Some(b)) = (
            s.value("index", congruence_index(&split, 1, &level(&q(), n))),
            s.value("sl brute", brute_force_sl(2, n)),
        ) {
            s.eq(format!("index of Gamma({n})"), a, BigInt::from(b));
        }
    }
    if let Some(v) = s.value(
        "index",
        congruence_index(&ram(q(), &[2], 1), 1, &level(&q(), 2)),
    ) {
        s.eq("ramified index at (2)", v, BigInt::from(12));
    }
    for alg in [split.clone(), ram(q(), &[2, 3], 0)] {
        for n in 1..=3u32 {
            for lv in [4u64, 6, 12, 45] {
                let lvl = level(&q(), lv);
                let Some(idx) = s.value("index", congruence_index(&alg, n, &lvl)) else {
                    continue;
                };
                let mut local = BigInt::from(1);
                for (pr, e) in lvl.factors() {
                    let kind = if alg.is_ramified_at(pr) {
                        LocalKind::Ramified
                    } else {
                        LocalKind::Split
                    };
                    if let Some(f) =
                        s.value("local factor", local_index_factor(pr.norm(), kind, n, e))
                    {
                        local *= f;
                    }
                }
                s.eq(
                    format!("index = product of local factors, n={n} N={lv}"),
                    idx,
                    local,
                );
            }
        }
    }
}

fn signatures(s: &mut SuiteReport) {
    for n in 1..=6u32 {
        for r in 0..=4u32 {
            let Some(classes) = s.value("classes", h1_signature_classes(r, n)) else {
                continue;
            };
            s.eq(
                format!("class count n={n} r={r}"),
                classes.len(),
                ((n / 2 + 1) as usize).pow(r),
            );
            let total: BigInt = classes.iter().map(SignatureClass::binomial_factor).sum();
            s.eq(
                format!("binomial identity n={n} r={r}"),
                total,
                num_traits_pow(2, r * (n - 1)),
            );
            let odd = classes
                .iter()
                .flat_map(|c| (0..=3).map(move |sp| symmetric_space_dim(n, sp, c)))
                .find(|d| d % 2 == 1);
            s.check(
                format!("dim X even n={n} r={r}"),
                odd.map_or(Ok(()), |d| Err(format!("odd dimension {d}"))),
            );
        }
    }
}

fn lefschetz(s: &mut SuiteReport) {
    let split = QuaternionAlgebra::split(q());
    for n in 3..=7u64 {
        if let (Some(r), Some(c)) = (
            s.value(
                "lefschetz",
                lefschetz_number(&input(split.clone(), 1, level(&q(), n))),
            ),
            s.value("sl brute", brute_force_sl(2, n)),
        ) {
            s.eq(
                format!("L(Gamma({n})) = -|SL_2|/12"),
                r.value,
                -(Rational::from(c) / Rational::from(12)),
            );
        }
    }
    let cases = [
        (ram(q(), &[2, 3], 0), 1, level(&q(), 5), -20i64),
        (split.clone(), 2, level(&q(), 3), -36),
        (hamilton_sqrt5(), 2, p3_sqrt5(), 478224),
    ];
    for (alg, n, lvl, want) in cases {
        let inp = input(alg, n, lvl);
        if let (Some(direct), Some(decomposed)) = (
            s.value("lefschetz", lefschetz_number(&inp)),
            s.value("decomposition", lefschetz_via_decomposition(&inp)),
        ) {
            s.eq(
                "Lefschetz example",
                direct.value.clone(),
                Rational::from(want),
            );
            s.eq("decomposition example", decomposed, direct.value);
        }
    }
    let class = SignatureClass::parse(2, "2,0;2,0").expect("valid class");
    if let Some(e) = s.value(
        "euler",
        euler_char_fixed_component(&input(hamilton_sqrt5(), 2, p3_sqrt5()), &class),
    ) {
        s.eq("chi over Q(sqrt(5))", e.value, Rational::from(119556));
    }
    let zero = input(split.clone(), 1, level(&q(), 5)).with_trace(Rational::zero());
    if let Some(r) = s.value("lefschetz", lefschetz_number(&zero)) {
        s.eq("zero trace", r.value, Rational::zero());
    }

    for field in [q(), quad(5), quad(2)] {
        let algebras = [
            QuaternionAlgebra::split(field.clone()),
            if field.degree() == 1 {
                ram(field.clone(), &[2, 3], 0)
            } else {
                QuaternionAlgebra::new(field.clone(), [], 2).expect("even ramification")
            },
        ];
        let Some(levels) = s.value("levels", ideals_up_to_norm(&field, 30)) else {
            continue;
        };
        for alg in &algebras {
            for n in 1..=3u32 {
                if n == 1 && alg.is_totally_definite() {
                    continue;
                }
                for lvl in levels
                    .iter()
                    .filter(|l| check_torsion_necessary(&field, l).unwrap_or(false))
                {
                    let inp = input(alg.clone(), n, lvl.clone());
                    let what = format!("{field} {alg} n={n} level {lvl}");
                    let (Some(direct), Some(decomposed)) = (
                        s.value(&what, lefschetz_number(&inp)),
                        s.value(&what, lefschetz_via_decomposition(&inp)),
                    ) else {
                        continue;
                    };
                    let integral = direct.value.is_integer();
                    s.check(
                        what,
                        if direct.value == decomposed && integral {
                            Ok(())
                        } else {
                            Err(format!("direct {} decomposed {decomposed}", direct.value))
                        },
                    );
                }
            }
        }
    }
}

fn genus(s: &mut SuiteReport) {
    let alg = ram(q(), &[2, 3], 0);
    for (lv, want) in [(5u64, 11u64), (7, 29)] {
        if let Some(r) = s.value("genus", genus_fuchsian(&alg, &level(&q(), lv), false)) {
            s.eq(format!("genus at level {lv}"), r.genus, want);
            s.eq(format!("b1 at level {lv}"), r.b1, 2 * want);
        }
    }
    for primes in [[2u64, 3], [2, 5], [3, 7], [5, 7]] {
        let alg = ram(q(), &primes, 0);
        for lv in [3u64, 4, 5, 7, 9, 11] {
            let lvl = level(&q(), lv);
            let (Some(g), Some(l)) = (
                s.value("genus", genus_fuchsian(&alg, &lvl, false)),
                s.value("lefschetz", lefschetz_number(&input(alg.clone(), 1, lvl))),
            ) else {
                continue;
            };
            s.eq(
                format!("2-2g = L for ram {primes:?} level {lv}"),
                Rational::from(2) - Rational::from(2 * g.genus),
                l.value,
            );
        }
    }
    if let Some(d) = s.value("dim", modular_form_dim(11, 2)) {
        s.eq("dim S_2", d, 11);
    }
    if let Some(d) = s.value("dim", modular_form_dim(11, 4)) {
        s.eq("dim S_4", d, 30);
    }
    s.check(
        "odd weight rejected",
        if modular_form_dim(11, 3).is_err() {
            Ok(())
        } else {
            Err("accepted".into())
        },
    );
}

fn adelic(s: &mut SuiteReport) {
    let pi = |c: Rational, k| SymbolicScalar::new(c, k, 1).expect("canonical");
    for (n, want) in [
        (1u32, pi(Rational::from(2), 2)),
        (2, pi(ratio(8, 3), 6)),
        (3, pi(ratio(32, 45), 12)),
    ] {
        if let Some(v) = s.value("volume", vol_sp_compact(n)) {
            s.eq(format!("vol Sp({n})"), v, want);
        }
    }
    for (alg, n, want) in [
        (QuaternionAlgebra::split(q()), 1u32, Rational::from(2)),
        (ram(q(), &[2, 3], 0), 1, ratio(1, 3)),
        (hamilton_sqrt5(), 2, Rational::from(16)),
    ] {
        if let Some(v) = s.value("modulus", global_modulus_factor(&alg, n)) {
            s.eq(format!("modulus factor {alg} n={n}"), v, want);
        }
    }
    let mut cases = Vec::new();
    for lv in 3..=7u64 {
        cases.push((
            QuaternionAlgebra::split(q()),
            1,
            level(&q(), lv),
            SignatureClass::empty(1),
        ));
    }
    for lv in [5u64, 7] {
        cases.push((
            ram(q(), &[2, 3], 0),
            1,
            level(&q(), lv),
            SignatureClass::empty(1),
        ));
    }
    cases.push((
        QuaternionAlgebra::split(q()),
        2,
        level(&q(), 3),
        SignatureClass::empty(2),
    ));
    for class in h1_signature_classes(2, 2).expect("classes") {
        cases.push((hamilton_sqrt5(), 2, p3_sqrt5(), class));
    }
    for (alg, n, lvl, class) in cases {
        let what = format!("adelic {alg} n={n} level {lvl} class {class}");
        let inp = input(alg.clone(), n, lvl.clone());
        let (Some(exact), Some(est)) = (
            s.value(&what, euler_char_fixed_component(&inp, &class)),
            s.value(
                &what,
                euler_char_adelic_numeric(&alg, n, &lvl, &class, 1_000_000),
            ),
        ) else {
            continue;
        };
        let exact = exact.value.to_f64();
        let rel = ((est.value - exact) / exact).abs();
        s.check(
            what,
            if rel < 1e-5 {
                Ok(())
            } else {
                Err(format!("{} vs {exact}", est.value))
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for report in run(None) {
            assert!(
                report.failures.is_empty(),
                "{}: {:?}",
                report.name,
                report.failures
            );
            assert!(report.passed > 0, "{} ran no checks", report.name);
        }
    }

    #[test]
    fn filter_selects_by_prefix() {
        let names: Vec<_> = run(Some("zeta")).iter().map(|r| r.name).collect();
        assert_eq!(names, vec!["zeta"]);
        assert!(run(Some("nothing")).is_empty());
    }
}
