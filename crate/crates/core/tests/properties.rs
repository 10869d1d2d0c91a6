use proptest::prelude::*;

use symplefs::exact::Rational;
use symplefs::lefschetz::{
    betti_lower_bound, check_torsion_necessary, congruence_index, euler_char_fixed_component,
    genus_fuchsian, h1_signature_classes, lefschetz_number, lefschetz_via_decomposition,
    symmetric_space_dim, LefschetzInput,
};
use symplefs::numberfield::{ideals_up_to_norm, Ideal, TotallyRealField};
use symplefs::quaternion::QuaternionAlgebra;

fn field(which: u8) -> TotallyRealField {
    match which % 4 {
        0 => TotallyRealField::rationals(),
        1 => TotallyRealField::quadratic(5).unwrap(),
        2 => TotallyRealField::quadratic(2).unwrap(),
        _ => TotallyRealField::quadratic(13).unwrap(),
    }
}

fn algebra(f: TotallyRealField, which: u8) -> QuaternionAlgebra {
    match which % 3 {
        0 => QuaternionAlgebra::split(f),
        1 if f.degree() == 1 => QuaternionAlgebra::from_rational_primes(f, &[2, 3], 0).unwrap(),
        1 => QuaternionAlgebra::new(f, [], 2).unwrap(),
        _ if f.degree() == 1 => QuaternionAlgebra::from_rational_primes(f, &[3, 5], 0).unwrap(),
        _ => QuaternionAlgebra::new(f, [], 2).unwrap(),
    }
}

fn pick_level(f: &TotallyRealField, idx: usize, torsion_ok: bool) -> Option<Ideal> {
    let levels: Vec<Ideal> = ideals_up_to_norm(f, 100)
        .unwrap()
        .into_iter()
        .filter(|l| !torsion_ok || check_torsion_necessary(f, l).unwrap())
        .collect();
    (!levels.is_empty()).then(|| levels[idx % levels.len()].clone())
}

fn arb_input() -> impl Strategy<Value = LefschetzInput> {
    (
        any::<u8>(),
        any::<u8>(),
        1u32..=3,
        any::<usize>(),
        -20i64..20,
        1i64..6,
    )
        .prop_filter_map("valid input", |(fw, aw, n, li, num, den)| {
            let f = field(fw);
            let alg = algebra(f.clone(), aw);
            let lvl = pick_level(&f, li, true)?;
            LefschetzInput::new(alg, n, lvl, Rational::new(num, den).unwrap()).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_equals_direct(inp in arb_input()) {
        let direct = lefschetz_number(&inp).unwrap();
        prop_assert_eq!(&direct.value, &direct.factor_product());
        prop_assert_eq!(lefschetz_via_decomposition(&inp).unwrap(), direct.value);
    }

    #[test]
    fn zero_iff_trace_zero(inp in arb_input()) {
        let value = lefschetz_number(&inp).unwrap().value;
        prop_assert_eq!(value.is_zero(), inp.trace_w().is_zero());
    }

    #[test]
    fn euler_sign_law(inp in arb_input()) {
        let alg = inp.algebra();
        let s = u64::from(alg.split_real_count());
        let n = u64::from(inp.n());
        let want = if (s * n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        for class in h1_signature_classes(alg.ram_real_count(), inp.n()).unwrap() {
            let chi = euler_char_fixed_component(&inp, &class).unwrap().value;
            prop_assert!(!chi.is_zero());
            prop_assert_eq!(chi.signum(), want);
            prop_assert_eq!(symmetric_space_dim(inp.n(), alg.split_real_count(), &class) % 2, 0);
        }
    }

    #[test]
    fn integral_values_for_integral_traces(inp in arb_input(), tr in -5i64..5) {
        let inp = inp.with_trace(Rational::from(tr));
        prop_assert!(lefschetz_number(&inp).unwrap().value.is_integer());
        prop_assert!(betti_lower_bound(&inp).unwrap().is_integer());
        let idx = congruence_index(inp.algebra(), inp.n(), inp.level()).unwrap();
        prop_assert!(idx > 0.into());
    }

    #[test]
    fn fuchsian_coherence(li in any::<usize>(), pair in 0usize..4) {
        let primes = [[2u64, 3], [2, 5], [3, 5], [2, 7]][pair];
        let f = TotallyRealField::rationals();
        let alg = QuaternionAlgebra::from_rational_primes(f.clone(), &primes, 0).unwrap();
        let lvl = pick_level(&f, li, true).unwrap();
        let report = genus_fuchsian(&alg, &lvl, false).unwrap();
        let inp = LefschetzInput::new(alg, 1, lvl, Rational::one()).unwrap();
        let l = lefschetz_number(&inp).unwrap().value;
        prop_assert_eq!(Rational::from(2) - Rational::from(2 * report.genus), l);
        prop_assert!(report.genus >= 2);
    }
}
