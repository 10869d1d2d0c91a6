//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use symplefs::exact::{ratio, Rational, SymbolicScalar};
use symplefs::finitegrp::{
    brute_force_ramified_sl1, brute_force_sl, brute_force_sp, brute_force_unitary,
    ramified_local_order, sl_order, sp_order, unitary_order,
};
use symplefs::lefschetz::{
    check_torsion_necessary, congruence_index, euler_char_adelic_numeric,
    euler_char_fixed_component, genus_fuchsian, h1_signature_classes, lefschetz_number,
    lefschetz_via_decomposition, vol_sp_compact, LefschetzInput, SignatureClass,
};
use symplefs::numberfield::{
    dedekind_zeta_neg, ideal_from_integer, ideals_up_to_norm, Ideal, PrimeIdeal, TotallyRealField,
};
use symplefs::quaternion::QuaternionAlgebra;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q() -> TotallyRealField {
    TotallyRealField::rationals()
}

fn level(field: &TotallyRealField, n: u64) -> Ideal {
    ideal_from_integer(field, n).expect("valid level")
}

fn input(
    alg: &QuaternionAlgebra,
    n: u32,
    lvl: &Ideal,
    tr: Rational,
) -> Result<LefschetzInput, String> {
    ok(LefschetzInput::new(alg.clone(), n, lvl.clone(), tr))
}

fn lefschetz(alg: &QuaternionAlgebra, n: u32, lvl: &Ideal) -> Result<Rational, String> {
    Ok(ok(lefschetz_number(&input(alg, n, lvl, Rational::one())?))?.value)
}

fn ram23(field: TotallyRealField) -> QuaternionAlgebra {
    QuaternionAlgebra::from_rational_primes(field, &[2, 3], 0).expect("2 and 3 do not split")
}

fn hamilton(field: TotallyRealField) -> QuaternionAlgebra {
    if field.degree() == 1 {
        QuaternionAlgebra::from_rational_primes(field, &[2], 1).expect("Hamilton quaternions")
    } else {
        QuaternionAlgebra::new(field, [], 2).expect("ramified at both real places")
    }
}

fn p3_sqrt5() -> Ideal {
    Ideal::prime(PrimeIdeal::new(3, 2, 1, "a").expect("3 is prime"))
}

fn criterion_1() -> Check {
    let split = QuaternionAlgebra::split(q());
    let mut seen = Vec::new();
    for n in 3..=7u64 {
        let value = lefschetz(&split, 1, &level(&q(), n))?;
        let count = ok(brute_force_sl(2, n))?;
        let expected = -(Rational::from(count) / Rational::from(12));
        ensure(value == expected, || {
            format!("N={n}: {value} vs -{count}/12")
        })?;
        seen.push(format!("N={n}:{value}"));
    }
    Ok(seen.join(" "))
}

fn criterion_2() -> Check {
    let alg = ram23(q());
    let mut seen = Vec::new();
    for (n, want_l, want_g) in [(5u64, -20i64, 11u64), (7, -56, 29)] {
        let lvl = level(&q(), n);
        let l = lefschetz(&alg, 1, &lvl)?;
        let g = ok(genus_fuchsian(&alg, &lvl, false))?;
        ensure(l == Rational::from(want_l), || {
            format!("level {n}: L = {l}")
        })?;
        ensure(g.genus == want_g, || {
            format!("level {n}: genus {}", g.genus)
        })?;
        ensure(g.b1 == 2 * want_g, || format!("level {n}: b1 {}", g.b1))?;
        let chi = Rational::from(2) - Rational::from(2 * g.genus);
        ensure(chi == l, || format!("level {n}: 2-2g = {chi} but L = {l}"))?;
        seen.push(format!("({n}): L={l} g={} b1={}", g.genus, g.b1));
    }
    Ok(seen.join(" "))
}

fn criterion_3() -> Check {
    let f = ok(TotallyRealField::quadratic(5))?;
    let z1 = ok(dedekind_zeta_neg(&f, 1))?;
    let z2 = ok(dedekind_zeta_neg(&f, 2))?;
    ensure(z1 == ratio(1, 30) && z2 == ratio(1, 60), || {
        format!("zeta values {z1}, {z2}")
    })?;
    let alg = hamilton(f);
    let inp = input(&alg, 2, &p3_sqrt5(), Rational::one())?;
    let class = ok(SignatureClass::parse(2, "2,0;2,0"))?;
    let chi = ok(euler_char_fixed_component(&inp, &class))?.value;
    ensure(chi == Rational::from(119556), || format!("chi = {chi}"))?;
    let decomposed = ok(lefschetz_via_decomposition(&inp))?;
    let direct = ok(lefschetz_number(&inp))?.value;
    ensure(
        decomposed == Rational::from(478224) && decomposed == direct,
        || format!("decomposition {decomposed}, direct {direct}"),
    )?;
    Ok(format!("zeta(-1)={z1} zeta(-3)={z2} chi={chi} L={direct}"))
}

struct GridCase {
    label: String,
    input: LefschetzInput,
}

/// ℚ, ℚ(√5), ℚ(√2); split, {2,3} and Hamilton-type algebras; n ≤ 3; every
/// level of norm ≤ 50 passing the necessary torsion check.
fn grid() -> Result<Vec<GridCase>, String> {
    let mut out = Vec::new();
    let fields = [
        q(),
        ok(TotallyRealField::quadratic(5))?,
        ok(TotallyRealField::quadratic(2))?,
    ];
    for field in fields {
        let algebras = [
            ("split", QuaternionAlgebra::split(field.clone())),
            ("ram{2,3}", ram23(field.clone())),
            ("hamilton", hamilton(field.clone())),
        ];
        let levels: Vec<Ideal> = ok(ideals_up_to_norm(&field, 50))?
            .into_iter()
            .filter(|l| check_torsion_necessary(&field, l).unwrap_or(false))
            .collect();
        for (name, alg) in &algebras {
            for n in 1..=3u32 {
                if n == 1 && alg.is_totally_definite() {
                    continue;
                }
                for lvl in &levels {
                    out.push(GridCase {
                        label: format!("{field} {name} n={n} level {lvl}"),
                        input: input(alg, n, lvl, Rational::one())?,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn criterion_4(grid: &[GridCase]) -> Check {
    ensure(grid.len() >= 50, || {
        format!("grid has only {} inputs", grid.len())
    })?;
    for case in grid {
        for tr in [Rational::one(), ratio(-3, 1), ratio(5, 7)] {
            let inp = case.input.clone().with_trace(tr.clone());
            let direct = ok(lefschetz_number(&inp))?.value;
            let decomposed = ok(lefschetz_via_decomposition(&inp))?;
            ensure(direct == decomposed, || {
                format!("{} tr={tr}: {direct} vs {decomposed}", case.label)
            })?;
        }
    }
    Ok(format!("{} inputs x 3 traces", grid.len()))
}

fn binomial_u128(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

fn criterion_5() -> Check {
    let mut checked = 0;
    for n in 1..=6u32 {
        for r in 0..=4u32 {
            let classes = ok(h1_signature_classes(r, n))?;
            let want_count = (n / 2 + 1).pow(r) as usize;
            ensure(classes.len() == want_count, || {
                format!("n={n} r={r}: {} classes", classes.len())
            })?;
            let total: u128 = classes
                .iter()
                .map(|c| {
                    c.signatures()
                        .iter()
                        .map(|&(_, qv)| binomial_u128(n, qv))
                        .product::<u128>()
                })
                .sum();
            ensure(total == 1u128 << (r * (n - 1)), || {
                format!("n={n} r={r}: sum {total}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, r) pairs"))
}

fn criterion_6() -> Check {
    let big = |v: u64| BigInt::from(v);
    for (m, qq) in [(2u32, 2u64), (2, 3), (2, 5), (2, 7), (3, 2)] {
        let brute = ok(brute_force_sl(m, qq))?;
        ensure(ok(sl_order(m, qq))? == big(brute), || {
            format!("SL_{m}({qq})")
        })?;
    }
    let mut sp22 = 0;
    for (n, qq) in [(1u32, 2u64), (1, 3), (1, 5), (2, 2)] {
        let brute = ok(brute_force_sp(n, qq))?;
        ensure(ok(sp_order(n, qq))? == big(brute), || {
            format!("Sp_{n}({qq})")
        })?;
        if (n, qq) == (2, 2) {
            sp22 = brute;
        }
    }
    ensure(sp22 == 720, || format!("Sp_2(F_2) = {sp22}"))?;
    for qq in [2u64, 3, 5] {
        let brute = ok(brute_force_ramified_sl1(qq))?;
        ensure(ok(ramified_local_order(1, qq))? == big(brute), || {
            format!("ramified local order at q={qq}")
        })?;
    }
    for (n, qq) in [(1u32, 2u64), (1, 3), (2, 2)] {
        let brute = ok(brute_force_unitary(n, qq))?;
        ensure(ok(unitary_order(n, qq))? == big(brute), || {
            format!("U_{n}({qq})")
        })?;
    }
    Ok(format!("16 orders match enumeration, |Sp_2(F_2)| = {sp22}"))
}

fn criterion_7() -> Check {
    let split = QuaternionAlgebra::split(q());
    for n in 2..=6u64 {
        let idx = ok(congruence_index(&split, 1, &level(&q(), n)))?;
        let brute = ok(brute_force_sl(2, n))?;
        ensure(idx == BigInt::from(brute), || {
            format!("N={n}: {idx} vs {brute}")
        })?;
    }
    let ram2 = hamilton(q());
    let idx = ok(congruence_index(&ram2, 1, &level(&q(), 2)))?;
    ensure(idx == BigInt::from(12), || {
        format!("ramified level (2): {idx}")
    })?;
    Ok(format!("N=2..6 match, ramified (2) -> {idx}"))
}

fn criterion_8() -> Check {
    let pi_power = |c: Rational, k| SymbolicScalar::new(c, k, 1).map_err(|e| e.to_string());
    ensure(
        ok(vol_sp_compact(1))? == pi_power(Rational::from(2), 2)?,
        || "vol Sp(1)".into(),
    )?;
    ensure(ok(vol_sp_compact(2))? == pi_power(ratio(8, 3), 6)?, || {
        "vol Sp(2)".into()
    })?;

    let f5 = ok(TotallyRealField::quadratic(5))?;
    let mut cases = Vec::new();
    for n in 3..=7u64 {
        cases.push((
            QuaternionAlgebra::split(q()),
            1,
            level(&q(), n),
            SignatureClass::empty(1),
        ));
    }
    for n in [5u64, 7] {
        cases.push((ram23(q()), 1, level(&q(), n), SignatureClass::empty(1)));
    }
    cases.push((
        hamilton(f5),
        2,
        p3_sqrt5(),
        ok(SignatureClass::parse(2, "2,0;2,0"))?,
    ));

    let mut worst: f64 = 0.0;
    for (alg, n, lvl, class) in &cases {
        let inp = input(alg, *n, lvl, Rational::one())?;
        let exact = ok(euler_char_fixed_component(&inp, class))?.value.to_f64();
        let est = ok(euler_char_adelic_numeric(alg, *n, lvl, class, 1_000_000))?;
        let rel = ((est.value - exact) / exact).abs();
        worst = worst.max(rel);
        ensure(rel < 1e-5, || {
            format!("{alg} level {lvl}: {} vs {exact}", est.value)
        })?;
    }
    Ok(format!(
        "{} inputs, worst relative error {worst:.2e}",
        cases.len()
    ))
}

fn criterion_9(grid: &[GridCase]) -> Check {
    let mut nonzero_chi = 0;
    for case in grid {
        let inp = &case.input;
        let alg = inp.algebra();
        let s = u64::from(alg.split_real_count());
        let n = u64::from(inp.n());
        let sign: i8 = if (s * n * (n + 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        };
        for class in ok(h1_signature_classes(alg.ram_real_count(), inp.n()))? {
            let chi = ok(euler_char_fixed_component(inp, &class))?.value;
            if !chi.is_zero() {
                nonzero_chi += 1;
                ensure(chi.signum() == sign, || {
                    format!("{} class {class}: chi = {chi}", case.label)
                })?;
            }
        }
        for tr in [1i64, -2, 3] {
            let value = ok(lefschetz_number(
                &inp.clone().with_trace(Rational::from(tr)),
            ))?
            .value;
            ensure(value.is_integer(), || {
                format!("{} tr={tr}: L = {value} is not an integer", case.label)
            })?;
        }
    }
    let mut zetas = 0;
    let fields = [
        q(),
        ok(TotallyRealField::quadratic(5))?,
        ok(TotallyRealField::quadratic(2))?,
    ];
    for field in &fields {
        for j in 1..=3u32 {
            let z = ok(dedekind_zeta_neg(field, j))?;
            let want: i8 = if (j * field.degree()) % 2 == 0 { 1 } else { -1 };
            ensure(!z.is_zero() && z.signum() == want, || {
                format!("zeta_{field}(1-{}) = {z}", 2 * j)
            })?;
            zetas += 1;
        }
    }
    Ok(format!(
        "{nonzero_chi} nonzero chi, {} integral L triples, {zetas} zeta signs",
        grid.len()
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let grid_start = Instant::now();
    let grid = grid();
    let grid = &grid;
    let grid_time = grid_start.elapsed();

    type Job<'a> = Box<dyn FnOnce() -> Check + 'a>;
    let with_grid = |f: fn(&[GridCase]) -> Check| -> Job<'_> {
        Box::new(move || match grid {
            Ok(g) => f(g),
            Err(e) => Err(format!("grid construction failed: {e}")),
        })
    };
    let jobs: Vec<(u32, &str, u64, Job)> = vec![
        (1, "classical SL2 check", 1, Box::new(criterion_1)),
        (2, "Shimura curve coherence", 1, Box::new(criterion_2)),
        (3, "quadratic field pipeline", 1, Box::new(criterion_3)),
        (4, "decomposition identity", 10, with_grid(criterion_4)),
        (5, "binomial identity", 1, Box::new(criterion_5)),
        (6, "finite group oracles", 20, Box::new(criterion_6)),
        (7, "index formula", 5, Box::new(criterion_7)),
        (8, "adelic cross-check", 10, Box::new(criterion_8)),
        (9, "sign and integrality laws", 5, with_grid(criterion_9)),
    ];

    let mut failures = 0;
    for (id, name, budget, job) in jobs {
        let t = Instant::now();
        let result = job();
        let mut elapsed = t.elapsed();
        if id == 4 {
            elapsed += grid_time;
        }
        let budget = Duration::from_secs(budget);
        let (status, detail) = match result {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("over time budget; {detail}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id} {status} {name} [{:.3}s / {}s] {detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of 9 criteria passed in {:.2}s",
        9 - failures,
        started.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
