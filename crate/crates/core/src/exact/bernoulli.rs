use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Memo of B_0, B_1, ... computed so far.
static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Bernoulli number B_k with B_1 = -1/2.
///
/// Uses the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, memoized across
/// calls.
pub fn bernoulli(k: usize) -> Rational {
    let mut cache = BERNOULLI_CACHE
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= k {
        let m = cache.len();
        if m >= 3 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        let acc: Rational = cache
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(j, b)| b * &Rational::from(binomial(m as u64 + 1, j as u64)))
            .sum();
        let next = -(acc / Rational::from(m as u64 + 1));
        cache.push(next);
    }
    cache[k].clone()
}

/// Bernoulli polynomial B_k(x) = sum_i C(k, i) B_i x^{k-i}.
pub fn bernoulli_poly_eval(k: usize, x: &Rational) -> Rational {
    // Horner in x, from the leading coefficient B_0 down to B_k.
    let mut acc = Rational::zero();
    for i in 0..=k {
        let coeff = bernoulli(i) * Rational::from(binomial(k as u64, i as u64));
        acc = acc * x + coeff;
    }
    acc
}

/// ζ(1 - 2j) = -B_{2j} / (2j).
pub fn riemann_zeta_neg(j: u32) -> Rational {
    assert!(j >= 1, "riemann_zeta_neg needs j >= 1");
    let k = 2 * j as usize;
    -(bernoulli(k) / Rational::from(k))
}
