//! Small machine-integer number theory: primality, factorization, Jacobi and
//! Kronecker symbols.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut i = 5u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
            return false;
        }
        i += 6;
    }
    true
}

/// Prime factorization as ascending `(p, exponent)` pairs; empty for 0 and 1.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Decomposes a prime power `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Ok((*p, *k)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n) as i128;
    let mut n = n as i128;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut n = n as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        n >>= tz;
    }
    if n == 1 {
        return result;
    }
    result * jacobi(a, n as i64)
}

/// Fundamental discriminants: D ≡ 1 (mod 4) squarefree, or D = 4m with
/// m ≡ 2, 3 (mod 4) squarefree. D = 1 is excluded.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let abs = d.unsigned_abs();
    if d.rem_euclid(4) == 1 {
        return is_squarefree(abs);
    }
    if d.rem_euclid(4) == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

/// Kronecker symbol (D/m) for a fundamental discriminant D.
pub fn kronecker(d: i64, m: i64) -> Result<i8> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamentalDiscriminant(d));
    }
    Ok(kronecker_symbol(d, m))
}
