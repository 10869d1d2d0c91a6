use super::gf::Fq2;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::par::{count_matching, Execution};

/// Largest number of candidates any oracle will enumerate.
pub const SEARCH_SPACE_CAP: u128 = 1 << 24;

fn check_space(base: u64, digits: u32) -> Result<u64> {
    let states = (base as u128).checked_pow(digits).unwrap_or(u128::MAX);
    if states > SEARCH_SPACE_CAP {
        return Err(Error::SearchSpaceExceeded {
            states,
            cap: SEARCH_SPACE_CAP,
        });
    }
    Ok(states as u64)
}

fn decode(mut index: u64, base: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = index % base;
        index /= base;
    }
}

/// Determinant of a k × k row-major matrix modulo `modulus`, by cofactor
/// expansion along the first row.
fn det_mod(mat: &[i64], k: usize, modulus: i64) -> i64 {
    match k {
        1 => mat[0].rem_euclid(modulus),
        2 => (mat[0] * mat[3] - mat[1] * mat[2]).rem_euclid(modulus),
        _ => {
            let mut acc = 0i64;
            let mut minor = vec![0i64; (k - 1) * (k - 1)];
            for col in 0..k {
                if mat[col] == 0 {
                    continue;
                }
                let mut idx = 0;
                for r in 1..k {
                    for c in (0..k).filter(|&c| c != col) {
                        minor[idx] = mat[r * k + c];
                        idx += 1;
                    }
                }
                let term = mat[col] * det_mod(&minor, k - 1, modulus) % modulus;
                acc += if col % 2 == 0 { term } else { -term };
            }
            acc.rem_euclid(modulus)
        }
    }
}

pub fn brute_force_sl(m: u32, modulus: u64) -> Result<u64> {
    brute_force_sl_with(m, modulus, Execution::default())
}

/// |SL_m(ℤ/N)| by enumerating all m × m matrices over ℤ/N.
pub fn brute_force_sl_with(m: u32, modulus: u64, exec: Execution) -> Result<u64> {
    if m == 0 || modulus < 2 {
        return Err(Error::OutOfRange(format!(
            "brute_force_sl needs m >= 1 and N >= 2 (got m={m}, N={modulus})"
        )));
    }
    let k = m as usize;
    let states = check_space(modulus, m * m)?;
    let n = modulus as i64;
    Ok(count_matching(exec, 0..states, |idx| {
        let mut digits = vec![0u64; k * k];
        decode(idx, modulus, &mut digits);
        let mat: Vec<i64> = digits.iter().map(|&d| d as i64).collect();
        det_mod(&mat, k, n) == 1 % n
    }))
}

pub fn brute_force_sp(n: u32, q: u64) -> Result<u64> {
    brute_force_sp_with(n, q, Execution::default())
}

/// |Sp_n(F_q)| by enumerating all 2n × 2n matrices g with gᵀ J g = J.
pub fn brute_force_sp_with(n: u32, q: u64, exec: Execution) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let dim = 2 * n as usize;
    let half = n as usize;
    let states = check_space(q, (dim * dim) as u32)?;
    let qi = q as i64;
    Ok(count_matching(exec, 0..states, |idx| {
        let mut digits = vec![0u64; dim * dim];
        decode(idx, q, &mut digits);
        let g = |r: usize, c: usize| digits[r * dim + c] as i64;
        for i in 0..dim {
            for j in i..dim {
                // (gᵀ J g)_{ij} = Σ_k g_{k,i} g_{k+n,j} - g_{k+n,i} g_{k,j}
                let mut s = 0i64;
                for k in 0..half {
                    s += g(k, i) * g(k + half, j) - g(k + half, i) * g(k, j);
                }
                let target = if j == i + half { 1 } else { 0 };
                if (s - target).rem_euclid(qi) != 0 {
                    return false;
                }
            }
        }
        true
    }))
}

pub fn brute_force_unitary(n: u32, q: u64) -> Result<u64> {
    brute_force_unitary_with(n, q, Execution::default())
}

/// |U_n(F_{q²}/F_q)| by enumerating n × n matrices over F_{q²} with ḡᵀ g = 1.
pub fn brute_force_unitary_with(n: u32, q: u64, exec: Execution) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let field = Fq2::new(q)?;
    let size = field.order();
    let k = n as usize;
    let states = check_space(size, n * n)?;
    Ok(count_matching(exec, 0..states, |idx| {
        let mut g = vec![0u64; k * k];
        decode(idx, size, &mut g);
        for i in 0..k {
            for j in i..k {
                let mut s = 0;
                for r in 0..k {
                    s = field.add(s, field.mul(field.conj(g[r * k + i]), g[r * k + j]));
                }
                if s != u64::from(i == j) {
                    return false;
                }
            }
        }
        true
    }))
}

pub fn brute_force_ramified_sl1(q: u64) -> Result<u64> {
    brute_force_ramified_sl1_with(q, Execution::default())
}

/// Norm-one elements of the residue ring ℓ ⊕ ℓu (u² ≡ 0) of the maximal
/// order in the local division algebra, ℓ = F_{q²}. The reduced norm of
/// x + y·u reduces to N_{ℓ/F_q}(x).
pub fn brute_force_ramified_sl1_with(q: u64, exec: Execution) -> Result<u64> {
    let field = Fq2::new(q)?;
    let size = field.order();
    let states = check_space(size, 2)?;
    Ok(count_matching(exec, 0..states, |idx| {
        let x = idx % size;
        field.norm(x) == 1
    }))
}
