use crate::arith::is_prime;
use crate::error::{Error, Result};

/// The field F_{q²} for a prime q, built as F_q[x]/(x² + a x + b) with
/// (a, b) the lexicographically first pair giving an irreducible
/// polynomial. Elements are encoded as `u + v·q` for `u + v·x`.
#[derive(Clone, Debug)]
pub struct Fq2 {
    q: u64,
    a: u64,
    b: u64,
    mul_table: Vec<u32>,
    conj_table: Vec<u32>,
}

impl Fq2 {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > 256 {
            return Err(Error::OutOfRange(format!(
                "F_(q^2) tables limited to q <= 256, got {q}"
            )));
        }
        let (a, b) = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .find(|&(a, b)| (0..q).all(|t| (t * t + a * t + b) % q != 0))
            .expect("an irreducible quadratic exists over every prime field");
        let size = (q * q) as usize;
        let mut f = Fq2 {
            q,
            a,
            b,
            mul_table: Vec::new(),
            conj_table: Vec::new(),
        };
        let mut mul_table = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                mul_table[x * size + y] = f.mul_slow(x as u64, y as u64) as u32;
            }
        }
        f.mul_table = mul_table;
        f.conj_table = (0..size as u64).map(|z| f.pow(z, q) as u32).collect();
        Ok(f)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus coefficients (a, b) of x² + a x + b.
    pub fn modulus(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn order(&self) -> u64 {
        self.q * self.q
    }

    pub fn one(&self) -> u64 {
        1
    }

    fn parts(&self, z: u64) -> (u64, u64) {
        (z % self.q, z / self.q)
    }

    fn join(&self, u: u64, v: u64) -> u64 {
        u + v * self.q
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (u1, v1) = self.parts(x);
        let (u2, v2) = self.parts(y);
        self.join((u1 + u2) % self.q, (v1 + v2) % self.q)
    }

    fn mul_slow(&self, x: u64, y: u64) -> u64 {
        let q = self.q;
        let (u1, v1) = self.parts(x);
        let (u2, v2) = self.parts(y);
        // x² = -a x - b
        let c0 = u1 * u2 % q;
        let c1 = (u1 * v2 + u2 * v1) % q;
        let c2 = v1 * v2 % q;
        let u = (c0 + c2 * ((q - self.b) % q)) % q;
        let v = (c1 + c2 * ((q - self.a) % q)) % q;
        self.join(u, v)
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if self.mul_table.is_empty() {
            return self.mul_slow(x, y);
        }
        self.mul_table[(x * self.order() + y) as usize] as u64
    }

    pub fn pow(&self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// Frobenius z ↦ z^q.
    pub fn conj(&self, z: u64) -> u64 {
        self.conj_table[z as usize] as u64
    }

    /// N(z) = z · z̄, an element of F_q (encoded with v = 0).
    pub fn norm(&self, z: u64) -> u64 {
        self.mul(z, self.conj(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 5, 7] {
            let f = Fq2::new(q).unwrap();
            let n = f.order();
            // every nonzero element is invertible
            for x in 1..n {
                assert!((1..n).any(|y| f.mul(x, y) == 1), "q={q} x={x}");
            }
            // Frobenius is an involutive field automorphism fixing F_q
            for x in 0..n {
                assert_eq!(f.conj(f.conj(x)), x);
                if x < q {
                    assert_eq!(f.conj(x), x);
                }
                let nx = f.norm(x);
                assert!(nx < q, "norm lands in F_q");
            }
            // norm map onto F_q^* has kernel of size q+1
            let kernel = (0..n).filter(|&x| f.norm(x) == 1).count() as u64;
            assert_eq!(kernel, q + 1);
        }
    }

    #[test]
    fn lexicographic_modulus() {
        assert_eq!(Fq2::new(2).unwrap().modulus(), (1, 1));
        assert_eq!(Fq2::new(3).unwrap().modulus(), (0, 1));
        assert_eq!(Fq2::new(5).unwrap().modulus(), (0, 2));
        assert!(Fq2::new(4).is_err());
    }
}
