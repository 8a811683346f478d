use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Addition and multiplication tables of `F_q` for `q ∈ {2, 3, 4, 5, 7, 8, 9}`
/// and other primes below 64. Elements are `0 … q−1`; `0` and `1` are the
/// field's zero and one. Extension fields encode `c_0 + c_1 x + …` as
/// `c_0 + c_1 p + …`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

fn small_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        // Irreducible moduli, low coefficient first.
        let (p, modulus): (usize, &[usize]) = match q {
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            q if q < 64 && small_prime(q) => (q as usize, &[0, 1]),
            _ => return Err(Error::UnsupportedField(q)),
        };
        let k = modulus.len() - 1;
        let q = q as usize;
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| x / p.pow(i as u32) % p).collect() };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce by the monic modulus from the top.
                for top in (k..2 * k).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate().take(k) {
                            prod[top - k + i] = (prod[top - k + i] + (p - m) * c) % p;
                        }
                        prod[top] = 0;
                    }
                }
                mul[a * q + b] = encode(&prod[..k]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        Ok(FiniteField { q, add, mul, neg })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            let n = q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.sub(a, a), 0);
                if a != 0 {
                    assert_eq!((0..n).filter(|&b| f.mul(a, b) == 1).count(), 1, "q={q} a={a}");
                }
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(16).is_err());
    }
}
