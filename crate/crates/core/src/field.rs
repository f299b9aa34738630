//! Arithmetic in the prime field F_p on `u32` residues.
//!
//! Residues are always kept reduced into `0..p`. Products are formed in
//! `u64`, so any prime below 2^32 is safe.

use crate::error::FieldError;

/// A prime modulus. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Solves `m · x = rhs` over F_p for a square `m` given as rows.
///
/// Returns `None` when `m` is singular.
pub fn solve(p: Prime, m: &[Vec<u32>], rhs: &[u32]) -> Option<Vec<u32>> {
    let n = m.len();
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let scale = p.inv(aug[col][col]).expect("pivot is nonzero");
        for x in aug[col].iter_mut() {
            *x = p.mul(*x, scale);
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = p.sub(*x, p.mul(factor, y));
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n]).collect())
}
