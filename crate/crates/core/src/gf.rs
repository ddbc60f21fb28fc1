//! Dense Gaussian elimination over a prime field GF(p) with a runtime
//! modulus. Matrices in this crate stay small (hundreds of columns), so a
//! dense row representation is enough.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// GF(p) for a checked prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, value: i64) -> u64 {
        value.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// In-place row echelon reduction; returns the rank. Deterministic: pivots
/// are chosen as the first nonzero entry scanning rows in order.
pub fn rank(field: PrimeField, rows: &mut Vec<Vec<u64>>) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    for row in rows.iter_mut() {
        row.resize(cols, 0);
    }
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] % field.p != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let scale = field.inv(rows[pivot_row][col]);
        for entry in rows[pivot_row].iter_mut() {
            *entry = field.mul(*entry, scale);
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] % field.p != 0 {
                let factor = rows[r][col];
                for c in 0..cols {
                    let subtrahend = field.mul(factor, rows[pivot_row][c]);
                    rows[r][c] = field.sub(rows[r][c], subtrahend);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// Rank of the images of `vectors` in the quotient of the ambient space by
/// the row space of `relations`: `rank(relations ∪ vectors) -
/// rank(relations)`.
pub fn rank_modulo(field: PrimeField, relations: &[Vec<u64>], vectors: &[Vec<u64>]) -> usize {
    let mut base: Vec<Vec<u64>> = relations.to_vec();
    let base_rank = rank(field, &mut base);
    let mut joint: Vec<Vec<u64>> = relations.to_vec();
    joint.extend(vectors.to_vec());
    let joint_rank = rank(field, &mut joint);
    joint_rank - base_rank
}
