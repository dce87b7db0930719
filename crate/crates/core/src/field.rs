//! Dense linear algebra over a prime field 𝔽_p with p < 2^32.

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Deterministic trial division; primes here are below 2^32.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::pre("prime_below_2_32", format!("{p}")));
    }
    if p <= 1_000_000 {
        return Err(Error::pre("prime_above_1e6", format!("{p}")));
    }
    if !is_prime(p) {
        return Err(Error::pre("prime", format!("{p} is not prime")));
    }
    Ok(())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Row-major matrix with entries reduced mod p.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// Gaussian elimination; returns (rank, determinant when square).
    fn eliminate(&self, p: u64) -> (usize, u64) {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut det = 1u64;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    m.swap(piv * cols + j, rank * cols + j);
                }
                det = (p - det) % p;
            }
            let pv = m[rank * cols + c];
            det = det * pv % p;
            let inv = inv_mod(pv, p);
            for r in rank + 1..rows {
                let f = m[r * cols + c] * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = f * m[rank * cols + j] % p;
                    m[r * cols + j] = (m[r * cols + j] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == rows {
                // Remaining columns cannot add rank; a square matrix is done.
                if c + 1 < cols {
                    det = 0;
                }
                break;
            }
        }
        if rank < rows.min(cols) {
            det = 0;
        }
        (rank, det)
    }

    pub fn rank(&self, p: u64) -> usize {
        self.eliminate(p).0
    }

    /// Determinant of a square matrix; the 0×0 determinant is 1.
    pub fn det(&self, p: u64) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return 1;
        }
        self.eliminate(p).1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(!is_prime(1_000_001));
        assert!(check_prime(7).is_err());
        assert!(check_prime(1_000_003).is_ok());
    }

    #[test]
    fn rank_and_det() {
        let p = 1_000_003;
        let m = Matrix { rows: 2, cols: 2, data: vec![1, 2, 3, 4] };
        assert_eq!(m.rank(p), 2);
        assert_eq!(m.det(p), p - 2);
        let m = Matrix { rows: 2, cols: 3, data: vec![1, 2, 3, 2, 4, 6] };
        assert_eq!(m.rank(p), 1);
        let m = Matrix { rows: 3, cols: 3, data: vec![0, 1, 0, 0, 0, 1, 1, 0, 0] };
        assert_eq!(m.det(p), 1);
        assert_eq!(Matrix::zeros(0, 0).det(p), 1);
    }
}
