//! Exact rational linear algebra on small integer systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let sub = &f * &m[row][k];
                    m[r][k] = &m[r][k] - sub;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

#[cfg(test)]
pub(crate) fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m = to_rat(rows);
    rref(&mut m, cols).len()
}

/// A basis of {x : row·x = 0 for every row}, one vector per free column.
pub(crate) fn nullspace(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = to_rat(rows);
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Coefficients c with Σ c_i·vectors[i] = target, if the vectors are
/// linearly independent and the target lies in their span.
pub(crate) fn solve_combination(vectors: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let k = vectors.len();
    let n = target.len();
    // Augmented system: row x reads Σ_i vectors[i][x] c_i = target[x].
    let rows: Vec<Vec<i64>> =
        (0..n).map(|x| vectors.iter().map(|v| v[x]).chain(std::iter::once(target[x])).collect()).collect();
    let mut m = to_rat(&rows);
    let pivots = rref(&mut m, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// The primitive integer vector on the ray through v (v ≠ 0).
pub(crate) fn primitive(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    ints.iter().map(|x| (x / &g).to_i64().expect("weight entry fits in i64")).collect()
}
