//! Randomized linear-algebra oracles over 𝔽_p.
//!
//! Random representations are sampled uniformly; the map
//! d^V_W : ⊕_x Hom(V(x),W(x)) → ⊕_a Hom(V(ta),W(ha)),
//! φ ↦ W(a)φ(ta) − φ(ha)V(a), has kernel Hom(V,W) and cokernel Ext(V,W).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{check_prime, Matrix};
use crate::quiver::{DimVector, Quiver};

/// One matrix per arrow, V(a) of size α(ha) × α(ta), row-major.
struct Rep {
    maps: Vec<Vec<u64>>,
}

fn random_rep(q: &Quiver, a: &DimVector, p: u64, rng: &mut ChaCha8Rng) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .map(|&(t, h)| (0..a.0[t] * a.0[h]).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    Rep { maps }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut off = Vec::new();
    let mut s = 0;
    for x in sizes {
        off.push(s);
        s += x;
    }
    (off, s)
}

/// The matrix of d^V_W in the standard bases.
fn d_matrix(q: &Quiver, a: &DimVector, b: &DimVector, v: &Rep, w: &Rep, p: u64) -> Matrix {
    let (al, be) = (&a.0, &b.0);
    let n = q.n();
    // Column (x, i, j) is the (i,j) entry of φ_x, a β(x)×α(x) matrix.
    let (coff, cols) = offsets((0..n).map(|x| (al[x] * be[x]) as usize));
    let (roff, rows) = offsets(q.arrows().iter().map(|&(t, h)| (al[t] * be[h]) as usize));
    let mut m = Matrix::zeros(rows, cols);
    for (e, &(t, h)) in q.arrows().iter().enumerate() {
        let (at, ah, bt, bh) = (al[t] as usize, al[h] as usize, be[t] as usize, be[h] as usize);
        // Row (i,j): entry of a β(h)×α(t) matrix.
        for i in 0..bh {
            for j in 0..at {
                let r = roff[e] + i * at + j;
                // (W(a)φ_t)[i][j] = Σ_k W(a)[i][k] φ_t[k][j]
                for k in 0..bt {
                    let c = coff[t] + k * at + j;
                    let val = w.maps[e][i * bt + k];
                    m.set(r, c, (m.get(r, c) + val) % p);
                }
                // −(φ_h V(a))[i][j] = −Σ_k φ_h[i][k] V(a)[k][j]
                for k in 0..ah {
                    let c = coff[h] + i * ah + k;
                    let val = v.maps[e][k * at + j];
                    m.set(r, c, (m.get(r, c) + p - val) % p);
                }
            }
        }
    }
    m
}

/// (hom, ext) estimated from `trials` random pairs: the minimum kernel
/// dimension seen, and ext = hom − ⟨α,β⟩.
pub fn generic_pair_oracle(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    trials: usize,
    seed: u64,
    prime: u64,
) -> Result<(i64, i64)> {
    check_prime(prime)?;
    q.check_dim(a)?;
    q.check_dim(b)?;
    if trials == 0 {
        return Err(Error::pre("trials_positive", "trials = 0"));
    }
    if a.is_zero() || b.is_zero() {
        return Ok((0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = i64::MAX;
    for _ in 0..trials {
        let v = random_rep(q, a, prime, &mut rng);
        let w = random_rep(q, b, prime, &mut rng);
        let m = d_matrix(q, a, b, &v, &w, prime);
        best = best.min((m.cols - m.rank(prime)) as i64);
    }
    Ok((best, best - q.euler(a, b)))
}

/// Rank of the samples × samples matrix det d^{V_i}_{W_j}: a lower bound for
/// dim SI(Q,β)_{⟨α,·⟩}, exact with high probability.
pub fn det_rank_oracle(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    samples: usize,
    seed: u64,
    prime: u64,
) -> Result<usize> {
    check_prime(prime)?;
    q.check_dim(a)?;
    q.check_dim(b)?;
    if samples == 0 {
        return Err(Error::pre("samples_positive", "samples = 0"));
    }
    if q.euler(a, b) != 0 {
        return Err(Error::pre("square_d_matrix", format!("⟨α,β⟩ = {} ≠ 0", q.euler(a, b))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs: Vec<Rep> = (0..samples).map(|_| random_rep(q, a, prime, &mut rng)).collect();
    let ws: Vec<Rep> = (0..samples).map(|_| random_rep(q, b, prime, &mut rng)).collect();
    let mut m = Matrix::zeros(samples, samples);
    for (i, v) in vs.iter().enumerate() {
        for (j, w) in ws.iter().enumerate() {
            m.set(i, j, d_matrix(q, a, b, v, w, prime).det(prime));
        }
    }
    Ok(m.rank(prime))
}
