//! Faces of the cone ℝ₊Σ(Q,α) of effective weights.
//!
//! Σ(Q,α) = {σ : σ(α) = 0, σ(γ) ≤ 0 for all γ ↪ α}. Faces of dimension
//! n − r correspond to quiver Schur sequences (γ_1,…,γ_r) with
//! α = Σ a_i γ_i, a_i positive integers and a_i = 1 for imaginary
//! non-isotropic γ_i. The face is cut out by σ(γ_i) = 0; conversely a
//! weight in its relative interior has σ-stable decomposition with exactly
//! those roots.
//!
//! For α that is not sincere only the support matters: n is replaced by
//! |Supp(α)| and weights are taken to vanish off the support.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homext::{check_size, classify, sub};
use crate::linalg::{nullspace, primitive, solve_combination};
use crate::quiver::{DimVector, Quiver, Weight};
use crate::search::{BoxSearch, Side};
use crate::siweights::si_dim_raw;
use crate::stability::{greedy_order, may_precede, semistable_raw, sigma_stable_raw};

/// A face of ℝ₊Σ(Q,α) named by its quiver Schur sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDescriptor {
    /// Sorted lexicographically.
    pub roots: Vec<DimVector>,
    pub coefficients: Vec<u64>,
    /// r − 1: codimension inside the (n−1)-dimensional cone.
    pub codim: usize,
    /// Indices into `roots` in quiver Schur sequence order.
    pub certificate: Vec<usize>,
    pub restricted_to_support: bool,
}

impl FaceDescriptor {
    pub fn r(&self) -> usize {
        self.roots.len()
    }

    /// The roots in certificate order.
    pub fn sequence(&self) -> Vec<DimVector> {
        self.certificate.iter().map(|&i| self.roots[i].clone()).collect()
    }
}

fn check(q: &Quiver, a: &DimVector) -> Result<()> {
    q.require_acyclic()?;
    q.check_dim(a)?;
    if a.is_zero() {
        return Err(Error::pre("nonzero_dimension", "α = 0"));
    }
    Ok(())
}

/// Every γ ↪ α with 0 ≠ γ ≠ α, in lexicographic order. Together with
/// σ(α) = 0 the inequalities σ(γ) ≤ 0 cut out Σ(Q,α); many are redundant.
pub fn sigma_inequalities(q: &Quiver, a: &DimVector) -> Result<Vec<DimVector>> {
    check(q, a)?;
    let mut cands = BoxSearch::below(q, a).rank(q, a, Side::Sub).collect();
    cands.sort();
    Ok(cands
        .into_par_iter()
        .map(DimVector)
        .filter(|g| !g.is_zero() && g != a && sub(q, g, a))
        .collect())
}

fn schur_candidates(q: &Quiver, a: &DimVector) -> Vec<DimVector> {
    let mut all = BoxSearch::below(q, a).collect();
    all.sort();
    all.into_par_iter().map(DimVector).filter(|g| !g.is_zero() && classify(q, g).is_schur()).collect()
}

/// Coefficients of α over independent roots, if they are positive integers
/// obeying the imaginary-multiplicity rule.
fn coefficients(q: &Quiver, roots: &[DimVector], a: &DimVector) -> Option<Vec<u64>> {
    let vecs: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
    let c = solve_combination(&vecs, &a.0)?;
    let mut out = Vec::with_capacity(c.len());
    for (x, r) in c.iter().zip(roots) {
        if !x.is_integer() || !x.is_positive() {
            return None;
        }
        let v = x.to_integer().to_u64()?;
        if v > 1 && q.euler(r, r) < 0 {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

/// Faces of dimension |Supp α| − r, i.e. of codimension r − 1 in the cone.
pub fn enumerate_faces(q: &Quiver, a: &DimVector, r: usize) -> Result<Vec<FaceDescriptor>> {
    check(q, a)?;
    let s = a.support().len();
    if r == 0 || r + 1 > s {
        return Err(Error::pre("face_rank_range", format!("r = {r} outside 1..={}", s.saturating_sub(1))));
    }
    check_size(a)?;
    let cands = schur_candidates(q, a);
    let k = cands.len();
    // Relations are needed only for pairs that fit below α together.
    let pairs: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| cands[i].add(&cands[j]).le(a)).collect();
    let rel: Vec<((usize, usize), (bool, bool))> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let f = may_precede(q, &cands[i], &cands[j])?;
            let b = may_precede(q, &cands[j], &cands[i])?;
            Ok(((i, j), (f, b)))
        })
        .collect::<Result<_>>()?;
    let mut before: HashMap<(usize, usize), bool> = HashMap::new();
    for ((i, j), (f, b)) in rel {
        if f || b {
            before.insert((i, j), f);
            before.insert((j, i), b);
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut st = Search { q, a, r, cands: &cands, before: &before, out: &mut out, restricted: s < q.n() };
    st.go(0, &mut chosen, &DimVector::zero(q.n()));
    Ok(out)
}

struct Search<'a> {
    q: &'a Quiver,
    a: &'a DimVector,
    r: usize,
    cands: &'a [DimVector],
    before: &'a HashMap<(usize, usize), bool>,
    out: &'a mut Vec<FaceDescriptor>,
    restricted: bool,
}

impl Search<'_> {
    fn go(&mut self, from: usize, chosen: &mut Vec<usize>, sum: &DimVector) {
        if chosen.len() == self.r {
            self.leaf(chosen);
            return;
        }
        for i in from..self.cands.len() {
            let next = sum.add(&self.cands[i]);
            if !next.le(self.a) {
                continue;
            }
            if !chosen.iter().all(|&j| self.before.contains_key(&(i, j))) {
                continue;
            }
            chosen.push(i);
            self.go(i + 1, chosen, &next);
            chosen.pop();
        }
    }

    fn leaf(&mut self, chosen: &[usize]) {
        let roots: Vec<DimVector> = chosen.iter().map(|&i| self.cands[i].clone()).collect();
        let Some(coefficients) = coefficients(self.q, &roots, self.a) else { return };
        let ok = |x: usize, y: usize| self.before.get(&(chosen[x], chosen[y])).copied().unwrap_or(false);
        let Some(certificate) = greedy_order(roots.len(), ok) else { return };
        self.out.push(FaceDescriptor {
            codim: roots.len() - 1,
            roots,
            coefficients,
            certificate,
            restricted_to_support: self.restricted,
        });
    }
}

/// Faces of codimension 1 in the cone.
pub fn walls(q: &Quiver, a: &DimVector) -> Result<Vec<FaceDescriptor>> {
    enumerate_faces(q, a, 2)
}

/// One-dimensional faces.
pub fn extremal_rays(q: &Quiver, a: &DimVector) -> Result<Vec<FaceDescriptor>> {
    check(q, a)?;
    enumerate_faces(q, a, a.support().len() - 1)
}

/// The face whose relative interior contains σ, read off from the
/// σ-stable decomposition of α.
pub fn face_of_weight(q: &Quiver, a: &DimVector, s: &Weight) -> Result<FaceDescriptor> {
    check(q, a)?;
    q.check_weight(s)?;
    if !semistable_raw(q, a, s)? {
        return Err(Error::pre("weight_in_cone", "α is not σ-semistable"));
    }
    let dec = sigma_stable_raw(q, a, s)?;
    let r = dec.factors.len();
    Ok(FaceDescriptor {
        roots: dec.factors.iter().map(|f| f.0.clone()).collect(),
        coefficients: dec.factors.iter().map(|f| f.1).collect(),
        codim: r - 1,
        certificate: dec.certificate,
        restricted_to_support: a.support().len() < q.n(),
    })
}

/// The primitive weight spanning an extremal ray: the solution line of
/// σ(γ_i) = 0 (and σ = 0 off the support), oriented into the cone.
pub fn ray_weight(q: &Quiver, a: &DimVector, ray: &FaceDescriptor) -> Result<Weight> {
    check(q, a)?;
    let supp = a.support();
    if ray.r() + 1 != supp.len() {
        return Err(Error::pre("extremal_ray", format!("descriptor has {} roots, support {}", ray.r(), supp.len())));
    }
    let n = q.n();
    let mut rows: Vec<Vec<i64>> = ray.roots.iter().map(|g| g.0.clone()).collect();
    for x in (0..n).filter(|x| !supp.contains(x)) {
        let mut e = vec![0; n];
        e[x] = 1;
        rows.push(e);
    }
    let ns = nullspace(&rows, n);
    if ns.len() != 1 {
        return Err(Error::Theory(format!("ray equations have a {}-dimensional solution space", ns.len())));
    }
    let w = Weight(primitive(&ns[0]));
    if semistable_raw(q, a, &w)? {
        return Ok(w);
    }
    let w = w.scale(-1);
    if semistable_raw(q, a, &w)? {
        return Ok(w);
    }
    Err(Error::Theory("neither orientation of a ray weight lies in the cone".into()))
}

/// All extremal rays together with their primitive weights.
pub fn ray_weights(q: &Quiver, a: &DimVector) -> Result<Vec<(FaceDescriptor, Weight)>> {
    extremal_rays(q, a)?
        .into_iter()
        .map(|f| {
            let w = ray_weight(q, a, &f)?;
            Ok((f, w))
        })
        .collect()
}

/// A weight in the relative interior of `face`: the sum of the weights of
/// the extremal rays lying on it.
pub fn interior_weight(face: &FaceDescriptor, rays: &[(FaceDescriptor, Weight)]) -> Result<Weight> {
    let on_face: Vec<&Weight> =
        rays.iter().map(|(_, w)| w).filter(|w| face.roots.iter().all(|g| w.eval(g) == 0)).collect();
    let Some(first) = on_face.first() else {
        return Err(Error::Theory("face contains no extremal ray".into()));
    };
    Ok(on_face[1..].iter().fold((*first).clone(), |acc, w| acc.add(w)))
}

/// [dim SI(Q,α)_{mσ} for m = 0..=m_max] along an extremal ray.
pub fn ray_series(q: &Quiver, a: &DimVector, s: &Weight, m_max: usize) -> Result<Vec<BigUint>> {
    check(q, a)?;
    q.check_weight(s)?;
    let supp = a.support();
    let g = supp.iter().fold(0i64, |g, &x| num_integer::gcd(g, s.0[x]));
    if g != 1 {
        return Err(Error::pre("indivisible_weight", format!("gcd of σ on the support is {g}")));
    }
    let face = face_of_weight(q, a, s)?;
    if face.r() + 1 != supp.len() {
        return Err(Error::pre("extremal_ray", format!("σ lies on a face of codimension {}", face.codim)));
    }
    let mut out = vec![BigUint::one()];
    for m in 1..=m_max {
        out.push(si_dim_raw(q, a, &s.scale(m as i64))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use std::collections::BTreeSet;

    fn d(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    /// D4 with all arms pointing in: (top, left, center, right, bottom).
    fn octahedron() -> (Quiver, DimVector) {
        let v = ["t", "l", "c", "r", "b"];
        let a = [("t", "c"), ("l", "c"), ("r", "c"), ("b", "c")];
        (Quiver::new(&v, &a, false).unwrap(), d(&[1, 1, 2, 1, 1]))
    }

    /// Three double arrows into the center: (top, left, center, right).
    fn hexagon() -> (Quiver, DimVector) {
        let v = ["t", "l", "c", "r"];
        let a = [("t", "c"), ("t", "c"), ("l", "c"), ("l", "c"), ("r", "c"), ("r", "c")];
        (Quiver::new(&v, &a, false).unwrap(), d(&[1, 1, 3, 1]))
    }

    fn root_sets(fs: &[FaceDescriptor]) -> BTreeSet<Vec<DimVector>> {
        fs.iter().map(|f| f.roots.clone()).collect()
    }

    fn set(v: &[&[i64]]) -> Vec<DimVector> {
        let mut r: Vec<DimVector> = v.iter().map(|x| d(x)).collect();
        r.sort();
        r
    }

    #[test]
    fn octahedron_counts_and_walls() {
        let (q, a) = octahedron();
        let w = walls(&q, &a).unwrap();
        assert_eq!(w.len(), 8);
        let ws = root_sets(&w);
        assert!(ws.contains(&set(&[&[0, 1, 2, 1, 1], &[1, 0, 0, 0, 0]])));
        assert!(ws.contains(&set(&[&[1, 0, 1, 0, 0], &[0, 1, 1, 1, 1]])));
        assert_eq!(enumerate_faces(&q, &a, 3).unwrap().len(), 12);
        let rays = extremal_rays(&q, &a).unwrap();
        assert_eq!(rays.len(), 6);
        assert!(root_sets(&rays).contains(&set(&[&[1, 0, 1, 0, 0], &[0, 1, 1, 0, 0], &[0, 0, 0, 0, 1], &[0, 0, 0, 1, 0]])));
        assert!(enumerate_faces(&q, &a, 5).is_err());
        assert!(enumerate_faces(&q, &a, 0).is_err());
    }

    #[test]
    fn hexagon_counts() {
        let (q, a) = hexagon();
        let w = walls(&q, &a).unwrap();
        assert_eq!(w.len(), 6);
        let ws = root_sets(&w);
        assert!(ws.contains(&set(&[&[0, 1, 3, 1], &[1, 0, 0, 0]])));
        assert!(ws.contains(&set(&[&[1, 0, 2, 0], &[0, 1, 1, 1]])));
        let rays = extremal_rays(&q, &a).unwrap();
        assert_eq!(rays.len(), 6);
        assert!(root_sets(&rays).contains(&set(&[&[1, 0, 2, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]])));
    }

    #[test]
    fn inequalities_and_r1() {
        let k1 = Quiver::kronecker(1);
        assert_eq!(sigma_inequalities(&k1, &d(&[1, 1])).unwrap(), vec![d(&[0, 1])]);
        assert!(sigma_inequalities(&k1, &d(&[1, 0])).unwrap().is_empty());
        let (q, a) = octahedron();
        let one = enumerate_faces(&q, &a, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].roots, vec![a.clone()]);
        // θ(2), α = (2,2): multiple of the isotropic root (1,1).
        let k2 = Quiver::kronecker(2);
        let f = enumerate_faces(&k2, &d(&[2, 2]), 1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].roots[0].clone(), f[0].coefficients[0]), (d(&[1, 1]), 2));
    }

    #[test]
    fn bijection_and_dimension() {
        for (q, a) in [octahedron(), hexagon()] {
            let n = a.support().len();
            let rays = ray_weights(&q, &a).unwrap();
            for r in 1..n {
                for f in enumerate_faces(&q, &a, r).unwrap() {
                    let w = interior_weight(&f, &rays).unwrap();
                    let back = face_of_weight(&q, &a, &w).unwrap();
                    assert_eq!(back.roots, f.roots);
                    assert_eq!(back.coefficients, f.coefficients);
                    // n − r independent weights on the face.
                    let on: Vec<Vec<i64>> = rays
                        .iter()
                        .filter(|(_, w)| f.roots.iter().all(|g| w.eval(g) == 0))
                        .map(|(_, w)| w.0.clone())
                        .collect();
                    assert_eq!(rank(&on, q.n()), n - r);
                    // Quiver Schur sequence conditions in certificate order.
                    let seq = f.sequence();
                    for i in 0..seq.len() {
                        for j in i + 1..seq.len() {
                            assert!(may_precede(&q, &seq[i], &seq[j]).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn octahedron_ray_series() {
        let (q, a) = octahedron();
        for (_, w) in ray_weights(&q, &a).unwrap() {
            let s = ray_series(&q, &a, &w, 3).unwrap();
            assert_eq!(s, vec![BigUint::one(); 4]);
            assert_eq!(ray_series(&q, &a, &w, 0).unwrap(), vec![BigUint::one()]);
            assert!(ray_series(&q, &a, &w.scale(2), 1).is_err());
        }
    }

    #[test]
    fn square_face_of_weight() {
        let v = ["tl", "tr", "bl", "br"];
        let arrows = [("tl", "tr"), ("tl", "br"), ("tl", "bl"), ("tr", "br"), ("bl", "br"), ("bl", "tr")];
        let q = Quiver::new(&v, &arrows, false).unwrap();
        let f = face_of_weight(&q, &d(&[1, 4, 5, 2]), &Weight(vec![1, -1, 1, -1])).unwrap();
        assert_eq!(f.roots, set(&[&[0, 0, 1, 1], &[1, 2, 2, 1], &[0, 1, 1, 0]]));
        assert_eq!(f.codim, 2);
        assert!(face_of_weight(&q, &d(&[1, 0, 0, 0]), &Weight(vec![1, -1, 1, -1])).is_err());
    }

    #[test]
    fn t888_extremal_ray() {
        let q = Quiver::star(8, 8, 8);
        let stair: Vec<i64> = (1..8).collect();
        let beta = DimVector([stair.clone(), stair.clone(), stair, vec![8]].concat());
        let sigma = Weight(vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, -3]);
        let f = face_of_weight(&q, &beta, &sigma).unwrap();
        assert_eq!(f.r(), 21);
        assert_eq!(f.r() + 1, q.n());
        let s = ray_series(&q, &beta, &sigma, 3).unwrap();
        assert_eq!(s, [1u32, 2, 3, 4].map(BigUint::from).to_vec());
    }

    #[test]
    fn non_sincere_is_flagged() {
        let (q, _) = octahedron();
        let a = d(&[1, 1, 2, 0, 0]);
        let f = walls(&q, &a).unwrap();
        assert!(f.iter().all(|x| x.restricted_to_support));
        assert!(!f.is_empty());
    }
}
