//! The triple flag quiver T_{n,n,n} and the Klyachko cone.
//!
//! With the staircase β (1,…,n−1 on each arm, n at the center), the weight
//!
//! ```text
//!   x-arm: λ_1−λ_2, …, λ_{n−1}−λ_n
//!   y-arm: μ_1−μ_2, …, μ_{n−1}−μ_n      center: λ_n+μ_n−ν_1
//!   z-arm: ν_{n−1}−ν_n, …, ν_1−ν_2
//! ```
//!
//! gives dim SI(T,β)_σ = c_{λ,μ}^ν. Walls of ℝ₊Σ(T,β) are Horn
//! inequalities, and the Horn triples (I,J,K) are those with
//! c_{λ(I),λ(J)}^{λ(K)} ≠ 0.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::faces::walls;
use crate::homext::sub;
use crate::lr::lr_coefficient;
use crate::partition::{lambda_of_subset, Partition};
use crate::quiver::{DimVector, Quiver, Weight};
use crate::siweights::si_dim_raw;
use crate::stability::sigma_stable_raw;

/// T_{n,n,n} with its staircase dimension vector.
#[derive(Clone, Debug)]
pub struct TripleFlagData {
    pub n: usize,
    pub quiver: Quiver,
    pub beta: DimVector,
}

impl TripleFlagData {
    pub fn new(n: usize) -> Result<TripleFlagData> {
        if n == 0 {
            return Err(Error::pre("positive_rank", "n must be at least 1"));
        }
        let quiver = Quiver::star(n, n, n);
        let arm: Vec<i64> = (1..n as i64).collect();
        let mut b = Vec::with_capacity(3 * n - 2);
        for _ in 0..3 {
            b.extend_from_slice(&arm);
        }
        b.push(n as i64);
        Ok(TripleFlagData { n, quiver, beta: DimVector(b) })
    }

    /// Index of arm vertex i (1-based, i < n) on arm 0 (x), 1 (y) or 2 (z).
    pub fn arm_index(&self, arm: usize, i: usize) -> usize {
        arm * (self.n - 1) + i - 1
    }

    pub fn center(&self) -> usize {
        3 * (self.n - 1)
    }

    /// Values of v along an arm from position 0 (always 0) to n (the center).
    fn arm_values(&self, v: &DimVector, arm: usize) -> Vec<i64> {
        let mut out = vec![0];
        out.extend((1..self.n).map(|i| v.0[self.arm_index(arm, i)]));
        out.push(v.0[self.center()]);
        out
    }
}

fn check_len(n: usize, ps: &[&Partition]) -> Result<()> {
    for p in ps {
        if p.len() != n {
            return Err(Error::pre("common_length", format!("{:?} does not have length {n}", p.parts())));
        }
    }
    Ok(())
}

/// σ(λ,μ,ν) on T_{n,n,n}.
pub fn weight_of_triple(lam: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<Weight> {
    check_len(n, &[lam, mu, nu])?;
    let t = TripleFlagData::new(n)?;
    let (l, m, v) = (lam.parts(), mu.parts(), nu.parts());
    let mut w = vec![0; 3 * n - 2];
    for i in 1..n {
        w[t.arm_index(0, i)] = l[i - 1] - l[i];
        w[t.arm_index(1, i)] = m[i - 1] - m[i];
        // z_i carries ν_{n−i} − ν_{n−i+1}.
        w[t.arm_index(2, i)] = v[n - i - 1] - v[n - i];
    }
    w[t.center()] = l[n - 1] + m[n - 1] - v[0];
    Ok(Weight(w))
}

/// ψ(σ,a,b) = (λ(σ) + a·1, μ(σ) + b·1, ν(σ) + (a+b)·1).
pub fn triple_of_weight(s: &Weight, a: i64, b: i64, n: usize) -> Result<(Partition, Partition, Partition)> {
    let t = TripleFlagData::new(n)?;
    t.quiver.check_weight(s)?;
    let tail = |arm: usize, shift: i64| -> Result<Partition> {
        // λ_k = a_k + … + a_{n−1}.
        let mut parts = vec![shift; n];
        for k in (0..n - 1).rev() {
            parts[k] = parts[k + 1] + s.0[t.arm_index(arm, k + 1)];
        }
        Partition::new(parts)
    };
    let mut nu = vec![0; n];
    // ν_1 = −c_n, ν_k = ν_{k−1} − c_{n−k+1}.
    nu[0] = -s.0[t.center()];
    for k in 1..n {
        nu[k] = nu[k - 1] - s.0[t.arm_index(2, n - k)];
    }
    let nu = Partition::new(nu.into_iter().map(|x| x + a + b).collect())?;
    Ok((tail(0, a)?, tail(1, b)?, nu))
}

/// c_{λ,μ}^ν as dim SI(T_{n,n,n},β)_{σ(λ,μ,ν)}.
pub fn lr_via_quiver(lam: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<u64> {
    let t = TripleFlagData::new(n)?;
    let w = weight_of_triple(lam, mu, nu, n)?;
    let d = si_dim_raw(&t.quiver, &t.beta, &w)?;
    d.to_u64().ok_or_else(|| Error::Theory("LR coefficient exceeds u64".into()))
}

/// (I,J,K) with |I| = |J| = |K| = r, read as
/// Σ_{i∈I} λ_i + Σ_{j∈J} μ_j ≥ Σ_{k∈K} ν_k.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HornTriple {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub lr_value: u64,
}

impl HornTriple {
    pub fn holds(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> bool {
        let s = |p: &Partition, set: &[usize]| set.iter().map(|&x| p.parts()[x - 1]).sum::<i64>();
        s(lam, &self.i) + s(mu, &self.j) >= s(nu, &self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HornMode {
    Nonzero,
    Minimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornList {
    pub triples: Vec<HornTriple>,
    /// Set when the minimal list is not known to be irredundant (n = 2).
    pub warning: Option<String>,
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < r - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(1, n, r, &mut cur, &mut out);
    out
}

/// All (I,J,K) of size r with c_{λ(I),λ(J)}^{λ(K)} ≠ 0 (`Nonzero`) or = 1
/// (`Minimal`), in lexicographic order.
pub fn horn_triples(n: usize, r: usize, mode: HornMode) -> Result<HornList> {
    if r == 0 || r >= n {
        return Err(Error::pre("rank_range", format!("need 0 < r < n, got r = {r}, n = {n}")));
    }
    let subs = subsets(n, r);
    let parts: Vec<Partition> = subs.iter().map(|s| lambda_of_subset(s, n)).collect::<Result<_>>()?;
    let mut triples = Vec::new();
    for (a, i) in subs.iter().enumerate() {
        for (b, j) in subs.iter().enumerate() {
            for (c, k) in subs.iter().enumerate() {
                if parts[a].size() + parts[b].size() != parts[c].size() {
                    continue;
                }
                let v = lr_coefficient(&parts[a], &parts[b], &parts[c])?;
                let keep = match mode {
                    HornMode::Nonzero => v > 0,
                    HornMode::Minimal => v == 1 || (n == 2 && v > 0),
                };
                if keep {
                    triples.push(HornTriple { i: i.clone(), j: j.clone(), k: k.clone(), lr_value: v });
                }
            }
        }
    }
    let warning = (mode == HornMode::Minimal && n == 2)
        .then(|| "n = 2: irredundancy is not known, the list is unfiltered".to_string());
    Ok(HornList { triples, warning })
}

/// Membership in the Klyachko cone by the Horn inequalities: trace
/// equality and every (⋆_{I,J,K}) for 0 < r < n. Monotonicity is carried
/// by the `Partition` type.
pub fn in_horn_cone(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<bool> {
    let n = lam.len();
    check_len(n, &[lam, mu, nu])?;
    if lam.size() + mu.size() != nu.size() {
        return Ok(false);
    }
    for r in 1..n {
        for t in horn_triples(n, r, HornMode::Nonzero)?.triples {
            if !t.holds(lam, mu, nu) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The partition an inequality constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arm {
    Lambda,
    Mu,
    Nu,
}

/// A wall of the Klyachko cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WallInequality {
    /// Σ_{i∈I} λ_i + Σ_{j∈J} μ_j ≤ Σ_{k∈K} ν_k.
    Horn { i: Vec<usize>, j: Vec<usize>, k: Vec<usize> },
    /// p_index ≥ p_{index+1} for the partition on `arm`.
    Monotone { arm: Arm, index: usize },
}

impl WallInequality {
    pub fn holds(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> bool {
        let s = |p: &Partition, set: &[usize]| set.iter().map(|&x| p.parts()[x - 1]).sum::<i64>();
        match self {
            WallInequality::Horn { i, j, k } => s(lam, i) + s(mu, j) <= s(nu, k),
            WallInequality::Monotone { arm, index } => {
                let p = match arm {
                    Arm::Lambda => lam,
                    Arm::Mu => mu,
                    Arm::Nu => nu,
                };
                p.parts()[index - 1] >= p.parts()[*index]
            }
        }
    }
}

/// The inequality σ(β₁) ≤ 0 for a wall pair (β₁, β − β₁) on T_{n,n,n}.
///
/// I and J are the positions along the x- and y-arms where β₁ increases,
/// counting β₁(x_0) = 0 and the center as position n. K is n+1−k for each
/// such position k on the z-arm. A β₁ that differs from β (or from 0) at a
/// single arm vertex gives a monotonicity inequality instead.
pub fn wall_to_ijk(b1: &DimVector, n: usize) -> Result<WallInequality> {
    let t = TripleFlagData::new(n)?;
    t.quiver.check_dim(b1)?;
    if b1.is_zero() || b1 == &t.beta {
        return Err(Error::pre("proper_wall", "β₁ must be a proper nonzero part of β"));
    }
    let single = |v: &DimVector| -> Option<usize> {
        let s = v.support();
        (s.len() == 1 && v.0[s[0]] == 1 && s[0] != t.center()).then(|| s[0])
    };
    let rest = t.beta.sub(b1);
    if let Some(x) = single(b1).or_else(|| if rest.is_nonnegative() { single(&rest) } else { None }) {
        let (arm, i) = (x / (n - 1), x % (n - 1) + 1);
        return Ok(match arm {
            0 => WallInequality::Monotone { arm: Arm::Lambda, index: i },
            1 => WallInequality::Monotone { arm: Arm::Mu, index: i },
            // z_i carries ν_{n−i} − ν_{n−i+1}.
            _ => WallInequality::Monotone { arm: Arm::Nu, index: n - i },
        });
    }
    let mut sets = Vec::with_capacity(3);
    for arm in 0..3 {
        let v = t.arm_values(b1, arm);
        let mut jumps = Vec::new();
        for p in 1..=n {
            match v[p] - v[p - 1] {
                0 => {}
                1 => jumps.push(p),
                d => {
                    return Err(Error::pre(
                        "unit_jumps",
                        format!("β₁ changes by {d} between positions {} and {p} on arm {arm}", p - 1),
                    ))
                }
            }
        }
        sets.push(jumps);
    }
    let mut k: Vec<usize> = sets[2].iter().map(|&p| n + 1 - p).collect();
    k.sort_unstable();
    Ok(WallInequality::Horn { i: sets[0].clone(), j: sets[1].clone(), k })
}

/// All walls of the Klyachko cone for GL_n, from the walls of ℝ₊Σ(T,β).
/// Each wall pair is oriented so that β₁ is the member that embeds in β.
pub fn klyachko_walls(n: usize) -> Result<Vec<WallInequality>> {
    let t = TripleFlagData::new(n)?;
    let mut out = Vec::new();
    for f in walls(&t.quiver, &t.beta)? {
        let subs: Vec<&DimVector> = f.roots.iter().filter(|r| sub(&t.quiver, r, &t.beta)).collect();
        if subs.len() != 1 {
            return Err(Error::Theory(format!("wall {:?} has {} embedding roots", f.roots, subs.len())));
        }
        out.push(wall_to_ijk(subs[0], n)?);
    }
    out.sort();
    Ok(out)
}

fn pick(p: &Partition, set: &[usize]) -> Result<Partition> {
    Partition::new(set.iter().map(|&x| p.parts()[x - 1]).collect())
}

fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|x| !set.contains(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub lhs: u64,
    pub rhs_star: u64,
    pub rhs_sharp: u64,
    pub equal: bool,
}

/// c_{λ,μ}^ν against c_{λ*,μ*}^{ν*}·c_{λ#,μ#}^{ν#} on a wall
/// Σ_I λ + Σ_J μ ≤ Σ_K ν where equality holds. The starred partitions keep
/// the indices in I, J, K and the sharp ones the complements.
pub fn product_formula_check(
    lam: &Partition,
    mu: &Partition,
    nu: &Partition,
    i: &[usize],
    j: &[usize],
    k: &[usize],
) -> Result<ProductCheck> {
    let n = lam.len();
    check_len(n, &[lam, mu, nu])?;
    for s in [i, j, k] {
        crate::partition::check_subset(s, n)?;
    }
    let r = i.len();
    if j.len() != r || k.len() != r || r >= n {
        return Err(Error::pre("wall_sets", "I, J, K need a common size below n"));
    }
    let (ic, jc, kc) = (complement(i, n), complement(j, n), complement(k, n));
    // The wall is a facet iff its complementary Horn triple has LR value 1.
    let horn = lr_coefficient(&lambda_of_subset(&ic, n)?, &lambda_of_subset(&jc, n)?, &lambda_of_subset(&kc, n)?)?;
    if horn != 1 {
        return Err(Error::pre("wall_sets", format!("(I,J,K) is not a wall: complementary LR value {horn}")));
    }
    let s = |p: &Partition, set: &[usize]| set.iter().map(|&x| p.parts()[x - 1]).sum::<i64>();
    if s(lam, i) + s(mu, j) != s(nu, k) {
        return Err(Error::pre("wall_equality", "Σ_I λ + Σ_J μ ≠ Σ_K ν"));
    }
    let lhs = lr_coefficient(lam, mu, nu)?;
    let rhs_star = lr_coefficient(&pick(lam, i)?, &pick(mu, j)?, &pick(nu, k)?)?;
    let rhs_sharp = lr_coefficient(&pick(lam, &ic)?, &pick(mu, &jc)?, &pick(nu, &kc)?)?;
    Ok(ProductCheck { lhs, rhs_star, rhs_sharp, equal: lhs == rhs_star * rhs_sharp })
}

/// A triple (λ, μ, ν) as plain part lists, for reports.
pub type TripleParts = [Vec<i64>; 3];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub size_bound: i64,
    pub triples: usize,
    pub nonzero: usize,
    /// c_{2λ,2μ}^{2ν} ≠ 0 but c_{λ,μ}^ν = 0.
    pub saturation_violations: Vec<TripleParts>,
    /// c_{λ,μ}^ν = 1 but c_{Nλ,Nμ}^{Nν} ≠ 1 for N = 2 or 3.
    pub fulton_violations: Vec<TripleParts>,
    /// j(λ)+j(μ)+j(ν) above the bound for the face codimension.
    pub jump_violations: Vec<TripleParts>,
    /// The quiver engine disagrees with the LR engine.
    pub cross_engine_violations: Vec<TripleParts>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.saturation_violations.len()
            + self.fulton_violations.len()
            + self.jump_violations.len()
            + self.cross_engine_violations.len()
    }
}

/// Weakly decreasing length-n sequences of nonnegative integers with sum s.
pub fn partitions_of(s: i64, n: usize) -> Vec<Partition> {
    fn go(left: i64, max: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("built decreasing"));
            }
            return;
        }
        for p in (0..=max.min(left)).rev() {
            if p * slots as i64 >= left {
                cur.push(p);
                go(left - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, s, n, &mut Vec::new(), &mut out);
    out
}

/// Codimension of the face of ℝ₊Σ(T,β) containing σ(λ,μ,ν): the number of
/// distinct σ-stable roots of β, minus one.
pub fn face_codim(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    let n = lam.len();
    let t = TripleFlagData::new(n)?;
    let w = weight_of_triple(lam, mu, nu, n)?;
    Ok(sigma_stable_raw(&t.quiver, &t.beta, &w)?.distinct() - 1)
}

/// The jump bounds at face codimension l: j-sum ≤ 4n−4−l, and
/// ≤ 4n−6−l when the coefficient exceeds 1.
pub fn jump_bound_holds(n: usize, jumps: usize, l: usize, coefficient: u64) -> bool {
    let (j, n, l) = (jumps as i64, n as i64, l as i64);
    j <= 4 * n - 4 - l && (coefficient <= 1 || j <= 4 * n - 6 - l)
}

/// Saturation, Fulton, jump-bound and cross-engine checks on every triple
/// with |λ| + |μ| = |ν| ≤ size_bound, using the library LR engine.
pub fn scan_properties(n: usize, size_bound: i64) -> Result<ScanReport> {
    scan_properties_with(n, size_bound, &|l, m, v| lr_coefficient(l, m, v).expect("equal lengths"))
}

/// As [`scan_properties`] with a caller-supplied LR engine.
pub fn scan_properties_with(
    n: usize,
    size_bound: i64,
    engine: &(dyn Fn(&Partition, &Partition, &Partition) -> u64 + Sync),
) -> Result<ScanReport> {
    if n == 0 {
        return Err(Error::pre("positive_rank", "n must be at least 1"));
    }
    let mut work = Vec::new();
    for s in 0..=size_bound {
        for a in 0..=s {
            for l in partitions_of(a, n) {
                for m in partitions_of(s - a, n) {
                    for v in partitions_of(s, n) {
                        work.push((l.clone(), m.clone(), v));
                    }
                }
            }
        }
    }
    let parts = |l: &Partition, m: &Partition, v: &Partition| [l.parts().to_vec(), m.parts().to_vec(), v.parts().to_vec()];
    let rows: Vec<Result<(bool, [bool; 4], TripleParts)>> = work
        .par_iter()
        .map(|(l, m, v)| {
            let c = engine(l, m, v);
            let sat = c == 0 && engine(&l.scale(2), &m.scale(2), &v.scale(2)) != 0;
            let fulton = c == 1 && (2..=3).any(|k| engine(&l.scale(k), &m.scale(k), &v.scale(k)) != 1);
            let jumps = if c > 0 {
                let codim = face_codim(l, m, v)?;
                !jump_bound_holds(n, l.jumps() + m.jumps() + v.jumps(), codim, c)
            } else {
                false
            };
            let cross = lr_via_quiver(l, m, v, n)? != c;
            Ok((c > 0, [sat, fulton, jumps, cross], parts(l, m, v)))
        })
        .collect();
    let mut rep = ScanReport { n, size_bound, ..Default::default() };
    for row in rows {
        let (nonzero, flags, t) = row?;
        rep.triples += 1;
        rep.nonzero += nonzero as usize;
        let lists = [
            &mut rep.saturation_violations,
            &mut rep.fulton_violations,
            &mut rep.jump_violations,
            &mut rep.cross_engine_violations,
        ];
        for (flag, list) in flags.iter().zip(lists) {
            if *flag {
                list.push(t.clone());
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siweights::circ;
    use std::collections::BTreeSet;

    fn p(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_dictionary() {
        assert!(weight_of_triple(&p(&[0, 0, 0]), &p(&[0, 0, 0]), &p(&[0, 0, 0]), 3).unwrap().is_zero());
        // The T_{8,8,8} extremal-ray weight is σ(λ,μ,ν*) with ν* = 3 − ν reversed.
        let w = weight_of_triple(
            &p(&[2, 1, 1, 1, 1, 0, 0, 0]),
            &p(&[2, 2, 2, 1, 1, 1, 0, 0]),
            &p(&[3, 3, 2, 2, 2, 1, 1, 1]),
            8,
        )
        .unwrap();
        let mut expect = vec![0; 22];
        for i in [0, 4, 9, 12, 16, 19] {
            expect[i] = 1;
        }
        expect[21] = -3;
        assert_eq!(w.0, expect);
        let (l, m, v) = triple_of_weight(&w, 0, 0, 8).unwrap();
        assert_eq!(l, p(&[2, 1, 1, 1, 1, 0, 0, 0]));
        assert_eq!(m, p(&[2, 2, 2, 1, 1, 1, 0, 0]));
        assert_eq!(v, p(&[3, 3, 2, 2, 2, 1, 1, 1]));
        assert!(triple_of_weight(&Weight(vec![-1, 0, 0, 0, 0, 0, 0]), 0, 0, 3).is_err());
    }

    #[test]
    fn t332_example() {
        // α∘β on T_{3,3,2} against c̃_{(3,1),(2,1,1),(2,2)} = c_{(3,1,0),(2,1,1)}^{(4,2,2)}.
        let q = Quiver::star(3, 3, 2);
        let a = DimVector(vec![1, 3, 1, 2, 2, 4]);
        let b = DimVector(vec![1, 2, 0, 2, 1, 3]);
        assert_eq!(circ(&q, &a, &b).unwrap(), 1u32.into());
        assert_eq!(lr_coefficient(&p(&[3, 1, 0]), &p(&[2, 1, 1]), &p(&[4, 2, 2])).unwrap(), 1);
        assert_eq!(lr_via_quiver(&p(&[3, 1, 0]), &p(&[2, 1, 1]), &p(&[4, 2, 2]), 3).unwrap(), 1);
    }

    #[test]
    fn lr_via_quiver_examples() {
        assert_eq!(lr_via_quiver(&p(&[1, 0]), &p(&[1, 0]), &p(&[1, 1]), 2).unwrap(), 1);
        let l = p(&[8, 4, 4, 2, 2, 0, 0, 0]);
        let v = p(&[10, 8, 7, 4, 3, 3, 3, 2]);
        assert_eq!(lr_via_quiver(&l, &l, &v, 8).unwrap(), 10);
    }

    #[test]
    fn round_trip() {
        for s in 0..=4 {
            for l in partitions_of(s, 3) {
                for m in partitions_of(2, 3) {
                    for v in partitions_of(s + 2, 3) {
                        let (a, b) = (l.parts()[2] - 1, m.parts()[2] + 2);
                        let (l, m, v) = (l.shift(-1), m.shift(2), v.shift(1));
                        let w = weight_of_triple(&l, &m, &v, 3).unwrap();
                        assert_eq!(triple_of_weight(&w, a, b, 3).unwrap(), (l, m, v));
                    }
                }
            }
        }
    }

    #[test]
    fn horn_triple_counts() {
        let two = horn_triples(2, 1, HornMode::Nonzero).unwrap();
        assert_eq!(two.triples.len(), 3);
        assert!(two.triples.iter().all(|t| t.lr_value == 1));
        assert!(horn_triples(2, 1, HornMode::Minimal).unwrap().warning.is_some());
        let mut total = 0;
        for r in 1..3 {
            let a = horn_triples(3, r, HornMode::Nonzero).unwrap();
            assert_eq!(a.triples, horn_triples(3, r, HornMode::Minimal).unwrap().triples);
            assert!(a.triples.contains(&HornTriple {
                i: (1..=r).collect(),
                j: (1..=r).collect(),
                k: (1..=r).collect(),
                lr_value: 1
            }));
            total += a.triples.len();
        }
        assert_eq!(total, 12);
        assert!(horn_triples(3, 3, HornMode::Nonzero).is_err());
    }

    #[test]
    fn horn_membership_matches_lr() {
        for s in 0..=6 {
            for a in 0..=s {
                for l in partitions_of(a, 3) {
                    for m in partitions_of(s - a, 3) {
                        for v in partitions_of(s, 3) {
                            let c = lr_coefficient(&l, &m, &v).unwrap();
                            assert_eq!(in_horn_cone(&l, &m, &v).unwrap(), c > 0, "{l:?} {m:?} {v:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n8_wall() {
        let t = TripleFlagData::new(8).unwrap();
        let b1 = DimVector(
            [vec![1, 1, 2, 2, 3, 3, 4], vec![1, 1, 2, 2, 3, 3, 4], vec![0, 0, 1, 2, 3, 3, 4], vec![5]].concat(),
        );
        let ineq = wall_to_ijk(&b1, 8).unwrap();
        assert_eq!(
            ineq,
            WallInequality::Horn { i: vec![1, 3, 5, 7, 8], j: vec![1, 3, 5, 7, 8], k: vec![1, 2, 4, 5, 6] }
        );
        let b2 = t.beta.sub(&b1);
        assert_eq!(circ(&t.quiver, &b1, &b2).unwrap(), 1u32.into());
        assert!(wall_to_ijk(&t.beta, 8).is_err());
        // Simple arm vertices give monotonicity.
        let x3 = t.quiver.unit(t.arm_index(0, 3));
        assert_eq!(wall_to_ijk(&t.beta.sub(&x3), 8).unwrap(), WallInequality::Monotone { arm: Arm::Lambda, index: 3 });
        let z2 = t.quiver.unit(t.arm_index(2, 2));
        assert_eq!(wall_to_ijk(&z2, 8).unwrap(), WallInequality::Monotone { arm: Arm::Nu, index: 6 });
    }

    #[test]
    fn product_formula_example() {
        let l = p(&[8, 4, 4, 2, 2, 0, 0, 0]);
        let v = p(&[10, 8, 7, 4, 3, 3, 3, 2]);
        let (i, k) = ([1, 3, 5, 7, 8], [1, 2, 4, 5, 6]);
        let r = product_formula_check(&l, &l, &v, &i, &i, &k).unwrap();
        assert_eq!(r, ProductCheck { lhs: 10, rhs_star: 5, rhs_sharp: 2, equal: true });
        let w = p(&[10, 8, 7, 5, 3, 3, 2, 2]);
        assert!(product_formula_check(&l, &l, &w, &i, &i, &k).is_err());
    }

    #[test]
    fn product_formula_on_n4_walls() {
        let mut checked = 0;
        for w in klyachko_walls(4).unwrap() {
            let WallInequality::Horn { i, j, k } = w else { continue };
            for s in 0..=6 {
                for a in 0..=s {
                    for l in partitions_of(a, 4) {
                        for m in partitions_of(s - a, 4) {
                            for v in partitions_of(s, 4) {
                                let sum = |p: &Partition, set: &[usize]| set.iter().map(|&x| p.parts()[x - 1]).sum::<i64>();
                                if sum(&l, &i) + sum(&m, &j) != sum(&v, &k) {
                                    continue;
                                }
                                let r = product_formula_check(&l, &m, &v, &i, &j, &k).unwrap();
                                assert!(r.equal, "{l:?} {m:?} {v:?} {i:?} {j:?} {k:?}: {r:?}");
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    fn listed_t333_walls() -> BTreeSet<WallInequality> {
        let h = |i: &[usize], j: &[usize], k: &[usize]| WallInequality::Horn { i: i.to_vec(), j: j.to_vec(), k: k.to_vec() };
        let mut s: BTreeSet<WallInequality> = [
            h(&[1, 2], &[2, 3], &[1, 2]),
            h(&[2, 3], &[1, 2], &[1, 2]),
            h(&[2, 3], &[2, 3], &[2, 3]),
            h(&[1, 3], &[1, 3], &[1, 2]),
            h(&[1, 3], &[2, 3], &[1, 3]),
            h(&[2, 3], &[1, 3], &[1, 3]),
            h(&[1], &[3], &[1]),
            h(&[3], &[1], &[1]),
            h(&[3], &[3], &[3]),
            h(&[2], &[2], &[1]),
            h(&[2], &[3], &[2]),
            h(&[3], &[2], &[2]),
        ]
        .into_iter()
        .collect();
        for arm in [Arm::Lambda, Arm::Mu, Arm::Nu] {
            for index in 1..3 {
                s.insert(WallInequality::Monotone { arm, index });
            }
        }
        s
    }

    #[test]
    fn t333_walls_match_list() {
        let w = klyachko_walls(3).unwrap();
        assert_eq!(w.len(), 18);
        assert_eq!(w.into_iter().collect::<BTreeSet<_>>(), listed_t333_walls());
    }

    #[test]
    fn walls_are_complements_of_horn_triples() {
        for n in 2..=4 {
            let mut from_quiver: BTreeSet<(Vec<usize>, Vec<usize>, Vec<usize>)> = BTreeSet::new();
            for w in klyachko_walls(n).unwrap() {
                if let WallInequality::Horn { i, j, k } = w {
                    from_quiver.insert((complement(&i, n), complement(&j, n), complement(&k, n)));
                }
            }
            let mut from_lr = BTreeSet::new();
            for r in 1..n {
                for t in horn_triples(n, r, HornMode::Minimal).unwrap().triples {
                    if t.lr_value == 1 {
                        from_lr.insert((t.i, t.j, t.k));
                    }
                }
            }
            assert_eq!(from_quiver, from_lr, "n = {n}");
        }
    }

    #[test]
    fn scans_are_clean() {
        for n in 2..=3 {
            let r = scan_properties(n, 6).unwrap();
            assert_eq!(r.violations(), 0, "{r:?}");
            assert!(r.nonzero > 0);
        }
    }

    #[test]
    fn corrupted_engine_is_caught() {
        // Drops every coefficient whose λ has an odd first part.
        let bad = |l: &Partition, m: &Partition, v: &Partition| {
            if l.parts()[0] % 2 == 1 {
                0
            } else {
                lr_coefficient(l, m, v).unwrap()
            }
        };
        let r = scan_properties_with(2, 4, &bad).unwrap();
        assert!(!r.saturation_violations.is_empty());
        assert!(!r.cross_engine_violations.is_empty());
    }
}
