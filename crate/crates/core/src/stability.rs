//! σ-(semi)stability of dimension vectors, σ-stable and (σ:τ)-stable
//! decompositions, generic Harder-Narasimhan types and simple dimension
//! vectors of quivers with oriented cycles.
//!
//! Conventions: α is σ-semistable when σ(α) = 0 and σ(γ) ≤ 0 for every
//! γ ↪ α, and σ-stable when moreover σ(γ) < 0 for γ ∉ {0, α}.

use std::collections::{BTreeMap, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homext::{ext, sub};
use crate::quiver::{double_quiver, DimVector, Quiver, Weight};
use crate::search::{BoxSearch, Side};
use crate::siweights::{circ_raw, si_dim_raw};

/// Distinct σ-stable roots with multiplicities, sorted lexicographically,
/// and an order in which every earlier root is ⊥⊥ to every later one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableDecomposition {
    pub factors: Vec<(DimVector, u64)>,
    /// Indices into `factors`: for positions i < j, root_i ⊥ root_j and
    /// root_i ∘ root_j = 1.
    pub certificate: Vec<usize>,
}

impl StableDecomposition {
    /// Σ multiplicity · root.
    pub fn sum(&self, n: usize) -> DimVector {
        self.factors.iter().fold(DimVector::zero(n), |acc, (r, c)| acc.add(&r.scale(*c as i64)))
    }

    pub fn distinct(&self) -> usize {
        self.factors.len()
    }
}

/// One block of a Harder-Narasimhan type: the dimension of a subquotient
/// and its slope σ/τ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnBlock {
    pub dim: DimVector,
    #[serde(serialize_with = "ser_ratio")]
    pub slope: Ratio<i64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Blocks from the top of the filtration down, slopes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnType {
    pub blocks: Vec<HnBlock>,
}

fn check_input(q: &Quiver, a: &DimVector, s: &Weight) -> Result<()> {
    q.require_acyclic()?;
    q.check_dim(a)?;
    q.check_weight(s)
}

/// Boxes up to this many subvectors are searched directly.
const DIRECT_BOX: u64 = 4096;

/// Semistability by the saturation of the cone of effective weights:
/// α is σ-semistable iff SI(Q,α)_σ ≠ 0. Small boxes are searched for a
/// destabilizing γ ↪ α directly, since counting SI can be far slower than
/// deciding it is nonzero; the search is also the fallback when the
/// labeling enumeration hits its cap.
pub(crate) fn semistable_raw(q: &Quiver, a: &DimVector, s: &Weight) -> Result<bool> {
    if s.eval(a) != 0 {
        return Ok(false);
    }
    let boxed = a.0.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x as u64 + 1)).unwrap_or(u64::MAX);
    if boxed <= DIRECT_BOX {
        return Ok(semistable_search(q, a, s));
    }
    match si_dim_raw(q, a, s) {
        Ok(v) => Ok(!v.is_zero()),
        Err(Error::Cap { .. }) => Ok(semistable_search(q, a, s)),
        Err(e) => Err(e),
    }
}

/// No γ ↪ α with σ(γ) > 0. Cheap when σ is large on most subvectors.
fn semistable_search(q: &Quiver, a: &DimVector, s: &Weight) -> bool {
    if s.eval(a) != 0 {
        return false;
    }
    let cands = BoxSearch::below(q, a).rank(q, a, Side::Sub).weight_gt(s.0.clone(), 0).collect();
    !cands.par_iter().any(|g| sub(q, &DimVector(g.clone()), a))
}

/// The smallest (by total size, then lexicographically) γ ↪ α with
/// σ(γ) = 0 and 0 ≠ γ ≠ α.
fn min_zero_sub(q: &Quiver, a: &DimVector, s: &Weight) -> Option<DimVector> {
    for size in 1..a.total() {
        let mut cands = BoxSearch::below(q, a)
            .rank(q, a, Side::Sub)
            .weight_eq(s.0.clone(), 0)
            .size(size)
            .collect();
        cands.sort();
        let hit = cands.into_par_iter().map(DimVector).find_first(|g| sub(q, g, a));
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn stable_raw(q: &Quiver, a: &DimVector, s: &Weight) -> Result<bool> {
    if a.is_zero() || !semistable_raw(q, a, s)? {
        return Ok(false);
    }
    Ok(min_zero_sub(q, a, s).is_none())
}

/// σ(α) = 0 and σ(γ) ≤ 0 for all γ ↪ α.
pub fn is_semistable_dim(q: &Quiver, a: &DimVector, s: &Weight) -> Result<bool> {
    check_input(q, a, s)?;
    semistable_raw(q, a, s)
}

/// σ(α) = 0 and σ(γ) < 0 for all γ ↪ α with γ ∉ {0, α}. The zero vector is
/// not stable.
pub fn is_stable_dim(q: &Quiver, a: &DimVector, s: &Weight) -> Result<bool> {
    check_input(q, a, s)?;
    stable_raw(q, a, s)
}

fn peel(q: &Quiver, a: &DimVector, s: &Weight, out: &mut BTreeMap<DimVector, u64>) {
    let mut rest = a.clone();
    // A minimal σ-zero subvector is itself stable, and the quotient by it is
    // again semistable, so peeling iterates on the quotient.
    while let Some(b) = min_zero_sub(q, &rest, s) {
        *out.entry(b.clone()).or_insert(0) += 1;
        rest = rest.sub(&b);
    }
    *out.entry(rest).or_insert(0) += 1;
}

/// a may precede b in a quiver Schur sequence: ⟨a,b⟩ = 0, ext(a,b) = 0,
/// a ∘ b = 1 and ⟨b,a⟩ ≤ 0.
pub(crate) fn may_precede(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<bool> {
    Ok(q.euler(a, b) == 0 && q.euler(b, a) <= 0 && ext(q, a, b) == 0 && circ_raw(q, a, b)?.is_one())
}

/// Repeatedly takes the smallest remaining index allowed before all other
/// remaining ones. A valid order restricted to a subset stays valid, so this
/// finds an order whenever one exists.
pub(crate) fn greedy_order(k: usize, ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let mut left: Vec<usize> = (0..k).collect();
    let mut order = Vec::with_capacity(k);
    while !left.is_empty() {
        let pos = left.iter().position(|&x| left.iter().all(|&y| y == x || ok(x, y)))?;
        order.push(left.remove(pos));
    }
    Some(order)
}

fn certificate_order(q: &Quiver, roots: &[DimVector]) -> Result<Vec<usize>> {
    let k = roots.len();
    let mut ok = vec![vec![true; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                ok[i][j] = may_precede(q, &roots[i], &roots[j])?;
            }
        }
    }
    greedy_order(k, |i, j| ok[i][j]).ok_or_else(|| Error::Theory("stable factors admit no ⊥⊥ ordering".into()))
}

fn finish(q: &Quiver, m: BTreeMap<DimVector, u64>) -> Result<StableDecomposition> {
    let factors: Vec<(DimVector, u64)> = m.into_iter().collect();
    for (r, c) in &factors {
        if *c > 1 && q.euler(r, r) < 0 {
            return Err(Error::Theory(format!("repeated stable factor {:?} is imaginary nonisotropic", r.0)));
        }
    }
    let roots: Vec<DimVector> = factors.iter().map(|f| f.0.clone()).collect();
    let certificate = certificate_order(q, &roots)?;
    Ok(StableDecomposition { factors, certificate })
}

pub(crate) fn sigma_stable_raw(q: &Quiver, a: &DimVector, s: &Weight) -> Result<StableDecomposition> {
    let mut m = BTreeMap::new();
    peel(q, a, s, &mut m);
    finish(q, m)
}

/// The dimension vectors of the Jordan-Hölder factors of a general
/// α-representation in the category of σ-semistable representations.
pub fn sigma_stable_decomposition(q: &Quiver, a: &DimVector, s: &Weight) -> Result<StableDecomposition> {
    check_input(q, a, s)?;
    if a.is_zero() {
        return Err(Error::pre("nonzero_dimension", "α = 0"));
    }
    if !semistable_raw(q, a, s)? {
        return Err(Error::pre("semistable", format!("α = {:?} is not σ-semistable", a.0)));
    }
    sigma_stable_raw(q, a, s)
}

fn slope(s: &Weight, t: &Weight, g: &DimVector) -> Ratio<i64> {
    Ratio::new(s.eval(g), t.eval(g))
}

fn check_tau(q: &Quiver, a: &DimVector, s: &Weight, t: &Weight) -> Result<()> {
    check_input(q, a, s)?;
    q.check_weight(t)?;
    if let Some(x) = a.support().into_iter().find(|&x| t.0[x] <= 0) {
        return Err(Error::pre("tau_positive", format!("τ({}) = {} ≤ 0", q.vertices()[x], t.0[x])));
    }
    Ok(())
}

/// Generic Harder-Narasimhan type for the slope σ/τ.
pub fn hn_type(q: &Quiver, a: &DimVector, s: &Weight, t: &Weight) -> Result<HnType> {
    check_tau(q, a, s, t)?;
    let mut rest = a.clone();
    let mut blocks: Vec<HnBlock> = Vec::new();
    while !rest.is_zero() {
        let mut cands: Vec<(Ratio<i64>, i64, DimVector)> = BoxSearch::below(q, &rest)
            .rank(q, &rest, Side::Sub)
            .collect()
            .into_iter()
            .map(DimVector)
            .filter(|g| !g.is_zero())
            .map(|g| (slope(s, t, &g), g.total(), g))
            .collect();
        cands.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.cmp(&x.1)).then_with(|| x.2.cmp(&y.2)));
        let i = cands
            .iter()
            .position(|c| sub(q, &c.2, &rest))
            .ok_or_else(|| Error::Theory("no subvector embeds, not even the whole vector".into()))?;
        let (mu, size, g) = cands[i].clone();
        let rival = cands[i + 1..]
            .iter()
            .take_while(|c| c.0 == mu && c.1 == size)
            .find(|c| sub(q, &c.2, &rest));
        if let Some(r) = rival {
            return Err(Error::Theory(format!(
                "maximal destabilizing subvector not unique: {:?} and {:?}",
                g.0, r.2 .0
            )));
        }
        if let Some(prev) = blocks.last() {
            if mu >= prev.slope {
                return Err(Error::Theory("Harder-Narasimhan slopes not strictly decreasing".into()));
            }
        }
        rest = rest.sub(&g);
        blocks.push(HnBlock { dim: g, slope: mu });
    }
    Ok(HnType { blocks })
}

/// σ-stable decomposition of each HN block for the weight bσ − aτ, where
/// the block slope is a/b, merged into one decomposition.
pub fn sigma_tau_stable_decomposition(
    q: &Quiver,
    a: &DimVector,
    s: &Weight,
    t: &Weight,
) -> Result<StableDecomposition> {
    let hn = hn_type(q, a, s, t)?;
    let mut m = BTreeMap::new();
    for b in &hn.blocks {
        let w = s.scale(*b.slope.denom()).add(&t.scale(-*b.slope.numer()));
        peel(q, &b.dim, &w, &mut m);
    }
    finish(q, m)
}

/// Q(δ): one vertex per root, −⟨δ_i,δ_j⟩ arrows i → j and 1 − ⟨δ_i,δ_i⟩
/// loops at i.
#[derive(Clone, Debug)]
pub struct RootQuiver {
    pub roots: Vec<DimVector>,
    pub quiver: Quiver,
}

impl RootQuiver {
    /// Every vertex reaches every other one along oriented paths.
    pub fn is_path_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.quiver.n()).collect();
        strongly_connected(&self.quiver, &all)
    }
}

pub fn root_quiver(q: &Quiver, roots: &[DimVector]) -> Result<RootQuiver> {
    for r in roots {
        q.check_dim(r)?;
    }
    let k = roots.len();
    let mut arrows = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let e = q.euler(&roots[i], &roots[j]);
            let count = if i == j { 1 - e } else { -e };
            if count < 0 {
                return Err(Error::pre(
                    "nonpositive_pairing",
                    format!("arrow count {count} from root {} to root {}", i + 1, j + 1),
                ));
            }
            arrows.extend(std::iter::repeat((i, j)).take(count as usize));
        }
    }
    let names = (1..=k).map(|i| i.to_string()).collect();
    let quiver = Quiver::from_indices(names, arrows, true)?;
    Ok(RootQuiver { roots: roots.to_vec(), quiver })
}

/// The full subquiver on `verts` is strongly connected. Empty and
/// one-vertex sets count as connected.
fn strongly_connected(q: &Quiver, verts: &[usize]) -> bool {
    let Some(&start) = verts.first() else { return true };
    let mut inside = vec![false; q.n()];
    for &v in verts {
        inside[v] = true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; q.n()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let edges = if forward { q.out_arrows(x) } else { q.in_arrows(x) };
            for &e in edges {
                let (t, h) = q.arrows()[e];
                let y = if forward { h } else { t };
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        verts.iter().all(|&v| seen[v])
    };
    reach(true) && reach(false)
}

/// Criterion for stability in terms of a family of σ-stable vectors δ with
/// α in the interior of their rational cone: either α is one of the δ_i and
/// real, or α pairs nonpositively with each δ_i both ways, Q(δ) is path
/// connected and α is indivisible when isotropic. The caller supplies the δ's.
pub fn stable_by_extremal_roots(q: &Quiver, a: &DimVector, deltas: &[DimVector]) -> Result<bool> {
    q.check_dim(a)?;
    if deltas.iter().any(|d| d == a) && q.euler(a, a) == 1 {
        return Ok(true);
    }
    if deltas.iter().any(|d| q.euler(d, a) > 0 || q.euler(a, d) > 0) {
        return Ok(false);
    }
    let rq = root_quiver(q, deltas)?;
    if !rq.is_path_connected() {
        return Ok(false);
    }
    Ok(q.euler(a, a) != 0 || a.gcd() == 1)
}

/// Simple dimension vectors, i.e. 0-stable ones; any quiver.
pub fn is_simple_dim(q: &Quiver, a: &DimVector) -> Result<bool> {
    q.check_dim(a)?;
    if a.is_zero() {
        return Err(Error::pre("nonzero_dimension", "α = 0"));
    }
    let supp = a.support();
    if supp.len() == 1 && a.total() == 1 && q.euler(a, a) == 1 {
        return Ok(true);
    }
    for x in 0..q.n() {
        let d = q.unit(x);
        if q.euler(&d, a) > 0 || q.euler(a, &d) > 0 {
            return Ok(false);
        }
    }
    if !strongly_connected(q, &supp) {
        return Ok(false);
    }
    Ok(q.euler(a, a) != 0 || a.gcd() == 1)
}

/// Verdict of the doubling test and the weight multiple that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingVerdict {
    pub semistable: bool,
    pub stable: bool,
    pub m: i64,
}

/// Any quiver: α is σ-(semi)stable iff α̂ is (σ̂ + mτ)-(semi)stable on the
/// bipartite double for large m. Every γ ↪ α̂ not of the form β̂ has
/// τ(γ) ≤ −1 and σ̂(γ) ≤ 2Σ_{σ(x)>0} σ(x)α(x), so m beyond that bound is
/// large enough; m runs through 1, 2, 4, … and the verdict must agree at two
/// consecutive steps past the bound. Large m makes almost every subvector
/// destabilizing, so the direct search is used rather than si_dim.
pub fn stability_via_doubling(q: &Quiver, a: &DimVector, s: &Weight) -> Result<DoublingVerdict> {
    q.check_dim(a)?;
    q.check_weight(s)?;
    if a.is_zero() {
        return Err(Error::pre("nonzero_dimension", "α = 0"));
    }
    let bound: i64 = 2 * s.0.iter().zip(&a.0).map(|(x, y)| x.max(&0) * y).sum::<i64>();
    let d = double_quiver(q);
    let ah = d.lift_dim(a);
    let sh = d.lift_weight(s);
    let verdict = |m: i64| {
        let w = sh.add(&d.tau.scale(m));
        let semi = semistable_search(&d.doubled, &ah, &w);
        (semi, semi && min_zero_sub(&d.doubled, &ah, &w).is_none())
    };
    let mut m = 1;
    while m <= bound {
        m *= 2;
    }
    let first = verdict(m);
    let second = verdict(2 * m);
    if first != second {
        return Err(Error::Cap { what: "doubling_schedule", limit: (2 * m) as u64 });
    }
    Ok(DoublingVerdict { semistable: first.0, stable: first.1, m })
}
