//! Generic ext and hom between dimension vectors, the subrepresentation
//! relation, Schur roots and the canonical decomposition.
//!
//! ext is computed by Schofield's recursion
//! ext(α,β) = max{−⟨α′,β⟩ : α′ ↪ α} = max{−⟨α,β′⟩ : β ↠ β′}
//! where α′ ↪ α iff ext(α′, α−α′) = 0. Each recursive call has strictly
//! smaller |α|+|β|, so the recursion terminates.

use std::collections::BTreeMap;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::config;
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::search::{BoxSearch, Side};

static EXT_CACHE: Lazy<DashMap<(u64, Vec<i64>, Vec<i64>), i64>> = Lazy::new(DashMap::new);

/// ext_Q(α,β) for a general pair. Unchecked: `q` must be acyclic and the
/// vectors must be nonnegative of the right length.
pub(crate) fn ext(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    if a.is_zero() || b.is_zero() {
        return 0;
    }
    let key = (q.digest(), a.0.clone(), b.0.clone());
    if let Some(v) = EXT_CACHE.get(&key) {
        return *v;
    }
    let base = (-q.euler(a, b)).max(0);
    let value = if a.total() <= b.total() {
        // Candidates α′ ↪ α with −⟨α′,β⟩ above the baseline, best first.
        let w = q.right_weight(b);
        let mut cands: Vec<(i64, Vec<i64>)> = Vec::new();
        BoxSearch::below(q, a).rank(q, a, Side::Sub).weight_gt(w.0.clone(), base).run(|g| {
            if g != a.0.as_slice() {
                cands.push((w.eval(&DimVector(g.to_vec())), g.to_vec()));
            }
            true
        });
        cands.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
        let mut best = base;
        for (v, g) in cands {
            let g = DimVector(g);
            if ext(q, &g, &a.sub(&g)) == 0 {
                best = v;
                break;
            }
        }
        best
    } else {
        // Candidates β ↠ β′ with −⟨α,β′⟩ above the baseline.
        let w = q.left_weight(a).scale(-1);
        let mut cands: Vec<(i64, Vec<i64>)> = Vec::new();
        BoxSearch::below(q, b).rank(q, b, Side::Quot).weight_gt(w.0.clone(), base).run(|g| {
            if g != b.0.as_slice() {
                cands.push((w.eval(&DimVector(g.to_vec())), g.to_vec()));
            }
            true
        });
        cands.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
        let mut best = base;
        for (v, g) in cands {
            let g = DimVector(g);
            if ext(q, &b.sub(&g), &g) == 0 {
                best = v;
                break;
            }
        }
        best
    };
    EXT_CACHE.insert(key, value);
    value
}

pub(crate) fn hom(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    q.euler(a, b) + ext(q, a, b)
}

/// α ↪ β (unchecked).
pub(crate) fn sub(q: &Quiver, a: &DimVector, b: &DimVector) -> bool {
    a.le(b) && ext(q, a, &b.sub(a)) == 0
}

/// β ↠ β′ (unchecked).
pub(crate) fn quot(q: &Quiver, b: &DimVector, b2: &DimVector) -> bool {
    b2.le(b) && ext(q, &b.sub(b2), b2) == 0
}

fn check_pair(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<()> {
    q.require_acyclic()?;
    q.check_dim(a)?;
    q.check_dim(b)
}

/// ext_Q(α,β) for general representations of dimensions α and β.
pub fn ext_generic(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    check_pair(q, a, b)?;
    Ok(ext(q, a, b))
}

/// hom_Q(α,β) = ⟨α,β⟩ + ext_Q(α,β).
pub fn hom_generic(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    check_pair(q, a, b)?;
    Ok(hom(q, a, b))
}

/// α ↪ β: a general β-representation has a subrepresentation of dimension α.
pub fn embeds(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<bool> {
    check_pair(q, a, b)?;
    Ok(sub(q, a, b))
}

/// β ↠ β′: a general β-representation has a quotient of dimension β′.
pub fn surjects(q: &Quiver, b: &DimVector, b2: &DimVector) -> Result<bool> {
    check_pair(q, b, b2)?;
    Ok(quot(q, b, b2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootTag {
    RealSchur,
    IsotropicSchur,
    ImaginaryNonisotropicSchur,
    NotSchur,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootClass {
    pub tag: RootTag,
    pub self_pairing: i64,
}

impl RootClass {
    pub fn is_schur(&self) -> bool {
        self.tag != RootTag::NotSchur
    }
}

/// A nontrivial split α = β + γ with ext(β,γ) = ext(γ,β) = 0, if any.
pub(crate) fn find_split(q: &Quiver, a: &DimVector) -> Option<(DimVector, DimVector)> {
    let mut found = None;
    BoxSearch::below(q, a)
        .rank(q, a, Side::Sub)
        .constraints(crate::search::rank_constraints(q, a, Side::Quot))
        .run(|g| {
            let b = DimVector(g.to_vec());
            if b.is_zero() || &b == a {
                return true;
            }
            let c = a.sub(&b);
            // The pair is unordered; look at each once.
            if b.0 > c.0 {
                return true;
            }
            if q.euler(&b, &c) < 0 || q.euler(&c, &b) < 0 {
                return true;
            }
            if ext(q, &b, &c) == 0 && ext(q, &c, &b) == 0 {
                found = Some((b, c));
                return false;
            }
            true
        });
    found
}

pub(crate) fn classify(q: &Quiver, a: &DimVector) -> RootClass {
    let s = q.euler(a, a);
    let tag = if find_split(q, a).is_some() {
        RootTag::NotSchur
    } else if s == 1 {
        RootTag::RealSchur
    } else if s == 0 {
        RootTag::IsotropicSchur
    } else {
        RootTag::ImaginaryNonisotropicSchur
    };
    RootClass { tag, self_pairing: s }
}

pub(crate) fn check_size(a: &DimVector) -> Result<()> {
    let cap = config::max_total_size();
    if a.total() > cap {
        return Err(Error::Cap { what: "max_total_size", limit: cap as u64 });
    }
    Ok(())
}

fn check_nonzero(q: &Quiver, a: &DimVector) -> Result<()> {
    q.require_acyclic()?;
    q.check_dim(a)?;
    if a.is_zero() {
        return Err(Error::pre("nonzero_dimension", "α = 0"));
    }
    Ok(())
}

/// Schur test by exhaustive search for a split with vanishing ext both ways.
pub fn is_schur_root(q: &Quiver, a: &DimVector) -> Result<RootClass> {
    check_nonzero(q, a)?;
    check_size(a)?;
    Ok(classify(q, a))
}

/// Summands of the canonical decomposition, grouped, in hom order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub summands: Vec<(DimVector, u64)>,
}

fn decompose_into(q: &Quiver, a: &DimVector, out: &mut BTreeMap<DimVector, u64>) {
    match find_split(q, a) {
        None => *out.entry(a.clone()).or_insert(0) += 1,
        Some((b, c)) => {
            decompose_into(q, &b, out);
            decompose_into(q, &c, out);
        }
    }
}

pub(crate) fn canonical_raw(q: &Quiver, a: &DimVector) -> Result<CanonicalDecomposition> {
    let mut m = BTreeMap::new();
    decompose_into(q, a, &mut m);
    let roots: Vec<(DimVector, u64)> = m.into_iter().collect();
    // hom(α_i, α_j) ≠ 0 forces i after j.
    let k = roots.len();
    let mut before = vec![Vec::new(); k];
    let mut indeg = vec![0; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && hom(q, &roots[i].0, &roots[j].0) != 0 {
                before[j].push(i);
                indeg[i] += 1;
            }
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::new();
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &before[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() != k {
        return Err(Error::Theory("hom relation among canonical summands has a cycle".into()));
    }
    Ok(CanonicalDecomposition { summands: order.into_iter().map(|i| roots[i].clone()).collect() })
}

/// α = α_1^{⊕c_1} ⊕ … with Schur roots α_i and ext(α_i, α_j) = 0 for i ≠ j.
pub fn canonical_decomposition(q: &Quiver, a: &DimVector) -> Result<CanonicalDecomposition> {
    check_nonzero(q, a)?;
    check_size(a)?;
    canonical_raw(q, a)
}

/// Prehomogeneous iff every canonical summand is a real Schur root.
pub fn is_prehomogeneous(q: &Quiver, a: &DimVector) -> Result<bool> {
    let d = canonical_decomposition(q, a)?;
    Ok(d.summands.iter().all(|(r, _)| q.euler(r, r) == 1))
}
