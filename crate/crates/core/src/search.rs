//! Bounded enumeration of integer vectors in a box, with linear side
//! conditions checked as soon as their variables are assigned.
//!
//! Every subvector search in the crate goes through here: candidate
//! subdimension vectors for ext, Schur splits, destabilizing subvectors and
//! Hilbert-basis elements.

use crate::quiver::{DimVector, Quiver};

/// Σ coeff·γ(v) ≤ bound.
#[derive(Clone, Debug)]
pub(crate) struct LinCon {
    pub terms: Vec<(usize, i64)>,
    pub bound: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// γ is the dimension of a subrepresentation of a general α-representation.
    Sub,
    /// γ is the dimension of a quotient.
    Quot,
}

/// Necessary conditions for γ ↪ α (or α ↠ γ) coming from the generic rank of
/// the maps at single arrows and of the combined maps into and out of each
/// vertex.
pub(crate) fn rank_constraints(q: &Quiver, alpha: &DimVector, side: Side) -> Vec<LinCon> {
    let a = &alpha.0;
    let mut out = Vec::new();
    // Each raw constraint reads Σ_{t∈T} γ(t) − Σ_{h∈H} γ(h) ≤ b for subs.
    let mut push = |tails: Vec<usize>, heads: Vec<usize>, b: i64| {
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut add = |v: usize, c: i64| {
            if let Some(t) = terms.iter_mut().find(|t| t.0 == v) {
                t.1 += c;
            } else {
                terms.push((v, c));
            }
        };
        for &t in &tails {
            add(t, 1);
        }
        for &h in &heads {
            add(h, -1);
        }
        terms.retain(|t| t.1 != 0);
        if terms.is_empty() {
            return;
        }
        match side {
            Side::Sub => out.push(LinCon { terms, bound: b }),
            Side::Quot => {
                // Substitute γ → α − γ.
                let shift: i64 = terms.iter().map(|&(v, c)| c * a[v]).sum();
                let terms = terms.into_iter().map(|(v, c)| (v, -c)).collect();
                out.push(LinCon { terms, bound: b - shift })
            }
        }
    };
    for &(t, h) in q.arrows() {
        if t == h {
            continue;
        }
        if a[t] <= a[h] {
            push(vec![t], vec![h], 0);
        }
        if a[t] >= a[h] {
            push(vec![t], vec![h], a[t] - a[h]);
        }
    }
    for x in 0..q.n() {
        let ins: Vec<usize> = q.in_arrows(x).iter().map(|&e| q.arrows()[e].0).filter(|&t| t != x).collect();
        if ins.len() >= 2 {
            let s: i64 = ins.iter().map(|&t| a[t]).sum();
            if s <= a[x] {
                push(ins.clone(), vec![x], 0);
            }
            if s >= a[x] {
                push(ins.clone(), vec![x], s - a[x]);
            }
        }
        let outs: Vec<usize> = q.out_arrows(x).iter().map(|&e| q.arrows()[e].1).filter(|&h| h != x).collect();
        if outs.len() >= 2 {
            let s: i64 = outs.iter().map(|&h| a[h]).sum();
            if a[x] <= s {
                push(vec![x], outs.clone(), 0);
            }
            if a[x] >= s {
                push(vec![x], outs.clone(), a[x] - s);
            }
        }
    }
    out
}

pub(crate) struct BoxSearch {
    order: Vec<usize>,
    upper: Vec<i64>,
    checks: Vec<Vec<LinCon>>,
    eq: Vec<(Vec<i64>, i64)>,
    gt: Option<(Vec<i64>, i64)>,
    size: Option<i64>,
}

impl BoxSearch {
    /// All vectors 0 ≤ γ ≤ upper, assigning vertices in `order`.
    pub fn new(order: Vec<usize>, upper: Vec<i64>) -> Self {
        let n = order.len();
        BoxSearch { order, upper, checks: vec![Vec::new(); n], eq: Vec::new(), gt: None, size: None }
    }

    /// Subvectors of α, visited in the quiver's topological order when it has one.
    pub fn below(q: &Quiver, alpha: &DimVector) -> Self {
        let order = match q.topological_order() {
            Ok(o) => o.to_vec(),
            Err(_) => (0..q.n()).collect(),
        };
        Self::new(order, alpha.0.clone())
    }

    pub fn constraints(mut self, cons: Vec<LinCon>) -> Self {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        for c in cons {
            let at = c.terms.iter().map(|t| pos[t.0]).max().unwrap_or(0);
            self.checks[at].push(c);
        }
        self
    }

    pub fn rank(self, q: &Quiver, alpha: &DimVector, side: Side) -> Self {
        let c = rank_constraints(q, alpha, side);
        self.constraints(c)
    }

    pub fn weight_eq(mut self, w: Vec<i64>, target: i64) -> Self {
        self.eq.push((w, target));
        self
    }

    pub fn weight_gt(mut self, w: Vec<i64>, threshold: i64) -> Self {
        self.gt = Some((w, threshold));
        self
    }

    pub fn size(mut self, s: i64) -> Self {
        self.size = Some(s);
        self
    }

    /// Calls `visit` on each vector; stops early when it returns false.
    pub fn run(&self, mut visit: impl FnMut(&[i64]) -> bool) {
        let n = self.order.len();
        // Suffix ranges for pruning the linear targets.
        let range = |w: &[i64]| -> (Vec<i64>, Vec<i64>) {
            let mut lo = vec![0; n + 1];
            let mut hi = vec![0; n + 1];
            for p in (0..n).rev() {
                let v = self.order[p];
                let c = w[v] * self.upper[v];
                lo[p] = lo[p + 1] + c.min(0);
                hi[p] = hi[p + 1] + c.max(0);
            }
            (lo, hi)
        };
        let eq_ranges: Vec<_> = self.eq.iter().map(|(w, _)| range(w)).collect();
        let gt_range = self.gt.as_ref().map(|(w, _)| range(w).1);
        let mut size_rest = vec![0; n + 1];
        for p in (0..n).rev() {
            size_rest[p] = size_rest[p + 1] + self.upper[self.order[p]];
        }
        let mut st = State {
            s: self,
            gamma: vec![0; n],
            eq_acc: vec![0; self.eq.len()],
            gt_acc: 0,
            size_acc: 0,
            eq_ranges,
            gt_range,
            size_rest,
            stop: false,
        };
        st.go(0, &mut visit);
    }

    pub fn collect(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.run(|g| {
            out.push(g.to_vec());
            true
        });
        out
    }
}

struct State<'a> {
    s: &'a BoxSearch,
    gamma: Vec<i64>,
    eq_acc: Vec<i64>,
    gt_acc: i64,
    size_acc: i64,
    eq_ranges: Vec<(Vec<i64>, Vec<i64>)>,
    gt_range: Option<Vec<i64>>,
    size_rest: Vec<i64>,
    stop: bool,
}

impl State<'_> {
    fn feasible(&self, p: usize) -> bool {
        for (i, (_, t)) in self.s.eq.iter().enumerate() {
            let (lo, hi) = &self.eq_ranges[i];
            if self.eq_acc[i] + lo[p] > *t || self.eq_acc[i] + hi[p] < *t {
                return false;
            }
        }
        if let (Some((_, th)), Some(hi)) = (&self.s.gt, &self.gt_range) {
            if self.gt_acc + hi[p] <= *th {
                return false;
            }
        }
        if let Some(sz) = self.s.size {
            if self.size_acc > sz || self.size_acc + self.size_rest[p] < sz {
                return false;
            }
        }
        true
    }

    fn go(&mut self, p: usize, visit: &mut impl FnMut(&[i64]) -> bool) {
        if !self.feasible(p) {
            return;
        }
        if p == self.s.order.len() {
            if !visit(&self.gamma) {
                self.stop = true;
            }
            return;
        }
        let v = self.s.order[p];
        let mut hi = self.s.upper[v];
        if let Some(sz) = self.s.size {
            hi = hi.min(sz - self.size_acc);
        }
        for x in 0..=hi {
            self.gamma[v] = x;
            let ok = self.s.checks[p]
                .iter()
                .all(|c| c.terms.iter().map(|&(u, k)| k * self.gamma[u]).sum::<i64>() <= c.bound);
            if ok {
                for (i, (w, _)) in self.s.eq.iter().enumerate() {
                    self.eq_acc[i] += w[v] * x;
                }
                if let Some((w, _)) = &self.s.gt {
                    self.gt_acc += w[v] * x;
                }
                self.size_acc += x;
                self.go(p + 1, visit);
                for (i, (w, _)) in self.s.eq.iter().enumerate() {
                    self.eq_acc[i] -= w[v] * x;
                }
                if let Some((w, _)) = &self.s.gt {
                    self.gt_acc -= w[v] * x;
                }
                self.size_acc -= x;
            }
            if self.stop {
                break;
            }
        }
        self.gamma[v] = 0;
    }
}
