//! Quivers, dimension vectors, weights and the Euler form.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Integer vector indexed by vertex, nonnegative entries.
///
/// Vertices are addressed by their position in [`Quiver::vertices`]; the
/// vector does not carry the quiver, so callers keep the pairing straight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

/// Integer vector indexed by vertex, any sign. Acts on dimension vectors by
/// σ(α) = Σ σ(x)α(x).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise ≤.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0, |g, &a| num_integer::gcd(g, a))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn eval(&self, a: &DimVector) -> i64 {
        self.0.iter().zip(&a.0).map(|(s, x)| s * x).sum()
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

#[derive(Deserialize, Serialize)]
struct ArrowJson {
    tail: String,
    head: String,
}

#[derive(Deserialize, Serialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    #[serde(default)]
    allows_cycles: bool,
}

/// A finite quiver with string vertex ids, indexed densely in input order.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    arrows: Vec<(usize, usize)>,
    allows_cycles: bool,
    topo: Option<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    out_arrows: Vec<Vec<usize>>,
    digest: u64,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.allows_cycles == other.allows_cycles
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex ids and (tail, head) id pairs.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S)],
        allows_cycles: bool,
    ) -> Result<Quiver> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
            names.push(v);
        }
        let mut arr = Vec::with_capacity(arrows.len());
        for (t, h) in arrows {
            let t = *index
                .get(t.as_ref())
                .ok_or_else(|| Error::DanglingEndpoint(t.as_ref().to_string()))?;
            let h = *index
                .get(h.as_ref())
                .ok_or_else(|| Error::DanglingEndpoint(h.as_ref().to_string()))?;
            arr.push((t, h));
        }
        Self::from_indices(names, arr, allows_cycles)
    }

    /// Builds a quiver from dense indices; vertex `i` gets the given name.
    pub fn from_indices(
        vertices: Vec<String>,
        arrows: Vec<(usize, usize)>,
        allows_cycles: bool,
    ) -> Result<Quiver> {
        let n = vertices.len();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut in_arrows = vec![Vec::new(); n];
        let mut out_arrows = vec![Vec::new(); n];
        for (a, &(t, h)) in arrows.iter().enumerate() {
            if t >= n || h >= n {
                return Err(Error::DanglingEndpoint(format!("#{}", t.max(h))));
            }
            out_arrows[t].push(a);
            in_arrows[h].push(a);
        }
        let topo = topological_order(n, &arrows);
        if topo.is_none() && !allows_cycles {
            return Err(Error::OrientedCycle);
        }
        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        arrows.hash(&mut hasher);
        let digest = hasher.finish();
        Ok(Quiver {
            vertices,
            index,
            arrows,
            allows_cycles,
            topo,
            in_arrows,
            out_arrows,
            digest,
        })
    }

    /// Parses the JSON quiver schema `{"vertices": [...], "arrows": [{"tail","head"}], "allows_cycles"}`.
    pub fn parse(text: &str) -> Result<Quiver> {
        let q: QuiverJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let arrows: Vec<(String, String)> =
            q.arrows.into_iter().map(|a| (a.tail, a.head)).collect();
        Quiver::new(&q.vertices, &arrows, q.allows_cycles)
    }

    pub fn to_json(&self) -> Value {
        let q = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(t, h)| ArrowJson {
                    tail: self.vertices[t].clone(),
                    head: self.vertices[h].clone(),
                })
                .collect(),
            allows_cycles: self.allows_cycles,
        };
        serde_json::to_value(q).expect("quiver serializes")
    }

    /// Kronecker quiver θ(ℓ): vertices "1","2" and ℓ arrows 1→2.
    pub fn kronecker(l: usize) -> Quiver {
        let arrows = vec![(0, 1); l];
        Quiver::from_indices(vec!["1".into(), "2".into()], arrows, false).expect("acyclic")
    }

    /// Star quiver T_{p,q,r}: arms x1→…→x_{p−1}, y1→…→y_{q−1} and
    /// z1→…→z_{r−1} all ending in a central sink "c" (which plays the role
    /// of x_p = y_q = z_r). Vertex order: x's, y's, z's, then c.
    pub fn star(p: usize, q: usize, r: usize) -> Quiver {
        assert!(p >= 1 && q >= 1 && r >= 1, "arm lengths are at least 1");
        let mut names = Vec::new();
        let mut arrows = Vec::new();
        let center = p + q + r - 3;
        for (letter, len) in [("x", p), ("y", q), ("z", r)] {
            for i in 1..len {
                let idx = names.len();
                names.push(format!("{letter}{i}"));
                arrows.push((idx, if i + 1 < len { idx + 1 } else { center }));
            }
        }
        names.push("c".into());
        Quiver::from_indices(names, arrows, false).expect("trees are acyclic")
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn allows_cycles(&self) -> bool {
        self.allows_cycles
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn in_arrows(&self, x: usize) -> &[usize] {
        &self.in_arrows[x]
    }

    pub fn out_arrows(&self, x: usize) -> &[usize] {
        &self.out_arrows[x]
    }

    /// Structural hash: vertex count plus arrow list. Names do not matter.
    pub fn digest(&self) -> u64 {
        self.digest
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo.is_some()
    }

    /// Tails before heads; among ready vertices the smallest index first.
    pub fn topological_order(&self) -> Result<&[usize]> {
        self.topo.as_deref().ok_or(Error::OrientedCycle)
    }

    pub(crate) fn require_acyclic(&self) -> Result<()> {
        if self.topo.is_some() {
            Ok(())
        } else {
            Err(Error::pre("acyclic_quiver", "operation needs a quiver without oriented cycles"))
        }
    }

    pub fn unit(&self, i: usize) -> DimVector {
        DimVector::unit(self.n(), i)
    }

    pub(crate) fn check_dim(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.n() {
            return Err(Error::VertexSet(format!("expected {} entries, got {}", self.n(), a.len())));
        }
        if !a.is_nonnegative() {
            return Err(Error::VertexSet("dimension vector has a negative entry".into()));
        }
        Ok(())
    }

    pub(crate) fn check_weight(&self, s: &Weight) -> Result<()> {
        if s.0.len() != self.n() {
            return Err(Error::VertexSet(format!("expected {} entries, got {}", self.n(), s.0.len())));
        }
        Ok(())
    }

    /// ⟨α,β⟩ = Σ α(x)β(x) − Σ_a α(ta)β(ha). Defined on all integer vectors.
    pub fn euler(&self, a: &DimVector, b: &DimVector) -> i64 {
        euler_raw(&self.arrows, &a.0, &b.0)
    }

    /// Checked Euler form: vectors must live on this quiver.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.euler(a, b))
    }

    /// σ with σ(γ) = ⟨α,γ⟩.
    pub fn left_weight(&self, a: &DimVector) -> Weight {
        let mut w = a.0.clone();
        for &(t, h) in &self.arrows {
            w[h] -= a.0[t];
        }
        Weight(w)
    }

    /// σ with σ(γ) = −⟨γ,β⟩.
    pub fn right_weight(&self, b: &DimVector) -> Weight {
        let mut w: Vec<i64> = b.0.iter().map(|x| -x).collect();
        for &(t, h) in &self.arrows {
            w[t] += b.0[h];
        }
        Weight(w)
    }

    /// Reads `{"vertex": value, ...}`; every vertex must appear exactly once.
    pub fn vector_from_json(&self, v: &Value) -> Result<Vec<i64>> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object keyed by vertex".into()))?;
        let mut out = vec![None; self.n()];
        for (k, val) in obj {
            let i = self
                .index_of(k)
                .ok_or_else(|| Error::VertexSet(format!("unknown vertex `{k}`")))?;
            let x = val
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("entry for `{k}` is not an integer")))?;
            out[i] = Some(x);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| Error::VertexSet(format!("missing vertex `{}`", self.vertices[i])))
            })
            .collect()
    }

    pub fn dim_from_json(&self, v: &Value) -> Result<DimVector> {
        let d = DimVector(self.vector_from_json(v)?);
        self.check_dim(&d)?;
        Ok(d)
    }

    pub fn weight_from_json(&self, v: &Value) -> Result<Weight> {
        Ok(Weight(self.vector_from_json(v)?))
    }

    pub fn vector_to_json(&self, v: &[i64]) -> Value {
        let m: BTreeMap<&str, i64> =
            self.vertices.iter().map(String::as_str).zip(v.iter().copied()).collect();
        serde_json::to_value(m).expect("map serializes")
    }
}

pub(crate) fn euler_raw(arrows: &[(usize, usize)], a: &[i64], b: &[i64]) -> i64 {
    let mut s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    for &(t, h) in arrows {
        s -= a[t] * b[h];
    }
    s
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(t, h) in arrows {
        indeg[h] += 1;
        out[t].push(h);
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&x) = ready.iter().next() {
        ready.remove(&x);
        order.push(x);
        for &h in &out[x] {
            indeg[h] -= 1;
            if indeg[h] == 0 {
                ready.insert(h);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// The bipartite double Q̂ of a quiver, with the weight τ.
#[derive(Clone, Debug)]
pub struct DoubledQuiver {
    pub base: Quiver,
    pub doubled: Quiver,
    /// `vertex_map[x][level]` is the doubled vertex index of (x, level).
    pub vertex_map: Vec<[usize; 2]>,
    pub tau: Weight,
}

impl DoubledQuiver {
    /// α̂(x,0) = α̂(x,1) = α(x).
    pub fn lift_dim(&self, a: &DimVector) -> DimVector {
        let mut v = vec![0; self.doubled.n()];
        for (x, m) in self.vertex_map.iter().enumerate() {
            v[m[0]] = a.0[x];
            v[m[1]] = a.0[x];
        }
        DimVector(v)
    }

    /// σ̂(x,0) = σ̂(x,1) = σ(x), so σ̂(α̂) = 2σ(α).
    pub fn lift_weight(&self, s: &Weight) -> Weight {
        let mut v = vec![0; self.doubled.n()];
        for (x, m) in self.vertex_map.iter().enumerate() {
            v[m[0]] = s.0[x];
            v[m[1]] = s.0[x];
        }
        Weight(v)
    }
}

/// Vertices (x,0) and (x,1); one arrow (ta,0)→(ha,1) per arrow and one
/// arrow (x,0)→(x,1) per vertex.
pub fn double_quiver(q: &Quiver) -> DoubledQuiver {
    let n = q.n();
    let mut names = Vec::with_capacity(2 * n);
    for v in q.vertices() {
        names.push(format!("({v},0)"));
    }
    for v in q.vertices() {
        names.push(format!("({v},1)"));
    }
    let vertex_map: Vec<[usize; 2]> = (0..n).map(|x| [x, n + x]).collect();
    let mut arrows: Vec<(usize, usize)> = q.arrows().iter().map(|&(t, h)| (t, n + h)).collect();
    arrows.extend((0..n).map(|x| (x, n + x)));
    let doubled = Quiver::from_indices(names, arrows, false).expect("bipartite double is acyclic");
    let mut tau = vec![1; n];
    tau.extend(std::iter::repeat(-1).take(n));
    DoubledQuiver { base: q.clone(), doubled, vertex_map, tau: Weight(tau) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t332() -> Quiver {
        let v = ["x1", "x2", "y1", "y2", "z1", "c"];
        let a = [("x1", "x2"), ("x2", "c"), ("y1", "y2"), ("y2", "c"), ("z1", "c")];
        Quiver::new(&v, &a, false).unwrap()
    }

    #[test]
    fn parse_small_and_cycle() {
        let q = Quiver::parse(r#"{"vertices":["1","2"],"arrows":[{"tail":"2","head":"1"}]}"#).unwrap();
        assert_eq!(q.topological_order().unwrap(), &[1, 0]);
        let e = Quiver::parse(
            r#"{"vertices":["1","2"],"arrows":[{"tail":"1","head":"2"},{"tail":"2","head":"1"}],"allows_cycles":false}"#,
        );
        assert_eq!(e.unwrap_err(), Error::OrientedCycle);
        let e = Quiver::parse(r#"{"vertices":["1"],"arrows":[{"tail":"1","head":"9"}]}"#);
        assert!(matches!(e, Err(Error::DanglingEndpoint(_))));
        assert!(matches!(Quiver::parse("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn euler_examples() {
        let k2 = Quiver::kronecker(2);
        assert_eq!(k2.euler(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])), -2);
        let q = t332();
        assert_eq!(q.n(), 6);
        let a = DimVector(vec![1, 3, 1, 2, 2, 4]);
        let b = DimVector(vec![1, 2, 0, 2, 1, 3]);
        assert_eq!(q.euler(&a, &b), 0);
        assert_eq!(q.euler(&q.unit(0), &q.unit(0)), 1);
    }

    #[test]
    fn weights() {
        let k2 = Quiver::kronecker(2);
        assert_eq!(k2.left_weight(&DimVector(vec![1, 0])), Weight(vec![1, -2]));
        let k1 = Quiver::kronecker(1);
        assert_eq!(k1.right_weight(&DimVector(vec![0, 1])), Weight(vec![1, -1]));
        assert!(k1.left_weight(&DimVector::zero(2)).is_zero());
    }

    #[test]
    fn doubling_counts() {
        let loop1 = Quiver::new(&["a"], &[("a", "a")], true).unwrap();
        let d = double_quiver(&loop1);
        assert_eq!(d.doubled.n(), 2);
        assert_eq!(d.doubled.arrows(), &[(0, 1), (0, 1)]);
        let q = Quiver::new(
            &["A", "B", "C"],
            &[("A", "B"), ("B", "A"), ("B", "C"), ("B", "C")],
            true,
        )
        .unwrap();
        let d = double_quiver(&q);
        assert_eq!(d.doubled.n(), 6);
        assert_eq!(d.doubled.arrows().len(), 7);
        assert!(d.doubled.is_acyclic());
    }

    #[test]
    fn json_round_trip() {
        let q = t332();
        let q2 = Quiver::parse(&q.to_json().to_string()).unwrap();
        assert_eq!(q, q2);
        let v = q.vector_to_json(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(q.dim_from_json(&v).unwrap().0, vec![1, 2, 3, 4, 5, 6]);
        let bad = serde_json::json!({"x1": 1});
        assert!(q.dim_from_json(&bad).is_err());
    }
}
