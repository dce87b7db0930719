//! Exceptional sequences, braid mutations, perpendicular categories and
//! refinement of Schur sequences.
//!
//! For an exceptional sequence ε = (ε_1,…,ε_k) the right perpendicular
//! category {V : Hom(E_i,V) = Ext(E_i,V) = 0} is equivalent to the
//! representations of an acyclic quiver Q′ with n − k vertices. Its simples
//! have dimension vectors ε′_1,…,ε′_{n−k}, and the embedding
//! I(β) = Σ β_i ε′_i preserves the Euler form, ext, hom and ∘. The ε′_i are
//! the minimal generators of the semigroup of dimension vectors β with
//! ε_j ⊥ β for all j, which is how they are found here.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::config;
use crate::error::{Error, Result};
use crate::homext::{check_size, classify, ext, hom};
use crate::linalg::solve_combination;
use crate::quiver::{DimVector, Quiver};
use crate::search::BoxSearch;
use crate::siweights::circ_raw;
use crate::stability::sigma_stable_raw;

/// Box points visited by one Hilbert-basis pass before giving up.
const MAX_HILBERT_POINTS: usize = 4_000_000;
const MAX_REFINE_DEPTH: usize = 256;

/// Real Schur roots ε_1,…,ε_k with ε_i ⊥ ε_j for i < j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSequence {
    pub roots: Vec<DimVector>,
}

/// Braid move direction. `Left` is s_i, which moves ε_{i+1} leftwards past
/// ε_i; `Right` is its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Left,
    Right,
}

/// Which perpendicular category: right means ε ⊥ β, left means β ⊥ ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerpSide {
    Right,
    Left,
}

/// The quiver Q′ of a perpendicular category and its embedding into Q.
#[derive(Clone, Debug)]
pub struct PerpEmbedding {
    pub sub_quiver: Quiver,
    /// Dimension vectors of the simples, in Q′'s vertex order.
    pub simples: Vec<DimVector>,
    pub side: PerpSide,
    /// The box bound at which the generators were certified.
    pub bound: i64,
}

impl PerpEmbedding {
    /// I(β) = Σ β_i ε′_i.
    pub fn embed(&self, b: &DimVector) -> DimVector {
        let n = self.simples.first().map_or(0, |s| s.len());
        self.simples.iter().zip(&b.0).fold(DimVector::zero(n), |acc, (s, &c)| acc.add(&s.scale(c)))
    }

    /// The β with I(β) = α, if α lies in the image.
    pub fn restrict(&self, a: &DimVector) -> Option<DimVector> {
        if self.simples.is_empty() {
            return a.is_zero().then(|| DimVector(Vec::new()));
        }
        let vs: Vec<Vec<i64>> = self.simples.iter().map(|s| s.0.clone()).collect();
        let c = solve_combination(&vs, &a.0)?;
        let mut out = Vec::with_capacity(c.len());
        for x in c {
            if !x.is_integer() || x.is_negative() {
                return None;
            }
            out.push(x.to_integer().to_i64()?);
        }
        Some(DimVector(out))
    }
}

/// An exceptional refinement of a Schur sequence. Block j covers
/// `sequence.roots[blocks[j-1]..blocks[j]]` (with blocks[-1] = 0) and the
/// j-th input root is Σ coefficients[j][t] times the t-th root of its block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refinement {
    pub sequence: ExceptionalSequence,
    /// Block end positions b_1 < … < b_r.
    pub blocks: Vec<usize>,
    pub coefficients: Vec<Vec<u64>>,
}

fn check_roots(q: &Quiver, roots: &[DimVector]) -> Result<()> {
    q.require_acyclic()?;
    if roots.is_empty() {
        return Err(Error::pre("nonempty_sequence", "the sequence is empty"));
    }
    for r in roots {
        q.check_dim(r)?;
        if r.is_zero() {
            return Err(Error::pre("nonzero_dimension", "a root is zero"));
        }
        check_size(r)?;
    }
    Ok(())
}

fn perpendicular(q: &Quiver, a: &DimVector, b: &DimVector) -> bool {
    q.euler(a, b) == 0 && ext(q, a, b) == 0
}

fn exceptional_raw(q: &Quiver, roots: &[DimVector]) -> bool {
    roots.iter().all(|r| q.euler(r, r) == 1 && classify(q, r).is_schur())
        && (0..roots.len()).all(|i| (i + 1..roots.len()).all(|j| perpendicular(q, &roots[i], &roots[j])))
}

/// Each root real Schur and hom = ext = 0 from every earlier root to every
/// later one.
pub fn is_exceptional_sequence(q: &Quiver, roots: &[DimVector]) -> Result<bool> {
    check_roots(q, roots)?;
    Ok(exceptional_raw(q, roots))
}

fn require_exceptional(q: &Quiver, roots: &[DimVector]) -> Result<()> {
    check_roots(q, roots)?;
    if !exceptional_raw(q, roots) {
        return Err(Error::pre("exceptional_sequence", "input is not an exceptional sequence"));
    }
    Ok(())
}

fn nonnegative_sign(v: DimVector) -> Result<DimVector> {
    if v.is_nonnegative() && !v.is_zero() {
        Ok(v)
    } else if v.scale(-1).is_nonnegative() && !v.is_zero() {
        Ok(v.scale(-1))
    } else {
        Err(Error::pre("exceptional_sequence", format!("mutation candidate {:?} has mixed signs", v.0)))
    }
}

/// Applies s_i (`Left`) or s_i⁻¹ (`Right`) at 1-based position i.
///
/// With (A,B) = (ε_i, ε_{i+1}) and c = ⟨B,A⟩:
/// s_i gives (±(B − cA), A) and s_i⁻¹ gives (B, ±(A − cB)), the sign
/// chosen so the new root is a dimension vector.
pub fn braid_mutate(q: &Quiver, seq: &ExceptionalSequence, i: usize, dir: Direction) -> Result<ExceptionalSequence> {
    require_exceptional(q, &seq.roots)?;
    if i == 0 || i >= seq.roots.len() {
        return Err(Error::pre("index_range", format!("need 1 ≤ i < {}, got {i}", seq.roots.len())));
    }
    let a = &seq.roots[i - 1];
    let b = &seq.roots[i];
    let c = q.euler(b, a);
    let (x, y) = match dir {
        Direction::Left => (nonnegative_sign(b.sub(&a.scale(c)))?, a.clone()),
        Direction::Right => (b.clone(), nonnegative_sign(a.sub(&b.scale(c)))?),
    };
    let mut roots = seq.roots.clone();
    roots[i - 1] = x;
    roots[i] = y;
    if !exceptional_raw(q, &roots) {
        return Err(Error::Theory(format!("mutated sequence {:?} is not exceptional", roots)));
    }
    Ok(ExceptionalSequence { roots })
}

fn in_perp(q: &Quiver, seq: &[DimVector], side: PerpSide, b: &DimVector) -> bool {
    seq.iter().all(|e| match side {
        PerpSide::Right => ext(q, e, b) == 0,
        PerpSide::Left => ext(q, b, e) == 0,
    })
}

/// Irreducible elements of {β ∈ [0,B]^n : ε ⊥ β}, in (size, lex) order.
/// Stops early with `None` once more than `need` are found.
fn hilbert_basis(q: &Quiver, seq: &[DimVector], side: PerpSide, bound: i64, need: usize) -> Result<Option<Vec<DimVector>>> {
    let n = q.n();
    let mut search = BoxSearch::new((0..n).collect(), vec![bound; n]);
    for e in seq {
        // ⟨ε,β⟩ = 0 or ⟨β,ε⟩ = 0, linear in β.
        let w = match side {
            PerpSide::Right => q.left_weight(e),
            PerpSide::Left => q.right_weight(e),
        };
        search = search.weight_eq(w.0, 0);
    }
    let mut points = Vec::new();
    let mut overflow = false;
    search.run(|g| {
        if g.iter().any(|&x| x != 0) {
            points.push(g.to_vec());
        }
        if points.len() > MAX_HILBERT_POINTS {
            overflow = true;
            return false;
        }
        true
    });
    if overflow {
        return Err(Error::Cap { what: "hilbert_points", limit: MAX_HILBERT_POINTS as u64 });
    }
    points.sort_by(|x, y| x.iter().sum::<i64>().cmp(&y.iter().sum::<i64>()).then_with(|| x.cmp(y)));
    let mut members: HashSet<Vec<i64>> = HashSet::new();
    let mut basis: Vec<DimVector> = Vec::new();
    for p in points {
        let b = DimVector(p);
        let reducible = basis.iter().any(|g| g.le(&b) && members.contains(&b.sub(g).0));
        if reducible || in_perp(q, seq, side, &b) {
            if !reducible {
                basis.push(b.clone());
                if basis.len() > need {
                    return Ok(None);
                }
            }
            members.insert(b.0);
        }
    }
    Ok(Some(basis))
}

/// Orders generators so that Q′ (with −⟨ε′_i,ε′_j⟩ arrows i→j) lists tails
/// before heads, ties broken lexicographically.
fn build_perp_quiver(q: &Quiver, mut gens: Vec<DimVector>) -> Result<(Quiver, Vec<DimVector>)> {
    gens.sort();
    let m = gens.len();
    for g in &gens {
        if q.euler(g, g) != 1 {
            return Err(Error::Theory(format!("perpendicular simple {:?} is not a real root", g.0)));
        }
    }
    let mut count = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let e = q.euler(&gens[i], &gens[j]);
                if e > 0 {
                    return Err(Error::Theory(format!("⟨{:?},{:?}⟩ = {e} > 0 between simples", gens[i].0, gens[j].0)));
                }
                count[i][j] = (-e) as usize;
            }
        }
    }
    let mut left: Vec<usize> = (0..m).collect();
    let mut order = Vec::with_capacity(m);
    while !left.is_empty() {
        let pos = left
            .iter()
            .position(|&x| left.iter().all(|&y| count[y][x] == 0))
            .ok_or_else(|| Error::Theory("perpendicular quiver has an oriented cycle".into()))?;
        order.push(left.remove(pos));
    }
    let mut at = vec![0; m];
    for (p, &i) in order.iter().enumerate() {
        at[i] = p;
    }
    let mut arrows = Vec::new();
    for &i in &order {
        for &j in &order {
            arrows.extend(std::iter::repeat((at[i], at[j])).take(count[i][j]));
        }
    }
    let names = (1..=m).map(|i| format!("e{i}")).collect();
    let sub = Quiver::from_indices(names, arrows, false).map_err(|e| Error::Theory(e.to_string()))?;
    Ok((sub, order.into_iter().map(|i| gens[i].clone()).collect()))
}

fn perp_raw(q: &Quiver, seq: &[DimVector], side: PerpSide) -> Result<PerpEmbedding> {
    let n = q.n();
    if seq.len() > n {
        return Err(Error::pre("sequence_length", "an exceptional sequence has at most n roots"));
    }
    let need = n - seq.len();
    let cap = config::hilbert_bound();
    let top = seq.iter().flat_map(|e| e.0.iter().copied()).max().unwrap_or(1);
    let mut bound = (2 * top).max(1).min(cap);
    loop {
        match hilbert_basis(q, seq, side, bound, need)? {
            Some(gens) if gens.len() == need => {
                let (sub_quiver, simples) = build_perp_quiver(q, gens)?;
                return Ok(PerpEmbedding { sub_quiver, simples, side, bound });
            }
            Some(_) if bound < cap => bound = (2 * bound).min(cap),
            Some(_) => return Err(Error::Cap { what: "hilbert_bound", limit: cap as u64 }),
            None => return Err(Error::Theory(format!("more than {need} perpendicular generators"))),
        }
    }
}

/// The quiver of the right (or left) perpendicular category of an
/// exceptional sequence, with its embedding.
pub fn perp_quiver(q: &Quiver, seq: &ExceptionalSequence, side: PerpSide) -> Result<PerpEmbedding> {
    require_exceptional(q, &seq.roots)?;
    perp_raw(q, &seq.roots, side)
}

/// Schur roots with γ_i ∘ γ_j = 1 for all i < j.
fn require_schur_sequence(q: &Quiver, seq: &[DimVector]) -> Result<()> {
    check_roots(q, seq)?;
    for g in seq {
        if !classify(q, g).is_schur() {
            return Err(Error::pre("schur_sequence", format!("{:?} is not a Schur root", g.0)));
        }
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if !circ_raw(q, &seq[i], &seq[j])?.is_one() {
                return Err(Error::pre("schur_sequence", format!("{:?} ∘ {:?} ≠ 1", seq[i].0, seq[j].0)));
            }
        }
    }
    Ok(())
}

/// Returns the refined roots and, per input root, the length of its block.
fn refine_raw(q: &Quiver, seq: &[DimVector], depth: usize) -> Result<(Vec<DimVector>, Vec<usize>)> {
    if seq.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    if depth > MAX_REFINE_DEPTH {
        return Err(Error::Cap { what: "refine_depth", limit: MAX_REFINE_DEPTH as u64 });
    }
    let head = &seq[0];
    if q.euler(head, head) == 1 {
        if seq.len() == 1 {
            return Ok((vec![head.clone()], vec![1]));
        }
        // The later roots live in head^⊥ ≅ Rep(Q′); refine them there.
        let perp = perp_raw(q, std::slice::from_ref(head), PerpSide::Right)?;
        let mut inner = Vec::with_capacity(seq.len() - 1);
        for g in &seq[1..] {
            inner.push(perp.restrict(g).ok_or_else(|| {
                Error::pre("schur_sequence", format!("{:?} is not right perpendicular to {:?}", g.0, head.0))
            })?);
        }
        let (eps, lens) = refine_raw(&perp.sub_quiver, &inner, depth + 1)?;
        let mut roots = vec![head.clone()];
        roots.extend(eps.iter().map(|e| perp.embed(e)));
        let mut blocks = vec![1];
        blocks.extend(lens);
        return Ok((roots, blocks));
    }
    // Imaginary head: split it by its σ-stable decomposition for
    // σ = −⟨·,δ⟩, δ the sum of the later roots.
    let delta = seq[1..].iter().fold(DimVector::zero(q.n()), |acc, g| acc.add(g));
    let dec = sigma_stable_raw(q, head, &q.right_weight(&delta))?;
    if dec.factors.len() == 1 && dec.factors[0].1 == 1 {
        return Err(Error::Theory(format!("imaginary head {:?} is σ-stable", head.0)));
    }
    let l = dec.factors.len();
    let mut next: Vec<DimVector> = dec.certificate.iter().map(|&i| dec.factors[i].0.clone()).collect();
    next.extend(seq[1..].iter().cloned());
    let (roots, lens) = refine_raw(q, &next, depth + 1)?;
    let mut blocks = vec![lens[..l].iter().sum()];
    blocks.extend_from_slice(&lens[l..]);
    Ok((roots, blocks))
}

/// An exceptional sequence refining a Schur sequence: each input root is
/// a positive integer combination of a consecutive block.
pub fn refine_schur_sequence(q: &Quiver, seq: &[DimVector]) -> Result<Refinement> {
    require_schur_sequence(q, seq)?;
    let (roots, lens) = if exceptional_raw(q, seq) {
        (seq.to_vec(), vec![1; seq.len()])
    } else {
        refine_raw(q, seq, 0)?
    };
    if !exceptional_raw(q, &roots) {
        return Err(Error::Theory(format!("refinement {:?} is not exceptional", roots)));
    }
    let mut blocks = Vec::with_capacity(lens.len());
    let mut coefficients = Vec::with_capacity(lens.len());
    let mut start = 0;
    for (g, len) in seq.iter().zip(lens) {
        let block: Vec<Vec<i64>> = roots[start..start + len].iter().map(|r| r.0.clone()).collect();
        let c = solve_combination(&block, &g.0)
            .ok_or_else(|| Error::Theory(format!("{:?} is not in the span of its block", g.0)))?;
        let mut cs = Vec::with_capacity(len);
        for x in c {
            match (x.is_integer(), x.to_integer().to_u64()) {
                (true, Some(v)) if v > 0 => cs.push(v),
                _ => return Err(Error::Theory(format!("{:?} has coefficient {x} in its block", g.0))),
            }
        }
        start += len;
        blocks.push(start);
        coefficients.push(cs);
    }
    Ok(Refinement { sequence: ExceptionalSequence { roots }, blocks, coefficients })
}

/// Pairs (β,γ) in ℕ^{n′} with entries ≤ `bound`, for identity checks on an
/// embedding. Deterministic.
pub fn sample_pairs(perp: &PerpEmbedding, bound: i64, count: usize) -> Vec<(DimVector, DimVector)> {
    let m = perp.simples.len();
    let mut all = BoxSearch::new((0..m).collect(), vec![bound; m]).collect();
    all.retain(|v| v.iter().any(|&x| x != 0));
    let mut out = Vec::new();
    let k = all.len();
    if k == 0 {
        return out;
    }
    // A fixed stride walk over the grid of pairs.
    let stride = (k * k / count.max(1)).max(1);
    let mut idx = 0;
    while out.len() < count && idx < k * k {
        out.push((DimVector(all[idx / k].clone()), DimVector(all[idx % k].clone())));
        idx += stride;
    }
    out
}

/// Checks the embedding identities on the simples and on sampled pairs:
/// Euler form, ext, hom and ∘ agree in Q′ and Q. Returns the number of
/// pairs checked or the first violation.
pub fn check_embedding(q: &Quiver, perp: &PerpEmbedding, samples: &[(DimVector, DimVector)]) -> Result<usize> {
    let sub = &perp.sub_quiver;
    let m = perp.simples.len();
    let mut pairs: Vec<(DimVector, DimVector)> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            pairs.push((sub.unit(i), sub.unit(j)));
        }
    }
    pairs.extend(samples.iter().cloned());
    let mut memo: BTreeMap<(Vec<i64>, Vec<i64>), ()> = BTreeMap::new();
    for (b, c) in &pairs {
        if memo.insert((b.0.clone(), c.0.clone()), ()).is_some() {
            continue;
        }
        let (ib, ic) = (perp.embed(b), perp.embed(c));
        let lhs = (sub.euler(b, c), ext(sub, b, c), hom(sub, b, c));
        let rhs = (q.euler(&ib, &ic), ext(q, &ib, &ic), hom(q, &ib, &ic));
        if lhs != rhs {
            return Err(Error::Theory(format!("embedding changes (⟨⟩,ext,hom) of {:?},{:?}: {lhs:?} vs {rhs:?}", b.0, c.0)));
        }
        if lhs.0 == 0 && lhs.1 == 0 && !b.is_zero() && !c.is_zero() {
            let (x, y) = (circ_raw(sub, b, c)?, circ_raw(q, &ib, &ic)?);
            if x != y {
                return Err(Error::Theory(format!("embedding changes ∘ of {:?},{:?}: {x} vs {y}", b.0, c.0)));
            }
        }
    }
    Ok(memo.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::{enumerate_faces, walls};

    fn d(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn seq(v: &[&[i64]]) -> ExceptionalSequence {
        ExceptionalSequence { roots: v.iter().map(|x| d(x)).collect() }
    }

    /// Vertices "1","2" with one arrow 2→1.
    fn a2() -> Quiver {
        Quiver::new(&["1", "2"], &[("2", "1")], false).unwrap()
    }

    fn octahedron() -> (Quiver, DimVector) {
        let v = ["t", "l", "c", "r", "b"];
        let a = [("t", "c"), ("l", "c"), ("r", "c"), ("b", "c")];
        (Quiver::new(&v, &a, false).unwrap(), d(&[1, 1, 2, 1, 1]))
    }

    #[test]
    fn exceptional_examples() {
        let q = a2();
        assert!(is_exceptional_sequence(&q, &[d(&[1, 1]), d(&[1, 0])]).unwrap());
        // Reverse topological order is (1, 2).
        assert!(is_exceptional_sequence(&q, &[d(&[1, 0]), d(&[0, 1])]).unwrap());
        assert!(!is_exceptional_sequence(&q, &[d(&[0, 1]), d(&[1, 0])]).unwrap());
        assert!(!is_exceptional_sequence(&Quiver::kronecker(2), &[d(&[1, 1])]).unwrap());
        assert!(is_exceptional_sequence(&q, &[]).is_err());
    }

    #[test]
    fn braid_moves() {
        let q = a2();
        let s = seq(&[&[1, 0], &[0, 1]]);
        let t = braid_mutate(&q, &s, 1, Direction::Left).unwrap();
        assert_eq!(t, seq(&[&[1, 1], &[1, 0]]));
        assert_eq!(braid_mutate(&q, &t, 1, Direction::Right).unwrap(), s);
        assert_eq!(braid_mutate(&q, &braid_mutate(&q, &s, 1, Direction::Right).unwrap(), 1, Direction::Left).unwrap(), s);
        assert!(braid_mutate(&q, &s, 2, Direction::Left).is_err());
        assert!(braid_mutate(&q, &seq(&[&[0, 1], &[1, 0]]), 1, Direction::Left).is_err());
    }

    #[test]
    fn braid_relation_and_span() {
        let quivers = [
            Quiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3")], false).unwrap(),
            Quiver::new(&["1", "2", "3"], &[("1", "2"), ("1", "3"), ("2", "3")], false).unwrap(),
            Quiver::new(&["1", "2", "3"], &[("1", "2"), ("1", "2"), ("3", "2")], false).unwrap(),
        ];
        for q in &quivers {
            let order = q.topological_order().unwrap();
            let s = ExceptionalSequence { roots: order.iter().rev().map(|&i| q.unit(i)).collect() };
            for dir in [Direction::Left, Direction::Right] {
                let m = |t: &ExceptionalSequence, i| braid_mutate(q, t, i, dir).unwrap();
                let lhs = m(&m(&m(&s, 1), 2), 1);
                let rhs = m(&m(&m(&s, 2), 1), 2);
                assert_eq!(lhs, rhs);
                // The mutated pair spans the same lattice: the change of
                // basis has determinant ±1.
                let t = m(&s, 1);
                let (a, b) = (&s.roots[0], &s.roots[1]);
                let (x, y) = (&t.roots[0], &t.roots[1]);
                let vs = vec![a.0.clone(), b.0.clone()];
                let cx = solve_combination(&vs, &x.0).unwrap();
                let cy = solve_combination(&vs, &y.0).unwrap();
                let det = &cx[0] * &cy[1] - &cx[1] * &cy[0];
                assert!(det.is_integer() && det.abs().is_one());
            }
        }
    }

    #[test]
    fn perp_examples() {
        let q = a2();
        let p = perp_quiver(&q, &seq(&[&[1, 1]]), PerpSide::Right).unwrap();
        assert_eq!(p.simples, vec![d(&[1, 0])]);
        assert_eq!(p.sub_quiver.n(), 1);
        let p = perp_quiver(&q, &seq(&[&[1, 1]]), PerpSide::Left).unwrap();
        assert_eq!(p.simples, vec![d(&[0, 1])]);
        let p = perp_quiver(&q, &seq(&[&[1, 0], &[0, 1]]), PerpSide::Right).unwrap();
        assert_eq!(p.sub_quiver.n(), 0);
        assert_eq!(p.restrict(&d(&[0, 0])), Some(DimVector(vec![])));
    }

    #[test]
    fn t333_perp_embedding() {
        let q = Quiver::star(3, 3, 3);
        // x1 x2 y1 y2 z1 z2 c: the root with 1 on x2, y2, z2 and the center.
        let e = d(&[0, 1, 0, 1, 0, 1, 1]);
        for side in [PerpSide::Right, PerpSide::Left] {
            let p = perp_quiver(&q, &ExceptionalSequence { roots: vec![e.clone()] }, side).unwrap();
            assert_eq!(p.sub_quiver.n(), 6);
            assert!(p.sub_quiver.is_acyclic());
            for s in &p.simples {
                assert!(in_perp(&q, &[e.clone()], side, s));
            }
            let samples = sample_pairs(&p, 2, 24);
            assert!(samples.len() >= 20);
            assert!(check_embedding(&q, &p, &samples).unwrap() >= 20);
            // Schur roots correspond.
            for (b, _) in &samples {
                assert_eq!(classify(&p.sub_quiver, b).tag, classify(&q, &p.embed(b)).tag, "{:?}", b.0);
                assert_eq!(p.restrict(&p.embed(b)).as_ref(), Some(b));
            }
        }
    }

    #[test]
    fn refinement_examples() {
        let q = a2();
        let r = refine_schur_sequence(&q, &[d(&[1, 1]), d(&[1, 0])]).unwrap();
        assert_eq!(r.sequence, seq(&[&[1, 1], &[1, 0]]));
        assert_eq!(r.blocks, vec![1, 2]);

        let t3 = Quiver::kronecker(3);
        let r = refine_schur_sequence(&t3, &[d(&[1, 1])]).unwrap();
        assert_eq!(r.sequence, seq(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.blocks, vec![2]);
        assert_eq!(r.coefficients, vec![vec![1, 1]]);

        assert!(refine_schur_sequence(&t3, &[d(&[1, 0]), d(&[0, 1])]).is_err());
    }

    #[test]
    fn octahedron_wall_refinements() {
        let (q, a) = octahedron();
        for w in walls(&q, &a).unwrap() {
            let s = w.sequence();
            let r = refine_schur_sequence(&q, &s).unwrap();
            // Every wall root here is real, so the pair is already exceptional.
            assert_eq!(r.sequence.roots, s);
            assert_eq!(r.blocks, vec![1, 2]);
            // Appending the perpendicular simples in reverse topological
            // order completes it to a full exceptional sequence.
            let p = perp_quiver(&q, &r.sequence, PerpSide::Right).unwrap();
            let mut full = r.sequence.roots.clone();
            full.extend(p.simples.iter().rev().cloned());
            assert_eq!(full.len(), 5);
            assert!(is_exceptional_sequence(&q, &full).unwrap());
            let again = refine_schur_sequence(&q, &full).unwrap();
            assert_eq!(again.sequence.roots, full);
            assert_eq!(again.blocks, (1..=5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn every_face_sequence_refines() {
        let hex = {
            let v = ["t", "l", "c", "r"];
            let a = [("t", "c"), ("t", "c"), ("l", "c"), ("l", "c"), ("r", "c"), ("r", "c")];
            (Quiver::new(&v, &a, false).unwrap(), d(&[1, 1, 3, 1]))
        };
        for (q, a) in [octahedron(), hex] {
            for r in 1..a.support().len() {
                for f in enumerate_faces(&q, &a, r).unwrap() {
                    let s = f.sequence();
                    let out = refine_schur_sequence(&q, &s).unwrap();
                    let mut start = 0;
                    for (j, &end) in out.blocks.iter().enumerate() {
                        let sum = out.sequence.roots[start..end]
                            .iter()
                            .zip(&out.coefficients[j])
                            .fold(DimVector::zero(q.n()), |acc, (x, &c)| acc.add(&x.scale(c as i64)));
                        assert_eq!(sum, s[j]);
                        start = end;
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_identities_on_square_perp() {
        let v = ["tl", "tr", "bl", "br"];
        let arrows = [("tl", "tr"), ("tl", "br"), ("tl", "bl"), ("tr", "br"), ("bl", "br"), ("bl", "tr")];
        let q = Quiver::new(&v, &arrows, false).unwrap();
        let e = d(&[0, 0, 1, 1]);
        let p = perp_quiver(&q, &ExceptionalSequence { roots: vec![e] }, PerpSide::Right).unwrap();
        assert_eq!(p.sub_quiver.n(), 3);
        let samples = sample_pairs(&p, 2, 30);
        check_embedding(&q, &p, &samples).unwrap();
    }
}
