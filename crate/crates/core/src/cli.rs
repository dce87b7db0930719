//! The `quiver-si` command line: one verb per library operation, JSON in
//! and JSON out.
//!
//! Every successful run prints `{"result", "inputs_echo", "provenance"}`.
//! Exit codes: 0 success, 1 domain error (the violated precondition is
//! named in the output), 2 usage error.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exceptional::{self, Direction, ExceptionalSequence, PerpSide};
use crate::faces::{self, FaceDescriptor};
use crate::field::DEFAULT_PRIME;
use crate::homext;
use crate::horn::{self, HornMode, TripleFlagData};
use crate::lr::{lr_coefficient, sl_invariant_dim};
use crate::oracle;
use crate::partition::Partition;
use crate::quiver::{DimVector, Quiver, Weight};
use crate::siweights;
use crate::stability;

#[derive(Parser, Debug)]
#[command(name = "quiver-si", version, about = "Exact combinatorics of quiver semi-invariants")]
pub struct Cli {
    /// Worker threads for face enumeration and scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Quiver JSON, inline or a file path.
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    alpha: String,
}

#[derive(Args, Debug)]
pub struct SiArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    sigma: String,
    /// Largest multiple m for the series.
    #[arg(long, default_value_t = 3)]
    m_max: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OracleKind {
    /// Minimum of dim ker d over random pairs: (hom, ext).
    Ext,
    /// Rank of the det matrix: α∘β.
    Det,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long, value_enum, default_value = "ext")]
    kind: OracleKind,
    /// Random trials (ext) or samples per side (det).
    #[arg(long, default_value_t = 4)]
    trials: usize,
    #[arg(long, required = true)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    sigma: String,
    /// Second weight; with it stable-decomp uses the σ:τ refinement.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
}

#[derive(Args, Debug)]
pub struct FacesArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    alpha: String,
    /// Face codimension c; the faces have c+1 roots.
    #[arg(long)]
    codim: usize,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(long)]
    quiver: String,
    /// JSON array of dimension vectors.
    #[arg(long)]
    roots: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DirArg {
    Left,
    Right,
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    roots: String,
    /// 1-based position i of the pair (ε_i, ε_{i+1}).
    #[arg(long)]
    index: usize,
    #[arg(long, value_enum)]
    direction: DirArg,
}

#[derive(Args, Debug)]
pub struct PerpArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    roots: String,
    #[arg(long, value_enum, default_value = "right")]
    side: DirArg,
}

#[derive(Args, Debug)]
pub struct LrArgs {
    /// Pads all three partitions with zeros to this length.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    lam: String,
    /// A partition, or `same` for λ.
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    /// Compute through the triple flag quiver instead of the tableau rule.
    #[arg(long, conflicts_with = "sl")]
    via_quiver: bool,
    /// Compute c̃ = dim (V_λ⊗V_μ⊗V_ν)^{SL_n} with n the common length.
    #[arg(long)]
    sl: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Nonzero,
    Minimal,
}

#[derive(Args, Debug)]
pub struct HornArgs {
    #[arg(long)]
    n: usize,
    /// Subset size; all 0 < r < n when omitted.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "minimal")]
    mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct WallArgs {
    #[arg(long)]
    n: usize,
    /// β₁ on T_{n,n,n}: an object keyed by vertex (x1…, y1…, z1…, c) or
    /// an array in that order.
    #[arg(long)]
    beta1: String,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[arg(long)]
    lam: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    #[arg(long)]
    i: String,
    #[arg(long)]
    j: String,
    #[arg(long)]
    k: String,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 6)]
    size_bound: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ⟨α,β⟩.
    Euler(PairArgs),
    /// Generic ext(α,β).
    Ext(PairArgs),
    /// Generic hom(α,β).
    Hom(PairArgs),
    /// α ↪ β.
    Embeds(PairArgs),
    /// Schur-root classification of α.
    Schur(DimArgs),
    /// Canonical decomposition of α.
    Candecomp(DimArgs),
    /// dim SI(Q,β)_σ.
    SiDim(SiArgs),
    /// α∘β.
    Circ(PairArgs),
    /// dim SI(Q,β)_{mσ} for m = 0..=m_max.
    SiSeries(SiArgs),
    /// Randomized linear-algebra oracle (needs --seed).
    Oracle(OracleArgs),
    /// σ-semistability of α (quivers with cycles go through the bipartite double).
    Semistable(WeightArgs),
    /// σ-stability of α.
    Stable(WeightArgs),
    /// σ-stable (or σ:τ) decomposition of α.
    StableDecomp(WeightArgs),
    /// Harder-Narasimhan type of α for slope σ/τ.
    HnType(WeightArgs),
    /// Whether α is the dimension of a simple representation (cycles allowed).
    SimpleDim(DimArgs),
    /// Walls of ℝ₊Σ(Q,α).
    Walls(DimArgs),
    /// Faces of ℝ₊Σ(Q,α) of a given codimension.
    Faces(FacesArgs),
    /// Extremal rays of ℝ₊Σ(Q,α) with their primitive weights.
    Rays(DimArgs),
    /// dim SI(Q,α)_{mσ} along an extremal ray.
    RaySeries(WeightArgs),
    /// Whether the roots form an exceptional sequence.
    ExcCheck(RootsArgs),
    /// Braid mutation of an exceptional sequence.
    Braid(BraidArgs),
    /// Perpendicular-category quiver of an exceptional sequence.
    Perp(PerpArgs),
    /// Exceptional refinement of a Schur sequence.
    Refine(RootsArgs),
    /// Littlewood-Richardson coefficient c_{λ,μ}^ν.
    Lr(LrArgs),
    /// Horn triples (I,J,K).
    Horn(HornArgs),
    /// The Klyachko-cone inequality of a wall root β₁.
    WallIjk(WallArgs),
    /// The product formula on a wall.
    ProductCheck(ProductArgs),
    /// Saturation, Fulton, jump-bound and cross-engine scan.
    Scan(ScanArgs),
}

enum Fail {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::VertexSet(_) | Error::DanglingEndpoint(_) | Error::DuplicateVertex(_) => {
                Fail::Usage(e.to_string())
            }
            e => Fail::Domain(e),
        }
    }
}


/// Inline JSON when the argument starts with `{` or `[`, otherwise a path.
fn load_text(arg: &str) -> std::result::Result<String, Fail> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Fail::Usage(format!("cannot read `{arg}`: {e}")))
    }
}

fn load_json(arg: &str) -> std::result::Result<Value, Fail> {
    let text = load_text(arg)?;
    serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("invalid JSON in `{arg}`: {e}")))
}

fn load_quiver(arg: &str) -> std::result::Result<Quiver, Fail> {
    Ok(Quiver::parse(&load_text(arg)?)?)
}

/// A vertex-keyed object, or an array in vertex order.
fn load_vector(q: &Quiver, arg: &str) -> std::result::Result<Vec<i64>, Fail> {
    let v = load_json(arg)?;
    if let Value::Array(xs) = &v {
        let parts: Option<Vec<i64>> = xs.iter().map(Value::as_i64).collect();
        let parts = parts.ok_or_else(|| Fail::Usage("vector entries must be integers".into()))?;
        if parts.len() != q.n() {
            return Err(Fail::Usage(format!("expected {} entries, got {}", q.n(), parts.len())));
        }
        return Ok(parts);
    }
    Ok(q.vector_from_json(&v)?)
}

fn load_dim(q: &Quiver, arg: &str) -> std::result::Result<DimVector, Fail> {
    let d = DimVector(load_vector(q, arg)?);
    q.check_dim(&d)?;
    Ok(d)
}

fn load_weight(q: &Quiver, arg: &str) -> std::result::Result<Weight, Fail> {
    Ok(Weight(load_vector(q, arg)?))
}

fn load_roots(q: &Quiver, arg: &str) -> std::result::Result<Vec<DimVector>, Fail> {
    match load_json(arg)? {
        Value::Array(xs) => xs.iter().map(|x| load_dim(q, &x.to_string())).collect(),
        _ => Err(Fail::Usage("--roots must be a JSON array of vertex-keyed objects".into())),
    }
}

fn load_ints(arg: &str) -> std::result::Result<Vec<i64>, Fail> {
    serde_json::from_value(load_json(arg)?).map_err(|e| Fail::Usage(format!("expected an integer array: {e}")))
}

fn load_partition(arg: &str, n: Option<usize>) -> std::result::Result<Partition, Fail> {
    let p = Partition::new(load_ints(arg)?)?;
    Ok(match n {
        Some(n) => p.pad(n)?,
        None => p,
    })
}

fn load_set(arg: &str) -> std::result::Result<Vec<usize>, Fail> {
    serde_json::from_value(load_json(arg)?).map_err(|e| Fail::Usage(format!("expected an index array: {e}")))
}

fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn dims(q: &Quiver, ds: &[DimVector]) -> Value {
    Value::Array(ds.iter().map(|d| q.vector_to_json(&d.0)).collect())
}

fn face_json(q: &Quiver, f: &FaceDescriptor) -> Value {
    json!({
        "roots": dims(q, &f.roots),
        "coefficients": f.coefficients,
        "codim": f.codim,
        "certificate": f.certificate,
        "restricted_to_support": f.restricted_to_support,
    })
}

fn faces_json(q: &Quiver, fs: &[FaceDescriptor]) -> Value {
    Value::Array(fs.iter().map(|f| face_json(q, f)).collect())
}

fn factors_json(q: &Quiver, d: &stability::StableDecomposition) -> Value {
    json!({
        "factors": d.factors.iter().map(|(r, c)| json!({"dim": q.vector_to_json(&r.0), "multiplicity": c})).collect::<Vec<_>>(),
        "certificate": d.certificate,
    })
}

struct Echo(Map<String, Value>);

impl Echo {
    fn new(verb: &str) -> Self {
        let mut m = Map::new();
        m.insert("verb".into(), json!(verb));
        Echo(m)
    }

    /// Inline JSON arguments are echoed parsed, paths verbatim.
    fn arg(&mut self, key: &str, raw: &str) -> &mut Self {
        let t = raw.trim_start();
        let v = if t.starts_with('{') || t.starts_with('[') {
            serde_json::from_str(raw).unwrap_or_else(|_| json!(raw))
        } else {
            json!(raw)
        };
        self.0.insert(key.into(), v);
        self
    }

    fn val(&mut self, key: &str, v: Value) -> &mut Self {
        self.0.insert(key.into(), v);
        self
    }
}

struct Report {
    result: Value,
    summary: Option<Value>,
    seed: Option<u64>,
    prime: Option<u64>,
}

impl Report {
    fn plain(result: Value) -> Self {
        Report { result, summary: None, seed: None, prime: None }
    }

    fn listing(result: Value) -> Self {
        let count = result.as_array().map_or(0, Vec::len);
        Report { result, summary: Some(json!({ "count": count })), seed: None, prime: None }
    }
}

fn pair(a: &PairArgs, echo: &mut Echo) -> std::result::Result<(Quiver, DimVector, DimVector), Fail> {
    echo.arg("quiver", &a.quiver).arg("alpha", &a.alpha).arg("beta", &a.beta);
    let q = load_quiver(&a.quiver)?;
    let x = load_dim(&q, &a.alpha)?;
    let y = load_dim(&q, &a.beta)?;
    Ok((q, x, y))
}

fn single(a: &DimArgs, echo: &mut Echo) -> std::result::Result<(Quiver, DimVector), Fail> {
    echo.arg("quiver", &a.quiver).arg("alpha", &a.alpha);
    let q = load_quiver(&a.quiver)?;
    let x = load_dim(&q, &a.alpha)?;
    Ok((q, x))
}

fn weighted(a: &WeightArgs, echo: &mut Echo) -> std::result::Result<(Quiver, DimVector, Weight), Fail> {
    echo.arg("quiver", &a.quiver).arg("alpha", &a.alpha).arg("sigma", &a.sigma);
    let q = load_quiver(&a.quiver)?;
    let x = load_dim(&q, &a.alpha)?;
    let s = load_weight(&q, &a.sigma)?;
    Ok((q, x, s))
}

fn require_tau(a: &WeightArgs, q: &Quiver, echo: &mut Echo) -> std::result::Result<Weight, Fail> {
    let t = a.tau.as_deref().ok_or_else(|| Fail::Usage("--tau is required for this verb".into()))?;
    echo.arg("tau", t);
    load_weight(q, t)
}

fn dispatch(cmd: &Command, echo: &mut Echo) -> std::result::Result<Report, Fail> {
    use Command::*;
    let r = match cmd {
        Euler(a) => {
            let (q, x, y) = pair(a, echo)?;
            Report::plain(json!(q.euler_form(&x, &y)?))
        }
        Ext(a) => {
            let (q, x, y) = pair(a, echo)?;
            Report::plain(json!(homext::ext_generic(&q, &x, &y)?))
        }
        Hom(a) => {
            let (q, x, y) = pair(a, echo)?;
            Report::plain(json!(homext::hom_generic(&q, &x, &y)?))
        }
        Embeds(a) => {
            let (q, x, y) = pair(a, echo)?;
            Report::plain(json!(homext::embeds(&q, &x, &y)?))
        }
        Schur(a) => {
            let (q, x) = single(a, echo)?;
            Report::plain(serde_json::to_value(homext::is_schur_root(&q, &x)?).expect("serializes"))
        }
        Candecomp(a) => {
            let (q, x) = single(a, echo)?;
            let d = homext::canonical_decomposition(&q, &x)?;
            let items: Vec<Value> =
                d.summands.iter().map(|(r, c)| json!({"dim": q.vector_to_json(&r.0), "multiplicity": c})).collect();
            Report::listing(Value::Array(items))
        }
        SiDim(a) => {
            echo.arg("quiver", &a.quiver).arg("beta", &a.beta).arg("sigma", &a.sigma);
            let q = load_quiver(&a.quiver)?;
            let (b, s) = (load_dim(&q, &a.beta)?, load_weight(&q, &a.sigma)?);
            Report::plain(big(&siweights::si_dim(&q, &b, &s)?))
        }
        Circ(a) => {
            let (q, x, y) = pair(a, echo)?;
            Report::plain(big(&siweights::circ(&q, &x, &y)?))
        }
        SiSeries(a) => {
            echo.arg("quiver", &a.quiver).arg("beta", &a.beta).arg("sigma", &a.sigma).val("m_max", json!(a.m_max));
            let q = load_quiver(&a.quiver)?;
            let (b, s) = (load_dim(&q, &a.beta)?, load_weight(&q, &a.sigma)?);
            let v = siweights::si_series(&q, &b, &s, a.m_max)?;
            Report::plain(Value::Array(v.iter().map(big).collect()))
        }
        Oracle(a) => {
            echo.arg("quiver", &a.quiver).arg("alpha", &a.alpha).arg("beta", &a.beta);
            echo.val("kind", json!(format!("{:?}", a.kind).to_lowercase())).val("trials", json!(a.trials));
            let q = load_quiver(&a.quiver)?;
            let (x, y) = (load_dim(&q, &a.alpha)?, load_dim(&q, &a.beta)?);
            let result = match a.kind {
                OracleKind::Ext => {
                    let (h, e) = oracle::generic_pair_oracle(&q, &x, &y, a.trials, a.seed, a.prime)?;
                    json!({"hom": h, "ext": e})
                }
                OracleKind::Det => json!({"circ": oracle::det_rank_oracle(&q, &x, &y, a.trials, a.seed, a.prime)?}),
            };
            Report { result, summary: None, seed: Some(a.seed), prime: Some(a.prime) }
        }
        Semistable(a) => {
            let (q, x, s) = weighted(a, echo)?;
            if q.is_acyclic() {
                Report::plain(json!(stability::is_semistable_dim(&q, &x, &s)?))
            } else {
                Report::plain(json!(stability::stability_via_doubling(&q, &x, &s)?.semistable))
            }
        }
        Stable(a) => {
            let (q, x, s) = weighted(a, echo)?;
            if q.is_acyclic() {
                Report::plain(json!(stability::is_stable_dim(&q, &x, &s)?))
            } else {
                Report::plain(json!(stability::stability_via_doubling(&q, &x, &s)?.stable))
            }
        }
        StableDecomp(a) => {
            let (q, x, s) = weighted(a, echo)?;
            match &a.tau {
                None => Report::plain(factors_json(&q, &stability::sigma_stable_decomposition(&q, &x, &s)?)),
                Some(_) => {
                    let t = require_tau(a, &q, echo)?;
                    let d = stability::sigma_tau_stable_decomposition(&q, &x, &s, &t)?;
                    Report::plain(factors_json(&q, &d))
                }
            }
        }
        HnType(a) => {
            let (q, x, s) = weighted(a, echo)?;
            let t = require_tau(a, &q, echo)?;
            let h = stability::hn_type(&q, &x, &s, &t)?;
            let blocks: Vec<Value> = h
                .blocks
                .iter()
                .map(|b| json!({"dim": q.vector_to_json(&b.dim.0), "slope": format!("{}/{}", b.slope.numer(), b.slope.denom())}))
                .collect();
            Report::listing(Value::Array(blocks))
        }
        SimpleDim(a) => {
            let (q, x) = single(a, echo)?;
            Report::plain(json!(stability::is_simple_dim(&q, &x)?))
        }
        Walls(a) => {
            let (q, x) = single(a, echo)?;
            Report::listing(faces_json(&q, &faces::walls(&q, &x)?))
        }
        Faces(a) => {
            echo.arg("quiver", &a.quiver).arg("alpha", &a.alpha).val("codim", json!(a.codim));
            let q = load_quiver(&a.quiver)?;
            let x = load_dim(&q, &a.alpha)?;
            Report::listing(faces_json(&q, &faces::enumerate_faces(&q, &x, a.codim + 1)?))
        }
        Rays(a) => {
            let (q, x) = single(a, echo)?;
            let items: Vec<Value> = faces::ray_weights(&q, &x)?
                .iter()
                .map(|(f, w)| json!({"face": face_json(&q, f), "weight": q.vector_to_json(&w.0)}))
                .collect();
            Report::listing(Value::Array(items))
        }
        RaySeries(a) => {
            let (q, x, s) = weighted(a, echo)?;
            echo.val("m_max", json!(a.m_max));
            let v = faces::ray_series(&q, &x, &s, a.m_max)?;
            Report::plain(Value::Array(v.iter().map(big).collect()))
        }
        ExcCheck(a) => {
            echo.arg("quiver", &a.quiver).arg("roots", &a.roots);
            let q = load_quiver(&a.quiver)?;
            let roots = load_roots(&q, &a.roots)?;
            Report::plain(json!(exceptional::is_exceptional_sequence(&q, &roots)?))
        }
        Braid(a) => {
            echo.arg("quiver", &a.quiver).arg("roots", &a.roots).val("index", json!(a.index));
            echo.val("direction", json!(format!("{:?}", a.direction).to_lowercase()));
            let q = load_quiver(&a.quiver)?;
            let seq = ExceptionalSequence { roots: load_roots(&q, &a.roots)? };
            let dir = match a.direction {
                DirArg::Left => Direction::Left,
                DirArg::Right => Direction::Right,
            };
            Report::plain(dims(&q, &exceptional::braid_mutate(&q, &seq, a.index, dir)?.roots))
        }
        Perp(a) => {
            echo.arg("quiver", &a.quiver).arg("roots", &a.roots);
            echo.val("side", json!(format!("{:?}", a.side).to_lowercase()));
            let q = load_quiver(&a.quiver)?;
            let seq = ExceptionalSequence { roots: load_roots(&q, &a.roots)? };
            let side = match a.side {
                DirArg::Left => PerpSide::Left,
                DirArg::Right => PerpSide::Right,
            };
            let p = exceptional::perp_quiver(&q, &seq, side)?;
            Report::plain(json!({
                "quiver": p.sub_quiver.to_json(),
                "simples": dims(&q, &p.simples),
                "bound": p.bound,
            }))
        }
        Refine(a) => {
            echo.arg("quiver", &a.quiver).arg("roots", &a.roots);
            let q = load_quiver(&a.quiver)?;
            let roots = load_roots(&q, &a.roots)?;
            let r = exceptional::refine_schur_sequence(&q, &roots)?;
            Report::plain(json!({
                "sequence": dims(&q, &r.sequence.roots),
                "blocks": r.blocks,
                "coefficients": r.coefficients,
            }))
        }
        Lr(a) => {
            echo.arg("lam", &a.lam).arg("mu", &a.mu).arg("nu", &a.nu).val("via_quiver", json!(a.via_quiver));
            if let Some(n) = a.n {
                echo.val("n", json!(n));
            }
            let lam = load_partition(&a.lam, a.n)?;
            let mu = if a.mu.trim() == "same" { lam.clone() } else { load_partition(&a.mu, a.n)? };
            let nu = load_partition(&a.nu, a.n)?;
            let v = if a.sl {
                echo.val("sl", json!(true));
                sl_invariant_dim(&lam, &mu, &nu, lam.len() as i64)?
            } else if a.via_quiver {
                horn::lr_via_quiver(&lam, &mu, &nu, lam.len())?
            } else {
                lr_coefficient(&lam, &mu, &nu)?
            };
            Report::plain(json!(v))
        }
        Horn(a) => {
            echo.val("n", json!(a.n)).val("mode", json!(format!("{:?}", a.mode).to_lowercase()));
            let mode = match a.mode {
                ModeArg::Nonzero => HornMode::Nonzero,
                ModeArg::Minimal => HornMode::Minimal,
            };
            let rs: Vec<usize> = match a.r {
                Some(r) => {
                    echo.val("r", json!(r));
                    vec![r]
                }
                None => (1..a.n).collect(),
            };
            let mut triples = Vec::new();
            let mut warning = None;
            for r in rs {
                let l = horn::horn_triples(a.n, r, mode)?;
                triples.extend(l.triples);
                warning = warning.or(l.warning);
            }
            let mut rep = Report::listing(serde_json::to_value(&triples).expect("serializes"));
            if let (Some(w), Some(Value::Object(s))) = (warning, rep.summary.as_mut()) {
                s.insert("warning".into(), json!(w));
            }
            rep
        }
        WallIjk(a) => {
            echo.val("n", json!(a.n)).arg("beta1", &a.beta1);
            let t = TripleFlagData::new(a.n)?;
            let b1 = load_dim(&t.quiver, &a.beta1)?;
            Report::plain(serde_json::to_value(horn::wall_to_ijk(&b1, a.n)?).expect("serializes"))
        }
        ProductCheck(a) => {
            echo.arg("lam", &a.lam).arg("mu", &a.mu).arg("nu", &a.nu).arg("i", &a.i).arg("j", &a.j).arg("k", &a.k);
            let (lam, mu, nu) = (load_partition(&a.lam, None)?, load_partition(&a.mu, None)?, load_partition(&a.nu, None)?);
            let (i, j, k) = (load_set(&a.i)?, load_set(&a.j)?, load_set(&a.k)?);
            let r = horn::product_formula_check(&lam, &mu, &nu, &i, &j, &k)?;
            Report::plain(serde_json::to_value(r).expect("serializes"))
        }
        Scan(a) => {
            echo.val("n", json!(a.n)).val("size_bound", json!(a.size_bound));
            let r = horn::scan_properties(a.n, a.size_bound)?;
            let mut rep = Report::plain(serde_json::to_value(&r).expect("serializes"));
            rep.summary = Some(json!({"violations": r.violations()}));
            rep
        }
    };
    Ok(r)
}

fn verb_name(cmd: &Command) -> String {
    let dbg = format!("{cmd:?}");
    let head = dbg.split('(').next().unwrap_or("");
    // CamelCase to kebab-case.
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.extend(ch.to_lowercase());
    }
    out
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Precondition { name, detail } => json!({"kind": "precondition", "name": name, "detail": detail}),
        Error::Cap { what, limit } => json!({"kind": "cap", "name": what, "limit": limit}),
        Error::Theory(d) => json!({"kind": "theory", "detail": d}),
        Error::OrientedCycle => json!({"kind": "precondition", "name": "acyclic", "detail": e.to_string()}),
        other => json!({"kind": "input", "detail": other.to_string()}),
    }
}

/// Outcome of one invocation: exit code, stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the verb.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(j) = cli.jobs {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    if let Err(e) = siweights::self_test() {
        return Outcome { code: 1, stdout: json!({"error": error_json(&e)}).to_string(), stderr: e.to_string() };
    }
    let verb = verb_name(&cli.command);
    let mut echo = Echo::new(&verb);
    match dispatch(&cli.command, &mut echo) {
        Ok(rep) => {
            let mut doc = Map::new();
            doc.insert("result".into(), rep.result);
            doc.insert("inputs_echo".into(), Value::Object(echo.0));
            doc.insert("provenance".into(), json!({"seed": rep.seed, "prime": rep.prime}));
            if let Some(s) = rep.summary {
                doc.insert("summary".into(), s);
            }
            let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializes");
            Outcome { code: 0, stdout: text + "\n", stderr: String::new() }
        }
        Err(Fail::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {m}\n") },
        Err(Fail::Domain(e)) => {
            let doc = json!({"error": error_json(&e), "inputs_echo": Value::Object(echo.0)});
            let text = serde_json::to_string_pretty(&doc).expect("serializes");
            Outcome { code: 1, stdout: text + "\n", stderr: format!("error: {e}\n") }
        }
    }
}
