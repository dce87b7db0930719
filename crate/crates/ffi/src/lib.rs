//! C ABI over `quiver_si`.
//!
//! Quivers are opaque handles created by [`qsi_quiver_parse`] and released
//! with [`qsi_quiver_free`]. Every function returns a [`QsiStatus`]; on
//! failure the message is available from [`qsi_last_error`] until the next
//! call on the same thread. Vectors are `int64_t` arrays in vertex order.
//! Strings handed out by the library are freed with [`qsi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use quiver_si::{homext, lr, siweights, stability, DimVector, Error, Partition, Quiver, Weight};

/// Result codes. `QSI_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed quiver or vector input.
    Input = 3,
    /// A documented precondition failed; the message names it.
    Precondition = 4,
    /// A search cap was hit.
    Cap = 5,
    /// An internal consistency check failed.
    Theory = 6,
    /// The result does not fit the output type.
    Overflow = 7,
    Panic = 8,
}

/// Opaque quiver handle.
pub struct QsiQuiver(Quiver);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QsiStatus {
    match e {
        Error::Precondition { .. } | Error::OrientedCycle => QsiStatus::Precondition,
        Error::Cap { .. } => QsiStatus::Cap,
        Error::Theory(_) => QsiStatus::Theory,
        _ => QsiStatus::Input,
    }
}

struct Fail(QsiStatus, String);

type Res<T> = std::result::Result<T, Fail>;

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, turning errors and panics into a status plus the thread's
/// last-error message.
fn guard(f: impl FnOnce() -> Res<()>) -> QsiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsiStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {m}"));
            QsiStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(QsiStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(QsiStatus::InvalidUtf8, e.to_string()))
}

unsafe fn quiver_arg<'a>(q: *const QsiQuiver) -> Res<&'a Quiver> {
    q.as_ref().map(|h| &h.0).ok_or_else(null)
}

/// Reads `n` entries; `n` must equal the vertex count when `q` is given.
unsafe fn vec_arg(p: *const i64, n: usize, q: Option<&Quiver>) -> Res<Vec<i64>> {
    if let Some(q) = q {
        if n != q.n() {
            return Err(Fail(QsiStatus::Input, format!("expected {} entries, got {n}", q.n())));
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, n).to_vec())
}

unsafe fn write<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn to_u64(v: &num_bigint::BigUint) -> Res<u64> {
    v.to_u64().ok_or_else(|| Fail(QsiStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

/// Message for the last failure on this thread, or NULL. Owned by the
/// library; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qsi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qsi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses quiver JSON (`{"vertices": [...], "arrows": [{"tail","head"}],
/// "allows_cycles": bool}`) into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_quiver_parse(json: *const c_char, out: *mut *mut QsiQuiver) -> QsiStatus {
    guard(|| {
        let q = Quiver::parse(str_arg(json)?)?;
        write(out, Box::into_raw(Box::new(QsiQuiver(q))))
    })
}

/// Star quiver T_{p,q,r}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_quiver_star(p: usize, q: usize, r: usize, out: *mut *mut QsiQuiver) -> QsiStatus {
    guard(|| {
        if p == 0 || q == 0 || r == 0 {
            return Err(Fail(QsiStatus::Precondition, "arm lengths are at least 1".into()));
        }
        write(out, Box::into_raw(Box::new(QsiQuiver(Quiver::star(p, q, r)))))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `q` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qsi_quiver_free(q: *mut QsiQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsi_quiver_vertex_count(q: *const QsiQuiver) -> usize {
    q.as_ref().map_or(0, |h| h.0.n())
}

/// The quiver as JSON; free with [`qsi_string_free`].
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_quiver_to_json(q: *const QsiQuiver, out: *mut *mut c_char) -> QsiStatus {
    guard(|| {
        let text = quiver_arg(q)?.to_json().to_string();
        write(out, CString::new(text).expect("JSON has no NUL").into_raw())
    })
}

unsafe fn pair_op<T>(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut T,
    f: impl FnOnce(&Quiver, &DimVector, &DimVector) -> Res<T>,
) -> QsiStatus {
    guard(|| {
        let q = quiver_arg(q)?;
        let a = DimVector(vec_arg(alpha, n, Some(q))?);
        let b = DimVector(vec_arg(beta, n, Some(q))?);
        write(out, f(q, &a, &b)?)
    })
}

/// ⟨α,β⟩.
///
/// # Safety
/// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_euler_form(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut i64,
) -> QsiStatus {
    pair_op(q, alpha, beta, n, out, |q, a, b| Ok(q.euler_form(a, b)?))
}

/// Generic ext(α,β).
///
/// # Safety
/// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_ext_generic(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut i64,
) -> QsiStatus {
    pair_op(q, alpha, beta, n, out, |q, a, b| Ok(homext::ext_generic(q, a, b)?))
}

/// Generic hom(α,β).
///
/// # Safety
/// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_hom_generic(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut i64,
) -> QsiStatus {
    pair_op(q, alpha, beta, n, out, |q, a, b| Ok(homext::hom_generic(q, a, b)?))
}

/// Whether a general representation of dimension α embeds in one of
/// dimension β.
///
/// # Safety
/// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_embeds(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut bool,
) -> QsiStatus {
    pair_op(q, alpha, beta, n, out, |q, a, b| Ok(homext::embeds(q, a, b)?))
}

/// α∘β; requires ⟨α,β⟩ = 0.
///
/// # Safety
/// `q` must be a live handle, `alpha` and `beta` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_circ(
    q: *const QsiQuiver,
    alpha: *const i64,
    beta: *const i64,
    n: usize,
    out: *mut u64,
) -> QsiStatus {
    pair_op(q, alpha, beta, n, out, |q, a, b| Ok(to_u64(&siweights::circ(q, a, b)?)?))
}

/// dim SI(Q,β)_σ.
///
/// # Safety
/// `q` must be a live handle, `beta` and `sigma` must point to `n` readable
/// entries and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_si_dim(
    q: *const QsiQuiver,
    beta: *const i64,
    sigma: *const i64,
    n: usize,
    out: *mut u64,
) -> QsiStatus {
    guard(|| {
        let q = quiver_arg(q)?;
        let b = DimVector(vec_arg(beta, n, Some(q))?);
        let s = Weight(vec_arg(sigma, n, Some(q))?);
        write(out, to_u64(&siweights::si_dim(q, &b, &s)?)?)
    })
}

/// σ-semistability and σ-stability of α on an acyclic quiver.
///
/// # Safety
/// `q` must be a live handle, `alpha` and `sigma` must point to `n`
/// readable entries and both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_stability(
    q: *const QsiQuiver,
    alpha: *const i64,
    sigma: *const i64,
    n: usize,
    semistable: *mut bool,
    stable: *mut bool,
) -> QsiStatus {
    guard(|| {
        let q = quiver_arg(q)?;
        let a = DimVector(vec_arg(alpha, n, Some(q))?);
        let s = Weight(vec_arg(sigma, n, Some(q))?);
        let semi = stability::is_semistable_dim(q, &a, &s)?;
        let st = semi && stability::is_stable_dim(q, &a, &s)?;
        write(semistable, semi)?;
        write(stable, st)
    })
}

/// Littlewood-Richardson coefficient c_{λ,μ}^ν for three weakly decreasing
/// sequences of common length `len`.
///
/// # Safety
/// The three arrays must hold `len` readable entries and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_lr_coefficient(
    lam: *const i64,
    mu: *const i64,
    nu: *const i64,
    len: usize,
    out: *mut u64,
) -> QsiStatus {
    guard(|| {
        let p = |x: *const i64| -> Res<Partition> { Ok(Partition::new(vec_arg(x, len, None)?)?) };
        write(out, lr::lr_coefficient(&p(lam)?, &p(mu)?, &p(nu)?)?)
    })
}

/// Runs one command-line invocation (`argv[0]` is the verb; no program
/// name). Writes the exit code (0, 1 or 2) and the JSON document printed
/// on stdout, or the usage message when there is none. Free `out_json`
/// with [`qsi_string_free`]. Returns `QSI_STATUS_OK` whenever the command
/// ran, whatever its exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; outputs must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qsi_run(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut i32,
    out_json: *mut *mut c_char,
) -> QsiStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(null());
        }
        let mut args = vec!["quiver-si".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        let o = quiver_si::cli::run(args);
        let text = if o.stdout.is_empty() { o.stderr } else { o.stdout };
        write(exit_code, o.code)?;
        write(out_json, CString::new(text.replace('\0', " ")).expect("nul bytes removed").into_raw())
    })
}
