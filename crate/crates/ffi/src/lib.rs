//! C interface to `khoma`.
//!
//! Objects are opaque handles created by `khoma_*` constructors and released
//! with the matching `*_free`. Every fallible call returns a [`KhomaStatus`];
//! on failure `khoma_last_error_message` describes the error for the calling
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with `khoma_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use khoma::khovanov::Bigrade;
use khoma::{render, Diagram, Error, HomologyTable, LaurentPolynomial};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KhomaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Overflow = 5,
    Panic = 6,
}

/// Layout for `khoma_homology_render`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KhomaFormat {
    Json = 0,
    Csv = 1,
    Markdown = 2,
    Text = 3,
}

/// A link diagram.
pub struct KhomaDiagram(Diagram);

/// A Laurent polynomial in `A`.
pub struct KhomaPolynomial(LaurentPolynomial);

/// Nontrivial homology groups by bigrade.
pub struct KhomaHomologyTable(HomologyTable);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(KhomaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::EdgeMultiplicity { .. } | Error::UnknownEdge(_) => KhomaStatus::Parse,
            Error::Overflow => KhomaStatus::Overflow,
            _ => KhomaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KhomaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            KhomaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal panic: {msg}"));
            KhomaStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(KhomaStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Failure(KhomaStatus::InvalidArgument, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next `khoma_*` call on the same thread.
#[no_mangle]
pub extern "C" fn khoma_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn khoma_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn khoma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a PD code such as `"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"`.
///
/// # Safety
/// `pd` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_diagram_parse(pd: *const c_char, out: *mut *mut KhomaDiagram) -> KhomaStatus {
    guard(|| {
        if pd.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(pd)
            .to_str()
            .map_err(|e| Failure(KhomaStatus::InvalidUtf8, e.to_string()))?;
        write_out(out, KhomaDiagram(Diagram::parse(text)?))
    })
}

/// The standard diagram of the torus link `T(2,n)`, `n ≥ 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_diagram_torus(n: u32, out: *mut *mut KhomaDiagram) -> KhomaStatus {
    guard(|| write_out(out, KhomaDiagram(khoma::diagram::torus_2n(n)?)))
}

/// Number of crossings; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn khoma_diagram_crossing_count(d: *const KhomaDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.crossing_count())
}

/// The diagram as PD text.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_diagram_to_string(d: *const KhomaDiagram, out: *mut *mut c_char) -> KhomaStatus {
    guard(|| write_string(out, deref(d)?.0.to_string()))
}

/// # Safety
/// `d` must be null or a live diagram handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn khoma_diagram_free(d: *mut KhomaDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Kauffman bracket: reduced (`⟨○⟩ = 1`) or unreduced (`[∅] = 1`).
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_bracket(
    d: *const KhomaDiagram,
    unreduced: bool,
    out: *mut *mut KhomaPolynomial,
) -> KhomaStatus {
    guard(|| {
        let d = &deref(d)?.0;
        let p = if unreduced { khoma::bracket_unreduced(d)? } else { khoma::bracket_reduced(d)? };
        write_out(out, KhomaPolynomial(p))
    })
}

/// Coefficient of `A^exponent`; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn khoma_polynomial_coefficient(p: *const KhomaPolynomial, exponent: i64) -> i64 {
    p.as_ref().map_or(0, |p| p.0.coefficient(exponent))
}

/// Text form, e.g. `A^-7 - A^-3 - A^5`.
///
/// # Safety
/// `p` must be a live polynomial handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_polynomial_to_string(p: *const KhomaPolynomial, out: *mut *mut c_char) -> KhomaStatus {
    guard(|| write_string(out, deref(p)?.0.to_string()))
}

/// JSON object from exponent strings to coefficients.
///
/// # Safety
/// `p` must be a live polynomial handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_polynomial_to_json(p: *const KhomaPolynomial, out: *mut *mut c_char) -> KhomaStatus {
    guard(|| {
        let json = serde_json::to_string(&deref(p)?.0).expect("polynomial serialises");
        write_string(out, json)
    })
}

/// # Safety
/// `p` must be null or a live polynomial handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn khoma_polynomial_free(p: *mut KhomaPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Framed Khovanov homology of a diagram.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology(d: *const KhomaDiagram, out: *mut *mut KhomaHomologyTable) -> KhomaStatus {
    guard(|| write_out(out, KhomaHomologyTable(khoma::homology_table(&deref(d)?.0)?)))
}

/// Number of nontrivial groups; 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology_len(t: *const KhomaHomologyTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// The group at `(a, b)`: its free rank, and up to `capacity` torsion
/// orders written to `torsion` (may be null when `capacity` is 0).
/// `torsion_len` receives the full number of torsion factors.
///
/// # Safety
/// `t` must be a live table handle; `free_rank` and `torsion_len` must be
/// writable; `torsion` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology_get(
    t: *const KhomaHomologyTable,
    a: i64,
    b: i64,
    free_rank: *mut usize,
    torsion: *mut u64,
    capacity: usize,
    torsion_len: *mut usize,
) -> KhomaStatus {
    guard(|| {
        let group = deref(t)?.0.get(Bigrade::new(a, b));
        if free_rank.is_null() || torsion_len.is_null() || (torsion.is_null() && capacity > 0) {
            return Err(null());
        }
        *free_rank = group.free;
        *torsion_len = group.torsion.len();
        for (i, &order) in group.torsion.iter().take(capacity).enumerate() {
            *torsion.add(i) = order;
        }
        Ok(())
    })
}

/// Bigrade of the `index`-th entry, ordered by `b` descending then `a`
/// ascending.
///
/// # Safety
/// `t` must be a live table handle; `a` and `b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology_bigrade(
    t: *const KhomaHomologyTable,
    index: usize,
    a: *mut i64,
    b: *mut i64,
) -> KhomaStatus {
    guard(|| {
        let entries = deref(t)?.0.entries();
        let (g, _) = entries.get(index).ok_or_else(|| {
            Failure(KhomaStatus::InvalidArgument, format!("index {index} out of range for {} entries", entries.len()))
        })?;
        if a.is_null() || b.is_null() {
            return Err(null());
        }
        *a = g.a;
        *b = g.b;
        Ok(())
    })
}

/// The table as JSON, CSV, markdown or aligned text.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology_render(
    t: *const KhomaHomologyTable,
    format: KhomaFormat,
    out: *mut *mut c_char,
) -> KhomaStatus {
    guard(|| {
        let t = &deref(t)?.0;
        let s = match format {
            KhomaFormat::Json => t.to_json(),
            KhomaFormat::Csv => render::to_csv(t),
            KhomaFormat::Markdown => render::to_markdown(t),
            KhomaFormat::Text => render::to_text(t),
        };
        write_string(out, s)
    })
}

/// # Safety
/// `t` must be null or a live table handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn khoma_homology_free(t: *mut KhomaHomologyTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
