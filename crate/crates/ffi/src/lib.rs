//! C ABI for the expansion engine.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Strings returned by the library are
//! NUL-terminated UTF-8 and must be released with [`kam_string_free`].
//! Every fallible call returns a [`KamStatus`]; the message of the most
//! recent failure on the calling thread is available from
//! [`kam_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kamiltonian::config::ModelConfig;
use kamiltonian::diagram::enumerate_paths;
use kamiltonian::engine::{kamiltonian, EngineError, GaugeChoice};
use kamiltonian::freelie::{generate_closed_form, render_series, FreeLieError, RenderOptions, Target, DEFAULT_MAX_ORDER};
use kamiltonian::render::{self, Style};
use kamiltonian::serial::Expansion;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KamStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    EngineError = 4,
    OrderLimit = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KamFormat {
    Text = 0,
    Latex = 1,
    Json = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KamTarget {
    K = 0,
    S = 1,
}

/// A parsed model file.
pub struct KamModel {
    config: ModelConfig,
}

/// An expansion result: `K^(0..N)` and `S^(1..N+1)`.
pub struct KamExpansion {
    doc: Expansion,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(KamStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KamStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KamStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            KamStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(KamStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(KamStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KamStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(KamStatus::InvalidArgument, "result contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn engine_fail(e: &EngineError) -> Fail {
    match e.root() {
        EngineError::OrderLimit { .. } => Fail(KamStatus::OrderLimit, e.to_string()),
        _ => Fail(KamStatus::EngineError, e.to_string()),
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kam_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kam_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a model definition. On a parse error the message carries the
/// line and column.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_model_parse(src: *const c_char, out: *mut *mut KamModel) -> KamStatus {
    guard(|| {
        let src = str_arg(src, "src")?;
        if out.is_null() {
            return Err(Fail(KamStatus::NullArgument, "out is null".into()));
        }
        let config = ModelConfig::parse(src).map_err(|e| Fail(KamStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(KamModel { config }));
        Ok(())
    })
}

/// Number of Hermiticity warnings raised while parsing.
///
/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kam_model_warning_count(model: *const KamModel) -> usize {
    model.as_ref().map_or(0, |m| m.config.warnings.len())
}

/// # Safety
/// `model` must come from [`kam_model_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kam_model_free(model: *mut KamModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Runs the expansion to `order`. `gauge` is `"van-vleck"` or
/// `"floquet-magnus"` (null means the model's gauge, else van Vleck); `t0`
/// is an optional rational fraction of the period.
///
/// # Safety
/// `model` must be a live handle, string arguments NUL-terminated or null,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_expand(
    model: *const KamModel,
    order: u32,
    gauge: *const c_char,
    t0: *const c_char,
    out: *mut *mut KamExpansion,
) -> KamStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(|| Fail(KamStatus::NullArgument, "model is null".into()))?;
        if out.is_null() {
            return Err(Fail(KamStatus::NullArgument, "out is null".into()));
        }
        let t0 = opt_str_arg(t0, "t0")?;
        let g = match opt_str_arg(gauge, "gauge")? {
            Some(name) => GaugeChoice::parse(name, t0).map_err(|e| Fail(KamStatus::InvalidArgument, e.to_string()))?,
            None => m.config.gauge.clone().unwrap_or_default(),
        };
        let order = order as usize;
        let cap = std::env::var("KAMILTONIAN_MAX_ORDER").ok().and_then(|v| v.parse().ok()).unwrap_or(6);
        if order > cap {
            return Err(engine_fail(&EngineError::OrderLimit { requested: order, max: cap }));
        }
        let tag = m.config.algebra;
        let r = kamiltonian(&tag.bracket_kind(), &m.config.hamiltonian, order, &g).map_err(|e| engine_fail(&e))?;
        *out = Box::into_raw(Box::new(KamExpansion { doc: Expansion::from_result(&r, tag) }));
        Ok(())
    })
}

/// Reads an expansion back from its JSON form.
///
/// # Safety
/// `json` must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_expansion_from_json(json: *const c_char, out: *mut *mut KamExpansion) -> KamStatus {
    guard(|| {
        let s = str_arg(json, "json")?;
        if out.is_null() {
            return Err(Fail(KamStatus::NullArgument, "out is null".into()));
        }
        let doc = Expansion::parse(s).map_err(|e| Fail(KamStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(KamExpansion { doc }));
        Ok(())
    })
}

/// Expansion order N of a result.
///
/// # Safety
/// `x` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn kam_expansion_order(x: *const KamExpansion) -> u32 {
    x.as_ref().map_or(0, |x| x.doc.order as u32)
}

/// Renders the whole result.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_expansion_render(x: *const KamExpansion, format: KamFormat, out: *mut *mut c_char) -> KamStatus {
    guard(|| {
        let x = x.as_ref().ok_or_else(|| Fail(KamStatus::NullArgument, "expansion is null".into()))?;
        let s = match format {
            KamFormat::Json => x.doc.to_string_pretty(),
            KamFormat::Text => render::expansion(&x.doc.k, &x.doc.s, Style::TEXT),
            KamFormat::Latex => render::expansion(&x.doc.k, &x.doc.s, Style::LATEX),
        };
        write_string(out, s)
    })
}

/// Renders `K^(n)` alone.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_expansion_render_k(x: *const KamExpansion, n: u32, format: KamFormat, out: *mut *mut c_char) -> KamStatus {
    guard(|| {
        let x = x.as_ref().ok_or_else(|| Fail(KamStatus::NullArgument, "expansion is null".into()))?;
        let k = x.doc.k.get(n as usize).ok_or_else(|| Fail(KamStatus::InvalidArgument, format!("order {n} not computed")))?;
        let s = match format {
            KamFormat::Json => serde_json::to_string(&kamiltonian::serial::element_to_json(k)).expect("plain data serializes"),
            KamFormat::Text => render::element(k, Style::TEXT),
            KamFormat::Latex => render::element(k, Style::LATEX),
        };
        write_string(out, s)
    })
}

/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kam_expansion_free(x: *mut KamExpansion) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Closed-form van Vleck expansion of order `order` for `K` or `S/(iħ)`,
/// rendered as text or LaTeX, one order per line.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_closed_form(order: u32, target: KamTarget, format: KamFormat, out: *mut *mut c_char) -> KamStatus {
    guard(|| {
        let t = match target {
            KamTarget::K => Target::K,
            KamTarget::S => Target::S,
        };
        let series = generate_closed_form(order as usize, t, &GaugeChoice::VanVleck, DEFAULT_MAX_ORDER).map_err(|e| match e {
            FreeLieError::OrderLimit { .. } => Fail(KamStatus::OrderLimit, e.to_string()),
            e => Fail(KamStatus::EngineError, e.to_string()),
        })?;
        let s = match format {
            KamFormat::Json => {
                let v: Vec<_> = series.iter().map(kamiltonian::serial::freelie_to_json).collect();
                serde_json::to_string(&v).expect("plain data serializes")
            }
            f => {
                let opts = RenderOptions { latex: f == KamFormat::Latex, divide_by_i_hbar: t == Target::S, show_constraints: false };
                series.iter().map(|x| render_series(x, &opts) + "\n").collect()
            }
        };
        write_string(out, s)
    })
}

/// Number of grid paths contributing to `K^(n)_[k]`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kam_diagram_path_count(n: u32, k: u32, out: *mut usize) -> KamStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(KamStatus::NullArgument, "out is null".into()));
        }
        let p = enumerate_paths(n as usize, k as usize).map_err(|e| Fail(KamStatus::InvalidArgument, e.to_string()))?;
        *out = p.len();
        Ok(())
    })
}
