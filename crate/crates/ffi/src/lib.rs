//! C ABI over the afsolve engine.
//!
//! Frameworks and extension collections are opaque heap handles released
//! with their `_free` function. Every fallible call returns an
//! [`AfsStatus`]; on failure [`afs_last_error`] describes the problem.
//! Strings handed out by the library are released with [`afs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use afsolve::encodings::{self, EncodingName};
use afsolve::io::{self, OutputStyle};
use afsolve::{ArgumentationFramework, Budget, EndpointMode, Error, ExtensionSet, SemanticsKind};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownArgument = 4,
    IndexOutOfRange = 5,
    BudgetExceeded = 6,
    InvalidValue = 7,
    BufferTooSmall = 8,
    Panic = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfsSemantics {
    ConflictFree = 0,
    Admissible = 1,
    Stable = 2,
    Preferred = 3,
    SemiStable = 4,
    Stage = 5,
}

impl From<AfsSemantics> for SemanticsKind {
    fn from(s: AfsSemantics) -> Self {
        match s {
            AfsSemantics::ConflictFree => SemanticsKind::ConflictFree,
            AfsSemantics::Admissible => SemanticsKind::Admissible,
            AfsSemantics::Stable => SemanticsKind::Stable,
            AfsSemantics::Preferred => SemanticsKind::Preferred,
            AfsSemantics::SemiStable => SemanticsKind::SemiStable,
            AfsSemantics::Stage => SemanticsKind::Stage,
        }
    }
}

/// Opaque framework handle.
pub struct AfsFramework {
    inner: ArgumentationFramework,
}

/// Opaque handle to the extensions of one framework under one semantics.
pub struct AfsExtensions {
    inner: ExtensionSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let c = CString::new(text).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(AfsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::DuplicateArgument(_) => AfsStatus::Parse,
            Error::UnknownArgument(_) => AfsStatus::UnknownArgument,
            Error::IndexOutOfRange { .. } => AfsStatus::IndexOutOfRange,
            Error::BudgetExceeded(_) | Error::Cancelled => AfsStatus::BudgetExceeded,
            Error::InvalidConstant(_) | Error::InvalidSpec(_) | Error::Precondition(_) => {
                AfsStatus::InvalidValue
            }
            _ => AfsStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: AfsStatus, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, message.into()))
}

/// Runs `body`, mapping errors and panics to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AfsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AfsStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AfsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(AfsStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(AfsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(
        || fail(AfsStatus::NullPointer, format!("{what} is null")),
        Ok,
    )
}

fn out_arg<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        fail(AfsStatus::NullPointer, "output pointer is null")
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .or_else(|_| fail(AfsStatus::Internal, "string contains a NUL byte"))
}

fn budget(nodes: u64) -> Budget {
    if nodes == 0 {
        Budget::default()
    } else {
        Budget::new(nodes)
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn afs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn afs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses apx text. With `lenient`, attack endpoints that were never
/// declared become arguments.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_parse_apx(
    text: *const c_char,
    lenient: bool,
    out: *mut *mut AfsFramework,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let text = str_arg(text, "text")?;
        let mode = if lenient {
            EndpointMode::Lenient
        } else {
            EndpointMode::Strict
        };
        let (inner, _) = io::parse_apx(text, mode)?;
        *out = Box::into_raw(Box::new(AfsFramework { inner }));
        Ok(())
    })
}

/// Parses trivial graph format text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_parse_tgf(
    text: *const c_char,
    out: *mut *mut AfsFramework,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let (inner, _) = io::parse_tgf(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(AfsFramework { inner }));
        Ok(())
    })
}

/// Builds a framework from `num_args` arguments and `num_attacks` attacks
/// `attackers[i] -> targets[i]`. `names` may be null, giving `a0`, `a1`, ...
///
/// # Safety
/// Non-null arrays must hold at least the stated number of elements.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_from_arrays(
    num_args: usize,
    names: *const *const c_char,
    attackers: *const usize,
    targets: *const usize,
    num_attacks: usize,
    out: *mut *mut AfsFramework,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let pairs: Vec<(usize, usize)> = if num_attacks == 0 {
            Vec::new()
        } else {
            if attackers.is_null() || targets.is_null() {
                return fail(AfsStatus::NullPointer, "attack arrays are null");
            }
            let from = std::slice::from_raw_parts(attackers, num_attacks);
            let to = std::slice::from_raw_parts(targets, num_attacks);
            from.iter().copied().zip(to.iter().copied()).collect()
        };
        let inner = if names.is_null() {
            if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= num_args || b >= num_args) {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: num_args,
                }
                .into());
            }
            ArgumentationFramework::from_index_pairs(num_args, pairs)
        } else {
            let raw = std::slice::from_raw_parts(names, num_args);
            let names = raw
                .iter()
                .map(|&p| str_arg(p, "argument name").map(str::to_owned))
                .collect::<Result<Vec<_>, _>>()?;
            ArgumentationFramework::from_named_index_pairs(names, pairs)?
        };
        *out = Box::into_raw(Box::new(AfsFramework { inner }));
        Ok(())
    })
}

/// # Safety
/// `af` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_free(af: *mut AfsFramework) {
    if !af.is_null() {
        drop(Box::from_raw(af));
    }
}

/// # Safety
/// `af` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_num_args(af: *const AfsFramework) -> usize {
    af.as_ref().map_or(0, |af| af.inner.len())
}

/// # Safety
/// `af` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_num_attacks(af: *const AfsFramework) -> usize {
    af.as_ref().map_or(0, |af| af.inner.num_attacks())
}

/// Copies the name of argument `index` into a new string.
///
/// # Safety
/// `af` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_arg_name(
    af: *const AfsFramework,
    index: usize,
    out: *mut *mut c_char,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        af.check_index(index)?;
        *out = to_c_string(af.name(index).to_owned())?;
        Ok(())
    })
}

/// # Safety
/// `af` must be a live handle, `name` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_framework_index_of(
    af: *const AfsFramework,
    name: *const c_char,
    out: *mut usize,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        *out = af.lookup(str_arg(name, "name")?)?;
        Ok(())
    })
}

/// Enumerates all extensions. A `budget` of 0 selects the default node
/// budget.
///
/// # Safety
/// `af` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_enumerate(
    af: *const AfsFramework,
    semantics: AfsSemantics,
    budget_nodes: u64,
    out: *mut *mut AfsExtensions,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        let inner = afsolve::enumerate(af, semantics.into(), &mut budget(budget_nodes))?;
        *out = Box::into_raw(Box::new(AfsExtensions { inner }));
        Ok(())
    })
}

/// Credulous (`skeptical == false`) or skeptical acceptance of `name`.
///
/// # Safety
/// `af` must be a live handle, `name` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_query(
    af: *const AfsFramework,
    semantics: AfsSemantics,
    name: *const c_char,
    skeptical: bool,
    budget_nodes: u64,
    out: *mut bool,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        let a = af.lookup(str_arg(name, "name")?)?;
        let mut budget = budget(budget_nodes);
        *out = if skeptical {
            afsolve::skeptical(af, a, semantics.into(), &mut budget)?
        } else {
            afsolve::credulous(af, a, semantics.into(), &mut budget)?
        };
        Ok(())
    })
}

/// # Safety
/// `exts` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn afs_extensions_free(exts: *mut AfsExtensions) {
    if !exts.is_null() {
        drop(Box::from_raw(exts));
    }
}

/// # Safety
/// `exts` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn afs_extensions_count(exts: *const AfsExtensions) -> usize {
    exts.as_ref().map_or(0, |e| e.inner.len())
}

/// Number of arguments in extension `i`.
///
/// # Safety
/// `exts` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_extension_len(
    exts: *const AfsExtensions,
    i: usize,
    out: *mut usize,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let exts = &ref_arg(exts, "extensions")?.inner;
        let Some(ext) = exts.as_slice().get(i) else {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: exts.len(),
            }
            .into());
        };
        *out = ext.len();
        Ok(())
    })
}

/// Writes the ascending argument indices of extension `i` into `buf`,
/// which holds `cap` elements. `out_len` receives the member count even
/// when the buffer is too small.
///
/// # Safety
/// `exts` must be a live handle, `buf` must hold `cap` elements (it may be
/// null when `cap` is 0) and `out_len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_extension_members(
    exts: *const AfsExtensions,
    i: usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> AfsStatus {
    guard(|| {
        out_arg(out_len)?;
        let exts = &ref_arg(exts, "extensions")?.inner;
        let Some(ext) = exts.as_slice().get(i) else {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: exts.len(),
            }
            .into());
        };
        *out_len = ext.len();
        if ext.len() > cap {
            return fail(
                AfsStatus::BufferTooSmall,
                format!("extension has {} members, buffer holds {cap}", ext.len()),
            );
        }
        if ext.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return fail(AfsStatus::NullPointer, "buffer is null");
        }
        let buf = std::slice::from_raw_parts_mut(buf, cap);
        for (slot, a) in buf.iter_mut().zip(ext.iter()) {
            *slot = a;
        }
        Ok(())
    })
}

/// Renders `exts` with argument names from `af`: one `[a,b]` line per
/// extension, or a single `[[a,b],[c]]` line when `single` is set.
///
/// # Safety
/// Both handles must be live, `exts` must come from `af`, and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_extensions_format(
    af: *const AfsFramework,
    exts: *const AfsExtensions,
    single: bool,
    out: *mut *mut c_char,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        let exts = &ref_arg(exts, "extensions")?.inner;
        if exts.fingerprint() != af.fingerprint() {
            return fail(
                AfsStatus::InvalidValue,
                "extensions belong to another framework",
            );
        }
        let style = if single {
            OutputStyle::Single
        } else {
            OutputStyle::Lines
        };
        *out = to_c_string(io::format_extensions(af, exts, style))?;
        Ok(())
    })
}

/// Rule text of the named encoding (`cf`, `adm`, `pref2`, `stage2`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_emit_encoding(
    name: *const c_char,
    out: *mut *mut c_char,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let name: EncodingName = str_arg(name, "name")?
            .parse()
            .or_else(|e: String| fail(AfsStatus::InvalidValue, e))?;
        *out = to_c_string(encodings::emit_encoding(name))?;
        Ok(())
    })
}

/// The framework as `arg`/`att` facts.
///
/// # Safety
/// `af` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afs_emit_facts(
    af: *const AfsFramework,
    out: *mut *mut c_char,
) -> AfsStatus {
    guard(|| {
        out_arg(out)?;
        let af = &ref_arg(af, "framework")?.inner;
        *out = to_c_string(encodings::emit_apx_facts(af)?)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn afs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
