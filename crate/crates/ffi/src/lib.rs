//! C ABI for `knotdiv`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or
//! `*_builtin` and released by the matching `*_free`. Every fallible call
//! returns a [`KdStatus`] and writes its result through an out pointer;
//! on failure [`kd_last_error`] describes what went wrong. Strings handed
//! out by the library are released with [`kd_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knotdiv::bracket::{jones, kauffman_bracket};
use knotdiv::moves::{self, MoveSpec, Verdict};
use knotdiv::tangle::{self, Tangle};
use knotdiv::{auxiliary_f, diagram, Error, LaurentPoly, LinkDiagram, Matching};

/// Opaque link diagram.
pub struct KdLink(LinkDiagram);

/// Opaque tangle.
pub struct KdTangle(Tangle);

/// Opaque Laurent polynomial in `A`.
pub struct KdPoly(LaurentPoly);

/// Opaque local move.
pub struct KdMove(MoveSpec);

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDiagram = 4,
    Orientation = 5,
    BudgetExceeded = 6,
    ZeroPolynomial = 7,
    InexactDivision = 8,
    PolynomialSyntax = 9,
    InvalidMatching = 10,
    SizeMismatch = 11,
    IncompatibleMatching = 12,
    UnknownBuiltin = 13,
    InvalidParameter = 14,
    Panic = 15,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(KdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => KdStatus::Parse,
            Error::InvalidDiagram(_) => KdStatus::InvalidDiagram,
            Error::Orientation(_) => KdStatus::Orientation,
            Error::BudgetExceeded { .. } => KdStatus::BudgetExceeded,
            Error::ZeroPolynomial => KdStatus::ZeroPolynomial,
            Error::InexactDivision(_) => KdStatus::InexactDivision,
            Error::PolynomialSyntax(_) => KdStatus::PolynomialSyntax,
            Error::InvalidMatching(_) => KdStatus::InvalidMatching,
            Error::SizeMismatch(_) => KdStatus::SizeMismatch,
            Error::IncompatibleMatching(_) => KdStatus::IncompatibleMatching,
            Error::UnknownBuiltin(_) => KdStatus::UnknownBuiltin,
            Error::InvalidParameter(_) => KdStatus::InvalidParameter,
        };
        Failure(code, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `body`, mapping errors and panics to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> KdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KdStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            KdStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(KdStatus::InvalidUtf8, e.to_string()))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(KdStatus::NullPointer, format!("null {what}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null out pointer".into()));
    }
    *out = value;
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a link diagram in `X`/`V`/`O` line format.
#[no_mangle]
pub unsafe extern "C" fn kd_link_parse(src: *const c_char, out: *mut *mut KdLink) -> KdStatus {
    guard(|| put(out, KdLink(LinkDiagram::parse(text(src)?)?)))
}

/// A named link such as `"trefoil-left"` or `"torus2:5"`.
#[no_mangle]
pub unsafe extern "C" fn kd_link_builtin(spec: *const c_char, out: *mut *mut KdLink) -> KdStatus {
    guard(|| put(out, KdLink(diagram::builtin_spec(text(spec)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn kd_link_free(link: *mut KdLink) {
    free(link)
}

/// Renders the diagram as text; release with [`kd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kd_link_render(link: *const KdLink, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let s = get(link, "link")?.0.render();
        put_value(out, CString::new(s).expect("no NUL").into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn kd_link_writhe(link: *const KdLink, out: *mut i64) -> KdStatus {
    guard(|| put_value(out, get(link, "link")?.0.writhe()))
}

#[no_mangle]
pub unsafe extern "C" fn kd_link_components(link: *const KdLink, out: *mut usize) -> KdStatus {
    guard(|| put_value(out, get(link, "link")?.0.components()))
}

/// Kauffman bracket.
#[no_mangle]
pub unsafe extern "C" fn kd_link_bracket(link: *const KdLink, out: *mut *mut KdPoly) -> KdStatus {
    guard(|| put(out, KdPoly(kauffman_bracket(&get(link, "link")?.0)?)))
}

/// Auxiliary polynomial `(-A^3)^(-w) <L>`.
#[no_mangle]
pub unsafe extern "C" fn kd_link_f(link: *const KdLink, out: *mut *mut KdPoly) -> KdStatus {
    guard(|| put(out, KdPoly(auxiliary_f(&get(link, "link")?.0)?)))
}

/// Jones polynomial, with `A` standing for `q = t^(1/4)`.
#[no_mangle]
pub unsafe extern "C" fn kd_link_jones(link: *const KdLink, out: *mut *mut KdPoly) -> KdStatus {
    guard(|| put(out, KdPoly(jones(&get(link, "link")?.0)?)))
}

/// Parses a tangle in `TANGLE n` format.
#[no_mangle]
pub unsafe extern "C" fn kd_tangle_parse(src: *const c_char, out: *mut *mut KdTangle) -> KdStatus {
    guard(|| put(out, KdTangle(Tangle::parse(text(src)?)?)))
}

/// A named tangle such as `"delta"` or `"half-twists:4"`.
#[no_mangle]
pub unsafe extern "C" fn kd_tangle_builtin(spec: *const c_char, out: *mut *mut KdTangle) -> KdStatus {
    guard(|| put(out, KdTangle(tangle::builtin(text(spec)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn kd_tangle_free(t: *mut KdTangle) {
    free(t)
}

/// Closure by a matching written as `"(1 2)(3 4)"`; `modified` selects
/// the orientation-preserving replacement of chord crossings.
#[no_mangle]
pub unsafe extern "C" fn kd_tangle_closure(
    t: *const KdTangle,
    matching: *const c_char,
    modified: bool,
    out: *mut *mut KdLink,
) -> KdStatus {
    guard(|| {
        let t = &get(t, "tangle")?.0;
        let m: Matching = text(matching)?.parse()?;
        let d = if modified { t.modified_closure(&m)? } else { t.closure(&m)? };
        put(out, KdLink(d))
    })
}

/// Two tangle blocks separated by a `---` line.
#[no_mangle]
pub unsafe extern "C" fn kd_move_parse(src: *const c_char, out: *mut *mut KdMove) -> KdStatus {
    guard(|| put(out, KdMove(MoveSpec::parse(text(src)?)?)))
}

/// A named move; `t` is the tangle for rotational moves and null otherwise.
#[no_mangle]
pub unsafe extern "C" fn kd_move_builtin(
    name: *const c_char,
    t: *const KdTangle,
    out: *mut *mut KdMove,
) -> KdStatus {
    guard(|| {
        let t = t.as_ref().map(|t| &t.0);
        put(out, KdMove(moves::builtin_move(text(name)?, t)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn kd_move_free(mv: *mut KdMove) {
    free(mv)
}

/// gcd of the move's closure differences; the zero polynomial when they
/// all vanish.
#[no_mangle]
pub unsafe extern "C" fn kd_move_divisor(mv: *const KdMove, out: *mut *mut KdPoly) -> KdStatus {
    guard(|| put(out, KdPoly(moves::move_divisor(&get(mv, "move")?.0)?)))
}

/// Sets `*possible` to false when the move provably cannot relate the links.
#[no_mangle]
pub unsafe extern "C" fn kd_check_divisibility(
    l1: *const KdLink,
    l2: *const KdLink,
    mv: *const KdMove,
    possible: *mut bool,
) -> KdStatus {
    guard(|| {
        let c = moves::check_divisibility(&get(l1, "link")?.0, &get(l2, "link")?.0, &get(mv, "move")?.0)?;
        put_value(possible, c.verdict == Verdict::Possible)
    })
}

/// Parses text such as `"-A^-4 + 2 - A^4"`.
#[no_mangle]
pub unsafe extern "C" fn kd_poly_parse(src: *const c_char, out: *mut *mut KdPoly) -> KdStatus {
    guard(|| put(out, KdPoly(text(src)?.parse()?)))
}

#[no_mangle]
pub unsafe extern "C" fn kd_poly_free(p: *mut KdPoly) {
    free(p)
}

/// Canonical text, ascending by exponent; release with [`kd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kd_poly_to_string(p: *const KdPoly, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let s = get(p, "polynomial")?.0.to_string();
        put_value(out, CString::new(s).expect("no NUL").into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn kd_poly_is_zero(p: *const KdPoly, out: *mut bool) -> KdStatus {
    guard(|| put_value(out, get(p, "polynomial")?.0.is_zero()))
}

/// Whether `d` divides `p` in `Z[A, A^-1]`.
#[no_mangle]
pub unsafe extern "C" fn kd_poly_divides(d: *const KdPoly, p: *const KdPoly, out: *mut bool) -> KdStatus {
    guard(|| put_value(out, get(d, "divisor")?.0.divides(&get(p, "polynomial")?.0)))
}

/// Number of perfect matchings of `2n` points, or of noncrossing ones.
#[no_mangle]
pub unsafe extern "C" fn kd_matching_count(n: usize, noncrossing: bool, out: *mut u64) -> KdStatus {
    guard(|| {
        let c = Matching::count(n, noncrossing)
            .and_then(|c| u64::try_from(c).ok())
            .ok_or_else(|| Failure(KdStatus::InvalidParameter, format!("count for n = {n} overflows")))?;
        put_value(out, c)
    })
}
