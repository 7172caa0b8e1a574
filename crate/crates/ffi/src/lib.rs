//! C ABI over the `curvelab` engines.
//!
//! Curves live behind an opaque [`CurvelabCurve`] handle created from a JSON
//! curve spec and released with [`curvelab_curve_free`]. Every entry point
//! returns a [`CurvelabStatus`]; on failure the message is available from
//! [`curvelab_last_error`] on the calling thread. Panics never cross the
//! boundary: they are reported as `CURVELAB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use curvelab::evolutoid::{area_identity, area_inequality, evolutoid_point, singular_params, EvolutoidSpec};
use curvelab::front::front_sample;
use curvelab::gauss_bonnet::gauss_bonnet_check;
use curvelab::io::spec::parse_curve_spec;
use curvelab::ses::ses_point;
use curvelab::{Curve, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvelabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed curve spec or out-of-range argument.
    InvalidInput = 3,
    /// The curve is degenerate for the requested operation.
    Degenerate = 4,
    /// The operation needs a support-function curve.
    NotSupportCurve = 5,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 6,
    Panic = 7,
    Other = 8,
}

/// Opaque curve handle.
pub struct CurvelabCurve {
    curve: Curve,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabVec2 {
    pub x: f64,
    pub y: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabSesPoint {
    pub location: CurvelabVec2,
    /// Angle in `[0, π]` at which the point is singular on the evolutoid.
    pub alpha: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabSingularity {
    pub param: f64,
    pub location: CurvelabVec2,
    pub is_cusp: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabAreas {
    pub area: f64,
    pub evolute_area: f64,
    /// Oriented area of the evolutoid.
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// `area·cos²α − lhs`.
    pub gap: f64,
    pub inequality_holds: bool,
    pub is_circle: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabFrontSample {
    /// `(α, x, y)`.
    pub position: CurvelabVec3,
    pub normal: CurvelabVec3,
    /// Signed area factor; zero on the singular curve.
    pub lambda: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CurvelabGaussBonnet {
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub relative_residual: f64,
    pub swallowtails: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CurvelabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            _ if e.is_degeneracy() => CurvelabStatus::Degenerate,
            Error::NotSupportCurve => CurvelabStatus::NotSupportCurve,
            Error::Spec { .. } | Error::NotClosed => CurvelabStatus::InvalidInput,
            _ => CurvelabStatus::Other,
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

fn null(what: &str) -> Failure {
    Failure(CurvelabStatus::NullPointer, format!("`{what}` is null"))
}

/// Run `f`, record any failure and turn panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CurvelabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CurvelabStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CurvelabStatus::Panic
        }
    }
}

unsafe fn curve_ref<'a>(c: *const CurvelabCurve) -> Result<&'a Curve, Failure> {
    c.as_ref().map(|h| &h.curve).ok_or_else(|| null("curve"))
}

unsafe fn out_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn v2(v: curvelab::Vec2) -> CurvelabVec2 {
    CurvelabVec2 { x: v.x, y: v.y }
}

fn v3(v: curvelab::Vec3) -> CurvelabVec3 {
    CurvelabVec3 { x: v.x, y: v.y, z: v.z }
}

fn finite(name: &str, v: f64) -> Result<f64, Failure> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure(CurvelabStatus::InvalidInput, format!("`{name}` is not finite")))
    }
}

/// Message describing the last failed call on this thread, or null after a
/// successful call. The pointer stays valid until the next call on the
/// same thread.
#[no_mangle]
pub extern "C" fn curvelab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn curvelab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a JSON curve spec into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_from_json(json: *const c_char, out: *mut *mut CurvelabCurve) -> CurvelabStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        *out = std::ptr::null_mut();
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(CurvelabStatus::InvalidUtf8, format!("spec is not UTF-8: {e}")))?;
        let spec = parse_curve_spec(text)?;
        *out = Box::into_raw(Box::new(CurvelabCurve { curve: spec.curve }));
        Ok(())
    })
}

/// Release a handle. Null is accepted.
///
/// # Safety
/// `curve` must come from [`curvelab_curve_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_free(curve: *mut CurvelabCurve) {
    if !curve.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(curve))));
    }
}

/// Whether the handle holds a support-function curve (fronts, Gauss-Bonnet
/// and areas need one).
///
/// # Safety
/// `curve` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_is_support(curve: *const CurvelabCurve) -> bool {
    curve.as_ref().is_some_and(|h| matches!(h.curve, Curve::Support(_)))
}

/// Point of the base curve at `param`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_point(curve: *const CurvelabCurve, param: f64, out: *mut CurvelabVec2) -> CurvelabStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        *out_mut(out, "out")? = v2(c.point(finite("param", param)?));
        Ok(())
    })
}

/// Point of the `alpha`-evolutoid at `param`, for `alpha` in `[0, π]`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_evolutoid_point(
    curve: *const CurvelabCurve,
    alpha: f64,
    param: f64,
    out: *mut CurvelabVec2,
) -> CurvelabStatus {
    guard(|| {
        let spec = EvolutoidSpec::new(curve_ref(curve)?.clone(), finite("alpha", alpha)?)?;
        *out_mut(out, "out")? = v2(evolutoid_point(&spec, finite("param", param)?)?);
        Ok(())
    })
}

/// Point of the singular evolutoid set at `param`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_ses_point(curve: *const CurvelabCurve, param: f64, out: *mut CurvelabSesPoint) -> CurvelabStatus {
    guard(|| {
        let s = ses_point(curve_ref(curve)?, finite("param", param)?)?;
        *out_mut(out, "out")? = CurvelabSesPoint { location: v2(s.location), alpha: s.alpha_of_param };
        Ok(())
    })
}

/// Singular points of the `alpha`-evolutoid, `alpha` strictly inside `(0, π)`.
///
/// `*len` always receives the number of points. With `buffer` null and
/// `capacity` zero the call only queries that number; otherwise a short
/// buffer yields `CURVELAB_STATUS_BUFFER_TOO_SMALL` and is left untouched.
///
/// # Safety
/// `curve` must be a live handle, `len` valid, and `buffer` valid for
/// `capacity` elements unless null.
#[no_mangle]
pub unsafe extern "C" fn curvelab_singular_params(
    curve: *const CurvelabCurve,
    alpha: f64,
    buffer: *mut CurvelabSingularity,
    capacity: usize,
    len: *mut usize,
) -> CurvelabStatus {
    guard(|| {
        let len = out_mut(len, "len")?;
        *len = 0;
        let spec = EvolutoidSpec::new(curve_ref(curve)?.clone(), finite("alpha", alpha)?)?;
        let found = singular_params(&spec)?;
        *len = found.len();
        if buffer.is_null() && capacity == 0 {
            return Ok(());
        }
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        if capacity < found.len() {
            return Err(Failure(
                CurvelabStatus::BufferTooSmall,
                format!("{} singular points, capacity {capacity}", found.len()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buffer, found.len());
        for (d, s) in dst.iter_mut().zip(&found) {
            *d = CurvelabSingularity { param: s.param, location: v2(s.location), is_cusp: s.is_cusp };
        }
        Ok(())
    })
}

/// Area identity and inequality for the `alpha`-evolutoid of a support curve.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_areas(curve: *const CurvelabCurve, alpha: f64, out: *mut CurvelabAreas) -> CurvelabStatus {
    guard(|| {
        let c = curve_ref(curve)?.as_support()?;
        let alpha = finite("alpha", alpha)?;
        let (id, ineq) = (area_identity(c, alpha), area_inequality(c, alpha));
        *out_mut(out, "out")? = CurvelabAreas {
            area: id.area,
            evolute_area: id.evolute_area,
            lhs: id.lhs,
            rhs: id.rhs,
            residual: id.residual,
            gap: ineq.gap,
            inequality_holds: ineq.satisfied,
            is_circle: ineq.is_circle,
        };
        Ok(())
    })
}

/// Front point, unit normal and area factor at `(alpha, theta)`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_front_sample(
    curve: *const CurvelabCurve,
    alpha: f64,
    theta: f64,
    out: *mut CurvelabFrontSample,
) -> CurvelabStatus {
    guard(|| {
        let c = curve_ref(curve)?.as_support()?;
        let s = front_sample(c, finite("alpha", alpha)?, finite("theta", theta)?);
        *out_mut(out, "out")? = CurvelabFrontSample { position: v3(s.position), normal: v3(s.normal), lambda: s.lambda };
        Ok(())
    })
}

/// Both sides of the Gauss-Bonnet identity on the front, each integrated to
/// absolute tolerance `tol`.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn curvelab_gauss_bonnet(curve: *const CurvelabCurve, tol: f64, out: *mut CurvelabGaussBonnet) -> CurvelabStatus {
    guard(|| {
        let c = curve_ref(curve)?.as_support()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure(CurvelabStatus::InvalidInput, "`tol` must be positive".into()));
        }
        let r = gauss_bonnet_check(c, tol, "")?;
        *out_mut(out, "out")? = CurvelabGaussBonnet {
            lhs: r.lhs.value,
            lhs_error: r.lhs.abs_error_estimate,
            rhs: r.rhs.value,
            rhs_error: r.rhs.abs_error_estimate,
            relative_residual: r.relative_residual,
            swallowtails: r.swallowtails.len(),
        };
        Ok(())
    })
}
