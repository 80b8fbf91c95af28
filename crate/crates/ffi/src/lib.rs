//! C interface to `polyiso`.
//!
//! Every function returns a [`PolyisoStatus`]; on failure a message is
//! available from [`polyiso_last_error`] on the same thread. Objects are
//! opaque handles released with their `_free` function. Strings returned
//! by the library are released with [`polyiso_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use polyiso::certify::minimize::Strange5Ratio;
use polyiso::certify::{branch_and_bound_with, certify_min_1d, default_root, Budget, Certificate, ConstraintSet, RunOptions};
use polyiso::geometry::io::load_polytope;
use polyiso::strange::{strange_g, strange_s, strange_v, strange5_ratio, Profile, StrangeParams};
use polyiso::symmetrize::{bipyramid_symmetral, steiner_symmetral, ApexPair};
use polyiso::{Error, Interval, Partial, Polytope3, TriangulatedBoundary, Vec3};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyisoStatus {
    Ok = 0,
    NullPointer = 1,
    Degenerate = 2,
    Domain = 3,
    Overflow = 4,
    InvalidApexPair = 5,
    NotOctahedral = 6,
    BudgetExceeded = 7,
    CertificationFailed = 8,
    Parse = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// A convex polytope.
pub struct PolyisoPolytope(Polytope3);

/// A complete branch-and-bound certificate.
pub struct PolyisoCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PolyisoStatus {
    match e {
        Error::DegenerateInput(_) => PolyisoStatus::Degenerate,
        Error::DomainError(_) => PolyisoStatus::Domain,
        Error::Overflow => PolyisoStatus::Overflow,
        Error::InvalidApexPair(_) => PolyisoStatus::InvalidApexPair,
        Error::NotOctahedralType(_) => PolyisoStatus::NotOctahedral,
        Error::BudgetExceeded(_) => PolyisoStatus::BudgetExceeded,
        Error::CertificationFailed(_) => PolyisoStatus::CertificationFailed,
        Error::Parse(_) => PolyisoStatus::Parse,
        Error::Io(_) => PolyisoStatus::Io,
    }
}

struct Fail(PolyisoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PolyisoStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PolyisoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PolyisoStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            PolyisoStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null("handle"))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn polyiso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn polyiso_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn polyiso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Convex hull of `n` points given as `3n` packed coordinates.
///
/// # Safety
/// `xyz` must point to `3 * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_from_points(
    xyz: *const f64,
    n: usize,
    out_poly: *mut *mut PolyisoPolytope,
) -> PolyisoStatus {
    guard(|| {
        let o = out(out_poly, "out")?;
        *o = ptr::null_mut();
        if xyz.is_null() {
            return Err(null("xyz"));
        }
        let c = std::slice::from_raw_parts(xyz, 3 * n);
        let pts: Vec<Vec3> = c.chunks_exact(3).map(|v| Vec3::new(v[0], v[1], v[2])).collect();
        *o = boxed(PolyisoPolytope(Polytope3::hull(&pts)?));
        Ok(())
    })
}

/// Polytope from a JSON or OFF file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_load(path: *const c_char, out_poly: *mut *mut PolyisoPolytope) -> PolyisoStatus {
    guard(|| {
        let o = out(out_poly, "out")?;
        *o = ptr::null_mut();
        if path.is_null() {
            return Err(null("path"));
        }
        let p = CStr::from_ptr(path)
            .to_str()
            .map_err(|e| Fail(PolyisoStatus::Parse, format!("path is not UTF-8: {e}")))?;
        *o = boxed(PolyisoPolytope(load_polytope(Path::new(p))?));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_free(p: *mut PolyisoPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_vertex_count(p: *const PolyisoPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.n_vertices())
}

/// Copies the vertices as packed `x, y, z` triples into `buf` of `len` doubles.
///
/// # Safety
/// `p` must be a live handle and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_vertices(p: *const PolyisoPolytope, buf: *mut f64, len: usize) -> PolyisoStatus {
    guard(|| {
        let p = handle(p)?;
        let need = 3 * p.0.n_vertices();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < need {
            return Err(Fail(PolyisoStatus::BufferTooSmall, format!("need {need} doubles, got {len}")));
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (d, v) in dst.chunks_exact_mut(3).zip(p.0.vertices()) {
            d.copy_from_slice(&v.to_array());
        }
        Ok(())
    })
}

/// Volume, surface area and `S^3 / V^2`. Any output pointer may be null.
///
/// # Safety
/// `p` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_polytope_measures(
    p: *const PolyisoPolytope,
    volume: *mut f64,
    surface: *mut f64,
    ratio: *mut f64,
) -> PolyisoStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let r = p.isoperimetric_ratio()?;
        for (dst, v) in [(volume, p.volume()), (surface, p.surface_area()), (ratio, r)] {
            if let Some(d) = dst.as_mut() {
                *d = v;
            }
        }
        Ok(())
    })
}

/// Steiner symmetral about the plane through the origin orthogonal to `normal[3]`.
///
/// # Safety
/// `p` must be a live handle, `normal` must point to 3 doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_steiner_symmetral(
    p: *const PolyisoPolytope,
    normal: *const f64,
    out_poly: *mut *mut PolyisoPolytope,
) -> PolyisoStatus {
    guard(|| {
        let o = out(out_poly, "out")?;
        *o = ptr::null_mut();
        let p = handle(p)?;
        if normal.is_null() {
            return Err(null("normal"));
        }
        let n = std::slice::from_raw_parts(normal, 3);
        *o = boxed(PolyisoPolytope(steiner_symmetral(&p.0, Vec3::new(n[0], n[1], n[2]))?));
        Ok(())
    })
}

/// Symmetral along `v_j - v_i` for an apex pair of the fan triangulation;
/// vertex numbering is kept.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_bipyramid_symmetral(
    p: *const PolyisoPolytope,
    i: usize,
    j: usize,
    out_poly: *mut *mut PolyisoPolytope,
) -> PolyisoStatus {
    guard(|| {
        let o = out(out_poly, "out")?;
        *o = ptr::null_mut();
        let t = TriangulatedBoundary::fan(&handle(p)?.0);
        let (s, _) = bipyramid_symmetral(&t, ApexPair { i, j })?;
        *o = boxed(PolyisoPolytope(s));
        Ok(())
    })
}

/// Closed-form `V`, `S` and `G = S^3 - 188 V^2` at `params = [x1, x2, x3, y1, y2]`.
/// Any output pointer may be null.
///
/// # Safety
/// `params` must point to 5 doubles; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_strange_eval(params: *const f64, v: *mut f64, s: *mut f64, g: *mut f64) -> PolyisoStatus {
    guard(|| {
        if params.is_null() {
            return Err(null("params"));
        }
        let a = std::slice::from_raw_parts(params, 5);
        let p = StrangeParams::new(a[0], a[1], a[2], a[3], a[4]);
        for (dst, val) in [(v, strange_v(&p)), (s, strange_s(&p)), (g, strange_g(&p))] {
            if let Some(d) = dst.as_mut() {
                *d = val;
            }
        }
        Ok(())
    })
}

/// Ratio of the five-vertex double pyramid with base inradius `rho`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_strange5_ratio(rho: f64, out_ratio: *mut f64) -> PolyisoStatus {
    guard(|| {
        let o = out(out_ratio, "out")?;
        *o = strange5_ratio(rho)?;
        Ok(())
    })
}

/// Certified enclosures `[lo, hi]` of the minimiser and minimum of the
/// five-vertex ratio over `[rho_lo, rho_hi]`, each at most `tol` wide.
///
/// # Safety
/// `argmin` and `min` must each point to 2 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn polyiso_strange5_minimum(
    rho_lo: f64,
    rho_hi: f64,
    tol: f64,
    argmin: *mut f64,
    min: *mut f64,
) -> PolyisoStatus {
    guard(|| {
        if argmin.is_null() || min.is_null() {
            return Err(null("output"));
        }
        let m = certify_min_1d(&Strange5Ratio, Interval::new(rho_lo, rho_hi)?, tol)?;
        std::slice::from_raw_parts_mut(argmin, 2).copy_from_slice(&[m.argmin.lo(), m.argmin.hi()]);
        std::slice::from_raw_parts_mut(min, 2).copy_from_slice(&[m.min.lo(), m.min.hi()]);
        Ok(())
    })
}

/// Branch and bound for `G > threshold` over `[0, coord_max]^5` under the
/// six-vertex conditions. Zero budgets select the defaults; `jobs = 0`
/// uses all cores. On `BudgetExceeded` the message carries the least
/// unresolved lower bound and `out` stays null.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certify_six_vertex(
    threshold: f64,
    max_boxes: u64,
    max_seconds: f64,
    jobs: u32,
    out_cert: *mut *mut PolyisoCertificate,
) -> PolyisoStatus {
    guard(|| {
        let o = out(out_cert, "out")?;
        *o = ptr::null_mut();
        let mut budget = Budget::default();
        if max_boxes > 0 {
            budget.max_boxes = max_boxes;
        }
        if max_seconds > 0.0 {
            budget.max_seconds = max_seconds;
        }
        let root = default_root(Profile::SixVertex)?;
        let mut run = RunOptions {
            jobs: (jobs > 0).then_some(jobs as usize),
            ..Default::default()
        };
        match branch_and_bound_with(&root, &ConstraintSet::six_vertex(), threshold, &budget, &mut run) {
            Ok(c) => {
                *o = boxed(PolyisoCertificate(c));
                Ok(())
            }
            Err(Error::BudgetExceeded(p)) => {
                let msg = match &*p {
                    Partial::Search(s) => format!(
                        "budget exceeded: {}; min unresolved lower bound {}",
                        s.reason,
                        s.min_unresolved_bound.map_or("none".into(), |b| b.to_string())
                    ),
                    other => format!("budget exceeded: {other}"),
                };
                Err(Fail(PolyisoStatus::BudgetExceeded, msg))
            }
            Err(e) => Err(e.into()),
        }
    })
}

/// # Safety
/// `c` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certificate_free(c: *mut PolyisoCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// 1 if the certificate establishes its claim, 0 otherwise or for null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certificate_holds(c: *const PolyisoCertificate) -> i32 {
    c.as_ref().map_or(0, |c| c.0.holds() as i32)
}

/// Number of leaves, 0 for null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certificate_leaf_count(c: *const PolyisoCertificate) -> usize {
    c.as_ref().map_or(0, |c| c.0.leaves.len())
}

/// Least verified lower bound. `Domain` if the whole root is infeasible.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certificate_margin(c: *const PolyisoCertificate, out_margin: *mut f64) -> PolyisoStatus {
    guard(|| {
        let o = out(out_margin, "out")?;
        *o = handle(c)?
            .0
            .global_margin
            .ok_or_else(|| Fail(PolyisoStatus::Domain, "no verified leaves".into()))?;
        Ok(())
    })
}

/// Certificate as JSON; release with `polyiso_string_free`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polyiso_certificate_to_json(c: *const PolyisoCertificate, out_json: *mut *mut c_char) -> PolyisoStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        *o = ptr::null_mut();
        let s = handle(c)?.0.to_json()?;
        *o = CString::new(s).map_err(|e| Fail(PolyisoStatus::Parse, e.to_string()))?.into_raw();
        Ok(())
    })
}
