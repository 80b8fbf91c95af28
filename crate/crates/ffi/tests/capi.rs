use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use polyiso_ffi::*;

fn last_error() -> String {
    let p = polyiso_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const OCTAHEDRON: [f64; 18] = [
    1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0,
];

#[test]
fn polytope_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(polyiso_polytope_from_points(OCTAHEDRON.as_ptr(), 6, &mut p), PolyisoStatus::Ok);
        assert_eq!(polyiso_polytope_vertex_count(p), 6);
        let (mut v, mut s, mut r) = (0.0, 0.0, 0.0);
        assert_eq!(polyiso_polytope_measures(p, &mut v, &mut s, &mut r), PolyisoStatus::Ok);
        assert!((v - 4.0 / 3.0).abs() < 1e-12);
        assert!((s - 4.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((r - 108.0 * 3f64.sqrt()).abs() < 1e-9);

        let mut buf = [0.0; 18];
        assert_eq!(polyiso_polytope_vertices(p, buf.as_mut_ptr(), 17), PolyisoStatus::BufferTooSmall);
        assert_eq!(polyiso_polytope_vertices(p, buf.as_mut_ptr(), 18), PolyisoStatus::Ok);
        assert!(buf.chunks(3).all(|c| (c[0].abs() + c[1].abs() + c[2].abs() - 1.0).abs() < 1e-12));

        let mut q = ptr::null_mut();
        let n = [0.3, -0.2, 1.0];
        assert_eq!(polyiso_steiner_symmetral(p, n.as_ptr(), &mut q), PolyisoStatus::Ok);
        let mut vq = 0.0;
        assert_eq!(polyiso_polytope_measures(q, &mut vq, ptr::null_mut(), ptr::null_mut()), PolyisoStatus::Ok);
        assert!((vq - v).abs() < 1e-10);
        polyiso_polytope_free(q);

        let mut b = ptr::null_mut();
        assert_eq!(polyiso_bipyramid_symmetral(p, 0, 2, &mut b), PolyisoStatus::InvalidApexPair);
        assert!(b.is_null());
        assert!(last_error().contains("apex pair"));
        polyiso_polytope_free(p);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        let flat = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0];
        assert_eq!(polyiso_polytope_from_points(flat.as_ptr(), 4, &mut p), PolyisoStatus::Degenerate);
        assert!(p.is_null());
        assert!(last_error().contains("degenerate"));
        assert_eq!(polyiso_polytope_from_points(ptr::null(), 4, &mut p), PolyisoStatus::NullPointer);
        assert_eq!(polyiso_polytope_from_points(flat.as_ptr(), 4, ptr::null_mut()), PolyisoStatus::NullPointer);
        let path = CString::new("/nonexistent/file.json").unwrap();
        assert_eq!(polyiso_polytope_load(path.as_ptr(), &mut p), PolyisoStatus::Io);
        let mut r = 0.0;
        assert_eq!(polyiso_strange5_ratio(-1.0, &mut r), PolyisoStatus::Domain);
        polyiso_polytope_free(ptr::null_mut());
        polyiso_certificate_free(ptr::null_mut());
        polyiso_string_free(ptr::null_mut());
        assert_eq!(polyiso_polytope_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tet.off");
    std::fs::write(&f, "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n").unwrap();
    let path = CString::new(f.to_str().unwrap()).unwrap();
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(polyiso_polytope_load(path.as_ptr(), &mut p), PolyisoStatus::Ok);
        let mut v = 0.0;
        assert_eq!(polyiso_polytope_measures(p, &mut v, ptr::null_mut(), ptr::null_mut()), PolyisoStatus::Ok);
        assert!((v - 1.0 / 6.0).abs() < 1e-12);
        polyiso_polytope_free(p);
    }
}

#[test]
fn strange_functions() {
    unsafe {
        let params = [0.0, 1.0, 1.0, 1.0, 1.0];
        let (mut v, mut s, mut g) = (0.0, 0.0, 0.0);
        assert_eq!(polyiso_strange_eval(params.as_ptr(), &mut v, &mut s, &mut g), PolyisoStatus::Ok);
        let s_exact = 2.0 + 4.0 * 2f64.sqrt();
        assert!((v - 4.0 / 3.0).abs() < 1e-12 && (s - s_exact).abs() < 1e-12);
        assert!((g - (s_exact.powi(3) - 188.0 * 16.0 / 9.0)).abs() < 1e-9);

        let mut r = 0.0;
        assert_eq!(polyiso_strange5_ratio(2f64.sqrt(), &mut r), PolyisoStatus::Ok);
        assert!((r - 243.0 * 2f64.sqrt()).abs() < 1e-9);

        let (mut arg, mut min) = ([0.0; 2], [0.0; 2]);
        assert_eq!(polyiso_strange5_minimum(0.1, 100.0, 1e-6, arg.as_mut_ptr(), min.as_mut_ptr()), PolyisoStatus::Ok);
        assert!(arg[0] <= 0.5f64.sqrt() && 0.5f64.sqrt() <= arg[1]);
        assert!(min[0] <= 243.0 && 243.0 <= min[1]);
    }
}

#[test]
fn certification_through_handles() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(polyiso_certify_six_vertex(3.44, 500, 0.0, 1, &mut c), PolyisoStatus::BudgetExceeded);
        assert!(c.is_null());
        assert!(last_error().contains("min unresolved lower bound"));

        // any threshold below -(188 * (4 * 6.5^2 / 3)^2) is cleared by the root box alone
        assert_eq!(polyiso_certify_six_vertex(-1e9, 0, 0.0, 0, &mut c), PolyisoStatus::Ok);
        assert_eq!(polyiso_certificate_holds(c), 1);
        assert!(polyiso_certificate_leaf_count(c) >= 1);
        let mut m = 0.0;
        assert_eq!(polyiso_certificate_margin(c, &mut m), PolyisoStatus::Ok);
        assert!(m > -1e9);
        let mut json = ptr::null_mut();
        assert_eq!(polyiso_certificate_to_json(c, &mut json), PolyisoStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        polyiso_string_free(json);
        let cert = polyiso::certify::Certificate::from_json(&text).unwrap();
        assert_eq!(cert.threshold, -1e9);
        assert_eq!(polyiso::certify::revalidate(&cert).unwrap().global_margin, Some(m));
        polyiso_certificate_free(c);
    }
    let v = unsafe { CStr::from_ptr(polyiso_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "polyiso.h"
int main(void) {
    PolyisoPolytope *p = 0;
    double xyz[12] = {0,0,0, 1,0,0, 0,1,0, 0,0,1};
    double v, s, r;
    if (polyiso_polytope_from_points(xyz, 4, &p) != POLYISO_STATUS_OK) return 1;
    polyiso_polytope_measures(p, &v, &s, &r);
    polyiso_polytope_free(p);
    return polyiso_last_error() == 0 ? 0 : 2;
}
"#,
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let st = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status()
        .unwrap();
    assert!(st.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
