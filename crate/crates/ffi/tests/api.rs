use std::ffi::{c_char, c_void, CStr};
use std::ptr;

use fracmech_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { fm_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

extern "C" fn cube(t: f64, _: *mut c_void) -> f64 {
    t * t * t
}

extern "C" fn cube_slope(t: f64, _: *mut c_void) -> f64 {
    3.0 * t * t
}

extern "C" fn scaled_exp(t: f64, data: *mut c_void) -> f64 {
    let k = unsafe { *(data as *const f64) };
    k * t.exp()
}

#[test]
fn gamma_and_errors() {
    let mut v = 0.0;
    assert_eq!(unsafe { fm_gamma(0.5, &mut v) }, FmStatus::Ok);
    assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    assert_eq!(unsafe { fm_gamma(-1.0, &mut v) }, FmStatus::Domain);
    assert!(last_error().contains("-1"));
    assert_eq!(unsafe { fm_gamma(2.0, ptr::null_mut()) }, FmStatus::NullPointer);
    assert_eq!(last_error(), "out is NULL");
    fm_clear_error();
    assert_eq!(unsafe { fm_last_error_message(ptr::null_mut(), 0) }, 0);
}

#[test]
fn error_message_truncates() {
    let mut v = 0.0;
    unsafe { fm_gamma(0.0, &mut v) };
    let full = unsafe { fm_last_error_message(ptr::null_mut(), 0) };
    let mut small = [1 as c_char; 4];
    assert_eq!(unsafe { fm_last_error_message(small.as_mut_ptr(), small.len()) }, full);
    assert_eq!(small[3], 0);
}

#[test]
fn riesz_caputo_callbacks() {
    let mut v = 0.0;
    let st = unsafe {
        fm_riesz_caputo(Some(cube), Some(cube_slope), ptr::null_mut(), 0.0, 1.0, 2.0, 0.5, 4000, &mut v)
    };
    assert_eq!(st, FmStatus::Ok);
    assert!((v - 3.6).abs() < 1e-6, "{v}");

    // user data reaches the callback; finite differences without df
    let mut k = 2.0f64;
    let st = unsafe {
        fm_riesz_caputo(Some(scaled_exp), None, &mut k as *mut f64 as *mut c_void, -1.0, 0.0, 1.0, 1.0, 100, &mut v)
    };
    assert_eq!(st, FmStatus::Ok);
    assert!((v - 2.0).abs() < 1e-6);

    let st = unsafe { fm_riesz_caputo(None, None, ptr::null_mut(), 0.0, 1.0, 2.0, 0.5, 10, &mut v) };
    assert_eq!(st, FmStatus::NullPointer);
    let st = unsafe { fm_riesz_caputo(Some(cube), None, ptr::null_mut(), 0.0, 1.0, 2.0, 1.5, 10, &mut v) };
    assert_eq!(st, FmStatus::InvalidArgument);
    let st = unsafe { fm_riesz_caputo(Some(cube), None, ptr::null_mut(), 1.0, 1.0, 2.0, 0.5, 10, &mut v) };
    assert_eq!(st, FmStatus::InvalidArgument);
}

struct Handles {
    model: *mut FmModel,
    motion: *mut FmMotion,
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            fm_model_free(self.model);
            fm_motion_free(self.motion);
        }
    }
}

fn linear_setup(alpha: f64, left: f64, right: f64) -> Handles {
    let mut h = Handles {
        model: ptr::null_mut(),
        motion: ptr::null_mut(),
    };
    assert_eq!(unsafe { fm_motion_linear(0.2, &mut h.motion) }, FmStatus::Ok);
    assert_eq!(unsafe { fm_model_new(alpha, left, right, 1000, &mut h.model) }, FmStatus::Ok);
    h
}

#[test]
fn linear_stretch_gradient_matches_closed_form() {
    let h = linear_setup(0.5, 0.9, 0.1);
    let mut f = [0.0; 9];
    let x = [0.3, 0.0, 0.0];
    let st = unsafe {
        fm_gradient(h.model, h.motion, FmGradientKind::FracMaterial as i32, FmSide::Material as i32, x.as_ptr(), 0.0, f.as_mut_ptr())
    };
    assert_eq!(st, FmStatus::Ok);
    let m = 0.5 * 0.5f64.powf(-0.5) * (0.9f64.sqrt() + 0.1f64.sqrt());
    let want = [1.2 * m, 0.0, 0.0, 0.0, m, 0.0, 0.0, 0.0, m];
    for (a, b) in f.iter().zip(want) {
        assert!((a - b).abs() < 1e-6, "{f:?}");
    }

    let (mut e, mut s) = ([0.0; 9], [0.0; 9]);
    let st = unsafe {
        fm_strain_pair(h.model, h.motion, FmStrainFamily::FracMaterial as i32, FmSide::Material as i32, x.as_ptr(), 0.0, e.as_mut_ptr(), s.as_mut_ptr())
    };
    assert_eq!(st, FmStatus::Ok);
    assert!((e[4] - 0.5 * (m * m - 1.0)).abs() < 1e-6);
    assert_eq!(e[4], e[8]);
}

#[test]
fn bad_enum_values_are_rejected() {
    let h = linear_setup(0.5, 0.5, 0.5);
    let mut f = [0.0; 9];
    let x = [0.3, 0.0, 0.0];
    let st = unsafe { fm_gradient(h.model, h.motion, 6, 0, x.as_ptr(), 0.0, f.as_mut_ptr()) };
    assert_eq!(st, FmStatus::InvalidArgument);
    assert!(last_error().contains("FmGradientKind"));
    let st = unsafe { fm_gradient(h.model, h.motion, 0, -1, x.as_ptr(), 0.0, f.as_mut_ptr()) };
    assert_eq!(st, FmStatus::InvalidArgument);
    assert_eq!(f, [0.0; 9], "outputs untouched on failure");
}

#[test]
fn domain_policy_through_the_model() {
    let h = linear_setup(0.5, 0.5, 0.5);
    let (lo, hi) = ([0.0, -1.0, -1.0], [1.0, 1.0, 1.0]);
    assert_eq!(unsafe { fm_model_set_domain(h.model, 0, lo.as_ptr(), hi.as_ptr(), 0) }, FmStatus::Ok);
    let mut f = [0.0; 9];
    let x = [0.3, 0.0, 0.0];
    let st = unsafe { fm_gradient(h.model, h.motion, 1, 0, x.as_ptr(), 0.0, f.as_mut_ptr()) };
    assert_eq!(st, FmStatus::OutsideBody);
    assert_eq!(unsafe { fm_model_set_domain(h.model, 0, lo.as_ptr(), hi.as_ptr(), 1) }, FmStatus::Ok);
    let st = unsafe { fm_gradient(h.model, h.motion, 1, 0, x.as_ptr(), 0.0, f.as_mut_ptr()) };
    assert_eq!(st, FmStatus::Ok);
}

#[test]
fn per_entry_orders_on_one_side() {
    let h = linear_setup(0.5, 0.5, 0.5);
    let mut alpha = [1.0; 9];
    alpha[0] = 0.4;
    let ell = [0.2; 9];
    let st = unsafe { fm_model_set_side(h.model, 0, alpha.as_ptr(), ell.as_ptr(), ell.as_ptr(), ptr::null()) };
    assert_eq!(st, FmStatus::Ok);
    let mut f = [0.0; 9];
    let x = [0.3, 0.0, 0.0];
    assert_eq!(unsafe { fm_gradient(h.model, h.motion, 1, 0, x.as_ptr(), 0.0, f.as_mut_ptr()) }, FmStatus::Ok);
    // symmetric horizon, linear map: every order reproduces F
    assert!((f[0] - 1.2).abs() < 1e-9 && (f[4] - 1.0).abs() < 1e-12);

    alpha[0] = 0.0;
    let st = unsafe { fm_model_set_side(h.model, 1, alpha.as_ptr(), ell.as_ptr(), ell.as_ptr(), ptr::null()) };
    assert_eq!(st, FmStatus::InvalidArgument);
}

#[test]
fn motions() {
    let mut m = ptr::null_mut();
    let a = [2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let c = [1.0, 2.0, 3.0];
    assert_eq!(unsafe { fm_motion_affine(a.as_ptr(), c.as_ptr(), &mut m) }, FmStatus::Ok);
    let mut x = [0.0; 3];
    assert_eq!(unsafe { fm_motion_forward(m, [1.0, 1.0, 1.0].as_ptr(), 0.0, x.as_mut_ptr()) }, FmStatus::Ok);
    assert_eq!(x, [3.0, 3.0, 4.0]);
    unsafe { fm_motion_free(m) };

    let flip = [-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { fm_motion_affine(flip.as_ptr(), c.as_ptr(), &mut m) }, FmStatus::NonPositiveJacobian);
    assert!(m.is_null());
    assert_eq!(unsafe { fm_motion_linear(-1.0, &mut m) }, FmStatus::Domain);
    for ctor in [fm_motion_identity, fm_motion_exponential] {
        assert_eq!(unsafe { ctor(&mut m) }, FmStatus::Ok);
        unsafe { fm_motion_free(m) };
    }
    assert_eq!(unsafe { fm_motion_translation(c.as_ptr(), &mut m) }, FmStatus::Ok);
    unsafe { fm_motion_free(m) };
    unsafe { fm_motion_free(ptr::null_mut()) };
    unsafe { fm_model_free(ptr::null_mut()) };
}

#[test]
fn piola_kirchhoff_pull_back() {
    let sigma = [3.0, 1.0, 0.0, 1.0, 2.0, 0.5, 0.0, 0.5, 1.0];
    let f = [1.1, 0.2, 0.0, 0.0, 0.9, 0.1, 0.05, 0.0, 1.2];
    let (mut p, mut s) = ([0.0; 9], [0.0; 9]);
    let st = unsafe { fm_piola_kirchhoff(FmPkFamily::Classical as i32, sigma.as_ptr(), f.as_ptr(), p.as_mut_ptr(), s.as_mut_ptr()) };
    assert_eq!(st, FmStatus::Ok);
    // F S Fᵀ / J = σ
    let fm = |i: usize, j: usize| f[3 * i + j];
    let sm = |i: usize, j: usize| s[3 * i + j];
    let det = fm(0, 0) * (fm(1, 1) * fm(2, 2) - fm(1, 2) * fm(2, 1))
        - fm(0, 1) * (fm(1, 0) * fm(2, 2) - fm(1, 2) * fm(2, 0))
        + fm(0, 2) * (fm(1, 0) * fm(2, 1) - fm(1, 1) * fm(2, 0));
    for i in 0..3 {
        for j in 0..3 {
            let mut v = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    v += fm(i, k) * sm(k, l) * fm(j, l);
                }
            }
            assert!((v / det - sigma[3 * i + j]).abs() < 1e-12);
        }
    }
    let asym = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let st = unsafe { fm_piola_kirchhoff(0, asym.as_ptr(), f.as_ptr(), p.as_mut_ptr(), s.as_mut_ptr()) };
    assert_eq!(st, FmStatus::Domain);
    let singular = [1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 1.0];
    let st = unsafe { fm_piola_kirchhoff(0, sigma.as_ptr(), singular.as_ptr(), p.as_mut_ptr(), s.as_mut_ptr()) };
    assert_eq!(st, FmStatus::SingularMatrix);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(fm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
