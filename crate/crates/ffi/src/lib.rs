//! C interface to `fracmech`.
//!
//! Conventions:
//!
//! * every fallible function returns an [`FmStatus`]; results go through out
//!   pointers, which are left untouched on failure;
//! * the message of the last failure on the calling thread is available
//!   through [`fm_last_error_message`];
//! * matrices are `double[9]` in row-major order, vectors `double[3]`;
//! * motions and models are opaque handles released with their `_free`
//!   function. Passing `NULL` to a `_free` function is a no-op.
//!
//! Panics never cross the boundary; they are reported as
//! `FM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fracmech::frac::{gamma_fn, riesz_caputo, DerivativeSpec, Fn1D, FracOrder, Interval};
use fracmech::kinematics::{
    composite_f, Affine, BodyBox, BoundaryPolicy, ExponentialStretch, FractionalKinematics,
    GradientKind, GradientOptions, Identity, LinearStretch, Motion, NonlocalHorizon, OrderField,
    Point, Translation,
};
use fracmech::strains::{strain_pair, StrainFamily};
use fracmech::stress::{piola_kirchhoff, PkFamily};
use fracmech::tensor::{Mat3, Tensor2, Vec3, SPATIAL};
use fracmech::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmStatus {
    Ok = 0,
    NullPointer = 1,
    /// Order outside (0, 1], bad interval or subdivision count, bad enum value.
    InvalidArgument = 2,
    /// Domain violation such as a non-positive horizon or Gamma pole.
    Domain = 3,
    /// A horizon interval leaves the body box.
    OutsideBody = 4,
    SingularMatrix = 5,
    NonPositiveJacobian = 6,
    NonFinite = 7,
    Panic = 8,
}

impl From<&Error> for FmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidOrder(_)
            | Error::InvalidInterval(_)
            | Error::InvalidSubdivision(_)
            | Error::LegMismatch { .. } => FmStatus::InvalidArgument,
            Error::Domain(_) => FmStatus::Domain,
            Error::OutsideBody { .. } => FmStatus::OutsideBody,
            Error::SingularMatrix(_) => FmStatus::SingularMatrix,
            Error::NonPositiveJacobian(_) => FmStatus::NonPositiveJacobian,
            Error::NonFinite(_) => FmStatus::NonFinite,
        }
    }
}

/// Which gradient of the line-element diagram to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmGradientKind {
    Classical = 0,
    FracMaterial = 1,
    FracSpatial = 2,
    AlphaComposite = 3,
    AlphaMaterialSide = 4,
    AlphaSpatialSide = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmStrainFamily {
    Classical = 0,
    FracMaterial = 1,
    FracSpatial = 2,
    Alpha = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmPkFamily {
    Classical = 0,
    FracMaterial = 1,
    FracSpatial = 2,
    Alpha = 3,
}

/// Whether a point is given in the reference or the current configuration,
/// and which side of a model a setting applies to.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmSide {
    Material = 0,
    Spatial = 1,
}

/// Enum arguments arrive as plain integers; an out-of-range value must not
/// be materialized as a Rust enum.
macro_rules! decode {
    ($name:ident, $ty:ident { $($value:literal => $variant:ident),* $(,)? }) => {
        fn $name(raw: i32) -> Result<$ty, FmStatus> {
            match raw {
                $($value => Ok($ty::$variant),)*
                other => Err(fail(
                    FmStatus::InvalidArgument,
                    format!("{} value {other} out of range", stringify!($ty)),
                )),
            }
        }
    };
}

decode!(decode_side, FmSide { 0 => Material, 1 => Spatial });
decode!(decode_kind, FmGradientKind {
    0 => Classical, 1 => FracMaterial, 2 => FracSpatial,
    3 => AlphaComposite, 4 => AlphaMaterialSide, 5 => AlphaSpatialSide,
});
decode!(decode_strain, FmStrainFamily { 0 => Classical, 1 => FracMaterial, 2 => FracSpatial, 3 => Alpha });
decode!(decode_pk, FmPkFamily { 0 => Classical, 1 => FracMaterial, 2 => FracSpatial, 3 => Alpha });

/// Opaque motion handle.
pub struct FmMotion(Box<dyn Motion>);

/// Opaque handle holding orders, horizons and quadrature settings for both
/// sides.
pub struct FmModel(FractionalKinematics);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: FmStatus, message: impl Into<String>) -> FmStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> FmStatus {
    fail(FmStatus::from(&e), e.to_string())
}

/// Runs `body`, turning panics into `FmStatus::Panic`.
fn guard(body: impl FnOnce() -> Result<(), FmStatus>) -> FmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FmStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(FmStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn check<T>(r: Result<T, Error>) -> Result<T, FmStatus> {
    r.map_err(from_error)
}

unsafe fn read<const N: usize>(ptr: *const f64, what: &str) -> Result<[f64; N], FmStatus> {
    if ptr.is_null() {
        return Err(fail(FmStatus::NullPointer, format!("{what} is NULL")));
    }
    let mut out = [0.0; N];
    out.copy_from_slice(std::slice::from_raw_parts(ptr, N));
    Ok(out)
}

unsafe fn write<const N: usize>(ptr: *mut f64, values: [f64; N], what: &str) -> Result<(), FmStatus> {
    if ptr.is_null() {
        return Err(fail(FmStatus::NullPointer, format!("{what} is NULL")));
    }
    std::slice::from_raw_parts_mut(ptr, N).copy_from_slice(&values);
    Ok(())
}

unsafe fn deref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, FmStatus> {
    ptr.as_ref()
        .ok_or_else(|| fail(FmStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn read_mat(ptr: *const f64, what: &str) -> Result<Mat3, FmStatus> {
    Ok(Mat3::from_row_slice(&read::<9>(ptr, what)?))
}

unsafe fn read_rows(ptr: *const f64, what: &str) -> Result<[[f64; 3]; 3], FmStatus> {
    let v = read::<9>(ptr, what)?;
    Ok([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])
}

unsafe fn put_motion(out: *mut *mut FmMotion, motion: Box<dyn Motion>) -> Result<(), FmStatus> {
    if out.is_null() {
        return Err(fail(FmStatus::NullPointer, "out is NULL"));
    }
    *out = Box::into_raw(Box::new(FmMotion(motion)));
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length including the NUL,
/// or 0 when there is no message.
///
/// # Safety
/// `buf` must be NULL or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

#[no_mangle]
pub extern "C" fn fm_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Γ(x) for x > 0.
///
/// # Safety
/// `out` must be NULL or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_gamma(x: f64, out: *mut f64) -> FmStatus {
    guard(|| {
        let v = check(gamma_fn(x))?;
        write::<1>(out, [v], "out")
    })
}

/// Riesz-Caputo derivative of `f` at `t` over `(a, b)`.
///
/// `df` is the first derivative; pass NULL to fall back on central
/// differences of `f`. `user_data` is handed to both callbacks.
///
/// # Safety
/// The callbacks must be safe to call with `user_data`; `out` must be valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_riesz_caputo(
    f: Option<extern "C" fn(f64, *mut c_void) -> f64>,
    df: Option<extern "C" fn(f64, *mut c_void) -> f64>,
    user_data: *mut c_void,
    a: f64,
    t: f64,
    b: f64,
    alpha: f64,
    m: usize,
    out: *mut f64,
) -> FmStatus {
    guard(|| {
        let f = f.ok_or_else(|| fail(FmStatus::NullPointer, "f is NULL"))?;
        let value = move |s| f(s, user_data);
        let func = match df {
            Some(df) => Fn1D::with_derivative(value, move |s| df(s, user_data)),
            None => Fn1D::new(value),
        };
        let spec = DerivativeSpec::new(check(FracOrder::new(alpha))?, check(Interval::new(a, t, b))?)
            .with_subdivisions(m);
        let v = check(riesz_caputo(&func, &spec))?;
        write::<1>(out, [v], "out")
    })
}

/// `x = X`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_identity(out: *mut *mut FmMotion) -> FmStatus {
    guard(|| put_motion(out, Box::new(Identity)))
}

/// `x = X + offset`.
///
/// # Safety
/// `offset` must point to 3 doubles, `out` be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_translation(offset: *const f64, out: *mut *mut FmMotion) -> FmStatus {
    guard(|| {
        let o = read::<3>(offset, "offset")?;
        put_motion(out, Box::new(Translation { offset: Vec3::from(o) }))
    })
}

/// `x₁ = (1 + β) X₁`, other coordinates fixed. Requires β > −1.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_linear(beta: f64, out: *mut *mut FmMotion) -> FmStatus {
    guard(|| put_motion(out, Box::new(check(LinearStretch::new(beta))?)))
}

/// `x₁ = exp(X₁)`, other coordinates fixed.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_exponential(out: *mut *mut FmMotion) -> FmStatus {
    guard(|| put_motion(out, Box::new(ExponentialStretch)))
}

/// `x = A X + c` with `A` row-major and `det A > 0`.
///
/// # Safety
/// `matrix` must point to 9 doubles, `offset` to 3, `out` be valid for one
/// write.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_affine(
    matrix: *const f64,
    offset: *const f64,
    out: *mut *mut FmMotion,
) -> FmStatus {
    guard(|| {
        let a = read_mat(matrix, "matrix")?;
        let c = Vec3::from(read::<3>(offset, "offset")?);
        put_motion(out, Box::new(check(Affine::new(a, c))?))
    })
}

/// Maps `X` to `x` at time `t`.
///
/// # Safety
/// `motion` must be a live handle, `reference` and `out` 3 doubles each.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_forward(
    motion: *const FmMotion,
    reference: *const f64,
    t: f64,
    out: *mut f64,
) -> FmStatus {
    guard(|| {
        let m = deref(motion, "motion")?;
        let x = m.0.forward(&Vec3::from(read::<3>(reference, "reference")?), t);
        write::<3>(out, x.into(), "out")
    })
}

/// # Safety
/// `motion` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fm_motion_free(motion: *mut FmMotion) {
    if !motion.is_null() {
        drop(Box::from_raw(motion));
    }
}

/// Uniform order and horizon on every entry and on both sides, unbounded
/// body, `m` subintervals per side.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn fm_model_new(
    alpha: f64,
    ell_left: f64,
    ell_right: f64,
    m: usize,
    out: *mut *mut FmModel,
) -> FmStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(FmStatus::NullPointer, "out is NULL"));
        }
        if m < 2 {
            return Err(from_error(Error::InvalidSubdivision(m)));
        }
        let kin = FractionalKinematics::uniform(
            OrderField::uniform(check(FracOrder::new(alpha))?),
            check(NonlocalHorizon::uniform(ell_left, ell_right))?,
            GradientOptions::with_m(m),
        );
        *out = Box::into_raw(Box::new(FmModel(kin)));
        Ok(())
    })
}

/// Per-entry orders and horizons for one side. `ell` may be NULL, which
/// uses the mean `(ℓ_L + ℓ_R)/2` of each entry as scaling length.
///
/// # Safety
/// `model` must be a live handle; the arrays must hold 9 doubles each.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_side(
    model: *mut FmModel,
    side: i32,
    alpha: *const f64,
    ell_left: *const f64,
    ell_right: *const f64,
    ell: *const f64,
) -> FmStatus {
    guard(|| {
        let model = model
            .as_mut()
            .ok_or_else(|| fail(FmStatus::NullPointer, "model is NULL"))?;
        let orders = check(OrderField::from_rows(read_rows(alpha, "alpha")?))?;
        let left = read_rows(ell_left, "ell_left")?;
        let right = read_rows(ell_right, "ell_right")?;
        let horizon = if ell.is_null() {
            check(NonlocalHorizon::new(left, right))?
        } else {
            check(NonlocalHorizon::with_scale(left, right, read_rows(ell, "ell")?))?
        };
        let kin = &mut model.0;
        match decode_side(side)? {
            FmSide::Material => {
                kin.material_orders = orders;
                kin.material_horizon = horizon;
            }
            FmSide::Spatial => {
                kin.spatial_orders = orders;
                kin.spatial_horizon = horizon;
            }
        }
        Ok(())
    })
}

/// Body box of one side, and whether horizons leaving it are clamped
/// (non-zero) or rejected with `FM_STATUS_OUTSIDE_BODY` (zero).
///
/// # Safety
/// `model` must be a live handle, `min` and `max` 3 doubles each.
#[no_mangle]
pub unsafe extern "C" fn fm_model_set_domain(
    model: *mut FmModel,
    side: i32,
    min: *const f64,
    max: *const f64,
    clamp: i32,
) -> FmStatus {
    guard(|| {
        let model = model
            .as_mut()
            .ok_or_else(|| fail(FmStatus::NullPointer, "model is NULL"))?;
        let domain = check(BodyBox::new(read::<3>(min, "min")?, read::<3>(max, "max")?))?;
        let options = match decode_side(side)? {
            FmSide::Material => &mut model.0.material_options,
            FmSide::Spatial => &mut model.0.spatial_options,
        };
        options.domain = domain;
        options.boundary = if clamp != 0 {
            BoundaryPolicy::Clamp
        } else {
            BoundaryPolicy::Error
        };
        Ok(())
    })
}

/// # Safety
/// `model` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fm_model_free(model: *mut FmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

fn point(side: FmSide, p: [f64; 3]) -> Point {
    match side {
        FmSide::Material => Point::Material(Vec3::from(p)),
        FmSide::Spatial => Point::Spatial(Vec3::from(p)),
    }
}

fn gradient_kind(kind: FmGradientKind) -> GradientKind {
    match kind {
        FmGradientKind::Classical => GradientKind::Classical,
        FmGradientKind::FracMaterial => GradientKind::FracMaterial,
        FmGradientKind::FracSpatial => GradientKind::FracSpatial,
        FmGradientKind::AlphaComposite => GradientKind::AlphaComposite,
        FmGradientKind::AlphaMaterialSide => GradientKind::AlphaMaterialSide,
        FmGradientKind::AlphaSpatialSide => GradientKind::AlphaSpatialSide,
    }
}

/// Gradient `kind` at a point given on side `location`, written row-major to
/// `out`.
///
/// # Safety
/// Handles must be live; `coords` holds 3 doubles, `out` 9.
#[no_mangle]
pub unsafe extern "C" fn fm_gradient(
    model: *const FmModel,
    motion: *const FmMotion,
    kind: i32,
    location: i32,
    coords: *const f64,
    t: f64,
    out: *mut f64,
) -> FmStatus {
    guard(|| {
        let model = deref(model, "model")?;
        let motion = deref(motion, "motion")?;
        let p = point(decode_side(location)?, read::<3>(coords, "coords")?);
        let g = check(composite_f(gradient_kind(decode_kind(kind)?), motion.0.as_ref(), p, t, &model.0))?;
        write::<9>(out, g.to_row_major(), "out")
    })
}

/// Material and spatial strains of `family`, each written row-major.
///
/// # Safety
/// Handles must be live; `coords` holds 3 doubles, each output 9.
#[no_mangle]
pub unsafe extern "C" fn fm_strain_pair(
    model: *const FmModel,
    motion: *const FmMotion,
    family: i32,
    location: i32,
    coords: *const f64,
    t: f64,
    out_material: *mut f64,
    out_spatial: *mut f64,
) -> FmStatus {
    guard(|| {
        let model = deref(model, "model")?;
        let motion = deref(motion, "motion")?;
        let family = match decode_strain(family)? {
            FmStrainFamily::Classical => StrainFamily::Classical,
            FmStrainFamily::FracMaterial => StrainFamily::FracMaterialBased,
            FmStrainFamily::FracSpatial => StrainFamily::FracSpatialBased,
            FmStrainFamily::Alpha => StrainFamily::AlphaBased,
        };
        let p = point(decode_side(location)?, read::<3>(coords, "coords")?);
        let pair = check(strain_pair(family, motion.0.as_ref(), p, t, &model.0))?;
        write::<9>(out_material, pair.material.to_row_major(), "out_material")?;
        write::<9>(out_spatial, pair.spatial.to_row_major(), "out_spatial")
    })
}

/// First and second Piola-Kirchhoff stresses from a symmetric Cauchy stress
/// and the family's gradient (`F̃_x` for `FM_PK_FAMILY_FRAC_SPATIAL`, a
/// material-to-spatial gradient otherwise).
///
/// # Safety
/// `sigma` and `gradient` hold 9 doubles, each output 9.
#[no_mangle]
pub unsafe extern "C" fn fm_piola_kirchhoff(
    family: i32,
    sigma: *const f64,
    gradient: *const f64,
    out_p: *mut f64,
    out_s: *mut f64,
) -> FmStatus {
    guard(|| {
        let family = match decode_pk(family)? {
            FmPkFamily::Classical => PkFamily::Classical,
            FmPkFamily::FracMaterial => PkFamily::FracMaterial,
            FmPkFamily::FracSpatial => PkFamily::FracSpatial,
            FmPkFamily::Alpha => PkFamily::Alpha,
        };
        let sigma = Tensor2::new(read_mat(sigma, "sigma")?, SPATIAL);
        let fd = Tensor2::new(read_mat(gradient, "gradient")?, family.gradient_legs());
        let (p, s) = check(piola_kirchhoff(family, &sigma, &fd))?;
        write::<9>(out_p, p.to_row_major(), "out_p")?;
        write::<9>(out_s, s.to_row_major(), "out_s")
    })
}
