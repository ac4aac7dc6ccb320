use proptest::prelude::*;

use super::*;
use crate::frac::gamma_fn;

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

/// `ς(α)/(2Γ(2−α)) · ℓ^(α−1) · (ℓ_L^(1−α) + ℓ_R^(1−α))` with ς = Γ(2−α).
fn m_coefficient(alpha: f64, left: f64, right: f64, ell: f64) -> f64 {
    0.5 * ell.powf(alpha - 1.0) * (left.powf(1.0 - alpha) + right.powf(1.0 - alpha))
}

fn example1() -> LinearStretch {
    LinearStretch::new(0.2).unwrap()
}

#[test]
fn classical_gradient_examples() {
    let x = Vec3::new(0.4, -0.2, 1.0);
    let f = classical_f(&example1(), &x, 0.0).unwrap();
    assert_eq!(f, Tensor2::diagonal([1.2, 1.0, 1.0], TWO_POINT));
    assert_eq!(
        classical_f(&Identity, &x, 0.0).unwrap(),
        Tensor2::diagonal([1.0; 3], TWO_POINT)
    );
    let f = classical_f(&ExponentialStretch, &Vec3::new(0.3, 0.0, 0.0), 0.0).unwrap();
    assert_eq!(f.get(0, 0), 0.3f64.exp());
}

#[test]
fn example1_symmetric_horizon_reproduces_classical() {
    let horizon = NonlocalHorizon::symmetric(0.3).unwrap();
    for &alpha in &[0.2, 0.5, 0.9] {
        let f = frac_f_material(
            &example1(),
            &Vec3::new(0.5, 0.1, -0.3),
            0.0,
            &OrderField::uniform(order(alpha)),
            &horizon,
            &GradientOptions::with_m(1000),
        )
        .unwrap();
        assert!(f.approx_eq(&example1().gradient(), 1e-6), "{f:?}");
    }
}

#[test]
fn example1_asymmetric_horizon_scales_by_m() {
    let horizon = NonlocalHorizon::with_scale([[0.9; 3]; 3], [[0.1; 3]; 3], [[0.5; 3]; 3]).unwrap();
    let f = frac_f_material(
        &example1(),
        &Vec3::new(1.0, 1.0, 1.0),
        0.0,
        &OrderField::uniform(order(0.5)),
        &horizon,
        &GradientOptions::with_m(1000),
    )
    .unwrap();
    let m = 0.5f64.powf(-0.5) * (0.9f64.sqrt() + 0.1f64.sqrt()) / 2.0;
    assert!((m - m_coefficient(0.5, 0.9, 0.1, 0.5)).abs() < 1e-15);
    let expected = Tensor2::diagonal([1.2 * m, m, m], TWO_POINT);
    assert!(f.approx_eq(&expected, 1e-6), "{f:?}");
}

#[test]
fn custom_varsigma_enters_m_coefficient() {
    let alpha = 0.4;
    let mut options = GradientOptions::with_m(200);
    options.varsigma = VarsigmaMode::custom(|_| 1.0);
    let f = frac_f_material(
        &Identity,
        &Vec3::zeros(),
        0.0,
        &OrderField::uniform(order(alpha)),
        &NonlocalHorizon::symmetric(0.5).unwrap(),
        &options,
    )
    .unwrap();
    let expected = 1.0 / gamma_fn(2.0 - alpha).unwrap();
    assert!((f.get(1, 1) - expected).abs() < 1e-12);
}

fn nonlinear_motion() -> impl Motion {
    ClosureMotion::new(
        |x: &Vec3, _| {
            Vec3::new(
                x[0] + 0.1 * x[1] * x[1],
                x[1] + 0.2 * x[0].sin(),
                x[2] + 0.05 * x[0] * x[1],
            )
        },
        // inverse is never needed for the material side
        |x: &Vec3, _| *x,
    )
}

#[test]
fn classical_orders_reduce_to_classical_gradient() {
    let classical = OrderField::classical();
    let horizon = NonlocalHorizon::uniform(0.7, 0.2).unwrap();
    let opts = GradientOptions::default();
    let x = Vec3::new(0.3, -0.5, 0.8);
    let motion = nonlinear_motion();
    let f = classical_f(&motion, &x, 0.0).unwrap();
    let fx = frac_f_material(&motion, &x, 0.0, &classical, &horizon, &opts).unwrap();
    assert!(fx.approx_eq(&f, 1e-8));
    // analytic path is bit-exact
    let f = classical_f(&ExponentialStretch, &x, 0.0).unwrap();
    let fx = frac_f_material(&ExponentialStretch, &x, 0.0, &classical, &horizon, &opts).unwrap();
    assert_eq!(fx, f);
}

#[test]
fn spatial_gradient_examples() {
    let opts = GradientOptions::with_m(1000);
    let x = Vec3::new(0.6, 0.2, -0.1);
    let f_inv = frac_f_spatial(
        &example1(),
        &x,
        0.0,
        &OrderField::uniform(order(0.6)),
        &NonlocalHorizon::symmetric(0.25).unwrap(),
        &opts,
    )
    .unwrap();
    let expected = Tensor2::diagonal([1.0 / 1.2, 1.0, 1.0], TWO_POINT_INVERSE);
    assert!(f_inv.approx_eq(&expected, 1e-6));

    let fx = frac_f_spatial(
        &ExponentialStretch,
        &Vec3::new(2.0, 0.0, 0.0),
        0.0,
        &OrderField::classical(),
        &NonlocalHorizon::symmetric(0.25).unwrap(),
        &opts,
    )
    .unwrap();
    let classical_inv = classical_f(&ExponentialStretch, &Vec3::new(2f64.ln(), 0.0, 0.0), 0.0)
        .unwrap()
        .inverse()
        .unwrap();
    assert!(fx.approx_eq(&classical_inv, 1e-12));

    let id = frac_f_spatial(
        &Identity,
        &x,
        0.0,
        &OrderField::uniform(order(0.3)),
        &NonlocalHorizon::symmetric(0.1).unwrap(),
        &opts,
    )
    .unwrap();
    assert!(id.approx_eq(&Tensor2::diagonal([1.0; 3], TWO_POINT_INVERSE), 1e-12));
    assert_eq!(id.legs(), TWO_POINT_INVERSE);
}

#[test]
fn classical_composites() {
    let kin = FractionalKinematics::uniform(
        OrderField::classical(),
        NonlocalHorizon::uniform(0.4, 0.1).unwrap(),
        GradientOptions::default(),
    );
    let p = Point::Material(Vec3::new(0.7, 0.1, 0.2));
    let motion = ExponentialStretch;
    let f = composite_f(GradientKind::Classical, &motion, p, 0.0, &kin).unwrap();
    let fa = composite_f(GradientKind::AlphaComposite, &motion, p, 0.0, &kin).unwrap();
    assert!(fa.approx_eq(&f, 1e-12));
    let fxa = composite_f(GradientKind::AlphaSpatialSide, &motion, p, 0.0, &kin).unwrap();
    assert!(fxa.approx_eq(&Tensor2::identity(Config::Material), 1e-12));
    let f_xa_side = composite_f(GradientKind::AlphaMaterialSide, &motion, p, 0.0, &kin).unwrap();
    assert!(f_xa_side.approx_eq(&Tensor2::identity(Config::Spatial), 1e-12));
    let fx = composite_f(GradientKind::FracSpatial, &motion, p, 0.0, &kin).unwrap();
    assert!(fx.inverse().unwrap().approx_eq(&f, 1e-12));
}

#[test]
fn example1_composites_closed_form() {
    // different anisotropy on the two sides so the scalings do not cancel
    let alpha = 0.5;
    let (ml, mr) = (0.9, 0.1);
    let (sl, sr) = (0.2, 0.6);
    let mut kin = FractionalKinematics::uniform(
        OrderField::uniform(order(alpha)),
        NonlocalHorizon::uniform(ml, mr).unwrap(),
        GradientOptions::with_m(1000),
    );
    kin.spatial_horizon = NonlocalHorizon::uniform(sl, sr).unwrap();
    let m_mat = m_coefficient(alpha, ml, mr, 0.5 * (ml + mr));
    let m_spa = m_coefficient(alpha, sl, sr, 0.5 * (sl + sr));
    let p = Point::Material(Vec3::new(1.0, 2.0, 3.0));
    let motion = example1();

    let fa = composite_f(GradientKind::AlphaComposite, &motion, p, 0.0, &kin).unwrap();
    let expected = motion.gradient().scale(m_mat / m_spa);
    assert!(fa.approx_eq(&expected, 1e-6), "{fa:?}");
    assert_eq!(fa.legs(), TWO_POINT);

    let fxa = composite_f(GradientKind::AlphaSpatialSide, &motion, p, 0.0, &kin).unwrap();
    assert!(fxa.approx_eq(&Tensor2::identity(Config::Material).scale(m_spa), 1e-6));
    let f_xa_side = composite_f(GradientKind::AlphaMaterialSide, &motion, p, 0.0, &kin).unwrap();
    assert!(f_xa_side.approx_eq(&Tensor2::identity(Config::Spatial).scale(m_mat), 1e-6));
    assert!(f_xa_side.is_one_configuration() && fxa.is_one_configuration());
}

#[test]
fn identity_motion_composites_are_identity() {
    let kin = FractionalKinematics::uniform(
        OrderField::from_rows([[0.3, 0.5, 0.7], [0.9, 0.4, 0.6], [0.2, 0.8, 1.0]]).unwrap(),
        NonlocalHorizon::symmetric(0.2).unwrap(),
        GradientOptions::with_m(64),
    );
    let p = Point::Spatial(Vec3::new(0.1, 0.2, 0.3));
    for kind in GradientKind::ALL {
        let g = composite_f(kind, &Identity, p, 0.0, &kin).unwrap();
        assert!((g.entries() - Mat3::identity()).amax() < 1e-12, "{kind:?}");
        assert_eq!(g.legs(), kind.legs());
    }
}

#[test]
fn displacement_gradients() {
    let orders = OrderField::uniform(order(0.4));
    let sym = NonlocalHorizon::symmetric(0.3).unwrap();
    let opts = GradientOptions::with_m(500);
    let x = Vec3::new(0.5, 0.5, 0.5);

    let g = material_displacement_gradient(&Identity, &x, 0.0, &orders, &sym, &opts).unwrap();
    assert!(g.max_abs() < 1e-12);
    let g = material_displacement_gradient(&example1(), &x, 0.0, &orders, &sym, &opts).unwrap();
    assert!(g.approx_eq(&Tensor2::diagonal([0.2, 0.0, 0.0], TWO_POINT), 1e-6));
    let g = material_displacement_gradient(
        &ExponentialStretch,
        &x,
        0.0,
        &OrderField::classical(),
        &sym,
        &opts,
    )
    .unwrap();
    assert!((g.get(0, 0) - (0.5f64.exp() - 1.0)).abs() < 1e-14);

    let g = spatial_displacement_gradient(&Identity, &x, 0.0, &orders, &sym, &opts).unwrap();
    assert!(g.max_abs() < 1e-12);
    let g = spatial_displacement_gradient(&example1(), &x, 0.0, &orders, &sym, &opts).unwrap();
    assert!((g.get(0, 0) - (1.0 - 1.0 / 1.2)).abs() < 1e-6);
    let g = spatial_displacement_gradient(
        &ExponentialStretch,
        &Vec3::new(2.0, 0.0, 0.0),
        0.0,
        &OrderField::classical(),
        &sym,
        &opts,
    )
    .unwrap();
    assert!((g.get(0, 0) - 0.5).abs() < 1e-14);
}

#[test]
fn small_strain_1d_examples() {
    let constant = Fn1D::with_derivative(|_| 4.0, |_| 0.0);
    assert_eq!(small_strain_1d(&constant, 0.2, order(0.5), 0.3, 0.1, 0.2, 50).unwrap(), 0.0);

    let eps = 0.013;
    let linear = Fn1D::with_derivative(move |x| eps * x, move |_| eps);
    for &alpha in &[0.1, 0.5, 0.95] {
        let e = small_strain_1d(&linear, 1.0, order(alpha), 0.4, 0.4, 0.4, 100).unwrap();
        assert!((e - eps).abs() < 1e-14);
    }

    let u = Fn1D::with_derivative(|x: f64| x.sin(), |x: f64| x.cos());
    let e = small_strain_1d(&u, 0.3, FracOrder::CLASSICAL, 0.5, 0.1, 0.3, 10).unwrap();
    assert_eq!(e, 0.3f64.cos());

    assert!(small_strain_1d(&u, 0.3, order(0.5), 0.0, 0.1, 0.3, 10).is_err());
}

#[test]
fn line_element_transport() {
    let v = LineElement::material(Vec3::new(1.0, 2.0, 3.0));
    let id = Tensor2::identity(Config::Material);
    let w = transport_line_element(GradientKind::AlphaSpatialSide, &v, &id).unwrap();
    assert_eq!(w, v);

    let alpha = 0.5;
    let horizon = NonlocalHorizon::with_scale([[0.9; 3]; 3], [[0.1; 3]; 3], [[0.5; 3]; 3]).unwrap();
    let fx = frac_f_material(
        &example1(),
        &Vec3::new(1.0, 0.0, 0.0),
        0.0,
        &OrderField::uniform(order(alpha)),
        &horizon,
        &GradientOptions::with_m(1000),
    )
    .unwrap();
    let out = transport_line_element(
        GradientKind::FracMaterial,
        &LineElement::material(Vec3::new(1.0, 0.0, 0.0)),
        &fx,
    )
    .unwrap();
    assert_eq!(out.config, Config::Spatial);
    let m = m_coefficient(alpha, 0.9, 0.1, 0.5);
    assert!((out.components - Vec3::new(1.2 * m, 0.0, 0.0)).amax() < 1e-6);

    // dX -> dX̃ at α = 1 leaves the element unchanged
    let kin = FractionalKinematics::uniform(
        OrderField::classical(),
        NonlocalHorizon::symmetric(0.1).unwrap(),
        GradientOptions::default(),
    );
    let g = composite_f(
        GradientKind::AlphaSpatialSide,
        &ExponentialStretch,
        Point::Material(Vec3::new(0.4, 0.0, 0.0)),
        0.0,
        &kin,
    )
    .unwrap();
    let dx = LineElement::material(Vec3::new(0.3, -0.2, 0.7));
    let dxt = transport_line_element(GradientKind::AlphaSpatialSide, &dx, &g).unwrap();
    assert!((dxt.components - dx.components).amax() < 1e-14);

    // wrong configuration or wrong kind
    assert!(transport_line_element(GradientKind::FracMaterial, &LineElement::spatial(Vec3::x()), &fx).is_err());
    assert!(transport_line_element(GradientKind::FracSpatial, &v, &fx).is_err());
}

#[test]
fn anisotropic_horizon_breaks_rigid_translation() {
    let motion = Translation {
        offset: Vec3::new(3.0, -1.0, 0.5),
    };
    let alpha = 0.5;
    let x = Vec3::new(0.2, 0.3, 0.4);
    let orders = OrderField::uniform(order(alpha));
    let opts = GradientOptions::with_m(100);
    let aniso = NonlocalHorizon::from_ratio(0.5, 9.0).unwrap();
    let f = frac_f_material(&motion, &x, 0.0, &orders, &aniso, &opts).unwrap();
    let (l, r) = split_by_ratio(0.5, 9.0);
    let m = m_coefficient(alpha, l, r, 0.5);
    assert!((f.get(0, 0) - 1.0).abs() > 0.1);
    assert!((f.get(0, 0) - m).abs() < 1e-12);

    let iso = NonlocalHorizon::from_ratio(0.5, 1.0).unwrap();
    let f = frac_f_material(&motion, &x, 0.0, &orders, &iso, &opts).unwrap();
    assert!((f.entries() - Mat3::identity()).amax() < 1e-12);
}

#[test]
fn separable_motion_has_no_off_diagonal_entries() {
    let motion = ClosureMotion::new(
        |x: &Vec3, _| Vec3::new(x[0].exp(), x[1].powi(3) + x[1], x[2].sin() + 2.0 * x[2]),
        |x: &Vec3, _| *x,
    );
    let f = frac_f_material(
        &motion,
        &Vec3::new(0.3, 0.4, 0.5),
        0.0,
        &OrderField::uniform(order(0.6)),
        &NonlocalHorizon::uniform(0.2, 0.1).unwrap(),
        &GradientOptions::with_m(100),
    )
    .unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(f.get(i, j).abs() < 1e-10, "({i},{j}) = {}", f.get(i, j));
            }
        }
    }
}

#[test]
fn refinement_changes_entries_less_each_time() {
    let x = Vec3::new(1.0, 0.0, 0.0);
    let orders = OrderField::uniform(order(0.5));
    let horizon = NonlocalHorizon::uniform(0.4, 0.2).unwrap();
    let f11 = |m| {
        frac_f_material(&ExponentialStretch, &x, 0.0, &orders, &horizon, &GradientOptions::with_m(m))
            .unwrap()
            .get(0, 0)
    };
    let (a, b, c, d) = (f11(16), f11(32), f11(64), f11(128));
    let (d1, d2, d3) = ((b - a).abs(), (c - b).abs(), (d - c).abs());
    // successive differences shrink at least at rate 2^1.5
    assert!(d2 < d1 / 2.8 && d3 < d2 / 2.8, "{d1:e} {d2:e} {d3:e}");
}

#[test]
fn boundary_policies() {
    let mut opts = GradientOptions::with_m(50);
    opts.domain = BodyBox::new([0.0, -1.0, -1.0], [2.0, 1.0, 1.0]).unwrap();
    let orders = OrderField::uniform(order(0.5));
    let horizon = NonlocalHorizon::uniform(0.5, 0.1).unwrap();
    let near_edge = Vec3::new(0.2, 0.0, 0.0);
    let err = frac_f_material(&example1(), &near_edge, 0.0, &orders, &horizon, &opts).unwrap_err();
    assert!(matches!(err, Error::OutsideBody { axis: 0, .. }));
    assert!(err.is_numerical());

    opts.boundary = BoundaryPolicy::Clamp;
    let f = frac_f_material(&example1(), &near_edge, 0.0, &orders, &horizon, &opts).unwrap();
    // truncated terminals: (0, 0.3) instead of (-0.3, 0.3)
    let m = 0.5 * 0.3f64.powf(-0.5) * (0.2f64.sqrt() + 0.1f64.sqrt());
    assert!((f.get(0, 0) - 1.2 * m).abs() < 1e-10);

    let on_edge = Vec3::new(0.0, 0.0, 0.0);
    assert!(frac_f_material(&example1(), &on_edge, 0.0, &orders, &horizon, &opts).is_err());
}

#[test]
fn horizon_validation() {
    assert!(NonlocalHorizon::uniform(0.0, 1.0).is_err());
    assert!(NonlocalHorizon::uniform(1.0, -1.0).is_err());
    assert!(NonlocalHorizon::from_ratio(1.0, 0.0).is_err());
    let h = NonlocalHorizon::from_ratio(0.5, 9.0).unwrap();
    assert!((h.left(0, 0) - 0.9).abs() < 1e-15 && (h.right(2, 1) - 0.1).abs() < 1e-15);
    assert_eq!(h.scale(1, 1), 0.5);
    let h = h.set_scale(2.0).unwrap();
    assert_eq!(h.scale(0, 2), 2.0);
    assert!(OrderField::from_rows([[1.0; 3], [1.0; 3], [1.0, 1.0, 1.2]]).is_err());
}

fn affine_strategy() -> impl Strategy<Value = Affine> {
    (prop::array::uniform9(-0.3f64..0.3), prop::array::uniform3(-2.0f64..2.0)).prop_filter_map(
        "invertible",
        |(a, c)| {
            let m = Mat3::identity() + Mat3::from_row_slice(&a);
            Affine::new(m, Vec3::from_row_slice(&c)).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classical_reduction_suite(motion in affine_strategy(),
                                 p in prop::array::uniform3(-1.0f64..1.0),
                                 l in 0.05f64..1.0, r in 0.05f64..1.0) {
        let kin = FractionalKinematics::uniform(
            OrderField::classical(),
            NonlocalHorizon::uniform(l, r).unwrap(),
            GradientOptions::default(),
        );
        let point = Point::Material(Vec3::from_row_slice(&p));
        let f = composite_f(GradientKind::Classical, &motion, point, 0.0, &kin).unwrap();
        let fx = composite_f(GradientKind::FracMaterial, &motion, point, 0.0, &kin).unwrap();
        let fs = composite_f(GradientKind::FracSpatial, &motion, point, 0.0, &kin).unwrap();
        let fa = composite_f(GradientKind::AlphaComposite, &motion, point, 0.0, &kin).unwrap();
        let fxa = composite_f(GradientKind::AlphaSpatialSide, &motion, point, 0.0, &kin).unwrap();
        let f_xa_side = composite_f(GradientKind::AlphaMaterialSide, &motion, point, 0.0, &kin).unwrap();
        prop_assert!(fx.approx_eq(&f, 1e-8));
        prop_assert!(fs.inverse().unwrap().approx_eq(&f, 1e-8));
        prop_assert!(fa.approx_eq(&f, 1e-8));
        prop_assert!(fxa.approx_eq(&Tensor2::identity(Config::Material), 1e-8));
        prop_assert!(f_xa_side.approx_eq(&Tensor2::identity(Config::Spatial), 1e-8));
    }

    #[test]
    fn affine_motion_with_symmetric_horizon_keeps_gradient(
        motion in affine_strategy(),
        p in prop::array::uniform3(-1.0f64..1.0),
        alpha in 0.05f64..1.0, ell in 0.01f64..1.0)
    {
        let f = classical_f(&motion, &Vec3::from_row_slice(&p), 0.0).unwrap();
        let fx = frac_f_material(
            &motion,
            &Vec3::from_row_slice(&p),
            0.0,
            &OrderField::uniform(order(alpha)),
            &NonlocalHorizon::symmetric(ell).unwrap(),
            &GradientOptions::with_m(20),
        ).unwrap();
        prop_assert!(fx.approx_eq(&f, 1e-10), "{:?} vs {:?}", fx, f);
    }
}
