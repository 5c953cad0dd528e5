use minkgeo::curve::*;
use minkgeo::jet::{Scalar, Taylor};
use minkgeo::lorentz::CausalClass;
use minkgeo::vec3::{self, Ambient, V3};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn close3(a: V3, b: V3, tol: f64) -> bool {
    vec3::max_abs_diff(a, b) <= tol
}

#[test]
fn lightlike_helix_is_lightlike_and_biregular() {
    let r = 1.0;
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-5.0, 5.0), move |t: Taylor| {
        [t.cos() * r, t.sin() * r, t * r]
    });
    let rep = classify_curve(&c, 16).unwrap();
    assert_eq!(rep.constant_class, Some(CausalClass::Lightlike));
    assert!(rep.biregular);
    assert!(!rep.admissible);
}

#[test]
fn semi_lightlike_graph_has_lightlike_osculating_plane() {
    let c = CurveModel::semi_lightlike_graph((-2.0, 2.0), |s| s * s * 0.5);
    let rep = classify_curve(&c, 8).unwrap();
    assert_eq!(rep.constant_class, Some(CausalClass::Spacelike));
    assert!(rep.samples.iter().all(|s| s.osculating == Some(CausalClass::Lightlike)));
    assert!(!rep.admissible);
}

#[test]
fn timelike_line_is_not_biregular() {
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-1.0, 1.0), |t: Taylor| {
        [Taylor::constant(0.0), Taylor::constant(0.0), t]
    });
    let rep = classify_curve(&c, 4).unwrap();
    assert_eq!(rep.constant_class, Some(CausalClass::Timelike));
    assert!(!rep.biregular);
}

#[test]
fn stationary_point_is_rejected() {
    let c = CurveModel::from_jets(Ambient::Euclidean3, (-1.0, 1.0), |t: Taylor| [t * t, t * t * t, t * 0.0]);
    assert!(matches!(classify_curve(&c, 3), Err(CurveError::NotRegular { .. })));
}

#[test]
fn arc_photon_reparametrization_of_helix() {
    let r: f64 = 2.0;
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-3.0, 3.0), move |t: Taylor| {
        [t.cos() * r, t.sin() * r, t * r]
    });
    let re = reparametrize(&c, ReparamMode::ArcPhoton).unwrap();
    for phi in [-2.0, -0.5, 0.0, 0.7, 3.0] {
        let j = re.jet(phi).unwrap();
        let x = phi / r.sqrt();
        let want = [r * x.cos(), r * x.sin(), r.sqrt() * phi];
        assert!(close3(j.value, want, 1e-10), "{phi}: {:?} vs {want:?}", j.value);
        assert!(close(Ambient::Lorentz3.dot(j.d2, j.d2), 1.0, 1e-10));
    }
}

#[test]
fn circle_arclength_matches_quadrature() {
    let r = 3.0;
    let c = CurveModel::from_jets(Ambient::Euclidean3, (0.0, 4.0), move |t: Taylor| {
        [t.cos() * r, t.sin() * r, t * 0.0]
    });
    for t in [0.5, 1.0, 3.7] {
        let s = new_parameter(&c, ReparamMode::UnitSpeed, t).unwrap();
        let oracle = minkgeo::quad::adaptive_simpson(|_| r, 0.0, t, 1e-12);
        assert!(close(s, oracle, 1e-12));
    }
    let u = reparametrize(&c, ReparamMode::UnitSpeed).unwrap();
    let j = u.jet(5.0).unwrap();
    assert!(close(vec3::norm_e(j.d1), 1.0, 1e-12));
    assert!(close(vec3::norm_e(j.d2), 1.0 / r, 1e-10));
}

#[test]
fn unit_speed_line_is_unchanged() {
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-1.0, 2.0), |t: Taylor| [t, t * 0.0, t * 0.0]);
    let u = reparametrize(&c, ReparamMode::UnitSpeed).unwrap();
    for t in [-0.9, 0.3, 1.9] {
        assert!(close3(u.position(t).unwrap(), [t, 0.0, 0.0], 1e-13));
    }
}

#[test]
fn timelike_reparametrization_keeps_third_derivative() {
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-1.0, 1.0), |t: Taylor| {
        [t * 0.5, (t * 0.3).sin() * 0.2, t * 2.0 + t * t * 0.1]
    });
    let u = reparametrize(&c, ReparamMode::UnitSpeed).unwrap();
    let h = 1e-3;
    let s = 0.4;
    let j = u.jet(s).unwrap();
    let (p, m) = (u.jet(s + h).unwrap(), u.jet(s - h).unwrap());
    for i in 0..3 {
        let fd = (p.d2[i] - m.d2[i]) / (2.0 * h);
        assert!(close(j.d3[i], fd, 1e-6), "{i}: {} vs {fd}", j.d3[i]);
    }
}

#[test]
fn spacelike_curve_with_timelike_normal() {
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-2.0, 2.0), |s: Taylor| [s * 0.0, s.sinh(), s.cosh()]);
    let f = frenet_apparatus(&c, 0.3).unwrap();
    assert!(close(f.kappa, 1.0, 1e-14));
    assert!(close(f.tau, 0.0, 1e-14));
    assert_eq!((f.eps, f.eps_normal), (1, -1));
    assert!(f.residual < 1e-12);
}

fn det_torsion(c: &CurveModel, s: f64) -> f64 {
    let j = c.jet(s).unwrap();
    let k2 = c.ambient().dot(j.d2, j.d2).abs();
    vec3::det3(j.d1, j.d2, j.d3) / k2
}

#[test]
fn frenet_torsion_agrees_with_triple_product() {
    let curves = [
        StandardCurve::Beta1 { a: 1.5, b: 0.7 },
        StandardCurve::Beta2 { a: 0.5, b: 1.2 },
        StandardCurve::Beta2 { a: 1.5, b: 0.4 },
        StandardCurve::Beta3 { a: 0.6, b: 1.3 },
        StandardCurve::Beta3 { a: 1.3, b: 0.6 },
        StandardCurve::Beta4 { a: 0.8, b: 0.9 },
        StandardCurve::Beta5 { a: 0.7 },
        StandardCurve::Beta6 { a: 0.7 },
    ];
    for kind in curves {
        let c = standard_curve(kind).unwrap();
        for s in [-1.0, 0.2, 2.5] {
            let f = frenet_apparatus(&c, s).unwrap();
            assert!(close(f.tau, det_torsion(&c, s), 1e-10), "{kind:?}");
            assert!(f.residual < 1e-10, "{kind:?}: {}", f.residual);
            assert!(close(vec3::det3(f.tangent, f.normal, f.binormal), 1.0, 1e-12));
            let amb = c.ambient();
            assert!(close(amb.dot(f.binormal, f.binormal), f.eps_binormal as f64, 1e-12));
        }
    }
}

#[test]
fn planar_circle_after_unit_speed() {
    let r = 2.5;
    let c = CurveModel::from_jets(Ambient::Euclidean3, (-3.0, 3.0), move |t: Taylor| {
        [t.cos() * r, t.sin() * r, t * 0.0]
    });
    let u = reparametrize(&c, ReparamMode::UnitSpeed).unwrap();
    let f = frenet_apparatus(&u, 1.0).unwrap();
    assert!(close(f.kappa, 1.0 / r, 1e-10));
    assert!(close(f.tau, 0.0, 1e-10));
}

#[test]
fn beta4_ratio_is_constant() {
    let c = standard_curve(StandardCurve::Beta4 { a: 1.0, b: 2.0 }).unwrap();
    let h = helix_classify(&c).unwrap();
    assert!(h.is_helix);
    assert_eq!(h.family, Some(StandardFamily::Beta4));
    assert_eq!(h.helix_type, Some(HelixType::Hyperbolic));
}

#[test]
fn lightlike_helix_pseudo_torsion_and_binormal() {
    for r in [0.25, 1.0, 4.0] {
        let c = standard_curve(StandardCurve::Gamma2 { r }).unwrap();
        for phi in [0.0, 0.9, -2.0] {
            let d = cartan_apparatus(&c, phi).unwrap();
            assert!(!d.flipped);
            assert!(close(d.pseudo_torsion, -1.0 / (2.0 * r), 1e-12));
            let x = phi / r.sqrt();
            let want = vec3::scale(1.0 / (2.0 * r.sqrt()), [x.sin(), -x.cos(), 1.0]);
            assert!(close3(d.binormal, want, 1e-12));
            assert!(d.residual < 1e-12);
            assert!(d.det > 0.0);
        }
    }
}

#[test]
fn hyperbolic_lightlike_helix_matches_fixture() {
    let raw = include_str!("fixtures/lightlike_helix.json");
    let fx: serde_json::Value = serde_json::from_str(raw).unwrap();
    for case in fx["gamma1"].as_array().unwrap() {
        let r = case["r"].as_f64().unwrap();
        let want = case["ctorsion"].as_f64().unwrap();
        let c = standard_curve(StandardCurve::Gamma1 { r }).unwrap();
        let d = cartan_apparatus(&c, 0.4).unwrap();
        assert!(close(d.pseudo_torsion, want, 1e-12), "r = {r}");
        let b0 = case["binormal_at_zero"].as_array().unwrap();
        let b0: Vec<f64> = b0.iter().map(|x| x.as_f64().unwrap()).collect();
        let d0 = cartan_apparatus(&c, 0.0).unwrap();
        assert!(close3(d0.binormal, [b0[0], b0[1], b0[2]], 1e-12));
    }
}

#[test]
fn semi_lightlike_graph_frame() {
    let c = CurveModel::semi_lightlike_graph((-3.0, 3.0), |s: Taylor| s.cosh());
    for s in [-1.2, 0.0, 0.8] {
        let d = cartan_apparatus(&c, s).unwrap();
        assert!(close(d.pseudo_torsion, f64::tanh(s), 1e-12));
        let (f1, f2) = (s.sinh(), s.cosh());
        let want = vec3::scale(1.0 / (2.0 * f2), [2.0 * f1, f1 * f1 - 1.0, f1 * f1 + 1.0]);
        assert!(close3(d.binormal, want, 1e-12));
    }
}

#[test]
fn reflected_semi_lightlike_curve_is_repaired() {
    let c = CurveModel::semi_lightlike_graph((-3.0, 3.0), |s: Taylor| s.cosh()).reflected();
    let d = cartan_apparatus(&c, 0.5).unwrap();
    assert!(d.flipped);
    assert!(close(d.t, -0.5, 0.0));
    assert!(close(d.pseudo_torsion, f64::tanh(-0.5), 1e-12));
}

#[test]
fn negatively_oriented_lightlike_curve_is_reported() {
    let c = standard_curve(StandardCurve::Gamma3).unwrap();
    let raw = cartan_frame_unoriented(&c, 0.0).unwrap();
    assert!(close(raw.det, -1.0, 1e-12));
    assert!(close(raw.pseudo_torsion, 0.0, 1e-14));
    assert!(matches!(cartan_apparatus(&c, 0.0), Err(CurveError::NoAdmissibleBinormal { .. })));
}

#[test]
fn horocycle_has_vanishing_pseudo_torsion() {
    let c = standard_curve(StandardCurve::Horocycle { c: -1.0 }).unwrap();
    for s in [-1.0, 0.0, 2.0] {
        let p = c.position(s).unwrap();
        assert!(close(Ambient::Lorentz3.dot(p, p), -1.0, 1e-12));
        let d = cartan_apparatus(&c, s).unwrap();
        assert!(close(d.pseudo_torsion, 0.0, 1e-14));
    }
}

#[test]
fn constant_pseudo_torsion_semi_lightlike() {
    let c = standard_curve(StandardCurve::ConstantCtorsion { ctorsion: 0.7, b: 1.0, c: 0.2, d: -1.0 }).unwrap();
    for s in [-1.0, 0.5] {
        assert!(close(cartan_apparatus(&c, s).unwrap().pseudo_torsion, 0.7, 1e-12));
    }
}

#[test]
fn lightlike_helix_types() {
    let h1 = helix_classify(&standard_curve(StandardCurve::Gamma1 { r: 1.0 }).unwrap()).unwrap();
    assert_eq!(h1.helix_type, Some(HelixType::Hyperbolic));
    let axis = h1.axis.unwrap();
    assert!(close(Ambient::Lorentz3.dot(axis, axis), 2.0 / h1.invariant, 1e-10));
    let h2 = helix_classify(&standard_curve(StandardCurve::Gamma2 { r: 1.0 }).unwrap()).unwrap();
    assert_eq!((h2.helix_type, h2.family), (Some(HelixType::Elliptic), Some(StandardFamily::Gamma2)));
    let h3 = helix_classify(&standard_curve(StandardCurve::Gamma3).unwrap()).unwrap();
    assert_eq!((h3.helix_type, h3.family), (Some(HelixType::Parabolic), Some(StandardFamily::Gamma3)));
}

#[test]
fn timelike_parabolic_helix() {
    let h = helix_classify(&standard_curve(StandardCurve::Beta5 { a: 1.3 }).unwrap()).unwrap();
    assert_eq!(h.family, Some(StandardFamily::Beta5));
    assert_eq!(h.helix_type, Some(HelixType::Parabolic));
}

#[test]
fn planar_curve_has_binormal_axis() {
    let c = standard_curve(StandardCurve::Beta1 { a: 2.0, b: 0.0 }).unwrap();
    let h = helix_classify(&c).unwrap();
    let f = frenet_apparatus(&c, c.sample_params(33)[0]).unwrap();
    assert!(close3(h.axis.unwrap(), f.binormal, 1e-14));
}

#[test]
fn non_helix_is_detected() {
    let c = CurveModel::from_jets(Ambient::Euclidean3, (0.5, 2.0), |t: Taylor| [t, t * t, t * t * t]);
    let u = reparametrize(&c, ReparamMode::UnitSpeed).unwrap();
    let h = helix_classify(&u).unwrap();
    assert!(!h.is_helix, "{h:?}");
    assert!(h.axis.is_none());
}

#[test]
fn black_box_curve_with_relaxed_tolerance() {
    let c = CurveModel::black_box(Ambient::Euclidean3, (-2.0, 2.0), |s| [s.cos(), s.sin(), 0.0]);
    let f = frenet_apparatus(&c, 0.3).unwrap();
    assert!(close(f.kappa, 1.0, 1e-6));
    assert!(close(f.tau, 0.0, 1e-3));
}

#[test]
fn standard_parameter_checks() {
    assert!(standard_curve(StandardCurve::Beta2 { a: 1.0, b: 1.0 }).is_err());
    assert!(standard_curve(StandardCurve::Beta3 { a: 1.0, b: -1.0 }).is_err());
    assert!(standard_curve(StandardCurve::Gamma2 { r: 0.0 }).is_err());
    assert!(standard_curve(StandardCurve::Horocycle { c: 1.0 }).is_err());
}

fn gamma2_frame() -> [V3; 3] {
    let c = standard_curve(StandardCurve::Gamma2 { r: 1.0 }).unwrap();
    let d = cartan_apparatus(&c, 0.0).unwrap();
    [d.tangent, d.normal, d.binormal]
}

#[test]
fn reconstruct_elliptic_lightlike_helix() {
    let spec = ReconstructionSpec {
        kind: ReconstructionKind::Lightlike { ctorsion: Profile::constant(-0.5) },
        ambient: Ambient::Lorentz3,
        initial_point: [1.0, 0.0, 0.0],
        initial_frame: gamma2_frame(),
        start: 0.0,
        end: 4.9,
        step: 1e-3,
    };
    let rec = reconstruct_curve(&spec).unwrap();
    let g = standard_curve(StandardCurve::Gamma2 { r: 1.0 }).unwrap();
    let err = rec
        .samples
        .iter()
        .map(|s| vec3::max_abs_diff(s.point, g.position(s.param).unwrap()))
        .fold(0.0, f64::max);
    assert!(err < 1e-5, "{err}");
    assert!(rec.drift.max_drift < 1e-6);
}

#[test]
fn parabolic_reconstruction_is_congruent_to_cubic() {
    let frame = gamma2_frame();
    let spec = ReconstructionSpec {
        kind: ReconstructionKind::Lightlike { ctorsion: Profile::constant(0.0) },
        ambient: Ambient::Lorentz3,
        initial_point: [0.0; 3],
        initial_frame: frame,
        start: 0.0,
        end: 2.0,
        step: 1e-3,
    };
    let rec = reconstruct_curve(&spec).unwrap();
    // The cubic's own frame at 0 is negatively oriented, so the congruence
    // sends the positive frame onto (T, N, a''') of the cubic.
    let cubic = standard_curve(StandardCurve::Gamma3).unwrap();
    let j = cubic.jet(0.0).unwrap();
    let target = [j.d1, j.d2, j.d3];
    let map = |x: V3| -> V3 {
        let amb = Ambient::Lorentz3;
        let g = [
            [amb.dot(frame[0], frame[0]), amb.dot(frame[0], frame[1]), amb.dot(frame[0], frame[2])],
            [amb.dot(frame[1], frame[0]), amb.dot(frame[1], frame[1]), amb.dot(frame[1], frame[2])],
            [amb.dot(frame[2], frame[0]), amb.dot(frame[2], frame[1]), amb.dot(frame[2], frame[2])],
        ];
        let rhs = [amb.dot(x, frame[0]), amb.dot(x, frame[1]), amb.dot(x, frame[2])];
        let m = minkgeo::lorentz::Matrix::from_rows(&g.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        let coef = m.solve(&rhs).unwrap();
        let mut out = [0.0; 3];
        for k in 0..3 {
            out = vec3::axpy(out, coef[k], target[k]);
        }
        out
    };
    for s in rec.samples.iter().step_by(100) {
        let mapped = map(s.point);
        assert!(close3(mapped, cubic.position(s.param).unwrap(), 1e-9));
    }
}

#[test]
fn euclidean_unit_circle_reconstruction() {
    let spec = ReconstructionSpec {
        kind: ReconstructionKind::Admissible { kappa: Profile::constant(1.0), tau: Profile::constant(0.0) },
        ambient: Ambient::Euclidean3,
        initial_point: [1.0, 0.0, 0.0],
        initial_frame: [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
        start: 0.0,
        end: std::f64::consts::TAU,
        step: 1e-3,
    };
    let rec = reconstruct_curve(&spec).unwrap();
    for s in &rec.samples {
        assert!(close3(s.point, [s.param.cos(), s.param.sin(), 0.0], 1e-9));
    }
}

#[test]
fn invalid_frames_and_steps() {
    let mut spec = ReconstructionSpec {
        kind: ReconstructionKind::Admissible { kappa: Profile::constant(1.0), tau: Profile::constant(0.0) },
        ambient: Ambient::Euclidean3,
        initial_point: [0.0; 3],
        initial_frame: [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]],
        start: 0.0,
        end: 1.0,
        step: 0.1,
    };
    assert!(matches!(reconstruct_curve(&spec), Err(CurveError::InvalidFrame(_))));
    spec.initial_frame = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    spec.step = 0.0;
    assert!(matches!(reconstruct_curve(&spec), Err(CurveError::InvalidStep(_))));
}

#[test]
fn semi_lightlike_curves_are_planar() {
    let c = CurveModel::semi_lightlike_graph((-2.0, 2.0), |s: Taylor| s.cosh() + s * s * s * 0.1);
    let s0 = -1.0;
    let p0 = c.position(s0).unwrap();
    let v0 = cartan_apparatus(&c, s0).unwrap().normal;
    for s in [-0.5, 0.0, 0.7, 1.5] {
        let d = cartan_apparatus(&c, s).unwrap();
        let integral = minkgeo::quad::adaptive_simpson(
            |x| cartan_apparatus(&c, x).unwrap().pseudo_torsion,
            s0,
            s,
            1e-12,
        );
        let v = vec3::scale((-integral).exp(), d.normal);
        assert!(close3(v, v0, 1e-8));
        let p = c.position(s).unwrap();
        assert!(Ambient::Lorentz3.dot(vec3::sub(p, p0), v0).abs() < 1e-8);
    }
}

#[test]
fn lightlike_helices_are_not_planar() {
    let c = standard_curve(StandardCurve::Gamma2 { r: 1.0 }).unwrap();
    let pts: Vec<V3> = [0.0, 0.7, 1.4, 2.1].iter().map(|t| c.position(*t).unwrap()).collect();
    let d = vec3::det3(vec3::sub(pts[1], pts[0]), vec3::sub(pts[2], pts[0]), vec3::sub(pts[3], pts[0]));
    assert!(d.abs() > 1e-2);
}

#[test]
fn arc_photon_parameters_differ_by_constant() {
    let c = CurveModel::from_jets(Ambient::Lorentz3, (-1.0, 3.0), |t: Taylor| {
        [t.cos() * 2.0, t.sin() * 2.0, t * 2.0]
    });
    let shifted = CurveModel::from_jets(Ambient::Lorentz3, (-1.0, 3.0), |t: Taylor| {
        let u = t - 0.5;
        [u.cos() * 2.0, u.sin() * 2.0, u * 2.0]
    });
    let ts = [-0.5, 0.0, 1.0, 2.0, 2.5];
    let a: Vec<f64> = ts.iter().map(|t| new_parameter(&c, ReparamMode::ArcPhoton, *t).unwrap()).collect();
    let b: Vec<f64> = ts.iter().map(|t| new_parameter(&shifted, ReparamMode::ArcPhoton, t + 0.5).unwrap()).collect();
    let n = ts.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let var: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    assert!(close(cov / var, 1.0, 1e-6));
}
