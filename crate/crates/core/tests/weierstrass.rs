use minkgeo::complex::Cplx;
use minkgeo::split::Split;
use minkgeo::surface::{curvatures, fundamental_forms, SurfaceModel, UvRect};
use minkgeo::vec3::{self, V3};
use minkgeo::weierstrass::*;

const GRID: usize = 16;

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> UvRect {
    UvRect::new(u0, u1, v0, v1).unwrap()
}

fn constancy(g: &GeneratedSurface, oracle: &SurfaceModel) -> f64 {
    let diffs: Vec<V3> = g
        .unmasked()
        .map(|(u, v)| vec3::sub(g.surface.position(u, v).unwrap(), oracle.position(u, v).unwrap()))
        .collect();
    let first = diffs[0];
    diffs.iter().map(|d| vec3::max_abs_diff(*d, first)).fold(0.0, f64::max)
}

fn named(kind: NamedKind) -> (NamedWeierstrass, GeneratedSurface) {
    let n = named_weierstrass(kind).unwrap();
    let g = generate(n.data.clone(), GRID, GRID).unwrap();
    (n, g)
}

#[test]
fn closed_forms_match_generated_surfaces() {
    for kind in NamedKind::ALL {
        let (n, g) = named(kind);
        let oracle = n.integrated_form.as_ref().unwrap_or(&n.closed_form);
        let dev = constancy(&g, oracle);
        assert!(dev < 1e-8, "{kind:?}: {dev}");
    }
}

#[test]
fn basepoint_is_pinned_to_the_closed_form() {
    for kind in [NamedKind::EnneperR3, NamedKind::CatalanR3, NamedKind::HennebergR3, NamedKind::EnneperL3Timelike] {
        let (n, g) = named(kind);
        let (u0, v0) = n.data.basepoint;
        let diff = vec3::max_abs_diff(g.surface.position(u0, v0).unwrap(), n.closed_form.position(u0, v0).unwrap());
        assert!(diff < 1e-12, "{kind:?}");
        let (u, v) = g.unmasked().nth(7).unwrap();
        let diff = vec3::max_abs_diff(g.surface.position(u, v).unwrap(), n.closed_form.position(u, v).unwrap());
        assert!(diff < 1e-9, "{kind:?}: {diff}");
    }
}

#[test]
fn printed_catenoid_heights_are_twice_the_integral() {
    for kind in [NamedKind::CatenoidL3Spacelike, NamedKind::CatenoidL3Timelike] {
        let (n, g) = named(kind);
        assert!(constancy(&g, &n.closed_form) > 1e-2, "{kind:?}");
        let a = (1.2, 0.2);
        let b = (2.2, -0.3);
        let rise = |m: &SurfaceModel| vec3::sub(m.position(b.0, b.1).unwrap(), m.position(a.0, a.1).unwrap());
        let (printed, generated) = (rise(&n.closed_form), rise(&g.surface));
        let k = if kind == NamedKind::CatenoidL3Spacelike { 2 } else { 1 };
        assert!((printed[k] - 2.0 * generated[k]).abs() < 1e-9);
        assert!((printed[0] - generated[0]).abs() < 1e-9);
    }
}

#[test]
fn integrands_are_isotropic() {
    for kind in NamedKind::ALL {
        let (_, g) = named(kind);
        for (u, v) in g.unmasked() {
            let d = g.null_defect(u, v).unwrap();
            assert!(d < 1e-9, "{kind:?} at ({u}, {v}): {d}");
        }
    }
}

#[test]
fn metric_is_conformal_with_the_closed_factor() {
    for kind in NamedKind::ALL {
        let (n, g) = named(kind);
        let timelike = n.data.ambient == WeierstrassAmbient::L3Timelike;
        for (u, v) in g.unmasked() {
            let [e, f, gg] = fundamental_forms(&g.surface, u, v).unwrap().first;
            let scale = e.abs().max(1.0);
            let expected_g = if timelike { -e } else { e };
            assert!((gg - expected_g).abs() < 1e-9 * scale, "{kind:?}");
            assert!(f.abs() < 1e-9 * scale, "{kind:?}");
            let closed = g.closed_conformal_factor(u, v).unwrap();
            assert!((e.abs() - closed).abs() < 1e-7 * scale, "{kind:?}: {e} vs {closed}");
        }
    }
}

#[test]
fn generated_surfaces_are_critical() {
    for kind in NamedKind::ALL {
        let (_, g) = named(kind);
        for (u, v) in g.unmasked() {
            let h = curvatures(&g.surface, u, v).unwrap().h;
            assert!(h.abs() < 1e-6, "{kind:?} at ({u}, {v}): {h}");
        }
    }
}

#[test]
fn path_order_does_not_matter() {
    for kind in NamedKind::ALL {
        let (_, g) = named(kind);
        for (u, v) in g.unmasked().step_by(5) {
            let a = g.position_along(u, v, PathOrder::UFirst).unwrap();
            let b = g.position_along(u, v, PathOrder::VFirst).unwrap();
            assert!(vec3::max_abs_diff(a, b) < 1e-10, "{kind:?}");
        }
    }
}

#[test]
fn unit_circle_is_masked_in_lorentz_space() {
    let n = named_weierstrass(NamedKind::EnneperL3Spacelike).unwrap();
    let data = WeierstrassData { domain: rect(0.5, 1.5, -0.5, 0.5), basepoint: (0.6, 0.1), ..n.data };
    let report = regularity_check(&data, 5, 5);
    for (i, &(u, v)) in report.points.iter().enumerate() {
        let on_circle = ((u * u + v * v).sqrt() - 1.0).abs() < 1e-12;
        assert_eq!(report.masked[i], on_circle, "({u}, {v})");
        if on_circle {
            assert_eq!(report.clauses[i], Some(MaskClause::UnitCircle));
        }
    }
    assert_eq!(report.masked_count(), 1);
}

#[test]
fn real_axis_is_masked_for_the_timelike_catenoid() {
    let n = named_weierstrass(NamedKind::CatenoidL3Timelike).unwrap();
    let report = regularity_check(&n.data, 6, 5);
    for (i, &(_, v)) in report.points.iter().enumerate() {
        assert_eq!(report.masked[i], v.abs() < 1e-12);
    }
    assert_eq!(report.clause_counts().get(&MaskClause::GReal), Some(&6));
}

#[test]
fn nothing_is_masked_for_constant_data_in_euclidean_space() {
    let data = WeierstrassData::new(
        WeierstrassKind::TypeII { big_f: Holomorphic::complex(|_| Cplx::constant(1.0, 0.0)) },
        WeierstrassAmbient::R3,
        (0.0, 0.0),
        rect(-2.0, 2.0, -2.0, 2.0),
    )
    .unwrap();
    assert_eq!(regularity_check(&data, 9, 9).masked_count(), 0);
}

#[test]
fn zero_of_f_is_masked() {
    let data = WeierstrassData::new(
        WeierstrassKind::TypeII { big_f: Holomorphic::complex(|z| z - Cplx::constant(0.5, 0.0)) },
        WeierstrassAmbient::R3,
        (0.0, 0.0),
        rect(0.0, 1.0, -0.5, 0.5),
    )
    .unwrap();
    let report = regularity_check(&data, 3, 3);
    assert_eq!(report.masked_count(), 1);
    assert_eq!(report.clauses[4], Some(MaskClause::FVanishes));
}

#[test]
fn zero_divisor_is_masked() {
    let data = WeierstrassData::new(
        WeierstrassKind::TypeI {
            f: Holomorphic::split(|w| w),
            g: Holomorphic::split(|w| w * Split::constant(0.0, 1.0) + Split::constant(0.0, 3.0)),
        },
        WeierstrassAmbient::L3Timelike,
        (0.2, 0.1),
        rect(-1.0, 1.0, -1.0, 1.0),
    )
    .unwrap();
    let report = regularity_check(&data, 5, 5);
    for (i, &(u, v)) in report.points.iter().enumerate() {
        let on_lines = (u.abs() - v.abs()).abs() < 1e-12;
        assert_eq!(report.masked[i], on_lines, "({u}, {v})");
        if on_lines {
            assert_eq!(report.clauses[i], Some(MaskClause::ZeroDivisor));
        }
    }
}

#[test]
fn timelike_enneper_needs_the_unit_h() {
    let n = named_weierstrass(NamedKind::EnneperL3Timelike).unwrap();
    let data = WeierstrassData {
        kind: WeierstrassKind::TypeII { big_f: Holomorphic::split(|_| Split::constant(1.0, 0.0)) },
        constants: [0.0; 3],
        basepoint: (0.0, 0.0),
        ..n.data
    };
    let g = generate(data, 4, 4).unwrap();
    for (u, v) in [(0.3, -0.6), (0.7, 0.2)] {
        let p = g.surface.position(u, v).unwrap();
        let expected = [u - u * u * u / 3.0 - u * v * v, u * u + v * v, u + u * u * u / 3.0 + u * v * v];
        assert!(vec3::max_abs_diff(p, expected) < 1e-12);
        assert!(vec3::max_abs_diff(p, n.closed_form.position(u, v).unwrap()) > 1e-2);
    }
}

#[test]
fn second_coordinate_carries_fg_in_timelike_data() {
    let data = WeierstrassData::new(
        WeierstrassKind::TypeI { f: Holomorphic::split(|_| Split::constant(1.0, 0.0)), g: Holomorphic::split(|w| w) },
        WeierstrassAmbient::L3Timelike,
        (0.0, 0.0),
        rect(-1.0, 1.0, -1.0, 1.0),
    )
    .unwrap();
    let g = generate(data, 2, 2).unwrap();
    let (u, v) = (0.4, 0.7);
    let p = g.surface.position(u, v).unwrap();
    assert!((p[1] - (u * u + v * v)).abs() < 1e-12);
}

#[test]
fn type_ii_curvature_formula() {
    let r3 = |amb| {
        WeierstrassData::new(
            WeierstrassKind::TypeII { big_f: Holomorphic::complex(|_| Cplx::constant(1.0, 0.0)) },
            amb,
            (0.0, 0.0),
            rect(-3.0, 3.0, -3.0, 3.0),
        )
        .unwrap()
    };
    let data = r3(WeierstrassAmbient::R3);
    assert!((type_ii_gaussian_curvature(&data, 0.0, 0.0).unwrap() + 4.0).abs() < 1e-15);
    assert!(type_ii_gaussian_curvature(&data, 2.9, 2.9).unwrap().abs() < 1e-4);
    let g = generate(data.clone(), 4, 4).unwrap();
    for (u, v) in [(0.0, 0.0), (0.4, -1.1), (2.0, 0.5)] {
        let k = curvatures(&g.surface, u, v).unwrap().k;
        assert!((k - type_ii_gaussian_curvature(&data, u, v).unwrap()).abs() < 1e-9);
    }
    let data = r3(WeierstrassAmbient::L3Spacelike);
    assert!((type_ii_gaussian_curvature(&data, 0.0, 0.0).unwrap() - 4.0).abs() < 1e-15);
    let g = generate(data.clone(), 4, 4).unwrap();
    for (u, v) in [(0.0, 0.0), (0.3, 0.2), (1.5, -0.7)] {
        let k = curvatures(&g.surface, u, v).unwrap().k;
        let expected = type_ii_gaussian_curvature(&data, u, v).unwrap();
        assert!((k - expected).abs() < 1e-9 * expected.abs().max(1.0), "{k} vs {expected}");
    }
    assert!(matches!(type_ii_gaussian_curvature(&data, 0.6, 0.8), Err(WeierstrassError::Irregular { .. })));
}

#[test]
fn poles_are_rejected() {
    let n = named_weierstrass(NamedKind::CatenoidL3Spacelike).unwrap();
    let on_pole = WeierstrassData { domain: rect(-1.0, 1.0, -1.0, 1.0), basepoint: (0.5, 0.5), ..n.data.clone() };
    assert!(matches!(generate(on_pole, 1, 1), Err(WeierstrassError::OnPole { .. })));
    let around = WeierstrassData { domain: rect(-1.0, 1.0, -1.0, 1.0), basepoint: (-0.5, 0.0), ..n.data };
    assert!(matches!(generate(around, 2, 1), Err(WeierstrassError::PathThroughPole { .. })));
    let report = regularity_check(
        &WeierstrassData {
            domain: rect(-1.0, 1.0, -1.0, 1.0),
            basepoint: (-0.5, 0.0),
            ..named_weierstrass(NamedKind::CatenoidL3Spacelike).unwrap().data
        },
        2,
        1,
    );
    assert_eq!(report.clauses[1], Some(MaskClause::Pole));
}

#[test]
fn construction_errors() {
    assert!(matches!("moebius".parse::<NamedKind>(), Err(WeierstrassError::UnknownKind(_))));
    assert_eq!("Catalan-R3".parse::<NamedKind>().unwrap(), NamedKind::CatalanR3);
    let mixed = WeierstrassData::new(
        WeierstrassKind::TypeII { big_f: Holomorphic::complex(|z| z) },
        WeierstrassAmbient::L3Timelike,
        (0.0, 0.0),
        rect(-1.0, 1.0, -1.0, 1.0),
    );
    assert!(matches!(mixed, Err(WeierstrassError::AmbientMismatch(_))));
    let outside = WeierstrassData::new(
        WeierstrassKind::TypeII { big_f: Holomorphic::complex(|z| z) },
        WeierstrassAmbient::R3,
        (2.0, 0.0),
        rect(-1.0, 1.0, -1.0, 1.0),
    );
    assert!(matches!(outside, Err(WeierstrassError::OutsideDomain { .. })));
}

#[test]
fn manifest_lists_every_named_surface() {
    let m = gallery_manifest();
    let list = m["surfaces"].as_array().unwrap();
    assert_eq!(list.len(), 7);
    assert_eq!(list[2]["name"], "catalan_r3");
    assert_eq!(list[3]["integrates_to_closed_form"], false);
    assert_eq!(list[6]["poles"][0]["type"], "null_lines");
}
