use minkgeo::lorentz::*;
use proptest::prelude::*;

fn vector(sig: Signature, c: &[f64]) -> Vector {
    Vector::new(sig, c.to_vec()).unwrap()
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n)
}

/// Signature together with `k` coordinate vectors for it.
fn sig_and_vectors(k: usize) -> impl Strategy<Value = (Signature, Vec<Vec<f64>>)> {
    (2usize..=5)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(move |(n, nu)| (Just(Signature::new(n, nu).unwrap()), prop::collection::vec(coords(n), k)))
}

fn matrix3(rows: [[f64; 3]; 3]) -> Matrix {
    Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #[test]
    fn inner_product_is_bilinear((sig, vs) in sig_and_vectors(3), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let (x, y, z) = (vector(sig, &vs[0]), vector(sig, &vs[1]), vector(sig, &vs[2]));
        let lhs = inner(&x.scaled(a).add(&y.scaled(b)).unwrap(), &z).unwrap();
        let rhs = a * inner(&x, &z).unwrap() + b * inner(&y, &z).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
        prop_assert_eq!(inner(&x, &y).unwrap(), inner(&y, &x).unwrap());
    }

    #[test]
    fn complement_dimension_and_double_complement((sig, vs) in sig_and_vectors(3), k in 1usize..=3) {
        let k = k.min(sig.n() - 1);
        let basis: Vec<Vector> = vs.iter().take(k).map(|c| vector(sig, c)).collect();
        prop_assume!(rank(&basis, 1e-6) == k);
        let s = SubspaceBasis::new(sig, basis).unwrap();
        let perp = subspace_analysis(&s, DEFAULT_TOL).unwrap().complement;
        prop_assert_eq!(s.dim() + perp.dim(), sig.n());
        let back = subspace_analysis(&perp, DEFAULT_TOL).unwrap().complement;
        prop_assert!(back.same_span(&s, 1e-8));
    }

    #[test]
    fn isotropic_families_are_dependent(theta in 0.0f64..6.3, flip in any::<bool>(), xs in prop::collection::vec(coords(2), 3)) {
        // (x, A x) with A orthogonal spans a totally lightlike plane of R^4_2.
        let (c, s) = (theta.cos(), theta.sin());
        let sgn = if flip { -1.0 } else { 1.0 };
        let sig = Signature::new(4, 2).unwrap();
        let vs: Vec<Vector> = xs
            .iter()
            .map(|x| vector(sig, &[x[0], x[1], c * x[0] - s * x[1], sgn * (s * x[0] + c * x[1])]))
            .collect();
        for (i, u) in vs.iter().enumerate() {
            prop_assert!(inner(u, u).unwrap().abs() < 1e-12);
            for w in &vs[i + 1..] {
                prop_assert!(inner(u, w).unwrap().abs() < 1e-12);
            }
        }
        prop_assert!(rank(&vs, 1e-9) <= 2);
    }

    #[test]
    fn orthogonal_lightlike_vectors_are_parallel(spatial in coords(3), t in 0.5f64..3.0, scale in -2.0f64..2.0) {
        prop_assume!(spatial.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let sig = Signature::lorentz(4);
        let r = spatial.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut c: Vec<f64> = spatial.iter().map(|x| x * t / r).collect();
        c.push(t);
        let u = vector(sig, &c);
        prop_assert_eq!(causal_character(&u, DEFAULT_TOL).unwrap().class, CausalClass::Lightlike);
        prop_assume!(scale.abs() > 1e-3);
        let v = u.scaled(scale);
        prop_assert!(inner(&u, &v).unwrap().abs() < 1e-12);
        prop_assert_eq!(rank(&[u, v], 1e-9), 1);
    }

    #[test]
    fn sylvester_counts((sig, vs) in sig_and_vectors(5)) {
        let vs: Vec<Vector> = vs.iter().take(sig.n()).map(|c| vector(sig, c)).collect();
        prop_assume!(rank(&vs, 1e-6) == sig.n());
        if let Ok(basis) = orthonormalize(&vs, DEFAULT_TOL) {
            let timelike = basis.iter().filter(|b| inner(b, b).unwrap() < 0.0).count();
            prop_assert_eq!(timelike, sig.nu());
        }
    }

    #[test]
    fn backwards_triangle_inequality(a in coords(3), b in coords(3), ta in 0.01f64..2.0, tb in 0.01f64..2.0) {
        let sig = Signature::lorentz(4);
        let future = |x: &[f64], extra: f64| {
            let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            let mut c = x.to_vec();
            c.push(r + extra);
            vector(sig, &c)
        };
        let (u, v) = (future(&a, ta), future(&b, tb));
        let norm = |w: &Vector| inner(w, w).unwrap().abs().sqrt();
        let sum = u.add(&v).unwrap();
        prop_assert!(norm(&sum) >= norm(&u) + norm(&v) - 1e-12);
        prop_assert!(inner(&u, &v).unwrap().abs() >= norm(&u) * norm(&v) - 1e-12);
    }

    #[test]
    fn products_of_cross_products(nu in 0usize..=1, vs in prop::collection::vec(coords(3), 4)) {
        let sig = Signature::new(3, nu).unwrap();
        let v: Vec<Vector> = vs.iter().map(|c| vector(sig, c)).collect();
        let lhs = inner(&cross_product(&v[0..2]).unwrap(), &cross_product(&v[2..4]).unwrap()).unwrap();
        let g = gram_matrix(&v[0..2], &v[2..4]).unwrap();
        prop_assert!((lhs - sig.parity() * g.det()).abs() < 1e-10);
    }

    #[test]
    fn trace_and_determinant_do_not_depend_on_the_basis(
        entries in prop::collection::vec(-1.0f64..1.0, 9),
        phi in -1.5f64..1.5,
        theta in -3.0f64..3.0,
    ) {
        let sig = Signature::lorentz(3);
        let form = Matrix::from_fn(3, 3, |i, j| entries[3 * i + j] + entries[3 * j + i]);
        let canonical: Vec<Vector> = (0..3).map(|i| Vector::basis(sig, i)).collect();
        // Rotate then boost the canonical basis.
        let (c, s, ch, sh) = (theta.cos(), theta.sin(), phi.cosh(), phi.sinh());
        let moved = [
            [c * ch, s, c * sh],
            [-s * ch, c, -s * sh],
            [sh, 0.0, ch],
        ];
        let other: Vec<Vector> = moved.iter().map(|r| vector(sig, r)).collect();
        let (t0, d0) = metric_trace_det(&form, &canonical).unwrap();
        let (t1, d1) = metric_trace_det(&form, &other).unwrap();
        prop_assert!((t0 - t1).abs() < 1e-9 * (1.0 + t0.abs()));
        prop_assert!((d0 - d1).abs() < 1e-9 * (1.0 + d0.abs()));
    }
}

#[test]
fn components_of_reflections() {
    let sig = Signature::lorentz(3);
    let cases = [
        ([1.0, 1.0, 1.0], Component::PlusUp),
        ([-1.0, 1.0, 1.0], Component::MinusUp),
        ([1.0, 1.0, -1.0], Component::PlusDown),
        ([-1.0, 1.0, -1.0], Component::MinusDown),
    ];
    for (d, want) in cases {
        let r = classify_transform(&Matrix::diag(&d), sig, DEFAULT_TOL).unwrap();
        assert!(r.is_member);
        assert_eq!(r.component, Some(want));
    }
}

#[test]
fn conjugacy_classes_of_the_identity_component() {
    let sig = Signature::lorentz(3);
    let (c, s) = (0.8f64.cos(), 0.8f64.sin());
    let rotation = matrix3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]);
    let r = classify_transform(&rotation, sig, DEFAULT_TOL).unwrap();
    assert_eq!(r.conjugacy, Some(Conjugacy::Elliptic));
    assert!((r.angle.unwrap().abs() - 0.8).abs() < 1e-12);

    let (ch, sh) = (0.6f64.cosh(), 0.6f64.sinh());
    let boost = matrix3([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]]);
    let r = classify_transform(&boost, sig, DEFAULT_TOL).unwrap();
    assert_eq!(r.conjugacy, Some(Conjugacy::Hyperbolic));
    assert!((r.angle.unwrap().abs() - 0.6).abs() < 1e-12);

    // exp(a K) for the nilpotent generator K of a null rotation.
    let a = 0.7;
    let h = a * a / 2.0;
    let null_rotation = matrix3([[1.0, -a, a], [a, 1.0 - h, h], [a, -h, 1.0 + h]]);
    let r = classify_transform(&null_rotation, sig, DEFAULT_TOL).unwrap();
    assert!(r.is_member, "{}", r.residual);
    assert_eq!(r.conjugacy, Some(Conjugacy::Parabolic));
}

#[test]
fn non_members_have_no_component() {
    let r = classify_transform(&Matrix::diag(&[2.0, 1.0, 1.0]), Signature::lorentz(3), DEFAULT_TOL).unwrap();
    assert!(!r.is_member);
    assert_eq!(r.component, None);
}

#[test]
fn causal_relations_between_events() {
    let sig = Signature::lorentz(3);
    let p = vector(sig, &[0.0, 0.0, 0.0]);
    let later = causal_relations(&p, &vector(sig, &[0.0, 0.0, 1.0])).unwrap();
    assert!(later.chron && later.causal);
    let light = causal_relations(&p, &vector(sig, &[1.0, 0.0, 1.0])).unwrap();
    assert!(!light.chron && light.causal);
    let elsewhere = causal_relations(&p, &vector(sig, &[2.0, 0.0, 1.0])).unwrap();
    assert!(!elsewhere.chron && !elsewhere.causal);
    let earlier = causal_relations(&p, &vector(sig, &[0.0, 0.0, -1.0])).unwrap();
    assert!(!earlier.chron);
    assert_eq!(earlier.time_orientation, Some(TimeOrientation::Past));
}

#[test]
fn lightlike_detection_is_scale_invariant() {
    let sig = Signature::lorentz(3);
    for s in [1e-8, 1.0, 1e8] {
        let v = vector(sig, &[s, 0.0, s * (1.0 + 1e-12)]);
        assert_eq!(causal_character(&v, DEFAULT_TOL).unwrap().class, CausalClass::Lightlike);
    }
    assert!(matches!(causal_character(&Vector::zero(sig), DEFAULT_TOL), Err(LorentzError::ZeroVector)));
}
