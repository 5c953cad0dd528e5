use minkgeo::jet::{Jet2, Scalar};
use minkgeo::split::*;
use proptest::prelude::*;

fn close(a: Split<f64>, b: Split<f64>, tol: f64) -> bool {
    (a - b).euclid() <= tol * (1.0 + b.euclid())
}

fn cubic() -> SplitFunction {
    SplitFunction::closed(|w| w * w * w + w * 2.0)
}

proptest! {
    #[test]
    fn conjugate_multiplies_to_the_norm_form(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let w = Split::new(re, im);
        let n = w * w.conj();
        prop_assert!((n.re - w.norm_form()).abs() < 1e-12 * (1.0 + re * re + im * im));
        prop_assert!(n.im.abs() < 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let w = Split::new(re, im);
        prop_assume!(!w.is_zero_divisor(1e-3));
        let inv = w.inverse().unwrap();
        prop_assert!(close(w * inv, Split::new(1.0, 0.0), 1e-9));
        prop_assert!(close(inv * w, Split::new(1.0, 0.0), 1e-9));
    }

    #[test]
    fn norm_form_is_multiplicative(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, d in -3.0f64..3.0) {
        let (z, w) = (Split::new(a, b), Split::new(c, d));
        prop_assert!(((z * w).norm_form() - z.norm_form() * w.norm_form()).abs() < 1e-9);
    }

    #[test]
    fn closed_loops_integrate_to_zero(x0 in -2.0f64..2.0, y0 in -2.0f64..2.0, wx in 0.1f64..2.0, wy in 0.1f64..2.0) {
        let r = Rect::new(x0, x0 + wx, y0, y0 + wy);
        let total = integrate(&cubic(), &SplitPath::rectangle(r)).unwrap();
        prop_assert!(total.euclid() < 1e-10);
    }

    #[test]
    fn path_integral_matches_the_primitive(x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let primitive = |w: Split<f64>| w.powi(4) * 0.25 + w * w;
        let (a, b) = (Split::new(0.0, 0.0), Split::new(x, y));
        let got = integrate(&cubic(), &SplitPath::l_shaped(a, b)).unwrap();
        prop_assert!(close(got, primitive(b) - primitive(a), 1e-10));
    }

    #[test]
    fn polynomials_satisfy_cauchy_riemann(x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let d = differentiate(&cubic(), Split::new(x, y), HOLOMORPHY_TOL).unwrap();
        prop_assert!(d.split_holomorphic);
        prop_assert!(d.cr_residual < 1e-10);
        let w = Split::new(x, y);
        prop_assert!(close(d.dw, w * w * 3.0 + 2.0, 1e-12));
        prop_assert!(d.dalembertian_phi.abs() < 1e-9 && d.dalembertian_psi.abs() < 1e-9);
    }

    #[test]
    fn mixed_wirtinger_is_the_dalembertian(x in -1.5f64..1.5, y in -1.5f64..1.5) {
        let f = SplitFunction::closed(|w: Split<Jet2>| w * w.conj() + w.conj() * w.conj());
        let got = wirtinger_mixed(&f, Split::new(x, y)).unwrap();
        // phi = 2x^2, psi = -2xy: box phi = 4, box psi = 0.
        prop_assert!(close(got, Split::new(4.0, 0.0), 1e-10));
    }
}

#[test]
fn zero_divisors_are_rejected() {
    for w in [Split::new(1.0, 1.0), Split::new(2.5, -2.5), Split::new(0.0, 0.0)] {
        assert!(w.is_zero_divisor(ZERO_DIVISOR_TOL));
        assert!(matches!(w.inverse(), Err(SplitError::ZeroDivisor { .. })));
    }
    let (p, q) = (Split::new(1.0, 1.0), Split::new(1.0, -1.0));
    assert_eq!(p * q, Split::new(0.0, 0.0));
}

#[test]
fn exponential_is_a_hyperbolic_rotation() {
    let t = 0.7;
    let e = Split::new(0.0, t).exp();
    assert!((e.re - t.cosh()).abs() < 1e-15 && (e.im - t.sinh()).abs() < 1e-15);
    assert!((e.norm_form() - 1.0).abs() < 1e-14);
}

#[test]
fn conjugate_of_a_lorentz_harmonic_function() {
    // phi = e^x cosh y has psi = e^x sinh y.
    let conj = lorentz_conjugate(|x: Jet2, y: Jet2| x.exp() * y.cosh(), (0.0, 0.0)).unwrap();
    for (x, y) in [(0.3, -0.4), (1.2, 0.9), (-0.8, 1.5)] {
        let want = f64::exp(x) * f64::sinh(y);
        assert!((conj.eval(x, y).unwrap() - want).abs() < 1e-12, "({x}, {y})");
    }
}

#[test]
fn non_harmonic_input_is_refused() {
    let r = lorentz_conjugate(|x: Jet2, y: Jet2| x * x - y * y, (0.0, 0.0));
    assert!(matches!(r, Err(SplitError::NotHarmonic { .. })));
}

#[test]
fn outside_the_domain() {
    let f = cubic().with_domain(Rect::new(0.0, 1.0, 0.0, 1.0));
    assert!(matches!(f.value(Split::new(2.0, 0.0)), Err(SplitError::OutsideDomain { .. })));
}

#[test]
fn generalized_systems() {
    let complex = GeneralizedComplex::new(1.0, 2.0, -1.0, 0.0);
    assert_eq!(complex.system_class(), SystemClass::Elliptic);
    assert!(complex.zero_divisor_lines().is_empty());
    let one = complex.mul(complex.inverse().unwrap());
    assert!((one.a - 1.0).abs() < 1e-15 && one.b.abs() < 1e-15);

    let dual = GeneralizedComplex::new(0.0, 1.0, 0.0, 0.0);
    assert_eq!(dual.system_class(), SystemClass::Parabolic);
    assert_eq!(dual.mul(dual).a, 0.0);
    assert!(dual.inverse().is_none());

    let split = GeneralizedComplex::new(3.0, -3.0, 1.0, 0.0);
    assert_eq!(split.system_class(), SystemClass::Hyperbolic);
    assert!(!split.is_invertible(1e-12));
    for k in split.zero_divisor_lines() {
        let z = GeneralizedComplex::new(-k, 1.0, 1.0, 0.0);
        assert!(z.norm_form().abs() < 1e-15);
    }
}

#[test]
fn generalized_conjugate_gives_the_norm_form() {
    let z = GeneralizedComplex::new(0.4, -1.3, 0.7, 1.1);
    let n = z.mul(z.conj());
    assert!((n.a - z.norm_form()).abs() < 1e-14 && n.b.abs() < 1e-14);
}
