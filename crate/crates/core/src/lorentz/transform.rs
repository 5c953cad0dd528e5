//! Membership and classification of pseudo-orthogonal transformations.

use serde::Serialize;

use super::{inner, LorentzError, Matrix, Signature, Vector};
use crate::vec3::{self, V3};

/// Connected component of `O_nu(n)`, by the signs of the spatial and
/// temporal block determinants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    PlusUp,
    PlusDown,
    MinusUp,
    MinusDown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugacy {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PseudoOrthReport {
    pub is_member: bool,
    /// `max |L^T Id L - Id|`
    pub residual: f64,
    pub det_total: f64,
    pub det_spatial: f64,
    pub det_temporal: f64,
    pub component: Option<Component>,
    pub conjugacy: Option<Conjugacy>,
    pub angle: Option<f64>,
    /// Eigenvector of eigenvalue one used for the conjugacy label.
    pub fixed_direction: Option<Vec<f64>>,
}

pub fn classify_transform(l: &Matrix, sig: Signature, tol: f64) -> Result<PseudoOrthReport, LorentzError> {
    if !l.is_square() {
        return Err(LorentzError::NotSquare { rows: l.rows(), cols: l.cols() });
    }
    let n = sig.n();
    if l.rows() != n {
        return Err(LorentzError::DimensionMismatch { expected: n, found: l.rows() });
    }
    let id = sig.metric();
    let residual = l.transpose().mul(&id).mul(l).sub(&id).max_abs();
    let is_member = residual <= tol * l.max_abs().powi(2).max(1.0);
    let s = n - sig.nu();
    let det_total = l.det();
    let det_spatial = l.block(0, s, 0, s).det();
    let det_temporal = l.block(s, n, s, n).det();
    let mut report = PseudoOrthReport {
        is_member,
        residual,
        det_total,
        det_spatial,
        det_temporal,
        component: None,
        conjugacy: None,
        angle: None,
        fixed_direction: None,
    };
    if !is_member {
        return Ok(report);
    }
    let component = match (det_spatial > 0.0, det_temporal > 0.0) {
        (true, true) => Component::PlusUp,
        (true, false) => Component::PlusDown,
        (false, true) => Component::MinusUp,
        (false, false) => Component::MinusDown,
    };
    report.component = Some(component);
    if component != Component::PlusUp || sig.nu() != 1 {
        return Ok(report);
    }
    match n {
        2 => report.angle = Some(l[(1, 0)].asinh()),
        3 => {
            let m = to3(l);
            let half = (l.trace() - 1.0) / 2.0;
            match fixed_vector(&m, 1.0) {
                None => {
                    report.conjugacy = Some(Conjugacy::Elliptic);
                    report.angle = Some(0.0);
                }
                Some(v) => {
                    let class = crate::vec3::Ambient::Lorentz3.classify(v, 1e-9);
                    let (conj, angle) = match class {
                        super::CausalClass::Spacelike => (Conjugacy::Hyperbolic, Some(half.max(1.0).acosh())),
                        super::CausalClass::Timelike => (Conjugacy::Elliptic, Some(half.clamp(-1.0, 1.0).acos())),
                        super::CausalClass::Lightlike => (Conjugacy::Parabolic, None),
                    };
                    report.conjugacy = Some(conj);
                    report.angle = angle;
                    report.fixed_direction = Some(v.to_vec());
                }
            }
        }
        _ => {}
    }
    Ok(report)
}

fn to3(l: &Matrix) -> [V3; 3] {
    [
        [l[(0, 0)], l[(0, 1)], l[(0, 2)]],
        [l[(1, 0)], l[(1, 1)], l[(1, 2)]],
        [l[(2, 0)], l[(2, 1)], l[(2, 2)]],
    ]
}

/// Null vector of `M - mu I` from the largest cross product of two rows,
/// or `None` when every 2x2 minor vanishes.
fn fixed_vector(m: &[V3; 3], mu: f64) -> Option<V3> {
    let mut r = *m;
    for (i, row) in r.iter_mut().enumerate() {
        row[i] -= mu;
    }
    let scale = r.iter().map(|x| vec3::dot_e(*x, *x)).fold(0.0, f64::max);
    let best = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| vec3::cross_e(r[i], r[j]))
        .max_by(|a, b| vec3::norm_e(*a).total_cmp(&vec3::norm_e(*b)))
        .unwrap();
    let nb = vec3::norm_e(best);
    if nb <= 1e-10 * scale.max(1e-300) || nb == 0.0 {
        return None;
    }
    Some(vec3::scale(1.0 / nb, best))
}

/// Real roots of `a t^3 + b t^2 + c t + d` in increasing order.
pub fn real_cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let (p2, p1, p0) = (b / a, c / a, d / a);
    let shift = p2 / 3.0;
    let p = p1 - p2 * p2 / 3.0;
    let q = 2.0 * p2.powi(3) / 27.0 - p2 * p1 / 3.0 + p0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let sd = disc.sqrt();
        vec![(-q / 2.0 + sd).cbrt() + (-q / 2.0 - sd).cbrt() - shift]
    } else if p == 0.0 {
        vec![-shift]
    } else {
        let r = (-p / 3.0).sqrt();
        let phi = (-q / (2.0 * r.powi(3))).clamp(-1.0, 1.0).acos();
        (0..3)
            .map(|k| 2.0 * r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - shift)
            .collect()
    };
    for t in roots.iter_mut() {
        for _ in 0..2 {
            let f = ((*t + p2) * *t + p1) * *t + p0;
            let df = (3.0 * *t + 2.0 * p2) * *t + p1;
            if df.abs() > 1e-300 {
                let next = *t - f / df;
                if next.is_finite() {
                    *t = next;
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Margulis invariant `<w, v_1>` of the affine map `x -> L x + w`, with
/// `v_1` the unit fixed vector of `L` oriented so that
/// `(v_lambda, v_1, v_{1/lambda})` is positive and both null eigenvectors are
/// future-directed.
pub fn margulis_invariant(l: &Matrix, w: &Vector) -> Result<f64, LorentzError> {
    let sig = Signature::lorentz(3);
    if w.sig() != sig {
        return Err(LorentzError::SignatureMismatch { left: sig, right: w.sig() });
    }
    let rep = classify_transform(l, sig, 1e-9)?;
    if !rep.is_member || rep.component != Some(Component::PlusUp) || rep.conjugacy != Some(Conjugacy::Hyperbolic) {
        return Err(LorentzError::NotHyperbolic(format!(
            "member = {}, component = {:?}, conjugacy = {:?}",
            rep.is_member, rep.component, rep.conjugacy
        )));
    }
    let m = to3(l);
    let c2 = l.trace();
    let c1 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let c0 = l.det();
    let roots = real_cubic_roots(1.0, -c2, c1, -c0);
    if roots.len() != 3 {
        return Err(LorentzError::NotHyperbolic("complex eigenvalues".into()));
    }
    let (small, large) = (roots[0], roots[2]);
    let future = |v: V3| if v[2] < 0.0 { vec3::scale(-1.0, v) } else { v };
    let v_large = future(fixed_vector(&m, large).ok_or_else(|| LorentzError::NotHyperbolic("no eigenvector".into()))?);
    let v_small = future(fixed_vector(&m, small).ok_or_else(|| LorentzError::NotHyperbolic("no eigenvector".into()))?);
    let mut v1 = fixed_vector(&m, 1.0).ok_or_else(|| LorentzError::NotHyperbolic("no fixed vector".into()))?;
    let len = crate::vec3::Ambient::Lorentz3.fake_norm(v1);
    v1 = vec3::scale(1.0 / len, v1);
    if vec3::det3(v_large, v1, v_small) < 0.0 {
        v1 = vec3::scale(-1.0, v1);
    }
    inner(w, &Vector::new(sig, v1.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots_three_real() {
        let r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn boost_angle_recovered() {
        let phi: f64 = 1.0;
        let l = Matrix::from_rows(&[vec![phi.cosh(), phi.sinh()], vec![phi.sinh(), phi.cosh()]]).unwrap();
        let rep = classify_transform(&l, Signature::lorentz(2), 1e-9).unwrap();
        assert_eq!(rep.component, Some(Component::PlusUp));
        assert!((rep.angle.unwrap() - 1.0).abs() < 1e-12);
    }
}
