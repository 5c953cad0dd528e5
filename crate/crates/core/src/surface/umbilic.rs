//! Recognition of totally umbilic patches.

use serde::Serialize;

use super::{fundamental_forms, SurfaceError, SurfaceModel};
use crate::lorentz::Matrix;
use crate::vec3::{self, V3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UmbilicKind {
    Plane,
    /// `<p - c, p - c> = r^2`: round spheres and de Sitter type quadrics.
    SphereType,
    /// `<p - c, p - c> = -r^2`: hyperbolic planes and anti-de Sitter type
    /// quadrics.
    HyperbolicType,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UmbilicReport {
    pub kind: UmbilicKind,
    /// Mean ratio `II / I`.
    pub lambda: f64,
    /// `max |II - lambda I| / |I|` over the samples.
    pub umbilic_residual: f64,
    pub center: Option<V3>,
    pub radius: Option<f64>,
    pub normal: Option<V3>,
    /// Largest deviation of a sample from the fitted plane or quadric.
    pub fit_residual: f64,
}

/// Samples an `n x n` grid, tests `II = lambda I` and fits the plane or
/// quadric the patch lies on.
pub fn umbilic_surface_check(m: &SurfaceModel, n: usize) -> Result<UmbilicReport, SurfaceError> {
    let amb = m.ambient();
    let tol = 1e-6 * m.tolerance_factor();
    let grid = m.domain().grid(n, n);
    let mut points = Vec::with_capacity(grid.len());
    let mut lambdas = Vec::with_capacity(grid.len());
    let mut umbilic_residual = 0.0f64;
    let mut normal0 = None;
    for &(u, v) in &grid {
        let forms = fundamental_forms(m, u, v)?;
        let second = forms.second.ok_or(SurfaceError::Degenerate { u, v })?;
        let [e, f, g] = forms.first;
        let norm = (e * e + 2.0 * f * f + g * g).sqrt();
        let lambda = (e * second[0] + 2.0 * f * second[1] + g * second[2]) / (norm * norm);
        let res = ((second[0] - lambda * e).powi(2)
            + 2.0 * (second[1] - lambda * f).powi(2)
            + (second[2] - lambda * g).powi(2))
        .sqrt()
            / norm;
        umbilic_residual = umbilic_residual.max(res);
        lambdas.push(lambda);
        points.push(m.position(u, v)?);
        normal0.get_or_insert(forms.normal.expect("non-degenerate"));
    }
    if umbilic_residual > tol {
        return Err(SurfaceError::NotUmbilic { residual: umbilic_residual });
    }
    let lambda = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
    if lambdas.iter().all(|l| l.abs() <= tol) {
        let nrm = normal0.expect("at least one sample");
        let fit_residual = points.iter().map(|p| amb.dot(vec3::sub(*p, points[0]), nrm).abs()).fold(0.0, f64::max);
        return Ok(UmbilicReport {
            kind: UmbilicKind::Plane,
            lambda,
            umbilic_residual,
            center: None,
            radius: None,
            normal: Some(nrm),
            fit_residual,
        });
    }
    // <p, p> = 2 <p, c> - kappa, linear in (c, kappa).
    let w = amb.weights();
    let mut ata = Matrix::zeros(4, 4);
    let mut atb = [0.0; 4];
    for p in &points {
        let row = [2.0 * w[0] * p[0], 2.0 * w[1] * p[1], 2.0 * w[2] * p[2], -1.0];
        let rhs = amb.dot(*p, *p);
        for i in 0..4 {
            atb[i] += row[i] * rhs;
            for j in 0..4 {
                ata[(i, j)] += row[i] * row[j];
            }
        }
    }
    let sol = ata
        .solve(&atb)
        .ok_or_else(|| SurfaceError::InvalidParameters("samples do not determine a quadric".into()))?;
    let c = [sol[0], sol[1], sol[2]];
    let rho = amb.dot(c, c) - sol[3];
    let fit_residual = points
        .iter()
        .map(|p| {
            let d = vec3::sub(*p, c);
            (amb.dot(d, d) - rho).abs()
        })
        .fold(0.0, f64::max);
    let kind = if rho > 0.0 { UmbilicKind::SphereType } else { UmbilicKind::HyperbolicType };
    Ok(UmbilicReport {
        kind,
        lambda,
        umbilic_residual,
        center: Some(c),
        radius: Some(rho.abs().sqrt()),
        normal: None,
        fit_residual,
    })
}
