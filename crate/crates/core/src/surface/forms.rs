//! First and second fundamental forms, mean and Gaussian curvature and the
//! Weingarten operator.

use rayon::prelude::*;
use serde::Serialize;

use super::{SurfaceError, SurfaceModel};
use crate::lorentz::DEFAULT_TOL;
use crate::vec3::{self, V3};

/// Causal character of a tangent plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceClass {
    Spacelike,
    Timelike,
    /// Degenerate (lightlike) tangent plane.
    Lightlike,
    /// Negative-definite induced metric, possible only in index 2.
    NegativeDefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FundamentalForms {
    /// `(E, F, G)`
    pub first: [f64; 3],
    /// `(e, f, g)`, absent at degenerate points.
    pub second: Option<[f64; 3]>,
    /// `<N, N>`
    pub eps_m: Option<i8>,
    pub normal: Option<V3>,
    pub class: SurfaceClass,
    pub degenerate: bool,
}

impl FundamentalForms {
    pub fn first_det(&self) -> f64 {
        let [e, f, g] = self.first;
        e * g - f * f
    }
}

pub fn fundamental_forms(m: &SurfaceModel, u: f64, v: f64) -> Result<FundamentalForms, SurfaceError> {
    let amb = m.ambient();
    let j = m.jet(u, v)?;
    let (nu, nv) = (vec3::dot_e(j.du, j.du), vec3::dot_e(j.dv, j.dv));
    if vec3::norm_e(vec3::cross_e(j.du, j.dv)) <= 1e-10 * (nu * nv).sqrt() || nu == 0.0 || nv == 0.0 {
        return Err(SurfaceError::NotRegular { u, v });
    }
    let first = [amb.dot(j.du, j.du), amb.dot(j.du, j.dv), amb.dot(j.dv, j.dv)];
    let det = first[0] * first[2] - first[1] * first[1];
    let tol = DEFAULT_TOL * m.tolerance_factor() * nu * nv;
    let class = if det.abs() <= tol {
        SurfaceClass::Lightlike
    } else if det < 0.0 {
        SurfaceClass::Timelike
    } else if first[0] > 0.0 {
        SurfaceClass::Spacelike
    } else {
        SurfaceClass::NegativeDefinite
    };
    if class == SurfaceClass::Lightlike {
        return Ok(FundamentalForms { first, second: None, eps_m: None, normal: None, class, degenerate: true });
    }
    let cross = amb.cross(j.du, j.dv);
    let nn = amb.dot(cross, cross);
    let sign = if m.normal_reversed() { -1.0 } else { 1.0 };
    let normal = vec3::scale(sign / nn.abs().sqrt(), cross);
    let eps = if nn > 0.0 { 1 } else { -1 };
    let second = [amb.dot(j.duu, normal), amb.dot(j.duv, normal), amb.dot(j.dvv, normal)];
    Ok(FundamentalForms { first, second: Some(second), eps_m: Some(eps), normal: Some(normal), class, degenerate: false })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagonalizability {
    Yes,
    No,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Principal {
    pub k1: f64,
    pub k2: f64,
    /// Coordinate components of the principal directions.
    pub dir1: [f64; 2],
    pub dir2: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub h: f64,
    pub k: f64,
    /// `H^2 - eps_M K`
    pub discriminant: f64,
    pub diagonalizable: Diagonalizability,
    pub principal: Option<Principal>,
    pub umbilic: bool,
    /// Shape operator in the coordinate basis, `I^-1 II`; column `j` is the
    /// image of the `j`-th coordinate vector.
    pub shape: [[f64; 2]; 2],
    pub eps_m: i8,
    pub class: SurfaceClass,
}

/// Relative width of the band in which the discriminant counts as zero.
pub const DISCRIMINANT_TIE: f64 = 1e-10;

fn shape_matrix(first: [f64; 3], second: [f64; 3]) -> [[f64; 2]; 2] {
    let [e, f, g] = first;
    let [l, m, n] = second;
    let det = e * g - f * f;
    let inv = [[g / det, -f / det], [-f / det, e / det]];
    let ii = [[l, m], [m, n]];
    let mut s = [[0.0; 2]; 2];
    for (r, row) in s.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = inv[r][0] * ii[0][c] + inv[r][1] * ii[1][c];
        }
    }
    s
}

fn eigvec(s: [[f64; 2]; 2], lambda: f64) -> [f64; 2] {
    let a = [s[0][1], lambda - s[0][0]];
    let b = [lambda - s[1][1], s[1][0]];
    let pick = if a[0].hypot(a[1]) >= b[0].hypot(b[1]) { a } else { b };
    let n = pick[0].hypot(pick[1]);
    if n == 0.0 {
        [1.0, 0.0]
    } else {
        [pick[0] / n, pick[1] / n]
    }
}

pub fn curvatures(m: &SurfaceModel, u: f64, v: f64) -> Result<CurvatureReport, SurfaceError> {
    let forms = fundamental_forms(m, u, v)?;
    let (Some(second), Some(eps)) = (forms.second, forms.eps_m) else {
        return Err(SurfaceError::Degenerate { u, v });
    };
    let [e, f, g] = forms.first;
    let [l, mm, n] = second;
    let det = forms.first_det();
    let epsf = eps as f64;
    let h = epsf * (e * n + l * g - 2.0 * f * mm) / (2.0 * det);
    let k = epsf * (l * n - mm * mm) / det;
    let shape = shape_matrix(forms.first, second);
    let disc = h * h - epsf * k;
    let scale = 1f64.max(h * h).max(k.abs());
    let tie = disc.abs() <= DISCRIMINANT_TIE * m.tolerance_factor() * scale;
    let lambda = epsf * h;
    let off = (shape[0][0] - lambda)
        .abs()
        .max((shape[1][1] - lambda).abs())
        .max(shape[0][1].abs())
        .max(shape[1][0].abs());
    let scalar = off <= 1e-8 * m.tolerance_factor() * lambda.abs().max(1.0);
    let (diagonalizable, principal, umbilic) = if tie {
        if forms.class != SurfaceClass::Timelike || scalar {
            let p = Principal { k1: lambda, k2: lambda, dir1: [1.0, 0.0], dir2: [0.0, 1.0] };
            (Diagonalizability::Yes, Some(p), true)
        } else {
            let w = eigvec(shape, lambda);
            let q = e * w[0] * w[0] + 2.0 * f * w[0] * w[1] + g * w[1] * w[1];
            let qe = (e.abs() + 2.0 * f.abs() + g.abs()) * (w[0] * w[0] + w[1] * w[1]);
            if q.abs() <= 1e-6 * m.tolerance_factor() * qe {
                (Diagonalizability::No, None, false)
            } else {
                (Diagonalizability::Inconclusive, None, false)
            }
        }
    } else if disc > 0.0 {
        let root = disc.sqrt();
        let (k1, k2) = (lambda + root, lambda - root);
        let p = Principal { k1, k2, dir1: eigvec(shape, k1), dir2: eigvec(shape, k2) };
        (Diagonalizability::Yes, Some(p), false)
    } else {
        (Diagonalizability::No, None, false)
    };
    Ok(CurvatureReport {
        h,
        k,
        discriminant: disc,
        diagonalizable,
        principal,
        umbilic,
        shape,
        eps_m: eps,
        class: forms.class,
    })
}

/// `|<S x_u, x_v> - <x_u, S x_v>|` for the shape operator `S`.
pub fn weingarten_asymmetry(m: &SurfaceModel, u: f64, v: f64) -> Result<f64, SurfaceError> {
    let forms = fundamental_forms(m, u, v)?;
    let second = forms.second.ok_or(SurfaceError::Degenerate { u, v })?;
    let s = shape_matrix(forms.first, second);
    let [e, f, g] = forms.first;
    let left = s[0][0] * f + s[1][0] * g;
    let right = s[0][1] * e + s[1][1] * f;
    Ok((left - right).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSample {
    pub u: f64,
    pub v: f64,
    pub forms: Option<FundamentalForms>,
    pub curvature: Option<CurvatureReport>,
    pub error: Option<String>,
}

/// Forms and curvatures on the cell-centred `nu x nv` grid, in grid order.
pub fn curvature_grid(m: &SurfaceModel, nu: usize, nv: usize) -> Vec<GridSample> {
    m.domain()
        .grid(nu, nv)
        .into_par_iter()
        .map(|(u, v)| match fundamental_forms(m, u, v) {
            Err(e) => GridSample { u, v, forms: None, curvature: None, error: Some(e.to_string()) },
            Ok(forms) => {
                let (curvature, error) = match curvatures(m, u, v) {
                    Ok(c) => (Some(c), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                GridSample { u, v, forms: Some(forms), curvature, error }
            }
        })
        .collect()
}
